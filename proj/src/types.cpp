#include "tailclust/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

namespace tailclust {

const char* norm_name(NormKind kind) {
    switch (kind) {
        case NormKind::euclidean: return "euclidean";
        case NormKind::sup: return "sup";
        case NormKind::l1: return "l1";
    }
    return "euclidean";
}

std::optional<NormKind> parse_norm(std::string_view name) {
    if (name == "euclidean" || name == "l2") return NormKind::euclidean;
    if (name == "sup" || name == "linf" || name == "max") return NormKind::sup;
    if (name == "l1" || name == "sum") return NormKind::l1;
    return std::nullopt;
}

double vector_norm(std::span<const double> v, NormKind kind) {
    double acc = 0.0;
    switch (kind) {
        case NormKind::euclidean:
            for (double x : v) acc += x * x;
            return std::sqrt(acc);
        case NormKind::sup:
            for (double x : v) acc = std::max(acc, std::abs(x));
            return acc;
        case NormKind::l1:
            for (double x : v) acc += std::abs(x);
            return acc;
    }
    return 0.0;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (int i = 0; i < m.rows(); ++i) {
        if (static_cast<int>(rows[i].size()) != m.cols())
            throw InvalidInput("BadShape: ragged rows");
        for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

UnitVector::UnitVector(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty())
        throw InvalidInput("ZeroVector: unit vector needs at least one coordinate");
    for (double x : coords_) {
        if (!std::isfinite(x))
            throw InvalidInput("NonFinite: unit vector coordinate is not finite");
        if (x < 0.0)
            throw InvalidInput("NegativeCoordinate: unit vectors live on the nonnegative sphere");
    }
    const double norm = vector_norm(coords_, NormKind::euclidean);
    if (std::abs(norm - 1.0) > kUnitNormTol) {
        std::ostringstream msg;
        msg << "NotUnit: Euclidean norm " << norm << " differs from 1 by more than " << kUnitNormTol;
        throw InvalidInput(msg.str());
    }
}

UnitVector UnitVector::normalized(std::span<const double> v) {
    if (v.empty()) throw InvalidInput("ZeroVector: cannot normalize an empty vector");
    for (double x : v) {
        if (!std::isfinite(x) || x < 0.0)
            throw InvalidInput("NegativeCoordinate: normalization needs finite nonnegative input");
    }
    const double norm = vector_norm(v, NormKind::euclidean);
    if (norm <= 0.0) throw InvalidInput("ZeroVector: cannot normalize the zero vector");
    std::vector<double> coords(v.begin(), v.end());
    for (double& x : coords) x /= norm;
    return UnitVector(std::move(coords), unchecked_tag{});
}

double UnitVector::dot(const UnitVector& other) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < coords_.size(); ++i) acc += coords_[i] * other.coords_[i];
    return acc;
}

double UnitVector::euclidean_distance(const UnitVector& other) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        const double diff = coords_[i] - other.coords_[i];
        acc += diff * diff;
    }
    return std::sqrt(acc);
}

ObservationMatrix ObservationMatrix::make(Matrix data, std::vector<std::string> labels) {
    if (data.rows() < 1 || data.cols() < 1)
        throw InvalidInput("EmptySample: need at least one row and one column");
    if (!data.all_finite())
        throw InvalidInput("NonFinite: observation matrix contains a non-finite entry");
    if (!labels.empty() && static_cast<int>(labels.size()) != data.rows())
        throw InvalidInput("LabelMismatch: label count differs from row count");
    return {std::move(data), std::move(labels)};
}

AngularSample AngularSample::make(std::vector<UnitVector> points, std::vector<int> source_rows,
                                  std::vector<double> norms, double threshold, int origin_rows) {
    const std::size_t m = points.size();
    if (m == 0) throw InvalidInput("EmptySelection: angular sample has no points");
    if (source_rows.size() != m || norms.size() != m)
        throw InvalidInput("LengthMismatch: points, source rows and norms must align");
    if (!(threshold > 0.0))
        throw InvalidInput("BadThreshold: selection threshold must be positive");
    std::unordered_set<int> seen;
    for (int r : source_rows) {
        if (r < 0 || r >= origin_rows)
            throw InvalidInput("BadSourceRow: source row index out of range");
        if (!seen.insert(r).second)
            throw InvalidInput("BadSourceRow: duplicate source row index");
    }
    for (double nrm : norms) {
        if (!(nrm >= threshold))
            throw InvalidInput("BadThreshold: retained norm below the selection threshold");
    }
    return {std::move(points), std::move(source_rows), std::move(norms), threshold};
}

std::string ModelIssue::message() const {
    std::ostringstream msg;
    switch (kind) {
        case Kind::negative_entry:
            msg << "NegativeEntry(j=" << margin << ",i=" << factor << "): loading " << value
                << " is negative";
            break;
        case Kind::margin_sum_violation:
            msg << "MarginSumViolation(j=" << margin << ", sum=" << value
                << "): margin loadings must sum to 1";
            break;
        case Kind::zero_factor:
            msg << "ZeroFactor(i=" << factor << "): factor column is identically zero";
            break;
    }
    return msg.str();
}

std::optional<ModelIssue> validate_model(const MaxLinearModel& model) {
    const Matrix& a = model.factors;
    if (a.rows() < 1 || a.cols() < 1)
        return ModelIssue{ModelIssue::Kind::zero_factor, 0, 1, 0.0};
    for (int j = 0; j < a.rows(); ++j)
        for (int i = 0; i < a.cols(); ++i)
            if (!(a(j, i) >= 0.0))
                return ModelIssue{ModelIssue::Kind::negative_entry, j + 1, i + 1, a(j, i)};
    for (int j = 0; j < a.rows(); ++j) {
        double sum = 0.0;
        for (int i = 0; i < a.cols(); ++i) sum += a(j, i);
        if (std::abs(sum - 1.0) > kProbSumTol)
            return ModelIssue{ModelIssue::Kind::margin_sum_violation, j + 1, 0, sum};
    }
    for (int i = 0; i < a.cols(); ++i) {
        bool any = false;
        for (int j = 0; j < a.rows(); ++j) any = any || a(j, i) > 0.0;
        if (!any) return ModelIssue{ModelIssue::Kind::zero_factor, 0, i + 1, 0.0};
    }
    return std::nullopt;
}

MaxLinearModel make_max_linear_model(Matrix factors) {
    MaxLinearModel model{std::move(factors)};
    if (auto issue = validate_model(model)) throw InvalidInput(issue->message());
    return model;
}

DiscreteSpectralMeasure DiscreteSpectralMeasure::make(std::vector<UnitVector> atoms,
                                                      std::vector<double> probs) {
    if (atoms.size() != probs.size())
        throw InvalidInput("LengthMismatch: atoms and probabilities must align");
    if (atoms.empty()) throw InvalidInput("EmptyMeasure: need at least one atom");

    std::vector<UnitVector> merged_atoms;
    std::vector<double> merged_probs;
    for (std::size_t a = 0; a < atoms.size(); ++a) {
        if (!(probs[a] > 0.0))
            throw InvalidInput("BadProbability: atom probabilities must be positive");
        bool merged = false;
        for (std::size_t b = 0; b < merged_atoms.size(); ++b) {
            if (atoms[a].euclidean_distance(merged_atoms[b]) <= kAtomMergeTol) {
                merged_probs[b] += probs[a];
                merged = true;
                break;
            }
        }
        if (!merged) {
            merged_atoms.push_back(std::move(atoms[a]));
            merged_probs.push_back(probs[a]);
        }
    }

    double total = 0.0;
    for (double p : merged_probs) total += p;
    if (std::abs(total - 1.0) > kProbSumTol)
        throw InvalidInput("BadProbability: atom probabilities must sum to 1");
    return {std::move(merged_atoms), std::move(merged_probs)};
}

}  // namespace tailclust
