#ifndef TAILCLUST_TYPES_HPP
#define TAILCLUST_TYPES_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tailclust/matrix.hpp"

namespace tailclust {

inline constexpr double kUnitNormTol = 1e-12;
inline constexpr double kProbSumTol = 1e-9;
inline constexpr double kAtomMergeTol = 1e-9;

/// Point on the nonnegative part of the Euclidean unit sphere.
/// Immutable after construction; construction enforces the invariants
/// (all coordinates >= 0, Euclidean norm within 1e-12 of 1).
class UnitVector {
public:
    /// Validates `coords` as-is.
    explicit UnitVector(std::vector<double> coords);

    /// Scales a nonzero nonnegative vector to Euclidean length 1.
    static UnitVector normalized(std::span<const double> v);

    int dim() const { return static_cast<int>(coords_.size()); }
    double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
    std::span<const double> coords() const { return coords_; }

    double dot(const UnitVector& other) const;
    double euclidean_distance(const UnitVector& other) const;

    bool operator==(const UnitVector& other) const = default;

private:
    struct unchecked_tag {};
    UnitVector(std::vector<double> coords, unchecked_tag) : coords_(std::move(coords)) {}

    std::vector<double> coords_;
};

/// Raw n x d sample, rows = observations. Entries must be finite; optional
/// per-row labels (timestamps, ids) must match the row count.
struct ObservationMatrix {
    Matrix data;
    std::vector<std::string> labels;  // empty or size n

    static ObservationMatrix make(Matrix data, std::vector<std::string> labels = {});

    int n() const { return data.rows(); }
    int d() const { return data.cols(); }
};

/// Unit-sphere projections of the selected extreme rows, with their original
/// row indices, pre-projection norms, and the selection threshold.
struct AngularSample {
    std::vector<UnitVector> points;
    std::vector<int> source_rows;
    std::vector<double> norms;
    double threshold = 0.0;

    static AngularSample make(std::vector<UnitVector> points, std::vector<int> source_rows,
                              std::vector<double> norms, double threshold, int origin_rows);

    int size() const { return static_cast<int>(points.size()); }
    int dim() const { return points.empty() ? 0 : points.front().dim(); }
};

/// Output of the clustering step: k unit centers, empirical cluster weights,
/// per-point labels, and the attained objective value.
struct ClusterModel {
    std::vector<UnitVector> centers;
    std::vector<double> weights;
    std::vector<int> labels;
    double objective = 0.0;

    int k() const { return static_cast<int>(centers.size()); }
};

/// Checks a ClusterModel against the sample it was fitted on: weights are the
/// label frequencies and sum to 1, every label points at a nearest center
/// (lowest index on ties), and the stored objective matches a recomputation.
/// Returns a description of the first violation, or nullopt when consistent.
std::optional<std::string> validate_cluster_model(const ClusterModel& model,
                                                  const AngularSample& sample);

/// d x k nonnegative factor matrix; entry (j,i) is the loading of factor i on
/// margin j. Standardized models have every margin summing to 1.
struct MaxLinearModel {
    Matrix factors;

    int d() const { return factors.rows(); }
    int k() const { return factors.cols(); }
};

struct ModelIssue {
    enum class Kind { negative_entry, margin_sum_violation, zero_factor };

    Kind kind;
    int margin = 0;  // 1-based, as reported in messages
    int factor = 0;  // 1-based
    double value = 0.0;

    std::string message() const;
};

/// Checks the MaxLinearModel invariants and reports the first violation:
/// negative entries (row-major scan), then margin sums, then zero factor
/// columns. Returns nullopt when the model is valid.
std::optional<ModelIssue> validate_model(const MaxLinearModel& model);

/// Throwing counterpart of validate_model.
MaxLinearModel make_max_linear_model(Matrix factors);

/// Finitely supported probability measure on the nonnegative unit sphere.
struct DiscreteSpectralMeasure {
    std::vector<UnitVector> atoms;
    std::vector<double> probs;

    /// Merges atoms closer than 1e-9 (probabilities added, first atom kept)
    /// and validates: probs positive and summing to 1 within 1e-9.
    static DiscreteSpectralMeasure make(std::vector<UnitVector> atoms,
                                        std::vector<double> probs);

    int size() const { return static_cast<int>(atoms.size()); }
};

}  // namespace tailclust

#endif
