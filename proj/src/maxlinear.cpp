#include "tailclust/maxlinear.hpp"

#include <algorithm>
#include <cmath>

namespace tailclust {

double frechet_quantile(double u) {
    if (!(u > 0.0) || !(u < 1.0))
        throw InvalidInput("BadProbability: Frechet quantile needs u in (0,1)");
    return -1.0 / std::log(u);
}

std::vector<double> sample_frechet(int count, Rng& rng) {
    if (count < 1) throw InvalidInput("BadCount: need at least one draw");
    std::vector<double> draws(static_cast<std::size_t>(count));
    for (double& z : draws) z = frechet_quantile(rng.uniform_open01());
    return draws;
}

ObservationMatrix simulate(const MaxLinearModel& model, int n, std::uint64_t seed) {
    if (auto issue = validate_model(model)) throw InvalidInput(issue->message());
    if (n < 1) throw InvalidInput("BadCount: need at least one row");
    const int d = model.d();
    const int k = model.k();

    Matrix data(n, d);
#pragma omp parallel for schedule(static)
    for (int row = 0; row < n; ++row) {
        Rng rng(derive_stream(seed, "maxlinear.row", static_cast<std::uint64_t>(row)));
        std::vector<double> z(static_cast<std::size_t>(k));
        for (double& zi : z) zi = frechet_quantile(rng.uniform_open01());
        for (int j = 0; j < d; ++j) {
            double value = 0.0;
            for (int i = 0; i < k; ++i) value = std::max(value, model.factors(j, i) * z[i]);
            data(row, j) = value;
        }
    }
    return ObservationMatrix::make(std::move(data));
}

std::vector<UnitVector> factor_directions(const MaxLinearModel& model) {
    std::vector<UnitVector> directions;
    directions.reserve(static_cast<std::size_t>(model.k()));
    for (int i = 0; i < model.k(); ++i) {
        std::vector<double> column(static_cast<std::size_t>(model.d()));
        for (int j = 0; j < model.d(); ++j) column[j] = model.factors(j, i);
        directions.push_back(UnitVector::normalized(column));
    }
    return directions;
}

DiscreteSpectralMeasure spectral_measure(const MaxLinearModel& model, NormKind norm) {
    if (auto issue = validate_model(model)) throw InvalidInput(issue->message());
    const int k = model.k();
    std::vector<UnitVector> atoms;
    std::vector<double> probs(static_cast<std::size_t>(k));
    atoms.reserve(static_cast<std::size_t>(k));

    double total = 0.0;
    for (int i = 0; i < k; ++i) {
        std::vector<double> column(static_cast<std::size_t>(model.d()));
        for (int j = 0; j < model.d(); ++j) column[j] = model.factors(j, i);
        probs[i] = vector_norm(column, norm);
        total += probs[i];
        atoms.push_back(UnitVector::normalized(column));
    }
    for (double& p : probs) p /= total;
    return DiscreteSpectralMeasure::make(std::move(atoms), std::move(probs));
}

namespace {

struct ConstellationLayout {
    int d;
    int k;
    double divisor;
    // One row per random factor; 1 marks a uniform draw, 0 a structural zero.
    std::vector<std::vector<int>> patterns;
};

const ConstellationLayout& layout(Constellation c) {
    static const ConstellationLayout d4k2{4, 2, 2.0, {{1, 1, 1, 1}}};
    static const ConstellationLayout d4k6{4,
                                          6,
                                          3.0,
                                          {{1, 1, 1, 1},
                                           {1, 0, 1, 0},
                                           {0, 1, 0, 1},
                                           {1, 1, 0, 0},
                                           {0, 0, 1, 1}}};
    static const ConstellationLayout d6k6{6,
                                          6,
                                          3.0,
                                          {{1, 1, 1, 1, 1, 1},
                                           {0, 1, 0, 1, 0, 1},
                                           {1, 0, 1, 0, 1, 0},
                                           {0, 0, 0, 1, 1, 1},
                                           {1, 1, 1, 0, 0, 0}}};
    static const ConstellationLayout d10k6{10,
                                           6,
                                           2.0,
                                           {{1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
                                            {1, 1, 0, 0, 0, 0, 0, 0, 0, 0},
                                            {0, 0, 1, 1, 0, 0, 0, 0, 0, 0},
                                            {0, 0, 0, 0, 1, 1, 0, 0, 0, 0},
                                            {0, 0, 0, 0, 0, 0, 1, 1, 1, 1}}};
    switch (c) {
        case Constellation::d4k2: return d4k2;
        case Constellation::d4k6: return d4k6;
        case Constellation::d6k6: return d6k6;
        case Constellation::d10k6: return d10k6;
    }
    return d4k2;
}

}  // namespace

const char* constellation_name(Constellation c) {
    switch (c) {
        case Constellation::d4k2: return "d4k2";
        case Constellation::d4k6: return "d4k6";
        case Constellation::d6k6: return "d6k6";
        case Constellation::d10k6: return "d10k6";
    }
    return "d4k2";
}

std::optional<Constellation> parse_constellation(std::string_view name) {
    if (name == "d4k2") return Constellation::d4k2;
    if (name == "d4k6") return Constellation::d4k6;
    if (name == "d6k6") return Constellation::d6k6;
    if (name == "d10k6") return Constellation::d10k6;
    return std::nullopt;
}

int constellation_dim(Constellation c) { return layout(c).d; }
int constellation_factors(Constellation c) { return layout(c).k; }

namespace detail {

int uniform_count(Constellation c) {
    int count = 0;
    for (const auto& pattern : layout(c).patterns)
        for (int use : pattern) count += use;
    return count;
}

MaxLinearModel model_from_uniforms(Constellation c, std::span<const double> uniforms) {
    const ConstellationLayout& shape = layout(c);
    Matrix factors(shape.d, shape.k);
    std::size_t next = 0;
    for (int i = 0; i < static_cast<int>(shape.patterns.size()); ++i) {
        for (int j = 0; j < shape.d; ++j) {
            if (shape.patterns[i][j]) {
                if (next >= uniforms.size())
                    throw InvalidInput("BadCount: too few uniforms for this constellation");
                factors(j, i) = uniforms[next++] / shape.divisor;
            }
        }
    }
    // Last factor completes each margin to 1.
    for (int j = 0; j < shape.d; ++j) {
        double partial = 0.0;
        for (int i = 0; i < shape.k - 1; ++i) partial += factors(j, i);
        factors(j, shape.k - 1) = 1.0 - partial;
    }
    return MaxLinearModel{std::move(factors)};
}

}  // namespace detail

MaxLinearModel random_model(Constellation c, Rng& rng) {
    const int count = detail::uniform_count(c);
    std::vector<double> uniforms(static_cast<std::size_t>(count));
    for (;;) {
        for (double& u : uniforms) u = rng.uniform_open01();
        MaxLinearModel model = detail::model_from_uniforms(c, uniforms);
        if (!validate_model(model)) return model;
    }
}

}  // namespace tailclust
