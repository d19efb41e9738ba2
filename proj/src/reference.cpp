#include "tailclust/reference.hpp"

#include <algorithm>
#include <cmath>

namespace tailclust::ref {

RankTransformResult rank_transform(const ObservationMatrix& obs) {
    const int n = obs.n();
    const int d = obs.d();
    if (n < 2) throw InvalidInput("TooFewRows: rank transform needs at least two rows");

    Matrix out(n, d);
    RankTransformResult result;
    for (int j = 0; j < d; ++j) {
        std::vector<double> column(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) column[i] = obs.data(i, j);
        std::vector<double> transformed(static_cast<std::size_t>(n));
        tailclust::detail::rank_column(column, transformed);
        for (int i = 0; i < n; ++i) out(i, j) = transformed[i];
        if (std::all_of(column.begin(), column.end(),
                        [&](double x) { return x == column.front(); }))
            result.degenerate_columns.push_back(j);
    }
    result.transformed = std::move(out);
    return result;
}

ObservationMatrix simulate(const MaxLinearModel& model, int n, std::uint64_t seed) {
    if (auto issue = validate_model(model)) throw InvalidInput(issue->message());
    if (n < 1) throw InvalidInput("BadCount: need at least one row");
    const int d = model.d();
    const int k = model.k();

    Matrix data(n, d);
    std::vector<double> z(static_cast<std::size_t>(k));
    for (int row = 0; row < n; ++row) {
        Rng rng(derive_stream(seed, "maxlinear.row", static_cast<std::uint64_t>(row)));
        for (double& zi : z) zi = frechet_quantile(rng.uniform_open01());
        for (int j = 0; j < d; ++j) {
            double value = 0.0;
            for (int i = 0; i < k; ++i) value = std::max(value, model.factors(j, i) * z[i]);
            data(row, j) = value;
        }
    }
    return ObservationMatrix::make(std::move(data));
}

ClusterModel spherical_kmeans(const AngularSample& sample, const KMeansConfig& cfg) {
    const int m = sample.size();
    if (cfg.k < 1 || cfg.k > m) throw InvalidInput("KTooLarge: k outside [1, m]");
    if (cfg.restarts < 1 || cfg.max_iters < 1 || !(cfg.tol > 0.0))
        throw InvalidInput("BadConfig: restarts, max_iters and tol must be positive");

    std::vector<tailclust::detail::RestartOutcome> outcomes(
        static_cast<std::size_t>(cfg.restarts));
    for (int r = 0; r < cfg.restarts; ++r) {
        Rng rng(derive_stream(cfg.seed, "skmeans.restart", static_cast<std::uint64_t>(r)));
        outcomes[r] =
            tailclust::detail::run_restart(sample.points, cfg.k, rng, cfg.max_iters, cfg.tol);
    }

    int best = 0;
    for (int r = 1; r < cfg.restarts; ++r)
        if (outcomes[r].objective < outcomes[best].objective) best = r;

    tailclust::detail::RestartOutcome& winner = outcomes[best];
    ClusterModel model;
    model.centers = std::move(winner.centers);
    model.labels = std::move(winner.labels);
    model.objective = winner.objective;
    model.weights.assign(static_cast<std::size_t>(cfg.k), 0.0);
    for (int label : model.labels) model.weights[label] += 1.0;
    for (double& w : model.weights) w /= static_cast<double>(m);
    return model;
}

}  // namespace tailclust::ref
