#include "tailclust/skmeans.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <sstream>

namespace tailclust {

double cosine_dissimilarity(const UnitVector& x, const UnitVector& y) {
    return std::clamp(1.0 - x.dot(y), 0.0, 1.0);
}

namespace {

int nearest_center(const UnitVector& point, std::span<const UnitVector> centers) {
    int best = 0;
    double best_d = cosine_dissimilarity(point, centers[0]);
    for (int c = 1; c < static_cast<int>(centers.size()); ++c) {
        const double d = cosine_dissimilarity(point, centers[c]);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

double mean_min_dissimilarity(std::span<const UnitVector> centers,
                              std::span<const UnitVector> points) {
    double total = 0.0;
    for (const UnitVector& p : points) {
        double best = cosine_dissimilarity(p, centers[0]);
        for (std::size_t c = 1; c < centers.size(); ++c)
            best = std::min(best, cosine_dissimilarity(p, centers[c]));
        total += best;
    }
    return total / static_cast<double>(points.size());
}

std::vector<UnitVector> seed_centers(const std::vector<UnitVector>& points, int k, Rng& rng) {
    const int m = static_cast<int>(points.size());
    std::vector<UnitVector> centers;
    centers.reserve(static_cast<std::size_t>(k));
    std::vector<char> chosen(points.size(), 0);

    const int first = static_cast<int>(rng.uniform_index(points.size()));
    centers.push_back(points[first]);
    chosen[first] = 1;

    std::vector<double> min_diss(points.size());
    for (int j = 0; j < m; ++j) min_diss[j] = cosine_dissimilarity(points[j], centers[0]);

    while (static_cast<int>(centers.size()) < k) {
        double total = 0.0;
        for (double w : min_diss) total += w;
        int pick = -1;
        if (total > 0.0) {
            const double target = rng.uniform_open01() * total;
            double acc = 0.0;
            for (int j = 0; j < m; ++j) {
                acc += min_diss[j];
                if (acc >= target) {
                    pick = j;
                    break;
                }
            }
            if (pick < 0) pick = m - 1;
        } else {
            // All points coincide with existing centers; fall back to a
            // uniform draw among the not-yet-chosen indices.
            std::vector<int> free;
            for (int j = 0; j < m; ++j)
                if (!chosen[j]) free.push_back(j);
            pick = free.empty() ? static_cast<int>(rng.uniform_index(points.size()))
                                : free[rng.uniform_index(free.size())];
        }
        chosen[pick] = 1;
        centers.push_back(points[pick]);
        for (int j = 0; j < m; ++j)
            min_diss[j] = std::min(min_diss[j], cosine_dissimilarity(points[j], centers.back()));
    }
    return centers;
}

// Moves one point into each empty cluster: the point with the largest
// dissimilarity to its current center, among clusters that can spare one.
void repair_empty_clusters(const std::vector<UnitVector>& points,
                           std::span<const UnitVector> centers, std::vector<int>& labels,
                           std::vector<int>& counts) {
    const int k = static_cast<int>(centers.size());
    for (int c = 0; c < k; ++c) {
        if (counts[c] > 0) continue;
        int worst = -1;
        double worst_d = -1.0;
        for (int j = 0; j < static_cast<int>(points.size()); ++j) {
            if (counts[labels[j]] < 2) continue;
            const double d = cosine_dissimilarity(points[j], centers[labels[j]]);
            if (d > worst_d) {
                worst_d = d;
                worst = j;
            }
        }
        assert(worst >= 0 && "an empty cluster implies some cluster holds two points");
        --counts[labels[worst]];
        labels[worst] = c;
        ++counts[c];
    }
}

std::vector<UnitVector> update_centers(const std::vector<UnitVector>& points,
                                       const std::vector<int>& labels, int k, int dim) {
    std::vector<std::vector<double>> sums(static_cast<std::size_t>(k),
                                          std::vector<double>(static_cast<std::size_t>(dim), 0.0));
    for (std::size_t j = 0; j < points.size(); ++j) {
        std::span<const double> coords = points[j].coords();
        std::vector<double>& sum = sums[static_cast<std::size_t>(labels[j])];
        for (int h = 0; h < dim; ++h) sum[h] += coords[h];
    }
    std::vector<UnitVector> centers;
    centers.reserve(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) {
        const double norm = vector_norm(sums[c], NormKind::euclidean);
        // Nonnegative nonzero points cannot sum to zero once the cluster is nonempty.
        assert(norm > 0.0);
        (void)norm;
        centers.push_back(UnitVector::normalized(sums[c]));
    }
    return centers;
}

}  // namespace

namespace detail {

RestartOutcome run_restart(const std::vector<UnitVector>& points, int k, Rng rng,
                           int max_iters, double tol, std::vector<double>* objective_trace) {
    const int m = static_cast<int>(points.size());
    const int dim = points.front().dim();

    std::vector<UnitVector> centers = seed_centers(points, k, rng);
    std::vector<int> labels(points.size());
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (int j = 0; j < m; ++j) {
        labels[j] = nearest_center(points[j], centers);
        ++counts[labels[j]];
    }

    double objective = mean_min_dissimilarity(centers, points);
    if (objective_trace) objective_trace->push_back(objective);

    for (int iter = 0; iter < max_iters; ++iter) {
        repair_empty_clusters(points, centers, labels, counts);
        centers = update_centers(points, labels, k, dim);

        std::fill(counts.begin(), counts.end(), 0);
        for (int j = 0; j < m; ++j) {
            labels[j] = nearest_center(points[j], centers);
            ++counts[labels[j]];
        }
        const double next = mean_min_dissimilarity(centers, points);
        if (objective_trace) objective_trace->push_back(next);
        const double improvement = objective - next;
        objective = next;
        if (improvement < tol) break;
    }
    return {std::move(centers), std::move(labels), objective};
}

}  // namespace detail

ClusterModel spherical_kmeans(const AngularSample& sample, const KMeansConfig& cfg) {
    const int m = sample.size();
    if (cfg.k < 1) throw InvalidInput("BadConfig: k must be positive");
    if (cfg.restarts < 1 || cfg.max_iters < 1 || !(cfg.tol > 0.0))
        throw InvalidInput("BadConfig: restarts, max_iters and tol must be positive");
    if (cfg.k > m) {
        std::ostringstream msg;
        msg << "KTooLarge: k=" << cfg.k << " exceeds the sample size m=" << m;
        throw InvalidInput(msg.str());
    }

    std::vector<detail::RestartOutcome> outcomes(static_cast<std::size_t>(cfg.restarts));
#pragma omp parallel for schedule(static)
    for (int r = 0; r < cfg.restarts; ++r) {
        Rng rng(derive_stream(cfg.seed, "skmeans.restart", static_cast<std::uint64_t>(r)));
        outcomes[r] = detail::run_restart(sample.points, cfg.k, rng, cfg.max_iters, cfg.tol);
    }

    int best = 0;
    for (int r = 1; r < cfg.restarts; ++r)
        if (outcomes[r].objective < outcomes[best].objective) best = r;

    detail::RestartOutcome& winner = outcomes[best];
    ClusterModel model;
    model.centers = std::move(winner.centers);
    model.labels = std::move(winner.labels);
    model.objective = winner.objective;
    model.weights.assign(static_cast<std::size_t>(cfg.k), 0.0);
    for (int label : model.labels) model.weights[label] += 1.0;
    for (double& w : model.weights) w /= static_cast<double>(m);
    return model;
}

std::vector<std::pair<int, double>> elbow_scan(const AngularSample& sample, int k_min,
                                               int k_max, KMeansConfig cfg) {
    if (k_min < 1 || k_min > k_max)
        throw InvalidInput("BadConfig: need 1 <= k_min <= k_max");
    if (k_max > sample.size())
        throw InvalidInput("KTooLarge: k_max exceeds the sample size");
    std::vector<std::pair<int, double>> curve;
    curve.reserve(static_cast<std::size_t>(k_max - k_min + 1));
    for (int k = k_min; k <= k_max; ++k) {
        cfg.k = k;
        curve.emplace_back(k, spherical_kmeans(sample, cfg).objective);
    }
    return curve;
}

std::vector<double> renormalize_center(const UnitVector& center) {
    double max = 0.0;
    for (double x : center.coords()) max = std::max(max, x);
    if (!(max > 0.0)) throw InvalidInput("ZeroVector: center has no positive component");
    std::vector<double> scaled(center.coords().begin(), center.coords().end());
    for (double& x : scaled) x /= max;
    return scaled;
}

DiscreteSpectralMeasure to_spectral_measure(const ClusterModel& model) {
    std::vector<UnitVector> atoms;
    std::vector<double> probs;
    for (int c = 0; c < model.k(); ++c) {
        if (model.weights[c] > 0.0) {
            atoms.push_back(model.centers[c]);
            probs.push_back(model.weights[c]);
        }
    }
    return DiscreteSpectralMeasure::make(std::move(atoms), std::move(probs));
}

double clustering_objective(std::span<const UnitVector> centers, const AngularSample& sample) {
    if (centers.empty()) throw InvalidInput("BadConfig: need at least one center");
    return mean_min_dissimilarity(centers, sample.points);
}

std::optional<std::string> validate_cluster_model(const ClusterModel& model,
                                                  const AngularSample& sample) {
    const int m = sample.size();
    const int k = model.k();
    if (k < 1) return "model has no centers";
    if (static_cast<int>(model.labels.size()) != m) return "label count differs from sample size";
    if (static_cast<int>(model.weights.size()) != k) return "weight count differs from k";

    double weight_sum = 0.0;
    for (double w : model.weights) weight_sum += w;
    if (std::abs(weight_sum - 1.0) > kProbSumTol) return "weights do not sum to 1";

    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (int j = 0; j < m; ++j) {
        const int label = model.labels[j];
        if (label < 0 || label >= k) return "label out of range";
        ++counts[label];
        if (label != nearest_center(sample.points[j], model.centers))
            return "label does not point at the nearest center";
    }
    for (int c = 0; c < k; ++c) {
        const double expected = static_cast<double>(counts[c]) / static_cast<double>(m);
        if (std::abs(model.weights[c] - expected) > kProbSumTol)
            return "weight differs from the label frequency";
    }
    const double recomputed = clustering_objective(model.centers, sample);
    if (std::abs(recomputed - model.objective) > kProbSumTol)
        return "stored objective differs from recomputation";
    return std::nullopt;
}

}  // namespace tailclust
