#ifndef TAILCLUST_SKMEANS_HPP
#define TAILCLUST_SKMEANS_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tailclust/rng.hpp"
#include "tailclust/types.hpp"

namespace tailclust {

struct KMeansConfig {
    int k = 1;
    int restarts = 100;
    int max_iters = 100;
    double tol = 1e-10;  // stop when the objective improves by less than this
    std::uint64_t seed = 0;
};

/// Angular dissimilarity 1 - <x,y>, clamped into [0,1].
double cosine_dissimilarity(const UnitVector& x, const UnitVector& y);

/// Mean dissimilarity from each sample point to its nearest center.
double clustering_objective(std::span<const UnitVector> centers, const AngularSample& sample);

/// Best-of-restarts Lloyd iteration under the angular dissimilarity.
///
/// Each restart seeds centers kmeans++-style (first center uniform, later
/// ones drawn with probability proportional to the current minimum
/// dissimilarity), then alternates nearest-center assignment (lowest index on
/// ties) with replacing every center by the Euclidean-normalized mean of its
/// points. Empty clusters are repaired by turning the point farthest from its
/// current center into a singleton. Restart r draws from the stream
/// (cfg.seed, "skmeans.restart", r), so the result does not depend on the
/// parallel schedule; the best restart wins, lowest index on ties.
ClusterModel spherical_kmeans(const AngularSample& sample, const KMeansConfig& cfg);

/// Runs spherical_kmeans for every k in [k_min, k_max]; returns (k, objective).
std::vector<std::pair<int, double>> elbow_scan(const AngularSample& sample, int k_min,
                                               int k_max, KMeansConfig cfg);

/// Scales a center so its largest component becomes 1 (display convention).
std::vector<double> renormalize_center(const UnitVector& center);

/// Estimated spectral measure: cluster centers weighted by membership
/// fractions. Zero-weight clusters are dropped; coinciding centers merge.
DiscreteSpectralMeasure to_spectral_measure(const ClusterModel& model);

namespace detail {

struct RestartOutcome {
    std::vector<UnitVector> centers;
    std::vector<int> labels;
    double objective = 0.0;
};

/// A single seeded restart. `objective_trace`, when given, records the
/// objective after every iteration (used to assert monotone descent).
RestartOutcome run_restart(const std::vector<UnitVector>& points, int k, Rng rng,
                           int max_iters, double tol,
                           std::vector<double>* objective_trace = nullptr);

}  // namespace detail

}  // namespace tailclust

#endif
