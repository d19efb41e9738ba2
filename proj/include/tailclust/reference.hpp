#ifndef TAILCLUST_REFERENCE_HPP
#define TAILCLUST_REFERENCE_HPP

#include "tailclust/maxlinear.hpp"
#include "tailclust/skmeans.hpp"
#include "tailclust/transform.hpp"

namespace tailclust::ref {

/// Serial drivers for the OpenMP kernels. They run the same per-column,
/// per-row and per-restart routines in a plain loop; the parallel versions
/// must produce bitwise-identical results at any thread count. Tests compare
/// against these, and the benchmark reports the speedup over them.

RankTransformResult rank_transform(const ObservationMatrix& obs);

ObservationMatrix simulate(const MaxLinearModel& model, int n, std::uint64_t seed);

ClusterModel spherical_kmeans(const AngularSample& sample, const KMeansConfig& cfg);

}  // namespace tailclust::ref

#endif
