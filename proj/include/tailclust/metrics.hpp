#ifndef TAILCLUST_METRICS_HPP
#define TAILCLUST_METRICS_HPP

#include <span>
#include <vector>

#include "tailclust/types.hpp"

namespace tailclust {

/// Permutation-matched distance between two equal-size center lists: the
/// minimum over permutations pi of sqrt(sum_j ||est[pi(j)] - truth[j]||^2),
/// computed through an optimal assignment on the squared-distance matrix.
double ds_distance(std::span<const UnitVector> estimated, std::span<const UnitVector> truth);

/// Exact solution of a balanced transportation problem.
struct TransportSolution {
    double cost = 0.0;
    Matrix plan;                        // coupling matrix gamma, rows = supply atoms
    std::vector<double> row_potential;  // duals u (supply side)
    std::vector<double> col_potential;  // duals v (demand side)
};

/// Minimizes sum_ij cost(i,j) * gamma(i,j) over nonnegative gamma with the
/// given row and column sums (which must balance within 1e-9). Solved by the
/// transportation simplex with Bland's anti-cycling rule; the result is
/// certified optimal through the dual potentials before it is returned.
TransportSolution solve_transport(const Matrix& cost, std::span<const double> supply,
                                  std::span<const double> demand);

/// Complementary-slackness check: feasible plan, feasible duals, and zero
/// reduced cost wherever mass flows, all within `tol`.
bool transport_is_optimal(const TransportSolution& solution, const Matrix& cost,
                          std::span<const double> supply, std::span<const double> demand,
                          double tol = 1e-9);

/// Wasserstein-1 distance between finitely supported measures under the
/// Euclidean ground cost.
double wasserstein1(const DiscreteSpectralMeasure& mu, const DiscreteSpectralMeasure& nu);

/// Raw-list variant; does not merge or validate the atom lists beyond
/// requiring positive masses with equal totals.
double wasserstein1_points(std::span<const UnitVector> xs, std::span<const double> px,
                           std::span<const UnitVector> ys, std::span<const double> py);

namespace detail {
/// Minimum-cost perfect matching on a square cost matrix (O(n^3) potentials
/// method). Returns match[row] = column.
std::vector<int> solve_assignment(const Matrix& cost);
}  // namespace detail

}  // namespace tailclust

#endif
