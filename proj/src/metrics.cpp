#include "tailclust/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace tailclust {

namespace detail {

// Classic O(n^3) assignment by potentials (Kuhn-Munkres with dual updates).
std::vector<int> solve_assignment(const Matrix& cost) {
    const int n = cost.rows();
    if (cost.cols() != n) throw InvalidInput("LengthMismatch: assignment needs a square matrix");
    if (n == 0) return {};

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<int> matched_row(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> parent(static_cast<std::size_t>(n) + 1, 0);

    for (int i = 1; i <= n; ++i) {
        matched_row[0] = i;
        int j0 = 0;
        std::vector<double> min_reduced(static_cast<std::size_t>(n) + 1, inf);
        std::vector<char> visited(static_cast<std::size_t>(n) + 1, 0);
        do {
            visited[j0] = 1;
            const int i0 = matched_row[j0];
            double delta = inf;
            int j1 = -1;
            for (int j = 1; j <= n; ++j) {
                if (visited[j]) continue;
                const double reduced = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (reduced < min_reduced[j]) {
                    min_reduced[j] = reduced;
                    parent[j] = j0;
                }
                if (min_reduced[j] < delta) {
                    delta = min_reduced[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (visited[j]) {
                    u[matched_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_reduced[j] -= delta;
                }
            }
            j0 = j1;
        } while (matched_row[j0] != 0);
        do {
            const int j1 = parent[j0];
            matched_row[j0] = matched_row[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> match(static_cast<std::size_t>(n), -1);
    for (int j = 1; j <= n; ++j)
        if (matched_row[j] > 0) match[matched_row[j] - 1] = j - 1;
    return match;
}

}  // namespace detail

double ds_distance(std::span<const UnitVector> estimated, std::span<const UnitVector> truth) {
    if (estimated.size() != truth.size())
        throw InvalidInput("LengthMismatch: center lists differ in length");
    const int k = static_cast<int>(truth.size());
    if (k == 0) return 0.0;

    Matrix squared(k, k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < k; ++i) {
            const double dist = truth[j].euclidean_distance(estimated[i]);
            squared(j, i) = dist * dist;
        }
    const std::vector<int> match = detail::solve_assignment(squared);

    double total = 0.0;
    for (int j = 0; j < k; ++j) total += squared(j, match[j]);
    return std::sqrt(total);
}

namespace {

struct BasisCell {
    int row;
    int col;
    double flow;
};

// Potentials from the spanning-tree basis: u[i] + v[j] = cost(i,j) on basic cells.
void compute_potentials(const std::vector<BasisCell>& basis, const Matrix& cost, int rows,
                        int cols, std::vector<double>& u, std::vector<double>& v) {
    u.assign(static_cast<std::size_t>(rows), std::numeric_limits<double>::quiet_NaN());
    v.assign(static_cast<std::size_t>(cols), std::numeric_limits<double>::quiet_NaN());
    u[0] = 0.0;
    bool progress = true;
    while (progress) {
        progress = false;
        for (const BasisCell& cell : basis) {
            const bool u_known = !std::isnan(u[cell.row]);
            const bool v_known = !std::isnan(v[cell.col]);
            if (u_known && !v_known) {
                v[cell.col] = cost(cell.row, cell.col) - u[cell.row];
                progress = true;
            } else if (!u_known && v_known) {
                u[cell.row] = cost(cell.row, cell.col) - v[cell.col];
                progress = true;
            }
        }
    }
}

// Unique alternating path in the basis tree from `row_start` to `col_target`,
// returned as the list of basis-cell indices along the path.
std::vector<int> tree_path(const std::vector<BasisCell>& basis, int rows, int cols,
                           int row_start, int col_target) {
    // Nodes: 0..rows-1 are rows, rows..rows+cols-1 are columns.
    const int node_count = rows + cols;
    std::vector<std::vector<std::pair<int, int>>> adjacency(
        static_cast<std::size_t>(node_count));  // (neighbor, basis index)
    for (int b = 0; b < static_cast<int>(basis.size()); ++b) {
        const int rnode = basis[b].row;
        const int cnode = rows + basis[b].col;
        adjacency[rnode].emplace_back(cnode, b);
        adjacency[cnode].emplace_back(rnode, b);
    }

    std::vector<int> parent_node(static_cast<std::size_t>(node_count), -1);
    std::vector<int> parent_edge(static_cast<std::size_t>(node_count), -1);
    std::vector<char> seen(static_cast<std::size_t>(node_count), 0);
    std::vector<int> stack{row_start};
    seen[row_start] = 1;
    while (!stack.empty()) {
        const int node = stack.back();
        stack.pop_back();
        if (node == rows + col_target) break;
        for (auto [next, edge] : adjacency[node]) {
            if (seen[next]) continue;
            seen[next] = 1;
            parent_node[next] = node;
            parent_edge[next] = edge;
            stack.push_back(next);
        }
    }

    std::vector<int> path;
    int node = rows + col_target;
    while (node != row_start) {
        path.push_back(parent_edge[node]);
        node = parent_node[node];
    }
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace

TransportSolution solve_transport(const Matrix& cost, std::span<const double> supply,
                                  std::span<const double> demand) {
    const int rows = static_cast<int>(supply.size());
    const int cols = static_cast<int>(demand.size());
    if (cost.rows() != rows || cost.cols() != cols)
        throw InvalidInput("LengthMismatch: cost matrix does not match the marginals");
    if (rows == 0 || cols == 0) throw InvalidInput("EmptyMeasure: need at least one atom");

    double supply_total = 0.0, demand_total = 0.0;
    for (double s : supply) {
        if (!(s > 0.0)) throw InvalidInput("BadProbability: supplies must be positive");
        supply_total += s;
    }
    for (double t : demand) {
        if (!(t > 0.0)) throw InvalidInput("BadProbability: demands must be positive");
        demand_total += t;
    }
    if (std::abs(supply_total - demand_total) > kProbSumTol)
        throw InvalidInput("BadProbability: transportation problem is unbalanced");

    // Absorb the (tiny) float imbalance into the last demand so the
    // northwest-corner walk exhausts both sides exactly.
    std::vector<double> a(supply.begin(), supply.end());
    std::vector<double> b(demand.begin(), demand.end());
    b[static_cast<std::size_t>(cols) - 1] += supply_total - demand_total;

    // Northwest-corner start: a spanning-tree basis of rows+cols-1 cells,
    // including degenerate zero-flow cells when a row and column exhaust together.
    std::vector<BasisCell> basis;
    basis.reserve(static_cast<std::size_t>(rows + cols - 1));
    {
        int i = 0, j = 0;
        for (;;) {
            const double moved = std::min(a[i], b[j]);
            basis.push_back({i, j, moved});
            a[i] -= moved;
            b[j] -= moved;
            if (i == rows - 1 && j == cols - 1) break;
            if (a[i] == 0.0 && i + 1 < rows)
                ++i;
            else
                ++j;
        }
    }

    std::vector<double> u, v;
    const double enter_eps = 1e-12;
    const long max_pivots = 10000 + 100L * rows * cols;
    for (long pivot = 0;; ++pivot) {
        if (pivot > max_pivots)
            throw std::runtime_error("transport solver failed to converge");
        compute_potentials(basis, cost, rows, cols, u, v);

        std::vector<char> is_basic(static_cast<std::size_t>(rows) * cols, 0);
        for (const BasisCell& cell : basis)
            is_basic[static_cast<std::size_t>(cell.row) * cols + cell.col] = 1;

        // Entering cell: first (row-major) nonbasic cell with negative reduced
        // cost. First-index entering plus lowest-index leaving is Bland's
        // rule, which rules out cycling on degenerate pivots.
        int enter_row = -1, enter_col = -1;
        for (int i = 0; i < rows && enter_row < 0; ++i)
            for (int j = 0; j < cols; ++j) {
                if (is_basic[static_cast<std::size_t>(i) * cols + j]) continue;
                if (cost(i, j) - u[i] - v[j] < -enter_eps) {
                    enter_row = i;
                    enter_col = j;
                    break;
                }
            }
        if (enter_row < 0) break;  // dual feasible -> optimal

        const std::vector<int> path = tree_path(basis, rows, cols, enter_row, enter_col);
        // Signs alternate along the cycle: entering +, then -, +, -, ...
        // starting from the path end incident to the entering cell's row.
        std::vector<int> minus_cells;
        for (std::size_t p = 0; p < path.size(); p += 2) minus_cells.push_back(path[p]);

        double theta = std::numeric_limits<double>::infinity();
        int leaving = -1;
        for (int bidx : minus_cells) {
            const BasisCell& cell = basis[bidx];
            const long index = static_cast<long>(cell.row) * cols + cell.col;
            const long leaving_index =
                leaving < 0 ? -1
                            : static_cast<long>(basis[leaving].row) * cols + basis[leaving].col;
            if (cell.flow < theta || (cell.flow == theta && index < leaving_index)) {
                theta = cell.flow;
                leaving = bidx;
            }
        }

        for (std::size_t p = 0; p < path.size(); ++p) {
            if (p % 2 == 0)
                basis[path[p]].flow -= theta;
            else
                basis[path[p]].flow += theta;
        }
        basis[leaving] = BasisCell{enter_row, enter_col, theta};
    }

    TransportSolution solution;
    solution.plan = Matrix(rows, cols);
    for (const BasisCell& cell : basis) solution.plan(cell.row, cell.col) = cell.flow;
    double total = 0.0;
    for (const BasisCell& cell : basis) total += cell.flow * cost(cell.row, cell.col);
    solution.cost = total;
    solution.row_potential = u;
    solution.col_potential = v;

    if (!transport_is_optimal(solution, cost, supply, demand))
        throw std::runtime_error("transport solution failed the optimality certificate");
    return solution;
}

bool transport_is_optimal(const TransportSolution& solution, const Matrix& cost,
                          std::span<const double> supply, std::span<const double> demand,
                          double tol) {
    const int rows = static_cast<int>(supply.size());
    const int cols = static_cast<int>(demand.size());
    const Matrix& plan = solution.plan;
    if (plan.rows() != rows || plan.cols() != cols) return false;

    for (int i = 0; i < rows; ++i) {
        double row_sum = 0.0;
        for (int j = 0; j < cols; ++j) {
            if (plan(i, j) < -tol) return false;
            row_sum += plan(i, j);
        }
        if (std::abs(row_sum - supply[i]) > tol) return false;
    }
    for (int j = 0; j < cols; ++j) {
        double col_sum = 0.0;
        for (int i = 0; i < rows; ++i) col_sum += plan(i, j);
        if (std::abs(col_sum - demand[j]) > tol) return false;
    }
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const double reduced = cost(i, j) - solution.row_potential[i] - solution.col_potential[j];
            if (reduced < -tol) return false;                        // dual feasibility
            if (plan(i, j) > tol && std::abs(reduced) > tol) return false;  // slackness
        }
    return true;
}

double wasserstein1_points(std::span<const UnitVector> xs, std::span<const double> px,
                           std::span<const UnitVector> ys, std::span<const double> py) {
    if (xs.size() != px.size() || ys.size() != py.size())
        throw InvalidInput("LengthMismatch: atoms and masses must align");
    Matrix cost(static_cast<int>(xs.size()), static_cast<int>(ys.size()));
    for (int i = 0; i < cost.rows(); ++i)
        for (int j = 0; j < cost.cols(); ++j) cost(i, j) = xs[i].euclidean_distance(ys[j]);
    return solve_transport(cost, px, py).cost;
}

double wasserstein1(const DiscreteSpectralMeasure& mu, const DiscreteSpectralMeasure& nu) {
    return wasserstein1_points(mu.atoms, mu.probs, nu.atoms, nu.probs);
}

}  // namespace tailclust
