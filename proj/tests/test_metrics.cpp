#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "tailclust/metrics.hpp"
#include "tailclust/rng.hpp"

using namespace tailclust;
using oracles::brute_force_ds;
using oracles::random_discrete_measure;
using oracles::random_unit_point;
using oracles::random_unit_points;

TEST_CASE("ds distance is zero for reordered identical sets") {
    Rng rng(derive_stream(5, "test.ds", 0));
    const std::vector<UnitVector> truth = random_unit_points(rng, 5, 4);
    std::vector<UnitVector> shuffled{truth[3], truth[0], truth[4], truth[2], truth[1]};
    CHECK(ds_distance(shuffled, truth) == 0.0);
}

TEST_CASE("ds distance worked example") {
    const UnitVector e1({1.0, 0.0});
    const UnitVector e2({0.0, 1.0});
    const UnitVector diag({std::sqrt(0.5), std::sqrt(0.5)});
    const std::vector<UnitVector> truth{e1, e2};
    const std::vector<UnitVector> est{e1, diag};
    const double expected = std::sqrt(std::pow(1.0 - std::sqrt(0.5), 2.0) + 0.5);
    CHECK(ds_distance(est, truth) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(ds_distance(est, truth) == doctest::Approx(0.76537).epsilon(1e-5));
}

TEST_CASE("ds distance with one center is the plain distance") {
    Rng rng(derive_stream(5, "test.ds", 1));
    const UnitVector a = random_unit_point(rng, 6);
    const UnitVector b = random_unit_point(rng, 6);
    const std::vector<UnitVector> est{a};
    const std::vector<UnitVector> truth{b};
    CHECK(ds_distance(est, truth) == doctest::Approx(a.euclidean_distance(b)).epsilon(1e-15));
}

TEST_CASE("ds distance rejects mismatched lengths") {
    const UnitVector e1({1.0, 0.0});
    const std::vector<UnitVector> one{e1};
    const std::vector<UnitVector> two{e1, e1};
    CHECK_THROWS_AS(ds_distance(one, two), InvalidInput);
}

TEST_CASE("assignment solver agrees exactly with permutation scan") {
    Rng rng(derive_stream(5, "test.ds", 2));
    for (int trial = 0; trial < 300; ++trial) {
        const int k = 1 + static_cast<int>(rng.uniform_index(8));
        const int dim = 2 + static_cast<int>(rng.uniform_index(5));
        const std::vector<UnitVector> est = random_unit_points(rng, k, dim);
        const std::vector<UnitVector> truth = random_unit_points(rng, k, dim);
        CHECK(ds_distance(est, truth) == brute_force_ds(est, truth));
    }
}

TEST_CASE("ds distance is symmetric") {
    Rng rng(derive_stream(5, "test.ds", 3));
    for (int trial = 0; trial < 100; ++trial) {
        const std::vector<UnitVector> a = random_unit_points(rng, 4, 3);
        const std::vector<UnitVector> b = random_unit_points(rng, 4, 3);
        CHECK(ds_distance(a, b) == doctest::Approx(ds_distance(b, a)).epsilon(1e-12));
    }
}

TEST_CASE("wasserstein of a measure with itself is zero") {
    Rng rng(derive_stream(5, "test.w1", 0));
    for (int trial = 0; trial < 50; ++trial) {
        const DiscreteSpectralMeasure mu = random_discrete_measure(rng, 3, 4);
        CHECK(wasserstein1(mu, mu) <= 1e-12);
    }
}

TEST_CASE("wasserstein between point masses is the ground distance") {
    Rng rng(derive_stream(5, "test.w1", 1));
    for (int trial = 0; trial < 50; ++trial) {
        const UnitVector x = random_unit_point(rng, 5);
        const UnitVector y = random_unit_point(rng, 5);
        const DiscreteSpectralMeasure mu = DiscreteSpectralMeasure::make({x}, {1.0});
        const DiscreteSpectralMeasure nu = DiscreteSpectralMeasure::make({y}, {1.0});
        CHECK(wasserstein1(mu, nu) ==
              doctest::Approx(x.euclidean_distance(y)).epsilon(1e-12));
    }
}

TEST_CASE("wasserstein worked example: two atoms into one") {
    const UnitVector e1({1.0, 0.0});
    const UnitVector e2({0.0, 1.0});
    const auto mu = DiscreteSpectralMeasure::make({e1, e2}, {0.5, 0.5});
    const auto nu = DiscreteSpectralMeasure::make({e1}, {1.0});
    CHECK(wasserstein1(mu, nu) == doctest::Approx(0.5 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(wasserstein1(nu, mu) == doctest::Approx(0.70711).epsilon(1e-5));
}

TEST_CASE("wasserstein worked example: two-by-two transport") {
    // Solved by hand: sending mass from x2 to y1 costs sqrt(2), from x1 or x2
    // to y2 costs sqrt(2 - sqrt(2)). Demand 0.6 at y1 takes all of x1 (cost 0)
    // plus 0.3 from x2; the remaining 0.4 of x2 goes to y2. Any swap raises
    // the cost by sqrt(2) per unit.
    const UnitVector x1({1.0, 0.0});
    const UnitVector x2({0.0, 1.0});
    const UnitVector y2({std::sqrt(0.5), std::sqrt(0.5)});
    const auto mu = DiscreteSpectralMeasure::make({x1, x2}, {0.3, 0.7});
    const auto nu = DiscreteSpectralMeasure::make({x1, y2}, {0.6, 0.4});
    const double expected = 0.3 * std::sqrt(2.0) + 0.4 * std::sqrt(2.0 - std::sqrt(2.0));
    CHECK(wasserstein1(mu, nu) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("wasserstein metric axioms on random triples") {
    Rng rng(derive_stream(5, "test.w1", 2));
    for (int trial = 0; trial < 300; ++trial) {
        const int dim = 2 + static_cast<int>(rng.uniform_index(4));
        const DiscreteSpectralMeasure a = random_discrete_measure(rng, 1 + rng.uniform_index(4), dim);
        const DiscreteSpectralMeasure b = random_discrete_measure(rng, 1 + rng.uniform_index(4), dim);
        const DiscreteSpectralMeasure c = random_discrete_measure(rng, 1 + rng.uniform_index(4), dim);
        const double ab = wasserstein1(a, b);
        const double ba = wasserstein1(b, a);
        const double bc = wasserstein1(b, c);
        const double ac = wasserstein1(a, c);
        CHECK(std::abs(ab - ba) <= 1e-9);
        CHECK(ac <= ab + bc + 1e-9);
        CHECK(ab >= 0.0);
    }
}

TEST_CASE("wasserstein is invariant under splitting an atom in place") {
    Rng rng(derive_stream(5, "test.w1", 3));
    for (int trial = 0; trial < 50; ++trial) {
        const std::vector<UnitVector> xs = random_unit_points(rng, 3, 4);
        const std::vector<UnitVector> ys = random_unit_points(rng, 2, 4);
        const std::vector<double> px{0.2, 0.5, 0.3};
        const std::vector<double> py{0.45, 0.55};
        const double base = wasserstein1_points(xs, px, ys, py);

        const std::vector<UnitVector> split{xs[0], xs[1], xs[2], xs[1]};
        const std::vector<double> split_mass{0.2, 0.25, 0.3, 0.25};
        const double with_split = wasserstein1_points(split, split_mass, ys, py);
        CHECK(std::abs(base - with_split) <= 1e-12);
    }
}

TEST_CASE("transport solutions carry a valid optimality certificate") {
    Rng rng(derive_stream(5, "test.transport", 0));
    for (int trial = 0; trial < 100; ++trial) {
        const int rows = 1 + static_cast<int>(rng.uniform_index(6));
        const int cols = 1 + static_cast<int>(rng.uniform_index(6));
        Matrix cost(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) cost(i, j) = rng.uniform_open01() * 3.0;

        std::vector<double> supply(static_cast<std::size_t>(rows));
        std::vector<double> demand(static_cast<std::size_t>(cols));
        double s_total = 0.0, d_total = 0.0;
        for (double& s : supply) s_total += (s = 0.05 + rng.uniform_open01());
        for (double& t : demand) d_total += (t = 0.05 + rng.uniform_open01());
        for (double& s : supply) s /= s_total;
        for (double& t : demand) t /= d_total;
        double drift = std::accumulate(demand.begin(), demand.end(), 0.0) -
                       std::accumulate(supply.begin(), supply.end(), 0.0);
        supply.back() += drift;

        const TransportSolution solution = solve_transport(cost, supply, demand);
        CHECK(transport_is_optimal(solution, cost, supply, demand));
        CHECK(solution.cost >= -1e-12);
    }
}

TEST_CASE("degenerate equal masses do not stall the solver") {
    // Equal supplies and demands force zero-flow basic cells at every corner.
    const int n = 5;
    Matrix cost(n, n);
    Rng rng(derive_stream(5, "test.transport", 1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cost(i, j) = rng.uniform_open01();
    const std::vector<double> mass(static_cast<std::size_t>(n), 1.0 / n);
    const TransportSolution solution = solve_transport(cost, mass, mass);
    CHECK(transport_is_optimal(solution, cost, mass, mass));

    // With uniform marginals the optimum is an assignment (Birkhoff): compare
    // against the assignment solver on the same costs.
    const std::vector<int> match = detail::solve_assignment(cost);
    double assignment_cost = 0.0;
    for (int i = 0; i < n; ++i) assignment_cost += cost(i, match[i]) / n;
    CHECK(solution.cost == doctest::Approx(assignment_cost).epsilon(1e-12));
}

TEST_CASE("unbalanced marginals are rejected") {
    Matrix cost(1, 1);
    cost(0, 0) = 1.0;
    const std::vector<double> one{1.0};
    const std::vector<double> half{0.5};
    CHECK_THROWS_AS(solve_transport(cost, one, half), InvalidInput);
}
