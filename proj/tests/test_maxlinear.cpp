#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "tailclust/maxlinear.hpp"
#include "tailclust/metrics.hpp"
#include "tailclust/rng.hpp"
#include "tailclust/transform.hpp"

using namespace tailclust;
using oracles::ks_statistic_against_frechet;

namespace {

double empirical_cdf_at(const std::vector<double>& sorted, double z) {
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), z);
    return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
}

}  // namespace

TEST_CASE("frechet quantile inverts the CDF") {
    CHECK(frechet_quantile(std::exp(-1.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(frechet_quantile(1e-300) < 1e-2);
    CHECK(frechet_quantile(1.0 - 1e-12) > 1e9);
    CHECK_THROWS_AS(frechet_quantile(0.0), InvalidInput);
    CHECK_THROWS_AS(frechet_quantile(1.0), InvalidInput);
    // monotone
    double prev = 0.0;
    for (double u = 0.05; u < 1.0; u += 0.05) {
        const double z = frechet_quantile(u);
        CHECK(z > prev);
        prev = z;
    }
}

TEST_CASE("frechet draws match the closed-form CDF") {
    Rng rng(derive_stream(4, "test.frechet", 0));
    std::vector<double> draws = sample_frechet(100000, rng);
    for (double z : draws) CHECK(z > 0.0);
    std::sort(draws.begin(), draws.end());
    CHECK(std::abs(empirical_cdf_at(draws, 0.5) - 0.1353) < 0.01);
    CHECK(std::abs(empirical_cdf_at(draws, 1.0) - 0.3679) < 0.01);
    CHECK(std::abs(empirical_cdf_at(draws, 2.0) - 0.6065) < 0.01);
}

TEST_CASE("single-factor models are comonotone") {
    const MaxLinearModel model{Matrix::from_rows({{1.0}, {1.0}, {1.0}})};
    const ObservationMatrix data = simulate(model, 50, 9);
    for (int i = 0; i < data.n(); ++i) {
        CHECK(data.data(i, 0) == data.data(i, 1));
        CHECK(data.data(i, 1) == data.data(i, 2));
    }
}

TEST_CASE("identity loadings give independent coordinates") {
    const MaxLinearModel model{Matrix::from_rows({{1.0, 0.0}, {0.0, 1.0}})};
    const ObservationMatrix data = simulate(model, 2000, 11);
    int equal_rows = 0;
    for (int i = 0; i < data.n(); ++i)
        if (data.data(i, 0) == data.data(i, 1)) ++equal_rows;
    CHECK(equal_rows == 0);

    // sign test on joint exceedance of the medians: independence puts ~1/4 of
    // rows in the upper-right quadrant
    const double median = 1.0 / std::log(2.0);  // Frechet median
    int both = 0;
    for (int i = 0; i < data.n(); ++i)
        if (data.data(i, 0) > median && data.data(i, 1) > median) ++both;
    CHECK(std::abs(both / 2000.0 - 0.25) < 0.03);
}

TEST_CASE("standardized margins stay standard Frechet") {
    const MaxLinearModel model{Matrix::from_rows({{0.5, 0.5}, {0.5, 0.5}})};
    const ObservationMatrix data = simulate(model, 100000, 13);
    std::vector<double> first;
    first.reserve(static_cast<std::size_t>(data.n()));
    for (int i = 0; i < data.n(); ++i) first.push_back(data.data(i, 0));
    std::sort(first.begin(), first.end());
    CHECK(std::abs(empirical_cdf_at(first, 1.0) - std::exp(-1.0)) < 0.01);
}

TEST_CASE("simulation margins pass a KS check for every constellation") {
    int index = 0;
    for (Constellation c : {Constellation::d4k2, Constellation::d4k6, Constellation::d6k6,
                            Constellation::d10k6}) {
        Rng rng(derive_stream(4, "test.ks.model", index));
        const MaxLinearModel model = random_model(c, rng);
        const ObservationMatrix data =
            simulate(model, 20000, derive_stream(4, "test.ks.sim", index));
        for (int j = 0; j < data.d(); ++j) {
            std::vector<double> margin;
            margin.reserve(static_cast<std::size_t>(data.n()));
            for (int i = 0; i < data.n(); ++i) margin.push_back(data.data(i, j));
            CHECK(ks_statistic_against_frechet(std::move(margin)) < 0.02);
        }
        ++index;
    }
}

TEST_CASE("spectral measure of identity loadings") {
    const MaxLinearModel model{Matrix::from_rows({{1.0, 0.0}, {0.0, 1.0}})};
    const DiscreteSpectralMeasure measure = spectral_measure(model);
    REQUIRE(measure.size() == 2);
    CHECK(measure.atoms[0] == UnitVector({1.0, 0.0}));
    CHECK(measure.atoms[1] == UnitVector({0.0, 1.0}));
    CHECK(measure.probs[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(measure.probs[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("spectral measure arithmetic on asymmetric loadings") {
    const MaxLinearModel model{Matrix::from_rows({{0.6, 0.4}, {0.4, 0.6}})};
    const DiscreteSpectralMeasure measure = spectral_measure(model);
    REQUIRE(measure.size() == 2);
    CHECK(measure.atoms[0][0] == doctest::Approx(0.83205).epsilon(1e-5));
    CHECK(measure.atoms[0][1] == doctest::Approx(0.55470).epsilon(1e-5));
    CHECK(measure.atoms[1][0] == doctest::Approx(0.55470).epsilon(1e-5));
    CHECK(measure.atoms[1][1] == doctest::Approx(0.83205).epsilon(1e-5));
    CHECK(measure.probs[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(measure.probs[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("single factor concentrates all mass on one atom") {
    const MaxLinearModel model{Matrix::from_rows({{1.0}, {1.0}})};
    const DiscreteSpectralMeasure measure = spectral_measure(model);
    REQUIRE(measure.size() == 1);
    CHECK(measure.probs[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("coinciding factor directions merge into one atom") {
    const MaxLinearModel model{Matrix::from_rows({{0.5, 0.5}, {0.5, 0.5}})};
    const DiscreteSpectralMeasure measure = spectral_measure(model);
    CHECK(measure.size() == 1);
    CHECK(measure.probs[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("atoms are unit vectors and probabilities sum to one") {
    Rng rng(derive_stream(4, "test.spectral", 0));
    for (Constellation c : {Constellation::d4k2, Constellation::d4k6, Constellation::d6k6,
                            Constellation::d10k6}) {
        for (int trial = 0; trial < 10; ++trial) {
            const MaxLinearModel model = random_model(c, rng);
            const DiscreteSpectralMeasure measure = spectral_measure(model);
            double total = 0.0;
            for (double p : measure.probs) total += p;
            CHECK(std::abs(total - 1.0) <= 1e-9);
            for (const UnitVector& atom : measure.atoms) {
                double nsq = 0.0;
                for (double x : atom.coords()) nsq += x * x;
                CHECK(std::abs(nsq - 1.0) <= 1e-11);
            }
        }
    }
}

TEST_CASE("constellation builder consumes uniforms in margin order") {
    const std::vector<double> uniforms{0.2, 0.4, 0.6, 0.8};
    const MaxLinearModel model = detail::model_from_uniforms(Constellation::d4k2, uniforms);
    CHECK(model.factors(0, 0) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(model.factors(1, 0) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(model.factors(2, 0) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(model.factors(3, 0) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(model.factors(0, 1) == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(model.factors(1, 1) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(model.factors(2, 1) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(model.factors(3, 1) == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("zero patterns land where the layout puts them") {
    std::vector<double> uniforms(12);
    for (std::size_t i = 0; i < uniforms.size(); ++i)
        uniforms[i] = static_cast<double>(i + 1) / 100.0;
    const MaxLinearModel model = detail::model_from_uniforms(Constellation::d4k6, uniforms);
    // third factor: zeros on margins 1 and 3, draws 7 and 8 scaled by 1/3
    CHECK(model.factors(0, 2) == 0.0);
    CHECK(model.factors(1, 2) == doctest::Approx(0.07 / 3.0).epsilon(1e-14));
    CHECK(model.factors(2, 2) == 0.0);
    CHECK(model.factors(3, 2) == doctest::Approx(0.08 / 3.0).epsilon(1e-14));
    // second factor: draws 5 and 6 on margins 1 and 3
    CHECK(model.factors(0, 1) == doctest::Approx(0.05 / 3.0).epsilon(1e-14));
    CHECK(model.factors(1, 1) == 0.0);
    CHECK(model.factors(2, 1) == doctest::Approx(0.06 / 3.0).epsilon(1e-14));
    CHECK(model.factors(3, 1) == 0.0);
}

TEST_CASE("random models are standardized and valid for every constellation") {
    Rng rng(derive_stream(4, "test.random_model", 0));
    for (Constellation c : {Constellation::d4k2, Constellation::d4k6, Constellation::d6k6,
                            Constellation::d10k6}) {
        for (int trial = 0; trial < 50; ++trial) {
            const MaxLinearModel model = random_model(c, rng);
            CHECK(model.d() == constellation_dim(c));
            CHECK(model.k() == constellation_factors(c));
            CHECK_FALSE(validate_model(model).has_value());
            for (int j = 0; j < model.d(); ++j) {
                double sum = 0.0;
                for (int i = 0; i < model.k(); ++i) sum += model.factors(j, i);
                CHECK(std::abs(sum - 1.0) <= 1e-12);
            }
        }
    }
}

TEST_CASE("end-to-end fits recover the analytic atoms") {
    Rng model_rng(derive_stream(4, "test.end2end", 0));
    const MaxLinearModel model = random_model(Constellation::d4k2, model_rng);
    const std::vector<UnitVector> atoms = factor_directions(model);

    std::vector<double> distances;
    for (int s = 0; s < 20; ++s) {
        const ObservationMatrix data =
            simulate(model, 5000, derive_stream(4, "test.end2end.sim", s));
        const PipelineResult pipeline = fit_pipeline(data, 0.05);
        KMeansConfig cfg;
        cfg.k = 2;
        cfg.restarts = 50;
        cfg.seed = derive_stream(4, "test.end2end.fit", s);
        const ClusterModel fit = spherical_kmeans(pipeline.sample, cfg);
        distances.push_back(ds_distance(fit.centers, atoms));
    }
    std::sort(distances.begin(), distances.end());
    CHECK(distances[distances.size() / 2] < 0.15);
}

TEST_CASE("constellation names round-trip") {
    for (Constellation c : {Constellation::d4k2, Constellation::d4k6, Constellation::d6k6,
                            Constellation::d10k6})
        CHECK(parse_constellation(constellation_name(c)) == c);
    CHECK_FALSE(parse_constellation("d3k9").has_value());
}
