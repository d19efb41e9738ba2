#ifndef TAILCLUST_MAXLINEAR_HPP
#define TAILCLUST_MAXLINEAR_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tailclust/rng.hpp"
#include "tailclust/types.hpp"

namespace tailclust {

/// Inverse of the standard Frechet CDF exp(-1/z): u -> -1/log(u), u in (0,1).
double frechet_quantile(double u);

/// i.i.d. standard Frechet draws by inverse transform.
std::vector<double> sample_frechet(int count, Rng& rng);

/// Draws n rows X_j = max_i factors(j,i) * Z_i with a fresh factor vector per
/// row. Row r uses the stream (seed, "maxlinear.row", r), so the output is
/// independent of the parallel schedule.
ObservationMatrix simulate(const MaxLinearModel& model, int n, std::uint64_t seed);

/// The discrete spectral measure of a max-linear model: one atom per factor
/// column, in the column's direction, weighted by the column's norm relative
/// to the total. `norm` sets the norm used for the weights; atoms are always
/// reported on the Euclidean unit sphere (the direction is norm-independent).
DiscreteSpectralMeasure spectral_measure(const MaxLinearModel& model,
                                         NormKind norm = NormKind::euclidean);

/// Factor directions as a plain list (no duplicate merging), for metrics that
/// compare center lists of equal length.
std::vector<UnitVector> factor_directions(const MaxLinearModel& model);

/// The four randomized factor layouts used by the simulation study.
enum class Constellation { d4k2, d4k6, d6k6, d10k6 };

const char* constellation_name(Constellation c);
std::optional<Constellation> parse_constellation(std::string_view name);
int constellation_dim(Constellation c);
int constellation_factors(Constellation c);

/// Draws the first k-1 factors from the constellation's uniform patterns and
/// completes the last one so every margin sums to 1. Regenerates in the
/// (probability zero) event that a factor column comes out identically zero.
MaxLinearModel random_model(Constellation c, Rng& rng);

namespace detail {
/// Number of uniforms one model draw consumes.
int uniform_count(Constellation c);
/// Builds the model from explicitly supplied uniforms (testing hook).
MaxLinearModel model_from_uniforms(Constellation c, std::span<const double> uniforms);
}  // namespace detail

}  // namespace tailclust

#endif
