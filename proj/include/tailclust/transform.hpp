#ifndef TAILCLUST_TRANSFORM_HPP
#define TAILCLUST_TRANSFORM_HPP

#include <vector>

#include "tailclust/types.hpp"

namespace tailclust {

struct RankTransformResult {
    Matrix transformed;
    /// Columns whose values are all equal. They carry no tail signal (every
    /// transformed entry is 1) but do not abort the analysis.
    std::vector<int> degenerate_columns;
};

/// Marginal standardization through the left-continuous empirical CDF:
/// entry (j,i) becomes n / (n - #{rows with strictly smaller value in column i}).
/// Output entries lie in [1, n]; ties map to equal values. Requires n >= 2.
RankTransformResult rank_transform(const ObservationMatrix& obs);

/// Keeps exactly `count` rows with the largest norms (ties at the cutoff are
/// resolved toward lower row indices), records the cutoff as the threshold,
/// and projects each kept row onto the Euclidean unit sphere. Kept rows appear
/// in their original order.
AngularSample select_extremes_count(const Matrix& transformed, int count,
                                    NormKind norm = NormKind::euclidean);

/// Same, keeping ceil(fraction * n) rows; fraction must lie in (0, 1].
AngularSample select_extremes(const Matrix& transformed, double fraction,
                              NormKind norm = NormKind::euclidean);

struct PipelineResult {
    AngularSample sample;
    std::vector<int> degenerate_columns;
};

/// Optional negation, rank transform, then extreme selection — the full
/// standardize-select-project chain in one call.
PipelineResult fit_pipeline(const ObservationMatrix& obs, double fraction,
                            NormKind norm = NormKind::euclidean, bool negate = false);
PipelineResult fit_pipeline_count(const ObservationMatrix& obs, int count,
                                  NormKind norm = NormKind::euclidean, bool negate = false);

namespace detail {
/// Fills `out` (length n) with the transformed values of one column.
void rank_column(std::span<const double> column, std::span<double> out);
}  // namespace detail

}  // namespace tailclust

#endif
