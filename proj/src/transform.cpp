#include "tailclust/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tailclust {

namespace detail {

void rank_column(std::span<const double> column, std::span<double> out) {
    const int n = static_cast<int>(column.size());
    std::vector<int> order(column.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return column[a] < column[b]; });

    // Rows tied in value share the same strictly-smaller count, i.e. the
    // position of the first element of their run in the sorted order.
    int pos = 0;
    while (pos < n) {
        int end = pos;
        while (end + 1 < n && column[order[end + 1]] == column[order[pos]]) ++end;
        const double value = static_cast<double>(n) / static_cast<double>(n - pos);
        for (int t = pos; t <= end; ++t) out[order[t]] = value;
        pos = end + 1;
    }
}

}  // namespace detail

RankTransformResult rank_transform(const ObservationMatrix& obs) {
    const int n = obs.n();
    const int d = obs.d();
    if (n < 2) throw InvalidInput("TooFewRows: rank transform needs at least two rows");

    Matrix out(n, d);
    std::vector<char> degenerate(static_cast<std::size_t>(d), 0);

#pragma omp parallel for schedule(static)
    for (int j = 0; j < d; ++j) {
        std::vector<double> column(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) column[i] = obs.data(i, j);
        std::vector<double> transformed(static_cast<std::size_t>(n));
        detail::rank_column(column, transformed);
        for (int i = 0; i < n; ++i) out(i, j) = transformed[i];

        const double first = column.front();
        degenerate[j] = std::all_of(column.begin(), column.end(),
                                    [&](double x) { return x == first; })
                            ? 1
                            : 0;
    }

    RankTransformResult result{std::move(out), {}};
    for (int j = 0; j < d; ++j)
        if (degenerate[j]) result.degenerate_columns.push_back(j);
    return result;
}

AngularSample select_extremes_count(const Matrix& transformed, int count, NormKind norm) {
    const int n = transformed.rows();
    if (n < 1 || transformed.cols() < 1)
        throw InvalidInput("EmptySample: nothing to select from");
    if (count < 1 || count > n)
        throw InvalidInput("EmptySelection: requested extreme count outside [1, n]");

    std::vector<double> norms(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) norms[i] = vector_norm(transformed.row(i), norm);

    std::vector<int> order(norms.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (norms[a] != norms[b]) return norms[a] > norms[b];
        return a < b;
    });

    const double threshold = norms[order[static_cast<std::size_t>(count) - 1]];
    if (!(threshold > 0.0))
        throw InvalidInput("BadThreshold: selected rows have zero norm");

    std::vector<int> kept(order.begin(), order.begin() + count);
    std::sort(kept.begin(), kept.end());

    std::vector<UnitVector> points;
    std::vector<double> kept_norms;
    points.reserve(kept.size());
    kept_norms.reserve(kept.size());
    for (int row : kept) {
        points.push_back(UnitVector::normalized(transformed.row(row)));
        kept_norms.push_back(norms[row]);
    }
    return AngularSample::make(std::move(points), std::move(kept), std::move(kept_norms),
                               threshold, n);
}

AngularSample select_extremes(const Matrix& transformed, double fraction, NormKind norm) {
    if (!(fraction > 0.0) || fraction > 1.0)
        throw InvalidInput("EmptySelection: fraction must lie in (0, 1]");
    const int n = transformed.rows();
    const int count = static_cast<int>(std::ceil(fraction * n));
    return select_extremes_count(transformed, std::min(count, n), norm);
}

namespace {

ObservationMatrix negated(const ObservationMatrix& obs) {
    Matrix data(obs.n(), obs.d());
    for (int i = 0; i < obs.n(); ++i)
        for (int j = 0; j < obs.d(); ++j) data(i, j) = -obs.data(i, j);
    return ObservationMatrix::make(std::move(data), obs.labels);
}

}  // namespace

PipelineResult fit_pipeline(const ObservationMatrix& obs, double fraction, NormKind norm,
                            bool negate) {
    RankTransformResult ranked = rank_transform(negate ? negated(obs) : obs);
    return {select_extremes(ranked.transformed, fraction, norm),
            std::move(ranked.degenerate_columns)};
}

PipelineResult fit_pipeline_count(const ObservationMatrix& obs, int count, NormKind norm,
                                  bool negate) {
    RankTransformResult ranked = rank_transform(negate ? negated(obs) : obs);
    return {select_extremes_count(ranked.transformed, count, norm),
            std::move(ranked.degenerate_columns)};
}

}  // namespace tailclust
