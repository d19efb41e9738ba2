#ifndef TAILCLUST_MATRIX_HPP
#define TAILCLUST_MATRIX_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tailclust {

/// Thrown when an operation receives data that violates its contract
/// (non-finite entries, impossible selection sizes, mismatched lengths, ...).
/// The message starts with a short error name, e.g. "KTooLarge: ...".
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class NormKind { euclidean, sup, l1 };

const char* norm_name(NormKind kind);
std::optional<NormKind> parse_norm(std::string_view name);

double vector_norm(std::span<const double> v, NormKind kind);

/// Dense row-major matrix of doubles. Rows are observations throughout.
class Matrix {
public:
    Matrix() = default;

    Matrix(int rows, int cols, double value = 0.0) : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0)
            throw InvalidInput("BadShape: matrix dimensions must be nonnegative");
        data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), value);
    }

    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) {
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }
    double operator()(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }

    std::span<double> row(int i) {
        return {data_.data() + static_cast<std::size_t>(i) * cols_,
                static_cast<std::size_t>(cols_)};
    }
    std::span<const double> row(int i) const {
        return {data_.data() + static_cast<std::size_t>(i) * cols_,
                static_cast<std::size_t>(cols_)};
    }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool all_finite() const {
        for (double x : data_)
            if (!std::isfinite(x)) return false;
        return true;
    }

    bool operator==(const Matrix& other) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

}  // namespace tailclust

#endif
