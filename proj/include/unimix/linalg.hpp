#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace unimix {

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const noexcept {
        return {data_.data() + r * cols_, cols_};
    }

    Matrix transposed() const;

    /// Copy with row `r` removed.
    Matrix without_row(std::size_t r) const;

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Row vector times matrix: (x^T A)_j = sum_i x_i A(i, j).
std::vector<double> left_multiply(std::span<const double> x, const Matrix& a);

/// Determinant by Gaussian elimination with partial pivoting. Empty matrix has
/// determinant 1.
double determinant(Matrix a);

/// Result of an LU solve. `min_pivot_ratio` is the smallest |pivot| divided by
/// the largest absolute entry of the input, a cheap singularity indicator.
struct SolveResult {
    std::vector<double> x;
    double min_pivot_ratio = 0.0;
};

/// Solves A x = b with partial pivoting. Throws SingularSystem when a pivot is
/// exactly zero or smaller than `pivot_tol` relative to the largest entry.
SolveResult lu_solve(Matrix a, std::vector<double> b, double pivot_tol = 1e-14);

}  // namespace unimix
