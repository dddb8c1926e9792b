#include "unimix/linalg.hpp"

#include "unimix/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace unimix {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::without_row(std::size_t skip) const {
    Matrix out(rows_ - 1, cols_);
    std::size_t dst = 0;
    for (std::size_t r = 0; r < rows_; ++r) {
        if (r == skip) continue;
        std::copy(row(r).begin(), row(r).end(), out.row(dst).begin());
        ++dst;
    }
    return out;
}

std::vector<double> left_multiply(std::span<const double> x, const Matrix& a) {
    std::vector<double> y(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double xi = x[i];
        if (xi == 0.0) continue;
        auto r = a.row(i);
        for (std::size_t j = 0; j < a.cols(); ++j) y[j] += xi * r[j];
    }
    return y;
}

namespace {

std::size_t pivot_row(const Matrix& a, std::size_t col) {
    std::size_t best = col;
    double best_abs = std::abs(a(col, col));
    for (std::size_t r = col + 1; r < a.rows(); ++r) {
        const double v = std::abs(a(r, col));
        if (v > best_abs) {
            best_abs = v;
            best = r;
        }
    }
    return best;
}

void swap_rows(Matrix& a, std::size_t r1, std::size_t r2) {
    if (r1 == r2) return;
    std::swap_ranges(a.row(r1).begin(), a.row(r1).end(), a.row(r2).begin());
}

}  // namespace

double determinant(Matrix a) {
    const std::size_t n = a.rows();
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        const std::size_t p = pivot_row(a, col);
        if (a(p, col) == 0.0) return 0.0;
        if (p != col) {
            swap_rows(a, p, col);
            det = -det;
        }
        const double pivot = a(col, col);
        det *= pivot;
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a(r, col) / pivot;
            if (factor == 0.0) continue;
            for (std::size_t c = col + 1; c < n; ++c) a(r, c) -= factor * a(col, c);
        }
    }
    return det;
}

SolveResult lu_solve(Matrix a, std::vector<double> b, double pivot_tol) {
    const std::size_t n = a.rows();
    double scale = 0.0;
    for (std::size_t r = 0; r < n; ++r)
        for (double v : a.row(r)) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) throw SingularSystem("zero matrix");

    double min_ratio = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        const std::size_t p = pivot_row(a, col);
        const double ratio = std::abs(a(p, col)) / scale;
        min_ratio = std::min(min_ratio, ratio);
        if (ratio <= pivot_tol)
            throw SingularSystem("pivot " + std::to_string(ratio) + " below tolerance at column " +
                                 std::to_string(col));
        swap_rows(a, p, col);
        std::swap(b[p], b[col]);
        const double pivot = a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a(r, col) / pivot;
            if (factor == 0.0) continue;
            for (std::size_t c = col + 1; c < n; ++c) a(r, c) -= factor * a(col, c);
            b[r] -= factor * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double acc = b[i];
        for (std::size_t c = i + 1; c < n; ++c) acc -= a(i, c) * x[c];
        x[i] = acc / a(i, i);
    }
    return {std::move(x), min_ratio};
}

}  // namespace unimix
