#pragma once

#include "unimix/distribution.hpp"
#include "unimix/linalg.hpp"

#include <cstdint>
#include <string_view>

namespace unimix {

/// Row-stochastic square matrix. Rows sum to 1 within kRowTolerance and every
/// entry lies in [0, 1]; the constructor throws InvalidInput otherwise.
class StochasticMatrix {
public:
    static constexpr double kRowTolerance = 1e-12;

    explicit StochasticMatrix(Matrix p);

    std::size_t size() const noexcept { return p_.rows(); }
    double operator()(std::size_t i, std::size_t j) const noexcept { return p_(i, j); }
    const Matrix& matrix() const noexcept { return p_; }

private:
    Matrix p_;
};

enum class SolveMethod { linear, cesaro };

std::string_view to_string(SolveMethod m);
SolveMethod parse_solve_method(std::string_view name);

struct SolveOptions {
    SolveMethod method = SolveMethod::linear;
    double tol = 1e-12;
    std::uint64_t max_iters = 1'000'000;
};

/// True iff the graph with an edge i -> j for every P(i, j) > 0 is strongly
/// connected.
bool is_irreducible(const StochasticMatrix& p);

/// Period of state 0: gcd of the lengths of closed walks through it.
std::size_t period(const StochasticMatrix& p);

/// Solves mu (P - I) = 0, sum(mu) = 1 by replacing the last equation of
/// (P^T - I) with the normalization row and factoring with partial pivoting.
/// Throws SingularSystem or NonPositiveResult for reducible input.
Distribution stationary_linear(const StochasticMatrix& p);

/// Cesaro means of mu0 P^j from uniform mu0 over consecutive windows whose
/// lengths are d, 2d, 4d, ... with d the period of the class containing
/// state 0. A window spanning whole periods averages the oscillation out
/// exactly, so periodic chains converge at the aperiodic mixing rate.
/// Stops when two successive window means differ by less than opts.tol in
/// the sup norm. Throws NoConvergence after opts.max_iters matrix-vector
/// products.
Distribution stationary_cesaro(const StochasticMatrix& p, const SolveOptions& opts = {});

/// Dispatches on opts.method.
Distribution stationary(const StochasticMatrix& p, const SolveOptions& opts = {});

/// ||mu P - mu||_inf.
double residual(const StochasticMatrix& p, std::span<const double> mu);

}  // namespace unimix
