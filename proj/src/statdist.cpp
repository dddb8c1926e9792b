#include "unimix/statdist.hpp"

#include "unimix/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

namespace unimix {

StochasticMatrix::StochasticMatrix(Matrix p) : p_(std::move(p)) {
    if (p_.rows() == 0 || p_.rows() != p_.cols())
        throw InvalidInput("stochastic matrix must be square and non-empty");
    for (std::size_t i = 0; i < p_.rows(); ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < p_.cols(); ++j) {
            const double v = p_(i, j);
            if (!(v >= 0.0 && v <= 1.0)) {
                std::ostringstream msg;
                msg << "entry (" << i << "," << j << ") = " << v << " outside [0,1]";
                throw InvalidInput(msg.str());
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > kRowTolerance) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "row " << i << " sums to " << sum;
            throw InvalidInput(msg.str());
        }
    }
}

std::string_view to_string(SolveMethod m) {
    return m == SolveMethod::linear ? "linear" : "cesaro";
}

SolveMethod parse_solve_method(std::string_view name) {
    if (name == "linear") return SolveMethod::linear;
    if (name == "cesaro") return SolveMethod::cesaro;
    throw InvalidInput("unknown solve method '" + std::string(name) + "'");
}

namespace {

// Nodes reachable from node 0, following edges forward or backward.
std::vector<bool> reachable_from_zero(const Matrix& p, bool reverse) {
    const std::size_t n = p.rows();
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v = 0; v < n; ++v) {
            const double w = reverse ? p(v, u) : p(u, v);
            if (w > 0.0 && !seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
        }
    }
    return seen;
}

}  // namespace

bool is_irreducible(const StochasticMatrix& p) {
    // Strongly connected iff every node reaches 0 and is reached from 0.
    const auto fwd = reachable_from_zero(p.matrix(), false);
    const auto bwd = reachable_from_zero(p.matrix(), true);
    return std::all_of(fwd.begin(), fwd.end(), [](bool b) { return b; }) &&
           std::all_of(bwd.begin(), bwd.end(), [](bool b) { return b; });
}

std::size_t period(const StochasticMatrix& p) {
    // BFS levels from 0; every edge u -> v inside the class shifts the level
    // by a multiple of the period.
    const Matrix& m = p.matrix();
    const std::size_t n = p.size();
    const auto back = reachable_from_zero(m, true);
    constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
    std::vector<std::size_t> level(n, kUnseen);
    std::vector<std::size_t> queue{0};
    level[0] = 0;
    std::size_t d = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t u = queue[head];
        for (std::size_t v = 0; v < n; ++v) {
            if (!(m(u, v) > 0.0) || !back[v]) continue;
            if (level[v] == kUnseen) {
                level[v] = level[u] + 1;
                queue.push_back(v);
            } else {
                const auto shift = static_cast<std::ptrdiff_t>(level[u] + 1) - static_cast<std::ptrdiff_t>(level[v]);
                d = std::gcd(d, static_cast<std::size_t>(std::abs(shift)));
            }
        }
    }
    return d == 0 ? 1 : d;
}

Distribution stationary_linear(const StochasticMatrix& p) {
    const std::size_t n = p.size();
    Matrix a = p.matrix().transposed();
    for (std::size_t i = 0; i < n; ++i) a(i, i) -= 1.0;
    for (std::size_t j = 0; j < n; ++j) a(n - 1, j) = 1.0;
    std::vector<double> rhs(n, 0.0);
    rhs[n - 1] = 1.0;
    auto solved = lu_solve(std::move(a), std::move(rhs));
    return Distribution::normalized(std::move(solved.x));
}

Distribution stationary_cesaro(const StochasticMatrix& p, const SolveOptions& opts) {
    if (!(opts.tol > 0.0)) throw InvalidInput("cesaro tolerance must be positive");
    if (opts.max_iters < 1) throw InvalidInput("cesaro max_iters must be >= 1");

    const std::size_t n = p.size();
    std::vector<double> power(n, 1.0 / static_cast<double>(n));
    std::vector<double> previous;
    std::uint64_t iters = 0;
    for (std::uint64_t window = period(p);; window *= 2) {
        std::vector<double> sum(n, 0.0);
        for (std::uint64_t t = 0; t < window; ++t) {
            if (iters == opts.max_iters) {
                std::ostringstream msg;
                msg << "cesaro averaging did not reach tolerance " << opts.tol << " within "
                    << opts.max_iters << " iterations";
                throw NoConvergence(msg.str());
            }
            power = left_multiply(power, p.matrix());
            ++iters;
            for (std::size_t s = 0; s < n; ++s) sum[s] += power[s];
        }
        for (double& v : sum) v /= static_cast<double>(window);
        if (!previous.empty() && max_abs_diff(sum, previous) < opts.tol)
            return Distribution::normalized(std::move(sum));
        previous = std::move(sum);
    }
}

Distribution stationary(const StochasticMatrix& p, const SolveOptions& opts) {
    return opts.method == SolveMethod::linear ? stationary_linear(p) : stationary_cesaro(p, opts);
}

double residual(const StochasticMatrix& p, std::span<const double> mu) {
    if (mu.size() != p.size()) throw InvalidInput("residual: dimension mismatch");
    const auto moved = left_multiply(mu, p.matrix());
    return max_abs_diff(moved, mu);
}

}  // namespace unimix
