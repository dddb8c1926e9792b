#include "unimix/combine.hpp"

#include "unimix/error.hpp"
#include "unimix/permutation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

namespace unimix {

std::string_view to_string(Evaluator e) {
    return e == Evaluator::permsum ? "permsum" : "determinant";
}

Evaluator parse_evaluator(std::string_view name) {
    if (name == "permsum") return Evaluator::permsum;
    if (name == "determinant") return Evaluator::determinant;
    throw InvalidInput("unknown evaluator '" + std::string(name) + "'");
}

double NuVector::entrywise_sum() const { return std::accumulate(nu.begin(), nu.end(), 0.0); }

Matrix f_kernel(const PolicyFamily& family, const MixtureVector& lambdas) {
    const std::size_t n = family.num_diff_states();
    if (lambdas.size() != n)
        throw InvalidInput("mixture vector has length " + std::to_string(lambdas.size()) +
                           ", expected " + std::to_string(n));
    const auto& mus = family.base_distributions();
    Matrix f(n + 1, n);
    for (std::size_t j = 0; j <= n; ++j) {
        const auto& word = family.base_words()[j];
        for (std::size_t i = 0; i < n; ++i) {
            const double mass = mus[j][family.diff_states()[i]];
            f(j, i) = (word[i] == 1 ? lambdas[i] : lambdas[i] - 1.0) * mass;
        }
    }
    return f;
}

namespace {

double term_scale(const Matrix& f) {
    double scale = static_cast<double>(f.rows());
    for (std::size_t i = 0; i < f.cols(); ++i) {
        double col = 0.0;
        for (std::size_t j = 0; j < f.rows(); ++j) col += std::abs(f(j, i));
        scale *= col;
    }
    return scale;
}

NuVector nu_permsum(const Matrix& f, const std::vector<Distribution>& mus) {
    const std::size_t n = f.cols();
    const std::size_t num_states = mus.front().size();
    NuVector out;
    out.nu.assign(num_states, 0.0);
    out.cofactors.assign(n + 1, 0.0);
    for (std::size_t k = 0; k <= n; ++k) {
        const auto& mu_k = mus[k];
        for_each_gamma_prime(n, k, [&](std::span<const std::size_t> gamma, int sign) {
            double prod = static_cast<double>(sign);
            for (std::size_t j = 0; j <= n; ++j)
                if (j != k) prod *= f(j, gamma[j]);
            out.cofactors[k] += prod;
            for (std::size_t s = 0; s < num_states; ++s) out.nu[s] += prod * mu_k[s];
        });
    }
    out.denominator = out.entrywise_sum();
    return out;
}

NuVector nu_determinant(const Matrix& f, const std::vector<Distribution>& mus) {
    const std::size_t n = f.cols();
    const std::size_t num_states = mus.front().size();
    NuVector out;
    out.cofactors.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        // Entry (k, n) of the augmented (n+1)x(n+1) matrix has sign (-1)^(k+n).
        const double minor = determinant(f.without_row(k));
        out.cofactors[k] = ((k + n) % 2 == 0) ? minor : -minor;
    }
    out.nu.assign(num_states, 0.0);
    for (std::size_t k = 0; k <= n; ++k) {
        const double c = out.cofactors[k];
        if (c == 0.0) continue;
        for (std::size_t s = 0; s < num_states; ++s) out.nu[s] += c * mus[k][s];
    }
    out.denominator = std::accumulate(out.cofactors.begin(), out.cofactors.end(), 0.0);
    return out;
}

}  // namespace

NuVector nu_vector(const PolicyFamily& family, const MixtureVector& lambdas, Evaluator evaluator) {
    const Matrix f = f_kernel(family, lambdas);
    const auto& mus = family.base_distributions();
    NuVector out = evaluator == Evaluator::permsum ? nu_permsum(f, mus) : nu_determinant(f, mus);
    out.term_scale = term_scale(f);
    return out;
}

Distribution normalize(const NuVector& v) {
    double max_abs = 0.0;
    for (double x : v.nu) max_abs = std::max(max_abs, std::abs(x));
    const double den = v.denominator;
    auto fail = [&](const char* why) {
        std::ostringstream msg;
        msg << "degenerate denominator (" << why << "): sum " << den << ", max |nu| " << max_abs
            << ", term scale " << v.term_scale;
        throw DegenerateDenominator(msg.str());
    };
    if (!std::isfinite(den) || !std::isfinite(max_abs)) fail("non-finite weights");
    if (max_abs == 0.0) fail("all weights are zero");
    if (std::abs(den) < kDenominatorRelTol * max_abs) fail("sum small relative to weights");
    if (std::abs(den) <= kCancellationRelTol * v.term_scale) fail("weights cancelled");

    std::vector<double> probs(v.nu.size());
    for (std::size_t s = 0; s < probs.size(); ++s) probs[s] = v.nu[s] / den;
    return Distribution::normalized(std::move(probs));
}

Distribution combine_randomized(const PolicyFamily& family, const MixtureVector& lambdas,
                                Evaluator evaluator) {
    return normalize(nu_vector(family, lambdas, evaluator));
}

NuVector gamma_nu_vector(const PolicyFamily& family, const BinaryWord& word) {
    const PolicyFamily relabeled = relabel_for_target(family, word);
    const std::size_t n = relabeled.num_diff_states();
    const auto& mus = relabeled.base_distributions();
    const auto& states = relabeled.diff_states();
    const std::size_t num_states = relabeled.mdp().num_states();

    NuVector out;
    out.nu.assign(num_states, 0.0);
    out.cofactors.assign(n + 1, 0.0);
    bool any = false;
    for (std::size_t k = 0; k <= n; ++k) {
        for (const auto& gamma : enumerate_gamma(relabeled, k)) {
            any = true;
            double prod = static_cast<double>(gamma.sign);
            for (std::size_t j = 0; j <= n; ++j)
                if (j != k) prod *= mus[j][states[gamma.image[j]]];
            out.cofactors[k] += prod;
            for (std::size_t s = 0; s < num_states; ++s) out.nu[s] += prod * mus[k][s];
        }
    }
    if (!any)
        throw EmptyNumerator("every restricted permutation set is empty for target '" + word.str() +
                             "'");
    out.denominator = out.entrywise_sum();
    out.term_scale = term_scale(f_kernel(relabeled, MixtureVector(std::vector<double>(n, 0.0))));
    return out;
}

Distribution combine_deterministic_gamma(const PolicyFamily& family, const BinaryWord& word) {
    return normalize(gamma_nu_vector(family, word));
}

CancellationSum cancellation_check(const PolicyFamily& family, const MixtureVector& lambdas,
                                   std::size_t i) {
    const std::size_t n = family.num_diff_states();
    if (i >= n) throw InvalidInput("differing-state index " + std::to_string(i) + " out of range");
    const Matrix f = f_kernel(family, lambdas);
    CancellationSum out;
    for (std::size_t k = 0; k <= n; ++k) {
        for_each_gamma_prime(n, k, [&](std::span<const std::size_t> gamma, int sign) {
            double term = static_cast<double>(sign) * f(k, i);
            for (std::size_t j = 0; j <= n; ++j)
                if (j != k) term *= f(j, gamma[j]);
            out.value += term;
            out.magnitude += std::abs(term);
        });
    }
    return out;
}

}  // namespace unimix
