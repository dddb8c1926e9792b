#pragma once

#include "unimix/distribution.hpp"
#include "unimix/linalg.hpp"
#include "unimix/mdp.hpp"

#include <string_view>
#include <vector>

namespace unimix {

/// How the weight vector is evaluated.
///  - permsum: literal signed sum over every gamma with gamma(k) = n+1.
///  - determinant: nu_s = det [F | mu(s)], expanded along the last column
///    with cofactors from pivoted elimination. O(n^4 + N n).
enum class Evaluator { permsum, determinant };

std::string_view to_string(Evaluator e);
Evaluator parse_evaluator(std::string_view name);

/// Relative thresholds used to reject a cancelled weight vector.
inline constexpr double kDenominatorRelTol = 1e-12;
inline constexpr double kCancellationRelTol = 1e-11;

/// Kernel matrix with (n+1) rows (base policies) and n columns (differing
/// states). Entry (j, i) is lambda_i mu_j(s_i) when policy j plays action 1
/// at s_i and (lambda_i - 1) mu_j(s_i) when it plays action 0.
Matrix f_kernel(const PolicyFamily& family, const MixtureVector& lambdas);

/// Unnormalized stationary weights.
struct NuVector {
    std::vector<double> nu;
    /// Sum of the weights. The determinant evaluator obtains it from the
    /// cofactors alone (each mu_k sums to 1); permsum sums nu entrywise.
    double denominator = 0.0;
    /// Coefficient of mu_k in nu, one per base policy.
    std::vector<double> cofactors;
    /// (n+1) * prod_i sum_j |F(j, i)|, an upper bound on the total absolute
    /// mass of the signed terms.
    double term_scale = 0.0;

    double entrywise_sum() const;
};

NuVector nu_vector(const PolicyFamily& family, const MixtureVector& lambdas,
                   Evaluator evaluator = Evaluator::determinant);

/// Normalizes nu. Throws DegenerateDenominator when |denominator| falls
/// below kDenominatorRelTol * max|nu| or kCancellationRelTol * term_scale,
/// and NonPositiveResult when a normalized entry is not strictly positive.
Distribution normalize(const NuVector& nu);

/// Stationary distribution of the policy playing action 0 at s_i with
/// probability lambda_i, computed from the base distributions only.
Distribution combine_randomized(const PolicyFamily& family, const MixtureVector& lambdas,
                                Evaluator evaluator = Evaluator::determinant);

/// Weights from the restricted permutation sets of the relabeled family
/// (target turned into all ones): nu_s = sum_k sum_{gamma in Gamma_k}
/// sgn(gamma) mu_k(s) prod_{j != k} mu_j(s_gamma(j)). Throws EmptyNumerator
/// when every Gamma_k is empty.
NuVector gamma_nu_vector(const PolicyFamily& family, const BinaryWord& word);

/// Stationary distribution of the deterministic combination `word`.
Distribution combine_deterministic_gamma(const PolicyFamily& family, const BinaryWord& word);

struct CancellationSum {
    double value = 0.0;
    /// Sum of the absolute values of all terms.
    double magnitude = 0.0;

    double relative() const { return magnitude > 0.0 ? value / magnitude : value; }
};

/// sum_k sum_{gamma(k) = n+1} sgn(gamma) f(i, k) prod_{j != k} f(gamma(j), j)
/// for 0-based differing-state index i. Identically zero: it is the
/// determinant of [F | F_i], which repeats a column.
CancellationSum cancellation_check(const PolicyFamily& family, const MixtureVector& lambdas,
                                   std::size_t i);

}  // namespace unimix
