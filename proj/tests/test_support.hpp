#pragma once

#include "unimix/combine.hpp"
#include "unimix/mdp.hpp"
#include "unimix/randgen.hpp"
#include "unimix/statdist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace unimix::testing {

inline std::vector<BinaryWord> parse_words(std::initializer_list<const char*> words) {
    std::vector<BinaryWord> out;
    for (const char* w : words) out.push_back(BinaryWord::parse(w));
    return out;
}

/// Family over a seeded random MDP with explicitly chosen base words.
inline PolicyFamily family_with_words(std::size_t num_states, std::vector<BinaryWord> words,
                                      std::uint64_t seed) {
    GenSpec spec;
    spec.num_states = num_states;
    spec.num_diff_states = words.front().size();
    spec.seed = seed;
    return PolicyFamily(random_unichain_mdp(spec), generated_diff_states(spec), std::move(words),
                        DeterministicPolicy{std::vector<std::size_t>(num_states, 0)});
}

/// The four-policy family {000, 010, 101, 110} used in the worked example.
inline PolicyFamily example_family(std::uint64_t seed, std::size_t num_states = 6) {
    return family_with_words(num_states, parse_words({"000", "010", "101", "110"}), seed);
}

/// Seeded family sweep with N in 3..10 and n in 1..5, n < N.
inline GenSpec sweep_spec(std::size_t t) {
    GenSpec spec;
    spec.num_diff_states = 1 + t % 5;
    spec.num_states = std::max<std::size_t>(spec.num_diff_states + 1, 3 + (t / 5) % 8);
    spec.seed = 1000 + t;
    return spec;
}

inline StochasticMatrix chain_from_rows(const std::vector<std::vector<double>>& rows) {
    Matrix m(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    return StochasticMatrix(std::move(m));
}

inline double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

/// Stationary distribution of a combination word solved directly.
inline Distribution direct_word(const PolicyFamily& family, const BinaryWord& w) {
    return stationary_linear(induced_matrix(family.mdp(), word_to_policy(family, w)));
}

inline std::vector<BinaryWord> all_words(std::size_t n) {
    std::vector<BinaryWord> out;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) out.push_back(BinaryWord::from_index(v, n));
    return out;
}

/// Sign by counting inversions, independent of the cycle-based library routine.
inline int inversion_sign(std::span<const std::size_t> image) {
    int inversions = 0;
    for (std::size_t a = 0; a < image.size(); ++a)
        for (std::size_t b = a + 1; b < image.size(); ++b)
            if (image[a] > image[b]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

/// Closed form for the target 111 over base words {000, 010, 101, 110}, with
/// a_i, b_i, c_i, d_i the base distributions at the three differing states.
inline std::vector<double> example_closed_form(const PolicyFamily& family) {
    const auto& mu = family.base_distributions();
    const auto& st = family.diff_states();
    auto a = [&](int i) { return mu[0][st[i - 1]]; };
    auto b = [&](int i) { return mu[1][st[i - 1]]; };
    auto c = [&](int i) { return mu[2][st[i - 1]]; };
    auto d = [&](int i) { return mu[3][st[i - 1]]; };
    const double den = b(1) * c(2) * d(3) - a(1) * c(2) * d(3) - a(2) * b(1) * d(3) +
                       a(1) * b(3) * c(2) - a(3) * b(1) * c(2);
    std::vector<double> out(family.mdp().num_states());
    for (std::size_t s = 0; s < out.size(); ++s) {
        const double num = mu[0][s] * b(1) * c(2) * d(3) - a(1) * mu[1][s] * c(2) * d(3) -
                           a(2) * b(1) * mu[2][s] * d(3) + a(1) * b(3) * c(2) * mu[3][s] -
                           a(3) * b(1) * c(2) * mu[3][s];
        out[s] = num / den;
    }
    return out;
}

}  // namespace unimix::testing
