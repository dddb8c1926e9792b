#pragma once

#include "unimix/mdp.hpp"

#include <cstdint>

namespace unimix {

struct GenSpec {
    std::size_t num_states = 3;
    std::size_t num_diff_states = 1;
    std::uint64_t seed = 0;
    /// Floor on every transition probability; must satisfy min_prob * N < 1.
    double min_prob = 0.01;
    /// In [0, 1). Action-1 rows at differing states become
    /// c * p_0 + (1 - c) * p_1, pulling the two actions together.
    double near_degenerate = 0.0;
    /// Additional decoy actions at non-differing states.
    std::size_t extra_actions = 0;
};

/// Throws InvalidInput describing the first violated constraint.
void check_spec(const GenSpec& spec);

/// Differing states chosen by random_unichain_mdp for this spec (sorted).
std::vector<std::size_t> generated_diff_states(const GenSpec& spec);

/// Every row of every action is (1 - N m) d + m with d drawn by normalizing N
/// open-uniform draws, so all entries are >= m = min_prob and every policy's
/// chain is irreducible. Differing states get two actions, the others
/// 1 + extra_actions.
Mdp random_unichain_mdp(const GenSpec& spec);

/// Family over random_unichain_mdp(spec) with n + 1 distinct words drawn
/// uniformly without replacement from {0,1}^n, redrawn until affinely
/// independent. Shared policy plays action 0 everywhere. Base distributions
/// are computed before returning.
PolicyFamily random_family(const GenSpec& spec);

/// Seeded mixture vector in the open cube (0, 1)^n, drawn from a stream
/// distinct from the one random_family uses for the same seed.
MixtureVector random_lambdas(std::size_t n, std::uint64_t seed);

}  // namespace unimix
