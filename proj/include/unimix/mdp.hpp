#pragma once

#include "unimix/distribution.hpp"
#include "unimix/statdist.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace unimix {

/// transitions[i][a][j] = probability of moving from state i to j under action a.
using TransitionTensor = std::vector<std::vector<std::vector<double>>>;

struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/// Row-sum tolerance applied when an MDP is loaded.
inline constexpr double kMdpRowTolerance = 1e-12;

/// Lists every shape, range and row-sum violation of a raw transition tensor.
ValidationReport validate_mdp(std::size_t num_states, const TransitionTensor& transitions);

/// Finite MDP without rewards. States and actions are dense 0-based indices.
///
/// The optional initial distribution is carried along for completeness; no
/// stationary computation reads it.
class Mdp {
public:
    /// Throws InvalidInput listing every violation found by validate_mdp. Rows
    /// whose sum is off by more than rounding noise are divided by it.
    Mdp(std::size_t num_states, TransitionTensor transitions,
        std::optional<std::vector<double>> initial_distribution = std::nullopt);

    std::size_t num_states() const noexcept { return transitions_.size(); }
    std::size_t num_actions(std::size_t state) const { return transitions_.at(state).size(); }
    std::span<const double> row(std::size_t state, std::size_t action) const {
        return transitions_.at(state).at(action);
    }
    double p(std::size_t state, std::size_t action, std::size_t next) const {
        return transitions_.at(state).at(action).at(next);
    }
    const TransitionTensor& transitions() const noexcept { return transitions_; }
    const std::optional<std::vector<double>>& initial_distribution() const noexcept {
        return initial_;
    }

    bool operator==(const Mdp&) const = default;

private:
    TransitionTensor transitions_;
    std::optional<std::vector<double>> initial_;
};

/// One action index per state.
struct DeterministicPolicy {
    std::vector<std::size_t> choice;

    bool operator==(const DeterministicPolicy&) const = default;
};

/// Throws InvalidInput when the policy has the wrong length or picks an
/// action the state does not offer.
void check_policy(const Mdp& mdp, const DeterministicPolicy& policy);

/// P(i, j) = p_{policy(i)}(i, j).
StochasticMatrix induced_matrix(const Mdp& mdp, const DeterministicPolicy& policy);

/// Binary action word over the differing states, first character = first
/// differing state.
class BinaryWord {
public:
    BinaryWord() = default;
    explicit BinaryWord(std::vector<std::uint8_t> bits);

    /// Parses "0101"; throws InvalidInput on any other character.
    static BinaryWord parse(std::string_view text);
    static BinaryWord ones(std::size_t n) { return BinaryWord(std::vector<std::uint8_t>(n, 1)); }
    /// Bit i of the result is bit (n-1-i) of `value`, so words enumerate in
    /// lexicographic order as `value` increases.
    static BinaryWord from_index(std::uint64_t value, std::size_t n);

    std::size_t size() const noexcept { return bits_.size(); }
    std::uint8_t operator[](std::size_t i) const noexcept { return bits_[i]; }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }
    std::size_t count_ones() const noexcept;
    std::string str() const;

    auto operator<=>(const BinaryWord&) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

/// Probability of playing action 0 at each differing state.
class MixtureVector {
public:
    /// Throws InvalidInput unless every entry lies in [0, 1].
    explicit MixtureVector(std::vector<double> lambdas);

    /// Deterministic mixture equivalent to `word`: lambda_i = 1 - word_i.
    static MixtureVector for_word(const BinaryWord& word);

    std::size_t size() const noexcept { return lambdas_.size(); }
    double operator[](std::size_t i) const noexcept { return lambdas_[i]; }
    std::span<const double> values() const noexcept { return lambdas_; }

private:
    std::vector<double> lambdas_;
};

/// n + 1 base policies of an MDP that agree everywhere except on n
/// differing states, where each plays action 0 or 1.
///
/// Immutable. Base stationary distributions are either supplied (and checked
/// against their chains) or computed on first use with stationary_linear and
/// kept in a write-once cache shared by copies.
class PolicyFamily {
public:
    /// Residual allowed for supplied base distributions.
    static constexpr double kSuppliedResidualTolerance = 1e-9;

    PolicyFamily(Mdp mdp, std::vector<std::size_t> diff_states, std::vector<BinaryWord> base_words,
                 DeterministicPolicy shared_policy,
                 std::optional<std::vector<Distribution>> base_distributions = std::nullopt);

    const Mdp& mdp() const noexcept { return *mdp_; }
    std::size_t num_diff_states() const noexcept { return diff_states_.size(); }
    std::size_t num_policies() const noexcept { return base_words_.size(); }
    const std::vector<std::size_t>& diff_states() const noexcept { return diff_states_; }
    const std::vector<BinaryWord>& base_words() const noexcept { return base_words_; }
    const DeterministicPolicy& shared_policy() const noexcept { return shared_; }

    /// mu_1 .. mu_{n+1}; computed once on first call.
    const std::vector<Distribution>& base_distributions() const;
    bool has_base_distributions() const;

    /// Whether the words w_1 - w_0, ..., w_n - w_0 are linearly independent
    /// over the reals. Independence guarantees a usable combination formula;
    /// for some dependent families its weight vector vanishes identically.
    bool words_affinely_independent() const;

private:
    struct Cache;

    std::shared_ptr<const Mdp> mdp_;
    std::vector<std::size_t> diff_states_;
    std::vector<BinaryWord> base_words_;
    DeterministicPolicy shared_;
    std::shared_ptr<Cache> cache_;
};

DeterministicPolicy word_to_policy(const PolicyFamily& family, const BinaryWord& word);

/// True iff every bit of `word` is matched by the same bit of some base word.
bool is_combination(const PolicyFamily& family, const BinaryWord& word);

/// Chain of the randomized policy: at differing state s_i the row is
/// lambda_i p_0(s_i, .) + (1 - lambda_i) p_1(s_i, .); elsewhere the shared row.
StochasticMatrix mixture_matrix(const PolicyFamily& family, const MixtureVector& lambdas);

/// Copy of `family` with actions 0 and 1 swapped at every differing state
/// where `target` has a 0, so that `target` becomes the all-ones word. Base
/// distributions carry over unchanged.
PolicyFamily relabel_for_target(const PolicyFamily& family, const BinaryWord& target);

/// Exact rank test of { w_j - w_0 } via fraction-free elimination.
bool affinely_independent(const std::vector<BinaryWord>& words);

}  // namespace unimix
