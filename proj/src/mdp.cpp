#include "unimix/mdp.hpp"

#include "unimix/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>

namespace unimix {

ValidationReport validate_mdp(std::size_t num_states, const TransitionTensor& transitions) {
    ValidationReport report;
    auto add = [&report](const std::string& msg) { report.violations.push_back(msg); };

    if (num_states == 0) add("num_states must be positive");
    if (transitions.size() != num_states) {
        std::ostringstream msg;
        msg << "transitions has " << transitions.size() << " states, expected " << num_states;
        add(msg.str());
    }
    for (std::size_t i = 0; i < transitions.size(); ++i) {
        if (transitions[i].empty()) {
            std::ostringstream msg;
            msg << "state " << i << " has no actions";
            add(msg.str());
        }
        for (std::size_t a = 0; a < transitions[i].size(); ++a) {
            const auto& row = transitions[i][a];
            if (row.size() != num_states) {
                std::ostringstream msg;
                msg << "row length " << row.size() << " at (" << i << "," << a << "), expected "
                    << num_states;
                add(msg.str());
                continue;
            }
            double sum = 0.0;
            for (std::size_t j = 0; j < row.size(); ++j) {
                if (!(row[j] >= 0.0 && row[j] <= 1.0)) {
                    std::ostringstream msg;
                    msg << "probability " << row[j] << " out of range at (" << i << "," << a << ","
                        << j << ")";
                    add(msg.str());
                }
                sum += row[j];
            }
            if (!(std::abs(sum - 1.0) <= kMdpRowTolerance)) {
                std::ostringstream msg;
                msg << "row sum " << sum << " at (" << i << "," << a << ")";
                add(msg.str());
            }
        }
    }
    return report;
}

Mdp::Mdp(std::size_t num_states, TransitionTensor transitions,
         std::optional<std::vector<double>> initial_distribution)
    : transitions_(std::move(transitions)), initial_(std::move(initial_distribution)) {
    const auto report = validate_mdp(num_states, transitions_);
    if (!report.ok()) {
        std::string msg = "invalid MDP:";
        for (const auto& v : report.violations) msg += "\n  " + v;
        throw InvalidInput(msg);
    }
    // Rows already stochastic to rounding are left alone so that reloading a
    // saved MDP reproduces it exactly.
    for (auto& actions : transitions_) {
        for (auto& row : actions) {
            double sum = 0.0;
            for (double v : row) sum += v;
            const double noise = static_cast<double>(row.size() + 1) * std::numeric_limits<double>::epsilon();
            if (std::abs(sum - 1.0) > noise)
                for (double& v : row) v /= sum;
        }
    }
    if (initial_) {
        if (initial_->size() != num_states)
            throw InvalidInput("initial distribution has wrong length");
        double sum = 0.0;
        for (double v : *initial_) {
            if (!(v >= 0.0 && v <= 1.0)) throw InvalidInput("initial distribution entry out of range");
            sum += v;
        }
        if (std::abs(sum - 1.0) > kMdpRowTolerance)
            throw InvalidInput("initial distribution does not sum to 1");
    }
}

void check_policy(const Mdp& mdp, const DeterministicPolicy& policy) {
    if (policy.choice.size() != mdp.num_states()) {
        std::ostringstream msg;
        msg << "policy has " << policy.choice.size() << " entries, MDP has " << mdp.num_states()
            << " states";
        throw InvalidInput(msg.str());
    }
    for (std::size_t i = 0; i < policy.choice.size(); ++i) {
        if (policy.choice[i] >= mdp.num_actions(i)) {
            std::ostringstream msg;
            msg << "action " << policy.choice[i] << " out of range at state " << i << " ("
                << mdp.num_actions(i) << " actions)";
            throw InvalidInput(msg.str());
        }
    }
}

StochasticMatrix induced_matrix(const Mdp& mdp, const DeterministicPolicy& policy) {
    check_policy(mdp, policy);
    const std::size_t n = mdp.num_states();
    Matrix p(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto src = mdp.row(i, policy.choice[i]);
        std::copy(src.begin(), src.end(), p.row(i).begin());
    }
    return StochasticMatrix(std::move(p));
}

// ---------------------------------------------------------------------------

BinaryWord::BinaryWord(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_)
        if (b > 1) throw InvalidInput("word bits must be 0 or 1");
}

BinaryWord BinaryWord::parse(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1')
            throw InvalidInput("word '" + std::string(text) + "' contains a character other than 0/1");
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return BinaryWord(std::move(bits));
}

BinaryWord BinaryWord::from_index(std::uint64_t value, std::size_t n) {
    std::vector<std::uint8_t> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>((value >> (n - 1 - i)) & 1U);
    return BinaryWord(std::move(bits));
}

std::size_t BinaryWord::count_ones() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::string BinaryWord::str() const {
    std::string out;
    out.reserve(bits_.size());
    for (auto b : bits_) out.push_back(static_cast<char>('0' + b));
    return out;
}

MixtureVector::MixtureVector(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
    for (std::size_t i = 0; i < lambdas_.size(); ++i) {
        if (!(lambdas_[i] >= 0.0 && lambdas_[i] <= 1.0)) {
            std::ostringstream msg;
            msg << "lambda[" << i << "] = " << lambdas_[i] << " outside [0,1]";
            throw InvalidInput(msg.str());
        }
    }
}

MixtureVector MixtureVector::for_word(const BinaryWord& word) {
    std::vector<double> lambdas(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) lambdas[i] = word[i] ? 0.0 : 1.0;
    return MixtureVector(std::move(lambdas));
}

// ---------------------------------------------------------------------------

struct PolicyFamily::Cache {
    std::once_flag once;
    std::vector<Distribution> distributions;
    std::atomic<bool> filled{false};
};

PolicyFamily::PolicyFamily(Mdp mdp, std::vector<std::size_t> diff_states,
                           std::vector<BinaryWord> base_words, DeterministicPolicy shared_policy,
                           std::optional<std::vector<Distribution>> base_distributions)
    : mdp_(std::make_shared<const Mdp>(std::move(mdp))),
      diff_states_(std::move(diff_states)),
      base_words_(std::move(base_words)),
      shared_(std::move(shared_policy)),
      cache_(std::make_shared<Cache>()) {
    const std::size_t n = diff_states_.size();
    const std::size_t num_states = mdp_->num_states();

    std::set<std::size_t> seen_states;
    for (auto s : diff_states_) {
        if (s >= num_states)
            throw InvalidInput("differing state " + std::to_string(s) + " out of range");
        if (!seen_states.insert(s).second)
            throw InvalidInput("differing state " + std::to_string(s) + " listed twice");
        if (mdp_->num_actions(s) < 2)
            throw InvalidInput("differing state " + std::to_string(s) + " offers fewer than 2 actions");
    }
    if (base_words_.size() != n + 1)
        throw InvalidInput("expected " + std::to_string(n + 1) + " base words, got " +
                           std::to_string(base_words_.size()));
    std::set<BinaryWord> seen_words;
    for (const auto& w : base_words_) {
        if (w.size() != n)
            throw InvalidInput("base word '" + w.str() + "' has length " + std::to_string(w.size()) +
                               ", expected " + std::to_string(n));
        if (!seen_words.insert(w).second)
            throw InvalidInput("base word '" + w.str() + "' appears twice");
    }
    check_policy(*mdp_, shared_);

    if (base_distributions) {
        if (base_distributions->size() != n + 1)
            throw InvalidInput("expected " + std::to_string(n + 1) + " base distributions");
        for (std::size_t k = 0; k <= n; ++k) {
            const auto& mu = (*base_distributions)[k];
            if (mu.size() != num_states)
                throw InvalidInput("base distribution " + std::to_string(k) + " has wrong length");
            const double r = residual(induced_matrix(*mdp_, word_to_policy(*this, base_words_[k])),
                                      mu.probs());
            if (r > kSuppliedResidualTolerance) {
                std::ostringstream msg;
                msg << "base distribution " << k << " is not stationary for word '"
                    << base_words_[k].str() << "' (residual " << r << ")";
                throw InvalidInput(msg.str());
            }
        }
        std::call_once(cache_->once, [&] {
            cache_->distributions = std::move(*base_distributions);
            cache_->filled = true;
        });
    }
}

const std::vector<Distribution>& PolicyFamily::base_distributions() const {
    std::call_once(cache_->once, [this] {
        std::vector<Distribution> dists;
        dists.reserve(base_words_.size());
        for (const auto& w : base_words_)
            dists.push_back(stationary_linear(induced_matrix(*mdp_, word_to_policy(*this, w))));
        cache_->distributions = std::move(dists);
        cache_->filled = true;
    });
    return cache_->distributions;
}

bool PolicyFamily::has_base_distributions() const {
    return cache_->filled.load();
}

bool PolicyFamily::words_affinely_independent() const { return affinely_independent(base_words_); }

DeterministicPolicy word_to_policy(const PolicyFamily& family, const BinaryWord& word) {
    if (word.size() != family.num_diff_states())
        throw InvalidInput("word '" + word.str() + "' has length " + std::to_string(word.size()) +
                           ", expected " + std::to_string(family.num_diff_states()));
    DeterministicPolicy policy = family.shared_policy();
    for (std::size_t i = 0; i < word.size(); ++i) policy.choice[family.diff_states()[i]] = word[i];
    return policy;
}

bool is_combination(const PolicyFamily& family, const BinaryWord& word) {
    if (word.size() != family.num_diff_states())
        throw InvalidInput("word '" + word.str() + "' has wrong length");
    for (std::size_t i = 0; i < word.size(); ++i) {
        const bool witnessed = std::any_of(family.base_words().begin(), family.base_words().end(),
                                           [&](const BinaryWord& b) { return b[i] == word[i]; });
        if (!witnessed) return false;
    }
    return true;
}

StochasticMatrix mixture_matrix(const PolicyFamily& family, const MixtureVector& lambdas) {
    if (lambdas.size() != family.num_diff_states())
        throw InvalidInput("mixture vector has length " + std::to_string(lambdas.size()) +
                           ", expected " + std::to_string(family.num_diff_states()));
    const Mdp& mdp = family.mdp();
    const std::size_t n = mdp.num_states();
    Matrix p(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto src = mdp.row(i, family.shared_policy().choice[i]);
        std::copy(src.begin(), src.end(), p.row(i).begin());
    }
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        const std::size_t s = family.diff_states()[k];
        const double lam = lambdas[k];
        auto p0 = mdp.row(s, 0);
        auto p1 = mdp.row(s, 1);
        for (std::size_t j = 0; j < n; ++j) p(s, j) = lam * p0[j] + (1.0 - lam) * p1[j];
    }
    return StochasticMatrix(std::move(p));
}

PolicyFamily relabel_for_target(const PolicyFamily& family, const BinaryWord& target) {
    const std::size_t n = family.num_diff_states();
    if (target.size() != n) throw InvalidInput("target word '" + target.str() + "' has wrong length");

    TransitionTensor t = family.mdp().transitions();
    for (std::size_t i = 0; i < n; ++i)
        if (target[i] == 0) std::swap(t[family.diff_states()[i]][0], t[family.diff_states()[i]][1]);

    std::vector<BinaryWord> words;
    words.reserve(family.num_policies());
    for (const auto& w : family.base_words()) {
        std::vector<std::uint8_t> bits(w.bits().begin(), w.bits().end());
        for (std::size_t i = 0; i < n; ++i)
            if (target[i] == 0) bits[i] ^= 1U;
        words.emplace_back(std::move(bits));
    }
    return PolicyFamily(Mdp(family.mdp().num_states(), std::move(t), family.mdp().initial_distribution()),
                        family.diff_states(), std::move(words), family.shared_policy(),
                        family.base_distributions());
}

bool affinely_independent(const std::vector<BinaryWord>& words) {
    if (words.empty()) return false;
    const std::size_t rows = words.size() - 1;
    const std::size_t cols = words.front().size();
    if (rows > cols) return false;
    if (rows > 40) throw InvalidInput("affine independence test supports at most 41 words");

    __extension__ typedef __int128 Int;
    std::vector<std::vector<Int>> m(rows, std::vector<Int>(cols));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m[r][c] = static_cast<Int>(words[r + 1][c]) - static_cast<Int>(words[0][c]);

    // Bareiss elimination; every intermediate value is a minor, so division is exact.
    Int prev = 1;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t k = c + 1; k < cols; ++k)
                m[r][k] = (m[r][k] * m[rank][c] - m[r][c] * m[rank][k]) / prev;
            m[r][c] = 0;
        }
        prev = m[rank][c];
        ++rank;
    }
    return rank == rows;
}

}  // namespace unimix
