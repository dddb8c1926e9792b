#include "unimix/randgen.hpp"

#include "unimix/error.hpp"
#include "unimix/rng.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace unimix {

namespace {

constexpr std::uint64_t kLambdaStream = 0x6c616d6264617321ULL;
constexpr std::size_t kMaxWordAttempts = 100000;

std::vector<std::size_t> draw_diff_states(Pcg32& rng, std::size_t num_states, std::size_t n) {
    std::vector<std::size_t> pool(num_states);
    for (std::size_t i = 0; i < num_states; ++i) pool[i] = i;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(num_states - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(n);
    std::sort(pool.begin(), pool.end());
    return pool;
}

std::vector<double> draw_row(Pcg32& rng, std::size_t num_states, double floor) {
    std::vector<double> row(num_states);
    double sum = 0.0;
    for (double& v : row) {
        v = rng.uniform_open();
        sum += v;
    }
    const double mass = 1.0 - static_cast<double>(num_states) * floor;
    for (double& v : row) v = mass * (v / sum) + floor;
    return row;
}

Mdp generate_mdp(Pcg32& rng, const GenSpec& spec, std::vector<std::size_t>& diff_states) {
    check_spec(spec);
    const std::size_t num_states = spec.num_states;
    diff_states = draw_diff_states(rng, num_states, spec.num_diff_states);
    std::vector<bool> is_diff(num_states, false);
    for (auto s : diff_states) is_diff[s] = true;

    TransitionTensor t(num_states);
    for (std::size_t i = 0; i < num_states; ++i) {
        const std::size_t actions = is_diff[i] ? 2 : 1 + spec.extra_actions;
        for (std::size_t a = 0; a < actions; ++a) t[i].push_back(draw_row(rng, num_states, spec.min_prob));
        if (is_diff[i] && spec.near_degenerate > 0.0) {
            const double c = spec.near_degenerate;
            for (std::size_t j = 0; j < num_states; ++j)
                t[i][1][j] = c * t[i][0][j] + (1.0 - c) * t[i][1][j];
        }
    }
    return Mdp(num_states, std::move(t));
}

}  // namespace

void check_spec(const GenSpec& spec) {
    std::ostringstream msg;
    if (spec.num_states == 0) {
        msg << "num_states must be positive";
    } else if (spec.num_diff_states >= spec.num_states) {
        msg << "num_diff_states (" << spec.num_diff_states << ") must be below num_states ("
            << spec.num_states << ")";
    } else if (!(spec.min_prob > 0.0)) {
        msg << "min_prob must be positive";
    } else if (!(spec.min_prob * static_cast<double>(spec.num_states) < 1.0)) {
        msg << "infeasible spec: min_prob " << spec.min_prob << " times " << spec.num_states
            << " states is not below 1";
    } else if (!(spec.near_degenerate >= 0.0 && spec.near_degenerate < 1.0)) {
        msg << "near_degenerate must lie in [0, 1)";
    } else if (spec.num_diff_states > 62) {
        msg << "num_diff_states above 62 is not supported";
    } else {
        return;
    }
    throw InvalidInput(msg.str());
}

std::vector<std::size_t> generated_diff_states(const GenSpec& spec) {
    check_spec(spec);
    Pcg32 rng(spec.seed);
    return draw_diff_states(rng, spec.num_states, spec.num_diff_states);
}

Mdp random_unichain_mdp(const GenSpec& spec) {
    Pcg32 rng(spec.seed);
    std::vector<std::size_t> diff_states;
    return generate_mdp(rng, spec, diff_states);
}

PolicyFamily random_family(const GenSpec& spec) {
    Pcg32 rng(spec.seed);
    std::vector<std::size_t> diff_states;
    Mdp mdp = generate_mdp(rng, spec, diff_states);

    const std::size_t n = spec.num_diff_states;
    const std::uint64_t word_count = std::uint64_t{1} << n;
    if (n + 1 > word_count) {
        std::ostringstream msg;
        msg << "cannot pick " << n + 1 << " distinct words from " << word_count;
        throw InvalidInput(msg.str());
    }

    std::vector<BinaryWord> words;
    for (std::size_t attempt = 0;; ++attempt) {
        if (attempt == kMaxWordAttempts)
            throw InvalidInput("no affinely independent word set found");
        std::vector<std::uint64_t> picked;
        std::set<std::uint64_t> seen;
        while (picked.size() < n + 1) {
            const std::uint64_t w = rng.below(word_count);
            if (seen.insert(w).second) picked.push_back(w);
        }
        words.clear();
        for (auto w : picked) words.push_back(BinaryWord::from_index(w, n));
        if (affinely_independent(words)) break;
    }

    DeterministicPolicy shared{std::vector<std::size_t>(spec.num_states, 0)};
    PolicyFamily family(std::move(mdp), std::move(diff_states), std::move(words), std::move(shared));
    family.base_distributions();
    return family;
}

MixtureVector random_lambdas(std::size_t n, std::uint64_t seed) {
    Pcg32 rng(seed, kLambdaStream);
    std::vector<double> lambdas(n);
    for (double& l : lambdas) l = rng.uniform_open();
    return MixtureVector(std::move(lambdas));
}

}  // namespace unimix
