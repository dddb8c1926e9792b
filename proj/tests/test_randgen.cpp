#include "doctest.h"
#include "test_support.hpp"

#include "unimix/error.hpp"
#include "unimix/io.hpp"
#include "unimix/rng.hpp"

#include <set>

using namespace unimix;
using namespace unimix::testing;

TEST_CASE("pcg32 reproduces the reference stream") {
    Pcg32 rng(42, 54);
    const std::uint32_t expected[] = {0xa15c02b7, 0x7b47f409, 0xba1d3330, 0x83d2f293, 0xbfa4784b, 0xcbed606e};
    for (std::uint32_t e : expected) CHECK(rng.next() == e);
}

TEST_CASE("pcg32 derived draws") {
    Pcg32 rng(7);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double v = rng.uniform_open();
        CHECK(v > 0.0);
        CHECK(v < 1.0);
        CHECK(rng.below(7) < 7);
    }
    Pcg32 a(9), b(9), c(10);
    CHECK(a.next64() == b.next64());
    CHECK(a.next() != c.next());
}

TEST_CASE("generation is deterministic per seed") {
    GenSpec spec;
    spec.num_states = 7;
    spec.num_diff_states = 3;
    spec.seed = 123;
    CHECK(random_unichain_mdp(spec) == random_unichain_mdp(spec));
    const auto f1 = random_family(spec);
    const auto f2 = random_family(spec);
    CHECK(to_json(f1).dump() == to_json(f2).dump());
    spec.seed = 124;
    CHECK(to_json(random_family(spec)).dump() != to_json(f1).dump());
    CHECK(random_lambdas(3, 5).values()[0] == random_lambdas(3, 5).values()[0]);
}

TEST_CASE("generated MDPs satisfy the construction guarantees") {
    for (std::size_t t = 0; t < 30; ++t) {
        GenSpec spec = sweep_spec(t);
        spec.min_prob = 0.02;
        spec.extra_actions = t % 3;
        const Mdp mdp = random_unichain_mdp(spec);
        CHECK(validate_mdp(mdp.num_states(), mdp.transitions()).ok());
        const auto diff = generated_diff_states(spec);
        CHECK(diff.size() == spec.num_diff_states);
        CHECK(std::is_sorted(diff.begin(), diff.end()));
        CHECK(std::set<std::size_t>(diff.begin(), diff.end()).size() == diff.size());
        for (std::size_t s = 0; s < mdp.num_states(); ++s) {
            const bool is_diff = std::find(diff.begin(), diff.end(), s) != diff.end();
            CHECK(mdp.num_actions(s) == (is_diff ? 2 : 1 + spec.extra_actions));
            for (std::size_t a = 0; a < mdp.num_actions(s); ++a)
                for (double p : mdp.row(s, a)) CHECK(p >= spec.min_prob * (1 - 1e-12));
        }
    }
}

TEST_CASE("every deterministic policy of a generated family is irreducible") {
    for (std::size_t t = 0; t < 25; ++t) {
        const auto fam = random_family(sweep_spec(t));
        for (const auto& w : all_words(fam.num_diff_states()))
            CHECK(is_irreducible(induced_matrix(fam.mdp(), word_to_policy(fam, w))));
    }
}

TEST_CASE("generated families") {
    SUBCASE("distinct, affinely independent words and accurate distributions") {
        for (std::size_t t = 0; t < 40; ++t) {
            const auto fam = random_family(sweep_spec(t));
            const auto& words = fam.base_words();
            CHECK(words.size() == fam.num_diff_states() + 1);
            CHECK(std::set<BinaryWord>(words.begin(), words.end()).size() == words.size());
            CHECK(fam.words_affinely_independent());
            CHECK(fam.has_base_distributions());
            for (std::size_t k = 0; k < words.size(); ++k) {
                const auto chain = induced_matrix(fam.mdp(), word_to_policy(fam, words[k]));
                CHECK(residual(chain, fam.base_distributions()[k].probs()) <= 1e-10);
            }
        }
    }
    SUBCASE("n = 1 uses both words") {
        GenSpec spec;
        spec.num_diff_states = 1;
        spec.seed = 3;
        const auto fam = random_family(spec);
        std::set<BinaryWord> words(fam.base_words().begin(), fam.base_words().end());
        CHECK(words == std::set<BinaryWord>{BinaryWord::parse("0"), BinaryWord::parse("1")});
    }
    SUBCASE("extra actions do not change the chains") {
        GenSpec spec;
        spec.num_states = 6;
        spec.num_diff_states = 2;
        spec.seed = 17;
        spec.extra_actions = 2;
        const auto fam = random_family(spec);
        for (const auto& w : fam.base_words())
            CHECK(word_to_policy(fam, w).choice.size() == 6);
        CHECK(validate_mdp(6, fam.mdp().transitions()).ok());
    }
    SUBCASE("near-degenerate pulls action rows together") {
        GenSpec spec;
        spec.num_states = 5;
        spec.num_diff_states = 2;
        spec.seed = 8;
        spec.near_degenerate = 0.99;
        const auto mdp = random_unichain_mdp(spec);
        for (std::size_t s : generated_diff_states(spec))
            CHECK(max_abs_diff(mdp.row(s, 0), mdp.row(s, 1)) <= 0.01);
    }
}

TEST_CASE("invalid specs") {
    GenSpec spec;
    spec.num_states = 3;
    spec.num_diff_states = 3;
    CHECK_THROWS_AS(check_spec(spec), InvalidInput);
    spec.num_diff_states = 1;
    spec.min_prob = 0.4;
    CHECK_THROWS_WITH_AS(check_spec(spec), doctest::Contains("infeasible"), InvalidInput);
    spec.min_prob = 0.0;
    CHECK_THROWS_AS(check_spec(spec), InvalidInput);
    spec.min_prob = 0.01;
    spec.near_degenerate = 1.0;
    CHECK_THROWS_AS(check_spec(spec), InvalidInput);
    spec.near_degenerate = 0.0;
    CHECK_NOTHROW(check_spec(spec));
    CHECK_THROWS_AS(random_family(GenSpec{2, 2, 0, 0.01, 0.0, 0}), InvalidInput);
}

TEST_CASE("random lambdas lie in the open cube") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto lam = random_lambdas(6, seed);
        CHECK(lam.size() == 6);
        for (double v : lam.values()) {
            CHECK(v > 0.0);
            CHECK(v < 1.0);
        }
    }
}
