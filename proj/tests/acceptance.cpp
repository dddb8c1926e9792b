// Acceptance suite: one line per criterion, nonzero exit if any fails.
#include "test_support.hpp"

#include "cli.hpp"
#include "unimix/error.hpp"
#include "unimix/io.hpp"
#include "unimix/permutation.hpp"

#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace unimix;
using namespace unimix::testing;

namespace {

constexpr std::size_t kFamilies = 120;

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

Verdict word_oracle() {
    double worst = 0.0;
    std::size_t words = 0;
    for (std::size_t t = 0; t < kFamilies; ++t) {
        const auto fam = random_family(sweep_spec(t));
        for (const auto& w : all_words(fam.num_diff_states())) {
            if (!is_combination(fam, w)) continue;
            const auto direct = direct_word(fam, w);
            worst = std::max(worst, max_abs_diff(combine_deterministic_gamma(fam, w).probs(), direct.probs()));
            worst = std::max(worst, max_abs_diff(combine_randomized(fam, MixtureVector::for_word(w)).probs(),
                                                 direct.probs()));
            ++words;
        }
    }
    return {worst <= 1e-9, fmt("%.0f families, %.0f words, max error %.3g (tol 1e-9)", kFamilies,
                               static_cast<double>(words), worst)};
}

Verdict randomized_oracle() {
    double worst = 0.0;
    for (std::size_t t = 0; t < kFamilies; ++t) {
        const auto fam = random_family(sweep_spec(t));
        const auto lam = random_lambdas(fam.num_diff_states(), t);
        const auto direct = stationary_linear(mixture_matrix(fam, lam));
        worst = std::max(worst, max_abs_diff(combine_randomized(fam, lam).probs(), direct.probs()));
    }
    return {worst <= 1e-9, fmt("%.0f (family, lambda) pairs, max error %.3g (tol 1e-9)", kFamilies, worst)};
}

Verdict evaluator_agreement() {
    double worst = 0.0;
    for (std::size_t t = 0; t < kFamilies; ++t) {
        const auto fam = random_family(sweep_spec(t));
        const auto lam = random_lambdas(fam.num_diff_states(), t);
        const auto det = nu_vector(fam, lam, Evaluator::determinant);
        const auto perm = nu_vector(fam, lam, Evaluator::permsum);
        worst = std::max(worst, max_abs_diff(det.nu, perm.nu) / max_abs(perm.nu));
    }
    return {worst <= 1e-10, fmt("%.0f families with n <= 5, max relative gap %.3g (tol 1e-10)", kFamilies, worst)};
}

Verdict example_structure() {
    const auto fam = example_family(0);
    const auto relabeled = relabel_for_target(fam, BinaryWord::ones(3));
    std::vector<std::size_t> sizes;
    std::vector<std::vector<Permutation>> sets;
    for (std::size_t k = 0; k < 4; ++k) {
        sets.push_back(enumerate_gamma(relabeled, k));
        sizes.push_back(sets.back().size());
    }
    const bool sizes_ok = sizes == std::vector<std::size_t>{1, 1, 1, 2};
    const bool third_ok = sets[2].size() == 1 && sets[2][0].str() == "(2,1,4,3)" && sets[2][0].sign == 1;
    std::string detail = "sizes (" + std::to_string(sizes[0]) + "," + std::to_string(sizes[1]) + "," +
                         std::to_string(sizes[2]) + "," + std::to_string(sizes[3]) + "), third set {";
    for (const auto& p : sets[2]) detail += p.str() + (p.sign > 0 ? " +" : " -");
    detail += "}";
    return {sizes_ok && third_ok, detail};
}

Verdict example_formula() {
    double worst = 0.0;
    const std::size_t instances = 12;
    for (std::uint64_t seed = 0; seed < instances; ++seed) {
        const auto fam = example_family(seed, 4 + seed % 7);
        const auto lib = combine_deterministic_gamma(fam, BinaryWord::ones(3));
        worst = std::max(worst, max_abs_diff(lib.probs(), example_closed_form(fam)));
    }
    return {worst <= 1e-12,
            fmt("%.0f instances, max gap %.3g (tol 1e-12)", static_cast<double>(instances), worst)};
}

Verdict cancellation() {
    double worst = 0.0;
    for (std::size_t t = 0; t < kFamilies; ++t) {
        const auto fam = random_family(sweep_spec(t));
        const auto lam = random_lambdas(fam.num_diff_states(), t + 7);
        for (std::size_t i = 0; i < fam.num_diff_states(); ++i)
            worst = std::max(worst, std::abs(cancellation_check(fam, lam, i).relative()));
    }
    return {worst <= 1e-12, fmt("%.0f pairs, max relative sum %.3g (tol 1e-12)", kFamilies, worst)};
}

Verdict self_consistency() {
    double worst = 0.0;
    for (std::size_t t = 0; t < kFamilies; ++t) {
        const auto fam = random_family(sweep_spec(t));
        for (std::size_t k = 0; k < fam.num_policies(); ++k) {
            const auto& w = fam.base_words()[k];
            const auto& mu = fam.base_distributions()[k].probs();
            worst = std::max(worst, max_abs_diff(combine_deterministic_gamma(fam, w).probs(), mu));
            worst = std::max(worst, max_abs_diff(combine_randomized(fam, MixtureVector::for_word(w)).probs(), mu));
        }
    }
    return {worst <= 1e-10, fmt("%.0f families, max error %.3g (tol 1e-10)", kFamilies, worst)};
}

Verdict solver_sanity() {
    const StochasticMatrix two = chain_from_rows({{0.7, 0.3}, {0.6, 0.4}});
    const std::vector<double> expected = {2.0 / 3.0, 1.0 / 3.0};
    SolveOptions cesaro;
    cesaro.method = SolveMethod::cesaro;
    const double lin = max_abs_diff(stationary_linear(two).probs(), expected);
    const double ces = max_abs_diff(stationary(two, cesaro).probs(), expected);
    const StochasticMatrix cycle = chain_from_rows({{0.0, 1.0}, {1.0, 0.0}});
    const double per = max_abs_diff(stationary(cycle, cesaro).probs(), std::vector<double>{0.5, 0.5});
    return {lin <= 1e-12 && ces <= 1e-12 && per <= 1e-12,
            fmt("linear %.3g, cesaro %.3g, period-2 cycle %.3g (tol 1e-12)", lin, ces, per)};
}

Verdict bench_property() {
    std::ostringstream out, err;
    const int code = cli::run({"unimix", "bench", "--n-range", "1:7", "--states", "12", "--reps", "3"}, out, err);
    if (code != cli::kOk) return {false, "bench exited with " + std::to_string(code) + ": " + err.str()};
    const json doc = json::parse(out.str());
    std::string ratios;
    std::size_t increases = 0;
    double prev = 0.0;
    double worst = 0.0;
    for (const auto& row : doc["rows"]) {
        const double r = row["permsum_over_determinant"].get<double>();
        worst = std::max(worst, row["max_cross_diff"].get<double>());
        if (!ratios.empty()) ratios += " ";
        ratios += fmt("%.3g", r);
        if (r > prev) ++increases;
        prev = r;
    }
    return {true, "cross-check max diff " + fmt("%.3g", worst) + " for n = 1..7; permsum/determinant ratios " +
                      ratios + " (" + std::to_string(increases) + "/" + std::to_string(doc["rows"].size()) +
                      " steps increasing, reported only)"};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
        {"deterministic combinations match direct solves", word_oracle},
        {"randomized mixtures match direct solves", randomized_oracle},
        {"permsum and determinant evaluators agree", evaluator_agreement},
        {"worked example permutation sets", example_structure},
        {"worked example closed form", example_formula},
        {"cancellation identity", cancellation},
        {"base words return their base distributions", self_consistency},
        {"stationary solver sanity", solver_sanity},
        {"benchmark cross-check and scaling", bench_property},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v{false, ""};
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        if (!v.pass) ++failures;
        std::printf("[%s] criterion %zu: %s -- %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    v.detail.c_str());
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
