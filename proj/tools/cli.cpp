#include "cli.hpp"

#include "unimix/combine.hpp"
#include "unimix/io.hpp"
#include "unimix/randgen.hpp"
#include "unimix/statdist.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

namespace unimix::cli {

namespace {

double default_tol() {
    if (const char* env = std::getenv(kTolEnv)) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && *end == '\0' && v > 0.0) return v;
    }
    return kDefaultTol;
}

// Either a deterministic word or a mixture vector.
struct Target {
    std::optional<BinaryWord> word;
    MixtureVector lambdas{{}};
};

std::vector<std::size_t> parse_index_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw InvalidInput("bad index list '" + text + "'");
        out.push_back(std::stoull(item));
    }
    return out;
}

/// Evaluates the combination formula. `method` is determinant, permsum or gamma.
Distribution evaluate(const PolicyFamily& family, const Target& target, const std::string& method) {
    if (method == "gamma") {
        if (!target.word) throw InvalidInput("method 'gamma' needs --word");
        return combine_deterministic_gamma(family, *target.word);
    }
    return combine_randomized(family, target.lambdas, parse_evaluator(method));
}

StochasticMatrix target_chain(const PolicyFamily& family, const Target& target) {
    if (target.word) return induced_matrix(family.mdp(), word_to_policy(family, *target.word));
    return mixture_matrix(family, target.lambdas);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <typename F>
double median_seconds(std::size_t reps, F&& fn) {
    std::vector<double> times;
    times.reserve(reps);
    for (std::size_t r = 0; r < reps; ++r) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        times.push_back(seconds_since(start));
    }
    std::sort(times.begin(), times.end());
    const std::size_t mid = times.size() / 2;
    return times.size() % 2 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
}

// ---------------------------------------------------------------------------

struct GenArgs {
    GenSpec spec;
    std::string kind = "family";
    std::string out;
};

int cmd_gen(const GenArgs& args, std::ostream& out) {
    json doc;
    if (args.kind == "mdp") {
        doc = to_json(random_unichain_mdp(args.spec));
        doc["diff_states"] = generated_diff_states(args.spec);
    } else {
        doc = to_json(random_family(args.spec));
    }
    doc["gen_meta"] = gen_meta_json(args.spec);
    if (args.out.empty())
        out << doc.dump(2) << '\n';
    else
        write_json_file(args.out, doc);
    return kOk;
}

struct ValidateArgs {
    std::string file;
    std::vector<std::string> policies;
};

int cmd_validate(const ValidateArgs& args, std::ostream& out, std::ostream& err) {
    const json doc = read_json_file(args.file);
    const bool family_doc = is_family_document(doc);
    std::optional<FamilyDocument> fdoc;
    MdpDocument mdoc;
    if (family_doc) {
        fdoc = parse_family(doc, std::filesystem::path(args.file).parent_path());
        mdoc = fdoc->mdp;
    } else {
        mdoc = parse_mdp(doc);
    }

    ValidationReport report = validate_mdp(mdoc.num_states, mdoc.transitions);
    std::vector<std::string> warnings;
    std::size_t checked = 0;
    if (report.ok()) {
        const Mdp mdp = mdoc.build();
        auto check_chain = [&](const DeterministicPolicy& policy, const std::string& label) {
            ++checked;
            if (!is_irreducible(induced_matrix(mdp, policy)))
                report.violations.push_back("chain of " + label + " is not irreducible");
        };
        if (fdoc) {
            try {
                const PolicyFamily family = fdoc->build();
                for (const auto& w : family.base_words())
                    check_chain(word_to_policy(family, w), "base word '" + w.str() + "'");
                if (!family.words_affinely_independent()) {
                    warnings.push_back("base words are affinely dependent");
                    // Dependence is necessary but not sufficient for a vanishing
                    // weight vector, so probe one interior mixture.
                    if (report.ok()) {
                        try {
                            (void)combine_randomized(family, random_lambdas(family.num_diff_states(), 0));
                        } catch (const DegenerateDenominator&) {
                            report.violations.push_back(
                                "combination weights vanish; randomized combinations are not determined");
                        }
                    }
                }
            } catch (const InvalidInput& e) {
                report.violations.push_back(std::string("family: ") + e.what());
            }
        }
        for (const auto& p : args.policies) {
            DeterministicPolicy policy{parse_index_list(p)};
            try {
                check_policy(mdp, policy);
                check_chain(policy, "policy " + p);
            } catch (const InvalidInput& e) {
                report.violations.push_back("policy " + p + ": " + e.what());
            }
        }
    }

    for (const auto& v : report.violations) err << "violation: " << v << '\n';
    for (const auto& w : warnings) err << "warning: " << w << '\n';
    out << json{{"valid", report.ok()},
                {"kind", family_doc ? "family" : "mdp"},
                {"violations", report.violations},
                {"warnings", warnings},
                {"checked_policies", checked}}
               .dump(2)
        << '\n';
    return report.ok() ? kOk : kCheckFailed;
}

struct SolveArgs {
    std::string file;
    std::string policy;
    std::string word;
    bool has_word = false;
    std::string method = "linear";
    double tol = 1e-12;
    std::uint64_t max_iters = 1'000'000;
};

int cmd_solve(const SolveArgs& args, std::ostream& out) {
    const json doc = read_json_file(args.file);
    std::optional<StochasticMatrix> chain;
    if (is_family_document(doc)) {
        const PolicyFamily family = parse_family(doc, std::filesystem::path(args.file).parent_path()).build();
        if (args.has_word) {
            chain = induced_matrix(family.mdp(), word_to_policy(family, BinaryWord::parse(args.word)));
        } else if (!args.policy.empty()) {
            chain = induced_matrix(family.mdp(), DeterministicPolicy{parse_index_list(args.policy)});
        } else {
            throw InvalidInput("solve needs --word or --policy");
        }
    } else {
        if (args.policy.empty()) throw InvalidInput("solve on an MDP file needs --policy");
        chain = induced_matrix(parse_mdp(doc).build(), DeterministicPolicy{parse_index_list(args.policy)});
    }
    SolveOptions opts;
    opts.method = parse_solve_method(args.method);
    opts.tol = args.tol;
    opts.max_iters = args.max_iters;
    const Distribution mu = stationary(*chain, opts);
    out << distribution_json(mu, to_string(opts.method), residual(*chain, mu.probs())).dump(2) << '\n';
    return kOk;
}

struct CombineArgs {
    std::string family;
    std::string word;
    bool has_word = false;
    std::vector<double> lambdas;
    bool has_lambda = false;
    std::string method = "determinant";
    bool check = false;
    double tol = kDefaultTol;
};

Target make_target(const PolicyFamily& family, const CombineArgs& args) {
    Target target;
    if (args.has_word) {
        BinaryWord w = BinaryWord::parse(args.word);
        if (w.size() != family.num_diff_states())
            throw InvalidInput("--word has length " + std::to_string(w.size()) + ", family has " +
                               std::to_string(family.num_diff_states()) + " differing states");
        target.lambdas = MixtureVector::for_word(w);
        target.word = std::move(w);
    } else {
        if (args.lambdas.size() != family.num_diff_states())
            throw InvalidInput("--lambda has " + std::to_string(args.lambdas.size()) +
                               " entries, family has " +
                               std::to_string(family.num_diff_states()) + " differing states");
        target.lambdas = MixtureVector(args.lambdas);
    }
    return target;
}

int cmd_combine(const CombineArgs& args, std::ostream& out, std::ostream& err) {
    if (args.has_word == args.has_lambda) throw InvalidInput("pass exactly one of --word / --lambda");
    const PolicyFamily family = load_family_file(args.family).build();
    const Target target = make_target(family, args);
    const Distribution mu = evaluate(family, target, args.method);
    const StochasticMatrix chain = target_chain(family, target);
    json doc = distribution_json(mu, args.method, residual(chain, mu.probs()));
    int code = kOk;
    if (args.check) {
        const Distribution direct = stationary_linear(chain);
        const double diff = max_abs_diff(mu.probs(), direct.probs());
        const bool pass = diff <= args.tol;
        doc["check"] = {{"oracle", "linear"}, {"max_abs_diff", diff}, {"tol", args.tol}, {"pass", pass}};
        if (!pass) {
            err << "check failed: max |formula - direct| = " << diff << " > " << args.tol << '\n';
            code = kCheckFailed;
        }
    }
    out << doc.dump(2) << '\n';
    return code;
}

struct VerifyArgs {
    std::string family;
    bool all_words = false;
    std::vector<std::string> words;
    double tol = kDefaultTol;
    std::string method = "determinant";
    unsigned threads = 0;
};

constexpr std::size_t kMaxVerifyDiffStates = 20;

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
    const PolicyFamily family = load_family_file(args.family).build();
    const std::size_t n = family.num_diff_states();
    if (!args.all_words && args.words.empty()) throw InvalidInput("verify needs --all-words or --word");
    if (args.all_words && n > kMaxVerifyDiffStates)
        throw InvalidInput("--all-words supports at most " + std::to_string(kMaxVerifyDiffStates) +
                           " differing states");
    if (args.method != "gamma") parse_evaluator(args.method);

    std::vector<BinaryWord> candidates;
    if (args.all_words) {
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v)
            candidates.push_back(BinaryWord::from_index(v, n));
    }
    for (const auto& w : args.words) {
        BinaryWord word = BinaryWord::parse(w);
        if (word.size() != n) throw InvalidInput("--word '" + w + "' has the wrong length");
        candidates.push_back(std::move(word));
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<BinaryWord> words;
    std::size_t skipped = 0;
    for (auto& w : candidates) {
        if (is_combination(family, w))
            words.push_back(std::move(w));
        else
            ++skipped;
    }

    family.base_distributions();
    std::vector<json> records(words.size());
    std::vector<double> errors(words.size(), 0.0);
    std::vector<bool> failed(words.size(), false);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t idx = next++; idx < words.size(); idx = next++) {
            const BinaryWord& w = words[idx];
            json rec = {{"word", w.str()}};
            try {
                Target target;
                target.word = w;
                target.lambdas = MixtureVector::for_word(w);
                auto start = std::chrono::steady_clock::now();
                const Distribution formula = evaluate(family, target, args.method);
                rec["formula_seconds"] = seconds_since(start);
                const StochasticMatrix chain = target_chain(family, target);
                start = std::chrono::steady_clock::now();
                const Distribution direct = stationary_linear(chain);
                rec["direct_seconds"] = seconds_since(start);
                errors[idx] = max_abs_diff(formula.probs(), direct.probs());
                rec["max_error"] = errors[idx];
                rec["residual_formula"] = residual(chain, formula.probs());
                rec["residual_direct"] = residual(chain, direct.probs());
                failed[idx] = !(errors[idx] <= args.tol);
            } catch (const Error& e) {
                rec["error"] = e.what();
                failed[idx] = true;
            }
            records[idx] = std::move(rec);
        }
    };
    unsigned threads = args.threads ? args.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(words.size(), 1)));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();

    double max_error = 0.0;
    bool pass = true;
    for (std::size_t i = 0; i < words.size(); ++i) {
        max_error = std::max(max_error, errors[i]);
        if (failed[i]) {
            pass = false;
            err << "word " << words[i].str() << " failed";
            if (records[i].contains("error"))
                err << ": " << records[i]["error"].get<std::string>();
            else
                err << ": error " << errors[i] << " > " << args.tol;
            err << '\n';
        }
    }
    out << json{{"family", args.family},
                {"method", args.method},
                {"tol", args.tol},
                {"records", records},
                {"summary",
                 {{"words_checked", words.size()},
                  {"skipped_non_combinations", skipped},
                  {"max_error", max_error},
                  {"pass", pass}}}}
               .dump(2)
        << '\n';
    return pass ? kOk : kCheckFailed;
}

struct BenchArgs {
    std::string n_range = "1:7";
    std::size_t states = 12;
    std::uint64_t seed = 1;
    std::size_t reps = 5;
};

constexpr std::size_t kMaxBenchN = 8;
constexpr double kBenchAgreement = 1e-9;

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
    const auto sep = text.find_first_of(":-");
    try {
        if (sep == std::string::npos) {
            const auto v = std::stoull(text);
            return {v, v};
        }
        return {std::stoull(text.substr(0, sep)), std::stoull(text.substr(sep + 1))};
    } catch (const std::exception&) {
        throw InvalidInput("bad --n-range '" + text + "', expected LO:HI");
    }
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
    if (args.reps == 0) throw InvalidInput("--reps must be at least 1");
    const auto [lo, hi] = parse_range(args.n_range);
    if (lo > hi) throw InvalidInput("--n-range is empty");
    if (hi > kMaxBenchN)
        throw InvalidInput("--n-range upper bound " + std::to_string(hi) + " exceeds " +
                           std::to_string(kMaxBenchN) + " (permutation-sum guard)");

    json rows = json::array();
    for (std::size_t n = lo; n <= hi; ++n) {
        GenSpec spec;
        spec.num_diff_states = n;
        spec.num_states = std::max(args.states, n + 1);
        spec.seed = args.seed + n;
        spec.min_prob = std::min(0.01, 0.5 / static_cast<double>(spec.num_states));
        const PolicyFamily family = random_family(spec);
        const MixtureVector lambdas = random_lambdas(n, spec.seed);

        // Cross-check before timing anything.
        const Distribution perm = combine_randomized(family, lambdas, Evaluator::permsum);
        const Distribution det = combine_randomized(family, lambdas, Evaluator::determinant);
        const Distribution direct = stationary_linear(mixture_matrix(family, lambdas));
        const double diff = std::max({max_abs_diff(perm.probs(), det.probs()),
                                      max_abs_diff(perm.probs(), direct.probs()),
                                      max_abs_diff(det.probs(), direct.probs())});
        if (!(diff <= kBenchAgreement)) {
            err << "cross-check failed at n = " << n << ": methods differ by " << diff << '\n';
            return kCheckFailed;
        }

        const double t_perm =
            median_seconds(args.reps, [&] { (void)combine_randomized(family, lambdas, Evaluator::permsum); });
        const double t_det = median_seconds(
            args.reps, [&] { (void)combine_randomized(family, lambdas, Evaluator::determinant); });
        const double t_direct =
            median_seconds(args.reps, [&] { (void)stationary_linear(mixture_matrix(family, lambdas)); });
        rows.push_back({{"n", n},
                        {"states", spec.num_states},
                        {"max_cross_diff", diff},
                        {"permsum_seconds", t_perm},
                        {"determinant_seconds", t_det},
                        {"direct_seconds", t_direct},
                        {"permsum_over_determinant", t_det > 0.0 ? t_perm / t_det : 0.0}});
        err << "n=" << n << " permsum " << t_perm << "s determinant " << t_det << "s direct "
            << t_direct << "s\n";
    }
    out << json{{"reps", args.reps}, {"seed", args.seed}, {"rows", rows}}.dump(2) << '\n';
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stationary distributions of combined policies in unichain MDPs"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded unichain MDP or policy family");
    gen_cmd->add_option("--states", gen.spec.num_states, "Number of states N")->required();
    gen_cmd->add_option("--diff", gen.spec.num_diff_states, "Number of differing states n")->required();
    gen_cmd->add_option("--seed", gen.spec.seed, "64-bit seed");
    gen_cmd->add_option("--min-prob", gen.spec.min_prob, "Floor on every transition probability");
    gen_cmd->add_option("--near-degenerate", gen.spec.near_degenerate,
                        "Pull action-1 rows toward action-0 rows, in [0,1)");
    gen_cmd->add_option("--extra-actions", gen.spec.extra_actions, "Decoy actions at other states");
    gen_cmd->add_option("--kind", gen.kind, "family or mdp")->check(CLI::IsMember({"family", "mdp"}));
    gen_cmd->add_option("--out", gen.out, "Output path (default stdout)");

    ValidateArgs validate;
    auto* validate_cmd = app.add_subcommand("validate", "Validate an MDP or family file");
    validate_cmd->add_option("file", validate.file, "MDP or family JSON")->required();
    validate_cmd->add_option("--policy", validate.policies,
                             "Comma-separated action list whose chain must be irreducible");

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Stationary distribution of one policy");
    solve_cmd->add_option("file", solve.file, "MDP or family JSON")->required();
    solve_cmd->add_option("--policy", solve.policy, "Comma-separated action per state");
    auto* solve_word = solve_cmd->add_option("--word", solve.word, "Combination word (family files)");
    solve_cmd->add_option("--method", solve.method, "linear or cesaro")
        ->check(CLI::IsMember({"linear", "cesaro"}));
    solve_cmd->add_option("--tol", solve.tol, "Cesaro tolerance");
    solve_cmd->add_option("--max-iters", solve.max_iters, "Cesaro iteration cap");

    CombineArgs combine;
    combine.tol = default_tol();
    auto* combine_cmd = app.add_subcommand("combine", "Evaluate the combination formula");
    combine_cmd->add_option("--family", combine.family, "Family JSON")->required();
    auto* combine_word = combine_cmd->add_option("--word", combine.word, "Deterministic target word");
    auto* combine_lambda =
        combine_cmd->add_option("--lambda", combine.lambdas, "Probabilities of action 0, comma separated")
            ->delimiter(',');
    combine_word->excludes(combine_lambda);
    combine_cmd->add_option("--method", combine.method, "determinant, permsum or gamma")
        ->check(CLI::IsMember({"determinant", "permsum", "gamma"}));
    combine_cmd->add_flag("--check", combine.check, "Re-solve the chain directly and compare");
    combine_cmd->add_option("--tol", combine.tol, "Tolerance for --check");

    VerifyArgs verify;
    verify.tol = default_tol();
    auto* verify_cmd = app.add_subcommand("verify", "Compare the formula against direct solves");
    verify_cmd->add_option("--family", verify.family, "Family JSON")->required();
    verify_cmd->add_flag("--all-words", verify.all_words, "Every combination word");
    verify_cmd->add_option("--word", verify.words, "Specific words (repeatable)");
    verify_cmd->add_option("--tol", verify.tol, "Max componentwise error");
    verify_cmd->add_option("--method", verify.method, "determinant, permsum or gamma")
        ->check(CLI::IsMember({"determinant", "permsum", "gamma"}));
    verify_cmd->add_option("--threads", verify.threads, "Worker threads (0 = hardware)");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Time permsum, determinant and direct solves");
    bench_cmd->add_option("--n-range", bench.n_range, "LO:HI differing-state counts");
    bench_cmd->add_option("--states", bench.states, "Number of states");
    bench_cmd->add_option("--seed", bench.seed, "Base seed");
    bench_cmd->add_option("--reps", bench.reps, "Repetitions per timing (median reported)");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        return kUsage;
    }

    try {
        if (*gen_cmd) return cmd_gen(gen, out);
        if (*validate_cmd) return cmd_validate(validate, out, err);
        if (*solve_cmd) {
            solve.has_word = solve_word->count() > 0;
            return cmd_solve(solve, out);
        }
        if (*combine_cmd) {
            combine.has_word = combine_word->count() > 0;
            combine.has_lambda = combine_lambda->count() > 0;
            return cmd_combine(combine, out, err);
        }
        if (*verify_cmd) return cmd_verify(verify, out, err);
        if (*bench_cmd) return cmd_bench(bench, out, err);
    } catch (const DegenerateDenominator& e) {
        err << "error: " << e.what() << '\n';
        return kDegenerate;
    } catch (const NonPositiveResult& e) {
        err << "error: " << e.what() << '\n';
        return kDegenerate;
    } catch (const SingularSystem& e) {
        err << "error: " << e.what() << '\n';
        return kDegenerate;
    } catch (const NoConvergence& e) {
        err << "error: " << e.what() << '\n';
        return kDegenerate;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace unimix::cli
