#include "unimix/io.hpp"

#include "unimix/rng.hpp"

#include <fstream>
#include <sstream>

namespace unimix {

namespace {

template <typename T>
T get_field(const json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key))
        throw FormatError(std::string("missing field '") + key + "'");
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception& e) {
        throw FormatError(std::string("field '") + key + "' has the wrong type: " + e.what());
    }
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write " + path.string());
    out << doc.dump(2) << '\n';
}

MdpDocument parse_mdp(const json& doc) {
    MdpDocument out;
    out.num_states = get_field<std::size_t>(doc, "num_states");
    out.transitions = get_field<TransitionTensor>(doc, "transitions");
    if (doc.contains("initial_distribution") && !doc.at("initial_distribution").is_null())
        out.initial_distribution = get_field<std::vector<double>>(doc, "initial_distribution");
    return out;
}

json to_json(const Mdp& mdp) {
    json doc = {{"num_states", mdp.num_states()}, {"transitions", mdp.transitions()}};
    if (mdp.initial_distribution()) doc["initial_distribution"] = *mdp.initial_distribution();
    return doc;
}

bool is_family_document(const json& doc) { return doc.is_object() && doc.contains("mdp"); }

FamilyDocument parse_family(const json& doc, const std::filesystem::path& base_dir) {
    FamilyDocument out;
    if (!is_family_document(doc)) throw FormatError("missing field 'mdp'");
    const json& mdp = doc.at("mdp");
    if (mdp.is_string()) {
        std::filesystem::path p = mdp.get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        out.mdp = parse_mdp(read_json_file(p));
    } else {
        out.mdp = parse_mdp(mdp);
    }
    out.diff_states = get_field<std::vector<std::size_t>>(doc, "diff_states");
    for (const auto& w : get_field<std::vector<std::string>>(doc, "base_words")) {
        try {
            out.base_words.push_back(BinaryWord::parse(w));
        } catch (const InvalidInput& e) {
            throw FormatError(e.what());
        }
    }
    out.shared_policy.choice = get_field<std::vector<std::size_t>>(doc, "shared_policy");
    if (doc.contains("base_distributions") && !doc.at("base_distributions").is_null())
        out.base_distributions = get_field<std::vector<std::vector<double>>>(doc, "base_distributions");
    if (doc.contains("gen_meta")) out.gen_meta = doc.at("gen_meta");
    return out;
}

FamilyDocument load_family_file(const std::filesystem::path& path) {
    return parse_family(read_json_file(path), path.parent_path());
}

PolicyFamily FamilyDocument::build() const {
    std::optional<std::vector<Distribution>> dists;
    if (base_distributions) {
        dists.emplace();
        for (const auto& d : *base_distributions) dists->emplace_back(d);
    }
    return PolicyFamily(mdp.build(), diff_states, base_words, shared_policy, std::move(dists));
}

json to_json(const PolicyFamily& family, bool include_distributions) {
    json words = json::array();
    for (const auto& w : family.base_words()) words.push_back(w.str());
    json doc = {{"mdp", to_json(family.mdp())},
                {"diff_states", family.diff_states()},
                {"base_words", words},
                {"shared_policy", family.shared_policy().choice}};
    if (include_distributions) {
        json dists = json::array();
        for (const auto& mu : family.base_distributions())
            dists.push_back(std::vector<double>(mu.probs().begin(), mu.probs().end()));
        doc["base_distributions"] = dists;
    }
    return doc;
}

json distribution_json(const Distribution& mu, std::string_view method, double residual) {
    return {{"probs", std::vector<double>(mu.probs().begin(), mu.probs().end())},
            {"method", std::string(method)},
            {"residual", residual}};
}

json gen_meta_json(const GenSpec& spec) {
    return {{"rng", std::string(Pcg32::kName)},
            {"rng_version", Pcg32::kVersion},
            {"rng_stream", Pcg32::kDefaultStream},
            {"seed", spec.seed},
            {"num_states", spec.num_states},
            {"num_diff_states", spec.num_diff_states},
            {"min_prob", spec.min_prob},
            {"near_degenerate", spec.near_degenerate},
            {"extra_actions", spec.extra_actions}};
}

}  // namespace unimix
