#pragma once

#include "unimix/distribution.hpp"
#include "unimix/error.hpp"
#include "unimix/mdp.hpp"
#include "unimix/randgen.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace unimix {

using json = nlohmann::json;

/// Unreadable file, malformed JSON, or a document of the wrong shape.
class FormatError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// MDP document before semantic validation, so that row-sum and range
/// problems can be reported instead of thrown.
struct MdpDocument {
    std::size_t num_states = 0;
    TransitionTensor transitions;
    std::optional<std::vector<double>> initial_distribution;

    Mdp build() const { return Mdp(num_states, transitions, initial_distribution); }
};

struct FamilyDocument {
    MdpDocument mdp;
    std::vector<std::size_t> diff_states;
    std::vector<BinaryWord> base_words;
    DeterministicPolicy shared_policy;
    std::optional<std::vector<std::vector<double>>> base_distributions;
    std::optional<json> gen_meta;

    PolicyFamily build() const;
};

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& doc);

/// {"num_states": N, "transitions": [[[p...]...]...], "initial_distribution"?: [...]}
MdpDocument parse_mdp(const json& doc);
json to_json(const Mdp& mdp);

/// `mdp` may be an inline MDP object or a path string, resolved relative to
/// `base_dir`.
FamilyDocument parse_family(const json& doc, const std::filesystem::path& base_dir = {});
FamilyDocument load_family_file(const std::filesystem::path& path);
json to_json(const PolicyFamily& family, bool include_distributions = true);

/// {"probs": [...], "method": "...", "residual": r}
json distribution_json(const Distribution& mu, std::string_view method, double residual);

/// Generation metadata block recording the spec and the RNG identity.
json gen_meta_json(const GenSpec& spec);

/// Looks like an MDP document rather than a family document.
bool is_family_document(const json& doc);

}  // namespace unimix
