#pragma once

// JSON interchange for codes, posets, antichains and search certificates.

#include "poset_kraft/codes.hpp"
#include "poset_kraft/lym.hpp"
#include "poset_kraft/poset.hpp"

#include <json.hpp>

#include <string_view>

namespace poset_kraft {

/// {"codomain": {"kind": "string", "r": 2}, "codewords": ["0", "10", "11"]}
nlohmann::json code_to_json(const Code& code);
Code code_from_json(const nlohmann::json& j);

/// {"family": ..., "relation": ..., "levels": [[...], ...], "edges": [[[lower, upper, multiplicity], ...], ...]}
nlohmann::json poset_to_json(const GradedPoset& poset);

/// Element text on a given level: element syntax for words, `{1,2}` or `∅`
/// for subsets. Throws std::invalid_argument when absent from that level.
ElementRef parse_element(const GradedPoset& poset, std::size_t level, std::string_view text);

/// [[level, "element"], ...]
nlohmann::json antichain_to_json(const GradedPoset& poset, const Antichain& antichain);
/// Accepts the bare member list or an object with an "antichain" member.
Antichain antichain_from_json(const GradedPoset& poset, const nlohmann::json& j);

/// {"exists": true, "antichain": [...]} or {"exists": false, "search_nodes": N}
nlohmann::json search_result_to_json(const GradedPoset& poset, const AntichainSearchResult& result);

}  // namespace poset_kraft
