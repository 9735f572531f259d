#include "poset_kraft/io.hpp"

#include <stdexcept>
#include <string>

namespace poset_kraft {

nlohmann::json code_to_json(const Code& code) {
    nlohmann::json codomain = {{"kind", std::string(to_string(code.codomain().kind))}};
    codomain[code.codomain().kind == CodomainKind::string ? "r" : "k"] = code.codomain().size;
    nlohmann::json words = nlohmann::json::array();
    for (const Word& w : code.codewords()) words.push_back(w.empty() ? std::string() : format_word(w));
    return {{"codomain", codomain}, {"codewords", words}};
}

Code code_from_json(const nlohmann::json& j) {
    const auto& codomain = j.at("codomain");
    const auto kind_name = codomain.at("kind").get<std::string>();
    Codomain parsed;
    if (kind_name == "string") {
        parsed = {CodomainKind::string, codomain.at("r").get<int>()};
    } else if (kind_name == "partial_perm") {
        parsed = {CodomainKind::partial_perm, codomain.at("k").get<int>()};
    } else if (kind_name == "perm_pattern") {
        parsed = {CodomainKind::perm_pattern, codomain.at("k").get<int>()};
    } else {
        throw std::invalid_argument("unknown codomain kind '" + kind_name + "'");
    }
    std::vector<Word> codewords;
    for (const auto& w : j.at("codewords")) {
        auto word = parse_word(w.get<std::string>());
        if (word.universe && *word.universe != parsed.size)
            throw UniverseMismatch(*word.universe, parsed.size);
        codewords.push_back(std::move(word.symbols));
    }
    return Code(parsed, std::move(codewords));
}

nlohmann::json poset_to_json(const GradedPoset& poset) {
    nlohmann::json levels = nlohmann::json::array();
    nlohmann::json edges = nlohmann::json::array();
    for (std::size_t i = 0; i < poset.level_count(); ++i) {
        nlohmann::json level = nlohmann::json::array();
        for (std::size_t j = 0; j < poset.level_size(i); ++j) level.push_back(poset.label({i, j}));
        levels.push_back(std::move(level));
    }
    for (std::size_t i = 0; i + 1 < poset.level_count(); ++i) {
        nlohmann::json pair = nlohmann::json::array();
        for (const CoverEdge& e : poset.covers(i)) pair.push_back({e.lower, e.upper, e.multiplicity});
        edges.push_back(std::move(pair));
    }
    nlohmann::json out = {{"family", std::string(to_string(poset.family()))}, {"levels", levels}, {"edges", edges}};
    out["relation"] = poset.relation() ? nlohmann::json(std::string(to_string(*poset.relation()))) : nlohmann::json();
    return out;
}

namespace {

Word parse_subset(std::string_view text) {
    if (text == "∅" || text == "{}") return {};
    if (text.size() < 2 || text.front() != '{' || text.back() != '}')
        throw std::invalid_argument("malformed subset '" + std::string(text) + "'");
    return parse_word("(" + std::string(text.substr(1, text.size() - 2)) + ")").symbols;
}

}  // namespace

ElementRef parse_element(const GradedPoset& poset, std::size_t level, std::string_view text) {
    Word w;
    if (poset.family() == Family::subset) {
        w = parse_subset(text);
    } else {
        auto parsed = parse_word(text);
        if (level < poset.level_count() && parsed.universe && *parsed.universe != poset.level(level).universe)
            throw UniverseMismatch(*parsed.universe, poset.level(level).universe);
        w = std::move(parsed.symbols);
    }
    const auto index = poset.find(level, w);
    if (!index)
        throw std::invalid_argument("element '" + std::string(text) + "' is not on level " + std::to_string(level));
    return {level, *index};
}

nlohmann::json antichain_to_json(const GradedPoset& poset, const Antichain& antichain) {
    nlohmann::json out = nlohmann::json::array();
    for (const ElementRef& e : antichain.members()) out.push_back({e.level, poset.label(e)});
    return out;
}

Antichain antichain_from_json(const GradedPoset& poset, const nlohmann::json& j) {
    const nlohmann::json& list = j.is_object() ? j.at("antichain") : j;
    std::vector<ElementRef> members;
    for (const auto& entry : list) {
        members.push_back(parse_element(poset, entry.at(0).get<std::size_t>(), entry.at(1).get<std::string>()));
    }
    return Antichain(std::move(members));
}

nlohmann::json search_result_to_json(const GradedPoset& poset, const AntichainSearchResult& result) {
    if (const auto* found = std::get_if<AntichainFound>(&result))
        return {{"exists", true}, {"antichain", antichain_to_json(poset, found->antichain)}};
    const auto& none = std::get<NoAntichain>(result);
    return {{"exists", false}, {"search_nodes", none.search_nodes}};
}

}  // namespace poset_kraft
