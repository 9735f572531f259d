// poset-kraft: command-line front end for the poset_kraft library.
//
// Exit codes: 0 success or property holds, 1 checked property fails,
// 2 usage error, 3 search budget exceeded.

#include "poset_kraft/codes.hpp"
#include "poset_kraft/io.hpp"
#include "poset_kraft/lym.hpp"
#include "poset_kraft/perm.hpp"
#include "poset_kraft/poset.hpp"
#include "poset_kraft/rational.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace pk = poset_kraft;
using nlohmann::json;

namespace {

constexpr int exit_fails = 1;
constexpr int exit_usage = 2;
constexpr int exit_budget = 3;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct FamilyArgs {
    bool str = false;
    std::string perm;  // "T" or "S"
    bool subsets = false;
    int r = 0;
    int k = 0;
    int n = 0;
    std::string relation;
    std::optional<int> max_level;
};

struct OutputArgs {
    bool json = false;
    bool decimal = false;
};

void add_family_options(CLI::App* cmd, FamilyArgs& f) {
    cmd->add_flag("--str", f.str, "strings over {0..r-1}");
    cmd->add_option("--perm", f.perm, "T: partial permutations T_k, S: permutation patterns")
        ->check(CLI::IsMember({"T", "S"}));
    cmd->add_flag("--subsets", f.subsets, "subsets of [n] under inclusion");
    cmd->add_option("--r", f.r, "alphabet size");
    cmd->add_option("--k", f.k, "permutation universe");
    cmd->add_option("--n", f.n, "ground set size");
    cmd->add_option("--relation", f.relation, "prefix, subsequence, substring, pattern or substring-pattern");
    cmd->add_option("--max-level", f.max_level, "longest string length (string family)");
}

void add_output_options(CLI::App* cmd, OutputArgs& o) {
    cmd->add_flag("--json", o.json, "JSON output");
    cmd->add_flag("--decimal", o.decimal, "append decimal approximations to fractions");
}

std::string fraction(const pk::ExactRational& q, const OutputArgs& o) {
    auto out = pk::format_fraction(q);
    if (o.decimal) out += " (" + pk::format_decimal(q) + ")";
    return out;
}

json fraction_json(const pk::ExactRational& q, const OutputArgs& o) {
    if (!o.decimal) return pk::format_fraction(q);
    return {{"exact", pk::format_fraction(q)}, {"decimal", pk::format_decimal(q)}};
}

pk::Relation relation_of(const FamilyArgs& f) {
    if (f.relation.empty()) throw UsageError("--relation is required for this family");
    try {
        return pk::parse_relation(f.relation);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

int selected_families(const FamilyArgs& f) { return int(f.str) + int(!f.perm.empty()) + int(f.subsets); }

/// `implied_max_level` is used for strings when --max-level is absent.
pk::GradedPoset build_poset(const FamilyArgs& f, std::optional<int> implied_max_level = std::nullopt) {
    if (selected_families(f) != 1) throw UsageError("select exactly one of --str, --perm T|S, --subsets");
    if (f.subsets) {
        if (f.n < 0) throw UsageError("--n must be nonnegative");
        return pk::build_subset_poset(f.n);
    }
    if (f.str) {
        if (f.r < 1) throw UsageError("--r must be at least 1");
        const auto max_level = f.max_level ? f.max_level : implied_max_level;
        if (!max_level) throw UsageError("--max-level is required for strings");
        if (*max_level < 0) throw UsageError("--max-level must be nonnegative");
        return pk::build_string_poset(f.r, relation_of(f), *max_level);
    }
    if (f.k < 1) throw UsageError("--k must be at least 1");
    const auto rel = relation_of(f);
    if (f.perm == "T") {
        if (rel != pk::Relation::prefix && rel != pk::Relation::subsequence && rel != pk::Relation::substring)
            throw UsageError("T_k takes prefix, subsequence or substring");
        return pk::build_partial_perm_poset(f.k, rel);
    }
    if (rel != pk::Relation::pattern && rel != pk::Relation::substring_pattern)
        throw UsageError("permutation patterns take pattern or substring-pattern");
    return pk::build_pattern_poset(f.k, rel);
}

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const std::string& path) {
    try {
        return json::parse(read_input(path));
    } catch (const json::parse_error& e) {
        throw UsageError(path + ": " + e.what());
    }
}

pk::ParameterSequence parse_params(const std::vector<std::uint64_t>& values) { return pk::ParameterSequence(values); }

std::uint64_t search_budget() {
    const char* env = std::getenv("POSET_KRAFT_BUDGET");
    if (!env || !*env) return pk::default_search_budget;
    try {
        std::size_t used = 0;
        const auto value = std::stoull(env, &used);
        if (used != std::string_view(env).size() || value == 0) throw std::invalid_argument("");
        return value;
    } catch (const std::logic_error&) {
        throw UsageError("POSET_KRAFT_BUDGET must be a positive integer");
    }
}

std::string level_name(const pk::GradedPoset& p, std::size_t rank) {
    switch (p.family()) {
        case pk::Family::partial_perm: return "T^" + std::to_string(rank + 1);
        case pk::Family::pattern:
            if (rank % 2 == 0) return "S_" + std::to_string(rank / 2 + 1);
            return "T_" + std::to_string(rank / 2 + 2) + "^" + std::to_string(rank / 2 + 1);
        case pk::Family::subset: return "size " + std::to_string(rank);
        default: return "length " + std::to_string(rank);
    }
}

std::string format_antichain(const pk::GradedPoset& p, const pk::Antichain& a) {
    std::string out = "{";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += ", ";
        out += p.label(a.members()[i]);
    }
    return out + "}";
}

std::string format_code(const pk::Code& code) {
    std::string out = "{";
    for (std::size_t i = 0; i < code.size(); ++i) {
        if (i) out += ",";
        out += pk::format_word(code.codewords()[i]);
    }
    return out + "}";
}

// enumerate ------------------------------------------------------------------

struct EnumerateArgs {
    FamilyArgs family;
    std::optional<int> l;
};

int cmd_enumerate(const EnumerateArgs& a) {
    const auto& f = a.family;
    if (f.subsets || selected_families(f) != 1) throw UsageError("enumerate takes --str or --perm T|S");
    std::vector<pk::Word> words;
    pk::BigInt closed_form = 0;
    if (f.str) {
        if (f.r < 1) throw UsageError("--r must be at least 1");
        if (!a.l || *a.l < 0) throw UsageError("--l is required for strings");
        words = pk::enumerate(pk::SequenceKind::string, f.r, *a.l);
        closed_form = pk::BigInt(f.r);
        closed_form = boost::multiprecision::pow(closed_form, static_cast<unsigned>(*a.l));
    } else {
        if (f.k < 1) throw UsageError("--k must be at least 1");
        if (a.l && (*a.l < 1 || *a.l > f.k)) throw UsageError("--l must lie in [1, k]");
        const int lo = a.l.value_or(1);
        const int hi = a.l.value_or(f.k);
        for (int l = lo; l <= hi; ++l) {
            const bool full = f.perm == "S";
            auto level = pk::enumerate(full ? pk::SequenceKind::permutation : pk::SequenceKind::partial_permutation,
                                       full ? l : f.k, l);
            words.insert(words.end(), level.begin(), level.end());
            closed_form += full ? pk::factorial(l) : pk::binomial(f.k, l) * pk::factorial(l);
        }
    }
    for (const auto& w : words) std::cout << pk::format_word(w) << '\n';
    std::cerr << "# " << words.size() << " elements, closed form " << closed_form << '\n';
    return closed_form == words.size() ? 0 : exit_fails;
}

// check-free -----------------------------------------------------------------

struct CodeArgs {
    std::string code_path;
    std::string relation;
    OutputArgs out;
};

int cmd_check_free(const CodeArgs& a) {
    const auto code = pk::code_from_json(read_json(a.code_path));
    pk::Relation rel;
    try {
        rel = pk::parse_relation(a.relation);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto result = pk::is_free(code, rel);
    if (a.out.json) {
        json j = {{"free", result.free}};
        if (result.witness)
            j["witness"] = {pk::format_word(code.codewords()[result.witness->first]),
                            pk::format_word(code.codewords()[result.witness->second])};
        std::cout << j.dump() << '\n';
    } else if (result.free) {
        std::cout << "free under " << pk::to_string(rel) << '\n';
    } else {
        std::cout << "not free under " << pk::to_string(rel) << ": "
                  << pk::format_word(code.codewords()[result.witness->first]) << " is related to "
                  << pk::format_word(code.codewords()[result.witness->second]) << '\n';
    }
    return result.free ? 0 : exit_fails;
}

// constants, kraft -----------------------------------------------------------

struct ConstantsArgs {
    std::string code_path;
    std::vector<std::uint64_t> params;
    int r = 0;
    int k = 0;
    OutputArgs out;
};

struct ConstantsInput {
    pk::ParameterSequence params;
    std::optional<int> r;
    std::optional<int> k;
    std::optional<pk::CodomainKind> kind;
};

ConstantsInput constants_input(const ConstantsArgs& a, const CLI::App* cmd) {
    const bool has_code = !a.code_path.empty();
    const bool has_params = cmd->count("--params") > 0;
    if (has_code == has_params) throw UsageError("give exactly one of --code and --params");
    ConstantsInput in;
    if (has_code) {
        const auto code = pk::code_from_json(read_json(a.code_path));
        in.params = pk::parameter_sequence(code);
        in.kind = code.codomain().kind;
        (code.codomain().kind == pk::CodomainKind::string ? in.r : in.k) = code.codomain().size;
        return in;
    }
    in.params = parse_params(a.params);
    if (a.r > 0) in.r = a.r;
    if (a.k > 0) in.k = a.k;
    if (!in.r && !in.k) throw UsageError("--params needs --r or --k");
    return in;
}

int cmd_constants(const ConstantsArgs& a, const CLI::App* cmd) {
    const auto in = constants_input(a, cmd);
    std::vector<std::pair<std::string, pk::ExactRational>> rows;
    if (in.r) rows.emplace_back("K", pk::kraft_number(in.params, *in.r));
    if (in.k) {
        if (!in.kind || *in.kind == pk::CodomainKind::partial_perm)
            rows.emplace_back("P_T", pk::permutation_constant_T(in.params, *in.k));
        if (!in.kind || *in.kind == pk::CodomainKind::perm_pattern)
            rows.emplace_back("P_S", pk::permutation_constant_S(in.params, *in.k));
    }
    if (a.out.json) {
        json j = json::object();
        for (const auto& [name, value] : rows) j[name] = fraction_json(value, a.out);
        std::cout << j.dump() << '\n';
    } else {
        for (const auto& [name, value] : rows) std::cout << name << " = " << fraction(value, a.out) << '\n';
    }
    return 0;
}

int cmd_kraft(const ConstantsArgs& a, const CLI::App* cmd) {
    const auto in = constants_input(a, cmd);
    if (!in.r) throw UsageError("kraft needs a string code or --r");
    const auto kraft = pk::kraft_number(in.params, *in.r);
    const bool holds = kraft <= 1;
    if (a.out.json) {
        std::cout << json{{"K", fraction_json(kraft, a.out)}, {"holds", holds}}.dump() << '\n';
    } else {
        std::cout << "K = " << fraction(kraft, a.out) << '\n' << (holds ? "K <= 1" : "K > 1") << '\n';
    }
    return holds ? 0 : exit_fails;
}

// lym, local-lym -------------------------------------------------------------

struct LymArgs {
    FamilyArgs family;
    std::string antichain_path;
    OutputArgs out;
};

int cmd_lym(const LymArgs& a) {
    const auto poset = build_poset(a.family, 3);
    const auto antichain = pk::antichain_from_json(poset, read_json(a.antichain_path));
    const auto check = pk::is_antichain(poset, antichain);
    const auto lym = pk::lym_number(poset, antichain);
    if (a.out.json) {
        json j = {{"L", fraction_json(lym, a.out)}, {"antichain", check.holds}};
        if (check.witness) j["witness"] = {poset.label(check.witness->first), poset.label(check.witness->second)};
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "L = " << fraction(lym, a.out) << '\n';
        if (check.holds) {
            std::cout << "antichain\n";
        } else {
            std::cout << "not an antichain: " << poset.label(check.witness->first) << " < "
                      << poset.label(check.witness->second) << '\n';
        }
    }
    return check.holds ? 0 : exit_fails;
}

struct LocalLymArgs {
    FamilyArgs family;
    std::size_t level = 0;
    std::vector<std::string> elements;
    OutputArgs out;
};

int cmd_local_lym(const LocalLymArgs& a) {
    const auto poset = build_poset(a.family, static_cast<int>(a.level));
    const auto rank = pk::rank_of_length(poset, a.level);
    if (rank >= poset.level_count()) throw UsageError("no level holds elements of length " + std::to_string(a.level));
    std::vector<pk::ElementRef> set;
    for (const auto& text : a.elements) set.push_back(pk::parse_element(poset, rank, text));
    const auto result = pk::local_lym_check(poset, rank, set);
    if (a.out.json) {
        std::cout << json{{"lhs", fraction_json(result.lhs, a.out)},
                          {"rhs", fraction_json(result.rhs, a.out)},
                          {"holds", result.holds}}
                         .dump()
                  << '\n';
    } else {
        std::cout << "shadow density = " << fraction(result.lhs, a.out) << '\n'
                  << "set density = " << fraction(result.rhs, a.out) << '\n'
                  << (result.holds ? "holds" : "fails") << '\n';
    }
    return result.holds ? 0 : exit_fails;
}

// mcmillan -------------------------------------------------------------------

struct McMillanArgs {
    int r = 2;
    std::vector<std::uint64_t> params;
    std::string output_path;
    OutputArgs out;
};

int cmd_mcmillan(const McMillanArgs& a) {
    if (a.r < 1) throw UsageError("--r must be at least 1");
    const auto result = pk::mcmillan_construct(a.r, parse_params(a.params));
    if (const auto* infeasible = std::get_if<pk::McMillanInfeasible>(&result)) {
        if (a.out.json) {
            std::cout << json{{"feasible", false}, {"level", infeasible->level}}.dump() << '\n';
        } else {
            std::cout << "infeasible at level " << infeasible->level << '\n';
        }
        return exit_fails;
    }
    const auto& code = std::get<pk::Code>(result);
    if (!a.output_path.empty()) {
        std::ofstream file(a.output_path);
        if (!file) throw UsageError("cannot write '" + a.output_path + "'");
        file << pk::code_to_json(code).dump(2) << '\n';
    }
    if (a.out.json) {
        std::cout << pk::code_to_json(code).dump() << '\n';
    } else {
        std::cout << format_code(code) << '\n';
    }
    return 0;
}

// counterexample, antichain-search -------------------------------------------

struct SearchArgs {
    FamilyArgs family;
    std::size_t level = 0;
    std::vector<std::size_t> counts;
    unsigned threads = 1;
    OutputArgs out;
};

void print_search(const pk::GradedPoset& p, const pk::AntichainSearchResult& result) {
    if (const auto* found = std::get_if<pk::AntichainFound>(&result)) {
        std::cout << "antichain exists: " << format_antichain(p, found->antichain) << '\n';
    } else {
        const auto& none = std::get<pk::NoAntichain>(result);
        std::cout << "no antichain exists (search nodes " << none.search_nodes << ", leaf checks " << none.leaf_checks
                  << ")\n";
    }
}

int cmd_counterexample(const SearchArgs& a) {
    const auto poset = build_poset(a.family, static_cast<int>(a.level) + 1);
    const auto lower = pk::rank_of_length(poset, a.level);
    const auto upper = pk::rank_of_length(poset, a.level + 1);
    if (upper >= poset.level_count()) throw UsageError("the poset has no level above length " + std::to_string(a.level));
    const auto outcome = poset.family() == pk::Family::pattern ? pk::gcd_split_params(poset, lower, upper)
                                                               : pk::counterexample_params(poset, lower);
    if (const auto* rejection = std::get_if<pk::Rejection>(&outcome)) {
        if (a.out.json) {
            std::cout << json{{"rejected", rejection->reason}}.dump() << '\n';
        } else {
            std::cout << "rejected: " << rejection->reason << '\n';
        }
        return exit_fails;
    }
    const auto& params = std::get<pk::CounterexampleParams>(outcome);
    const auto result = pk::antichain_exists(poset, params.counts, {.budget = search_budget(), .threads = a.threads});
    const bool none = std::holds_alternative<pk::NoAntichain>(result);
    if (a.out.json) {
        json j = {{"lower_level", params.lower_level},
                  {"upper_level", params.upper_level},
                  {"counts", params.counts},
                  {"gcd", params.gcd},
                  {"lym_sum", fraction_json(params.lym_sum, a.out)},
                  {"certificate", pk::search_result_to_json(poset, result)}};
        if (params.up_degree) j["up_degree"] = *params.up_degree;
        if (params.down_degree) j["down_degree"] = *params.down_degree;
        std::cout << j.dump() << '\n';
        return none ? 0 : exit_fails;
    }
    const auto lo_size = poset.level_size(params.lower_level);
    const auto hi_size = poset.level_size(params.upper_level);
    std::cout << "levels: " << level_name(poset, params.lower_level) << " (" << lo_size << " elements), "
              << level_name(poset, params.upper_level) << " (" << hi_size << " elements)\n";
    if (params.up_degree) {
        std::cout << "up-degree " << *params.up_degree << ", down-degree " << *params.down_degree
                  << ", weakly connected\n";
    }
    std::cout << "gcd = " << params.gcd << '\n'
              << "params: a(" << level_name(poset, params.lower_level) << ") = " << params.counts[params.lower_level]
              << ", a(" << level_name(poset, params.upper_level) << ") = " << params.counts[params.upper_level] << '\n'
              << "LYM sum = " << fraction(params.lym_sum, a.out) << '\n';
    print_search(poset, result);
    return none ? 0 : exit_fails;
}

int cmd_antichain_search(const SearchArgs& a) {
    if (a.counts.empty()) throw UsageError("--counts is required");
    const auto poset = build_poset(a.family, static_cast<int>(a.counts.size()) - 1);
    const auto result = pk::antichain_exists(poset, a.counts, {.budget = search_budget(), .threads = a.threads});
    if (a.out.json) {
        std::cout << pk::search_result_to_json(poset, result).dump() << '\n';
    } else {
        std::cout << "LYM sum = " << fraction(pk::lym_number(poset, a.counts), a.out) << '\n';
        print_search(poset, result);
    }
    return std::holds_alternative<pk::AntichainFound>(result) ? 0 : exit_fails;
}

// hasse, regularity ----------------------------------------------------------

struct PosetArgs {
    FamilyArgs family;
    OutputArgs out;
};

int cmd_hasse(const PosetArgs& a) {
    const auto poset = build_poset(a.family, 3);
    if (a.out.json) {
        std::cout << pk::poset_to_json(poset).dump() << '\n';
    } else {
        std::cout << pk::export_hasse_dot(poset);
    }
    return 0;
}

int cmd_regularity(const PosetArgs& a) {
    const auto poset = build_poset(a.family, 3);
    const auto report = pk::regularity_check(poset);
    if (a.out.json) {
        json pairs = json::array();
        for (const auto& pair : report.pairs) {
            pairs.push_back({{"lower_level", pair.lower_level},
                             {"lower_size", pair.lower_size},
                             {"upper_size", pair.upper_size},
                             {"edges", pair.edge_count},
                             {"up_degree", pair.up_degree ? json(*pair.up_degree) : json()},
                             {"down_degree", pair.down_degree ? json(*pair.down_degree) : json()}});
        }
        std::cout << json{{"biregular", report.biregular()}, {"pairs", pairs}}.dump() << '\n';
    } else {
        for (const auto& pair : report.pairs) {
            std::cout << level_name(poset, pair.lower_level) << " -> " << level_name(poset, pair.lower_level + 1)
                      << ": sizes " << pair.lower_size << ", " << pair.upper_size << "; edges " << pair.edge_count
                      << "; up " << (pair.up_degree ? std::to_string(*pair.up_degree) : "irregular") << ", down "
                      << (pair.down_degree ? std::to_string(*pair.down_degree) : "irregular") << '\n';
        }
        std::cout << (report.biregular() ? "biregular" : "not biregular") << '\n';
    }
    return report.biregular() ? 0 : exit_fails;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kraft-type inequalities on graded posets of strings and permutations", "poset-kraft"};
    app.require_subcommand(1);
    int status = 0;

    EnumerateArgs enumerate_args;
    auto* enumerate = app.add_subcommand("enumerate", "list strings, partial permutations or permutations");
    add_family_options(enumerate, enumerate_args.family);
    enumerate->add_option("--l", enumerate_args.l, "length (all lengths 1..k when omitted for --perm)");
    enumerate->callback([&] { status = cmd_enumerate(enumerate_args); });

    CodeArgs free_args;
    auto* check_free = app.add_subcommand("check-free", "test whether a code is an antichain under a relation");
    check_free->add_option("--code", free_args.code_path, "code JSON file, - for stdin")->required();
    check_free->add_option("--relation", free_args.relation, "relation")->required();
    add_output_options(check_free, free_args.out);
    check_free->callback([&] { status = cmd_check_free(free_args); });

    ConstantsArgs constants_args;
    auto* constants = app.add_subcommand("constants", "Kraft number and permutation constants");
    ConstantsArgs kraft_args;
    auto* kraft = app.add_subcommand("kraft", "Kraft number and the Kraft inequality");
    for (auto [cmd, args] : {std::pair{constants, &constants_args}, std::pair{kraft, &kraft_args}}) {
        cmd->add_option("--code", args->code_path, "code JSON file, - for stdin");
        cmd->add_option("--params", args->params, "a_0,a_1,... codeword counts by length")->delimiter(',');
        cmd->add_option("--r", args->r, "alphabet size");
        if (cmd == constants) cmd->add_option("--k", args->k, "permutation universe");
        add_output_options(cmd, args->out);
    }
    constants->callback([&] { status = cmd_constants(constants_args, constants); });
    kraft->callback([&] { status = cmd_kraft(kraft_args, kraft); });

    LymArgs lym_args;
    auto* lym = app.add_subcommand("lym", "LYM number of an antichain file");
    add_family_options(lym, lym_args.family);
    lym->add_option("--antichain", lym_args.antichain_path, "antichain JSON file, - for stdin")->required();
    add_output_options(lym, lym_args.out);
    lym->callback([&] { status = cmd_lym(lym_args); });

    LocalLymArgs local_args;
    auto* local = app.add_subcommand("local-lym", "shadow density against set density on one level");
    add_family_options(local, local_args.family);
    local->add_option("--level", local_args.level, "element length")->required();
    local->add_option("--elements", local_args.elements, "elements on that level")->required();
    add_output_options(local, local_args.out);
    local->callback([&] { status = cmd_local_lym(local_args); });

    McMillanArgs mcmillan_args;
    auto* mcmillan = app.add_subcommand("mcmillan", "greedy prefix-free code from a parameter sequence");
    mcmillan->add_option("--r", mcmillan_args.r, "alphabet size")->capture_default_str();
    mcmillan->add_option("--params", mcmillan_args.params, "a_0,a_1,... codeword counts by length")
        ->delimiter(',')
        ->required();
    mcmillan->add_option("--output", mcmillan_args.output_path, "write the code JSON here");
    add_output_options(mcmillan, mcmillan_args.out);
    mcmillan->callback([&] { status = cmd_mcmillan(mcmillan_args); });

    SearchArgs counter_args;
    auto* counter = app.add_subcommand("counterexample", "gcd parameter vector and proof that no antichain realizes it");
    add_family_options(counter, counter_args.family);
    counter->add_option("--level", counter_args.level, "element length of the lower level")->required();
    counter->add_option("--threads", counter_args.threads, "search threads")->check(CLI::PositiveNumber);
    add_output_options(counter, counter_args.out);
    counter->callback([&] { status = cmd_counterexample(counter_args); });

    SearchArgs search_args;
    auto* search = app.add_subcommand("antichain-search", "exhaustive search for an antichain with given level counts");
    add_family_options(search, search_args.family);
    search->add_option("--counts", search_args.counts, "elements wanted per rank, lowest rank first")
        ->delimiter(',')
        ->required();
    search->add_option("--threads", search_args.threads, "search threads")->check(CLI::PositiveNumber);
    add_output_options(search, search_args.out);
    search->callback([&] { status = cmd_antichain_search(search_args); });

    PosetArgs hasse_args;
    auto* hasse = app.add_subcommand("hasse", "Hasse diagram as DOT, or the poset as JSON");
    add_family_options(hasse, hasse_args.family);
    add_output_options(hasse, hasse_args.out);
    hasse->callback([&] { status = cmd_hasse(hasse_args); });

    PosetArgs regularity_args;
    auto* regularity = app.add_subcommand("regularity", "up- and down-degrees between consecutive levels");
    add_family_options(regularity, regularity_args.family);
    add_output_options(regularity, regularity_args.out);
    regularity->callback([&] { status = cmd_regularity(regularity_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    } catch (const pk::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_budget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const pk::InstanceTooLarge& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return status;
}
