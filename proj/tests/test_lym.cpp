#include "oracles.hpp"
#include "poset_kraft/lym.hpp"

#include <doctest.h>

#include <functional>
#include <random>

using namespace poset_kraft;

namespace {

ElementRef ref(const GradedPoset& p, std::size_t level, std::string_view text) {
    const auto idx = p.find(level, parse_word(text).symbols);
    REQUIRE(idx.has_value());
    return {level, *idx};
}

ExactRational q(long n, long d) { return ExactRational(n, d); }

// Direct-relation comparability for the built-in families, independent of
// the cover graph.
bool directly_below(const GradedPoset& p, ElementRef a, ElementRef b) {
    if (a.level >= b.level) return false;
    const Word& x = p.element(a);
    const Word& y = p.element(b);
    switch (p.family()) {
        case Family::subset: return std::includes(y.begin(), y.end(), x.begin(), x.end());
        case Family::pattern: {
            if (a.level % 2 == 1 || b.level % 2 == 1) throw std::logic_error("oracle covers permutation levels only");
            return *p.relation() == Relation::pattern ? oracle::is_pattern_in(x, y)
                                                      : oracle::is_substring_pattern_in(x, y);
        }
        default:
            switch (*p.relation()) {
                case Relation::prefix: return oracle::is_prefix(x, y);
                case Relation::subsequence: return oracle::is_subsequence(x, y);
                default: return oracle::is_substring(x, y);
            }
    }
}

// Tries every combination on every requested level; comparability through
// directly_below only.
bool brute_force_exists(const GradedPoset& p, const LevelCounts& counts) {
    std::vector<ElementRef> chosen;
    std::function<bool(std::size_t, std::size_t, std::size_t)> go = [&](std::size_t level, std::size_t start,
                                                                         std::size_t remaining) -> bool {
        if (remaining == 0) {
            std::size_t next = level + 1;
            while (next < counts.size() && counts[next] == 0) ++next;
            if (next >= counts.size()) return true;
            return go(next, 0, counts[next]);
        }
        for (std::size_t j = start; j < p.level_size(level); ++j) {
            const ElementRef e{level, j};
            bool ok = true;
            for (const ElementRef& c : chosen) ok = ok && !directly_below(p, c, e) && !directly_below(p, e, c);
            if (!ok) continue;
            chosen.push_back(e);
            if (go(level, j + 1, remaining - 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    std::size_t first = 0;
    while (first < counts.size() && counts[first] == 0) ++first;
    if (first >= counts.size()) return true;
    return go(first, 0, counts[first]);
}

GradedPoset broken_subsets() {
    const auto subsets = build_subset_poset(2);
    std::vector<Level> levels;
    std::vector<std::vector<CoverEdge>> covers;
    for (std::size_t i = 0; i < subsets.level_count(); ++i) levels.push_back(subsets.level(i));
    for (std::size_t i = 0; i + 1 < subsets.level_count(); ++i)
        covers.emplace_back(subsets.covers(i).begin(), subsets.covers(i).end());
    covers[1].pop_back();
    return GradedPoset(Family::custom, std::nullopt, levels, covers);
}

}  // namespace

TEST_CASE("is_antichain") {
    const auto p = build_subset_poset(2);
    CHECK(is_antichain(p, Antichain({{1, 0}, {1, 1}})));
    const auto bad = is_antichain(p, Antichain({{0, 0}, {1, 0}}));
    CHECK_FALSE(bad.holds);
    REQUIRE(bad.witness.has_value());
    CHECK(p.label(bad.witness->first) == "∅");
    CHECK(p.label(bad.witness->second) == "{1}");
    CHECK(is_antichain(p, Antichain({{2, 0}})));
    CHECK(is_antichain(p, Antichain()));
    CHECK_THROWS_AS(is_antichain(p, Antichain({{3, 0}})), std::out_of_range);
    CHECK_THROWS_AS(is_antichain(p, Antichain({{1, 2}})), std::out_of_range);
}

TEST_CASE("lym_number") {
    const auto p = build_subset_poset(2);
    CHECK(lym_number(p, Antichain({{1, 0}, {1, 1}})) == 1);
    CHECK(lym_number(p, Antichain()) == 0);

    const auto prefix = build_string_poset(2, Relation::prefix, 2);
    const Antichain code({ref(prefix, 1, "0"), ref(prefix, 2, "10"), ref(prefix, 2, "11")});
    CHECK(lym_number(prefix, code) == 1);
    CHECK(lym_number(prefix, code) == kraft_number(ParameterSequence({0, 1, 2}), 2));
    CHECK(lym_number(prefix, LevelCounts{0, 1, 2}) == 1);
    CHECK_THROWS(lym_number(prefix, LevelCounts{0, 1, 2, 3}));
}

TEST_CASE("local_lym_check") {
    const auto p = build_subset_poset(2);
    const std::vector<ElementRef> top{{2, 0}};
    const auto eq = local_lym_check(p, 2, top);
    CHECK(eq.lhs == 1);
    CHECK(eq.rhs == 1);
    CHECK(eq.holds);

    const auto strings = build_string_poset(2, Relation::subsequence, 3);
    const std::vector<ElementRef> zz{ref(strings, 2, "00")};
    const auto strict = local_lym_check(strings, 2, zz);
    CHECK(strict.lhs == q(1, 2));
    CHECK(strict.rhs == q(1, 4));
    CHECK(strict.holds);

    std::vector<ElementRef> full;
    for (std::size_t j = 0; j < strings.level_size(3); ++j) full.push_back({3, j});
    const auto whole = local_lym_check(strings, 3, full);
    CHECK(whole.lhs == 1);
    CHECK(whole.rhs == 1);

    CHECK_THROWS(local_lym_check(p, 0, std::vector<ElementRef>{{0, 0}}));
    CHECK_THROWS(local_lym_check(p, 2, std::vector<ElementRef>{}));
    CHECK_THROWS(local_lym_check(p, 2, std::vector<ElementRef>{{1, 0}}));
    CHECK_THROWS_WITH(local_lym_check(broken_subsets(), 2, top), "levels 1 and 2 are not biregular");
}

TEST_CASE("reduce_top_level") {
    const auto p = build_subset_poset(2);
    const Antichain top({{2, 0}});
    const auto reduced = reduce_top_level(p, top);
    CHECK(reduced == Antichain({{1, 0}, {1, 1}}));
    CHECK(lym_number(p, top) == 1);
    CHECK(lym_number(p, reduced) == 1);

    CHECK_THROWS(reduce_top_level(p, Antichain({{0, 0}})));
    CHECK_THROWS(reduce_top_level(p, Antichain()));

    const auto strings = build_string_poset(2, Relation::subsequence, 2);
    const Antichain zz({ref(strings, 2, "00")});
    const auto z = reduce_top_level(strings, zz);
    CHECK(z == Antichain({ref(strings, 1, "0")}));
    CHECK(lym_number(strings, zz) == q(1, 4));
    CHECK(lym_number(strings, z) == q(1, 2));
}

TEST_CASE("mcmillan_construct") {
    const auto code = mcmillan_construct(2, ParameterSequence({0, 1, 2}));
    REQUIRE(std::holds_alternative<Code>(code));
    const auto& words = std::get<Code>(code).codewords();
    REQUIRE(words.size() == 3);
    CHECK(format_word(words[0]) == "0");
    CHECK(format_word(words[1]) == "10");
    CHECK(format_word(words[2]) == "11");

    const auto eps = mcmillan_construct(2, ParameterSequence({1}));
    REQUIRE(std::holds_alternative<Code>(eps));
    CHECK(std::get<Code>(eps).codewords().size() == 1);
    CHECK(std::get<Code>(eps).codewords()[0].empty());

    const auto bad = mcmillan_construct(2, ParameterSequence({0, 2, 1}));
    REQUIRE(std::holds_alternative<McMillanInfeasible>(bad));
    CHECK(std::get<McMillanInfeasible>(bad).level == 2);

    const auto unary = mcmillan_construct(1, ParameterSequence({0, 0, 1}));
    REQUIRE(std::holds_alternative<Code>(unary));
    CHECK(std::get<Code>(unary).codewords()[0] == Word{0, 0});
    CHECK(std::holds_alternative<McMillanInfeasible>(mcmillan_construct(1, ParameterSequence({0, 1, 1}))));
}

// Every ternary parameter vector on lengths 0..3 with entries <= 4.
TEST_CASE("mcmillan succeeds iff the Kraft sum is at most one (r = 3)") {
    std::vector<std::uint64_t> a(4, 0);
    std::size_t checked = 0;
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == a.size()) {
            const ParameterSequence params(a);
            const auto out = mcmillan_construct(3, params);
            const bool fits = kraft_number(params, 3) <= 1;
            CHECK(std::holds_alternative<Code>(out) == fits);
            if (const auto* code = std::get_if<Code>(&out)) {
                CHECK(parameter_sequence(*code) == params);
                CHECK(is_free(*code, Relation::prefix));
            }
            ++checked;
            return;
        }
        for (std::uint64_t v = 0; v <= 4; ++v) {
            a[i] = v;
            go(i + 1);
        }
    };
    go(0);
    CHECK(checked == 625);
}

TEST_CASE("counterexample_params") {
    const auto strings = build_string_poset(2, Relation::subsequence, 2);
    const auto out = counterexample_params(strings, 1);
    REQUIRE(std::holds_alternative<CounterexampleParams>(out));
    const auto& params = std::get<CounterexampleParams>(out);
    CHECK(params.counts == LevelCounts{0, 1, 2});
    CHECK(params.lym_sum == 1);
    CHECK(params.gcd == 2);
    CHECK(params.up_degree == 4u);
    CHECK(params.down_degree == 2u);

    const auto patterns = build_pattern_poset(3, Relation::pattern);
    const auto split = gcd_split_params(patterns, 2, 4);
    REQUIRE(std::holds_alternative<CounterexampleParams>(split));
    CHECK(std::get<CounterexampleParams>(split).counts == LevelCounts{0, 0, 1, 0, 3});
    CHECK(std::get<CounterexampleParams>(split).lym_sum == 1);
    CHECK_THROWS(gcd_split_params(patterns, 4, 2));

    for (std::size_t i = 0; i < 3; ++i) {
        const auto prefix = counterexample_params(build_string_poset(2, Relation::prefix, 4), i);
        REQUIRE(std::holds_alternative<Rejection>(prefix));
        CHECK(std::get<Rejection>(prefix).reason == "down-degree not > 1");
    }
    const auto coprime = counterexample_params(build_subset_poset(3), 0);
    REQUIRE(std::holds_alternative<Rejection>(coprime));
    CHECK(std::get<Rejection>(coprime).reason == "down-degree not > 1");
    const auto gcd_one = counterexample_params(build_partial_perm_poset(4, Relation::prefix), 2);
    REQUIRE(std::holds_alternative<Rejection>(gcd_one));
    CHECK(std::get<Rejection>(gcd_one).reason == "up-degree not > 1");
    const auto irregular = counterexample_params(broken_subsets(), 1);
    REQUIRE(std::holds_alternative<Rejection>(irregular));
    CHECK(std::get<Rejection>(irregular).reason == "level pair not biregular");
    CHECK_THROWS(counterexample_params(strings, 2));
}

TEST_CASE("antichain_exists") {
    const auto strings = build_string_poset(2, Relation::subsequence, 2);
    const auto none = antichain_exists(strings, {0, 1, 2});
    REQUIRE(std::holds_alternative<NoAntichain>(none));
    CHECK(std::get<NoAntichain>(none).leaf_checks == 6);

    const auto empty = antichain_exists(strings, {0, 0, 0});
    REQUIRE(std::holds_alternative<AntichainFound>(empty));
    CHECK(std::get<AntichainFound>(empty).antichain.empty());

    const auto subsets = build_subset_poset(2);
    const auto found = antichain_exists(subsets, {0, 2, 0});
    REQUIRE(std::holds_alternative<AntichainFound>(found));
    CHECK(std::get<AntichainFound>(found).antichain == Antichain({{1, 0}, {1, 1}}));

    CHECK_THROWS(antichain_exists(subsets, {0, 3}));
    CHECK_THROWS(antichain_exists(subsets, {0, 0, 0, 1}));
    CHECK_THROWS_AS(antichain_exists(build_subset_poset(6), {0, 0, 12, 4}, {.budget = 5}), BudgetExceeded);
}

TEST_CASE("witness is the lexicographically least antichain") {
    const auto strings = build_string_poset(2, Relation::substring, 3);
    const auto found = antichain_exists(strings, {0, 0, 1, 2});
    REQUIRE(std::holds_alternative<AntichainFound>(found));
    const auto& antichain = std::get<AntichainFound>(found).antichain;
    CHECK(is_antichain(strings, antichain));
    // 000 and 001 cover 00 and 01; 10 is the first length-2 word left.
    CHECK(antichain == Antichain({ref(strings, 2, "10"), ref(strings, 3, "000"), ref(strings, 3, "001")}));
}

TEST_CASE("antichain_exists agrees with brute force on random count vectors") {
    std::mt19937_64 rng(3);
    const std::vector<GradedPoset> posets{build_subset_poset(4), build_string_poset(2, Relation::subsequence, 3),
                                          build_string_poset(2, Relation::substring, 3),
                                          build_partial_perm_poset(3, Relation::subsequence),
                                          build_partial_perm_poset(3, Relation::prefix),
                                          build_pattern_poset(3, Relation::pattern)};
    for (const auto& p : posets) {
        for (int trial = 0; trial < 60; ++trial) {
            LevelCounts counts(p.level_count(), 0);
            for (std::size_t i = 0; i < counts.size(); ++i) {
                if (p.family() == Family::pattern && i % 2 == 1) continue;
                std::uniform_int_distribution<std::size_t> c(0, std::min<std::size_t>(p.level_size(i), 4));
                if (rng() % 2) counts[i] = c(rng);
            }
            const auto result = antichain_exists(p, counts);
            CHECK(std::holds_alternative<AntichainFound>(result) == brute_force_exists(p, counts));
            if (const auto* found = std::get_if<AntichainFound>(&result)) {
                CHECK(is_antichain(p, found->antichain));
                for (std::size_t i = 0; i < counts.size(); ++i) CHECK(found->antichain.at_level(i).size() == counts[i]);
            }
        }
    }
}

TEST_CASE("parallel search matches the sequential result") {
    const std::vector<std::pair<GradedPoset, LevelCounts>> cases{
        {build_pattern_poset(3, Relation::pattern), {0, 0, 1, 0, 3}},
        {build_subset_poset(5), {0, 0, 4, 3}},
        {build_subset_poset(5), {0, 2, 4, 0}},
        {build_string_poset(2, Relation::substring, 3), {0, 0, 1, 2}},
        {build_partial_perm_poset(4, Relation::substring), {2, 3, 4}},
    };
    for (const auto& [p, counts] : cases) {
        const auto seq = antichain_exists(p, counts, {.threads = 1});
        for (unsigned threads : {2u, 4u}) {
            const auto par = antichain_exists(p, counts, {.threads = threads});
            REQUIRE(seq.index() == par.index());
            if (const auto* a = std::get_if<AntichainFound>(&seq)) {
                CHECK(a->antichain == std::get<AntichainFound>(par).antichain);
                CHECK(a->search_nodes == std::get<AntichainFound>(par).search_nodes);
            } else {
                CHECK(std::get<NoAntichain>(seq).search_nodes == std::get<NoAntichain>(par).search_nodes);
                CHECK(std::get<NoAntichain>(seq).leaf_checks == std::get<NoAntichain>(par).leaf_checks);
            }
        }
    }
}

TEST_CASE("counterexample vectors admit no antichain") {
    std::vector<GradedPoset> posets;
    for (int r : {2, 3}) {
        posets.push_back(build_string_poset(r, Relation::subsequence, 2));
        posets.push_back(build_string_poset(r, Relation::substring, 2));
    }
    posets.push_back(build_partial_perm_poset(3, Relation::subsequence));
    posets.push_back(build_partial_perm_poset(3, Relation::substring));
    posets.push_back(build_subset_poset(4));
    posets.push_back(build_pattern_poset(3, Relation::pattern));
    posets.push_back(build_pattern_poset(3, Relation::substring_pattern));
    std::size_t applied = 0;
    for (const auto& p : posets) {
        for (std::size_t i = 0; i + 1 < p.level_count(); ++i) {
            const auto out = counterexample_params(p, i);
            const auto* params = std::get_if<CounterexampleParams>(&out);
            if (!params) continue;
            ++applied;
            CHECK(params->lym_sum == 1);
            CHECK(std::holds_alternative<NoAntichain>(antichain_exists(p, params->counts)));
        }
    }
    CHECK(applied >= 8);
}

TEST_CASE("sampled antichains") {
    std::mt19937_64 rng(17);
    for (const auto& p : {build_subset_poset(5), build_pattern_poset(3, Relation::substring_pattern),
                          build_string_poset(2, Relation::prefix, 4)}) {
        bool saw_full = false;
        for (int trial = 0; trial < 200; ++trial) {
            const auto a = sample_antichain(p, rng);
            CHECK(is_antichain(p, a));
            const auto lym = lym_number(p, a);
            CHECK(lym <= 1);
            saw_full = saw_full || lym == 1;
            auto current = a;
            while (current.top_level().value_or(0) > 0) {
                const auto next = reduce_top_level(p, current);
                CHECK(lym_number(p, next) >= lym_number(p, current));
                current = next;
            }
        }
        CHECK(saw_full);
    }
}
