#include "oracles.hpp"
#include "poset_kraft/codes.hpp"

#include <doctest.h>

#include <random>

using namespace poset_kraft;

namespace {

Code string_code(std::initializer_list<std::string_view> words, int r = 2) {
    std::vector<Word> codewords;
    for (auto w : words) codewords.push_back(parse_word(w).symbols);
    return Code({CodomainKind::string, r}, codewords);
}

Code perm_code(CodomainKind kind, int k, std::initializer_list<std::string_view> words) {
    std::vector<Word> codewords;
    for (auto w : words) codewords.push_back(parse_word(w).symbols);
    return Code({kind, k}, codewords);
}

ExactRational q(long n, long d) { return ExactRational(n, d); }

// All messages of the given length over source symbols 1..n.
std::vector<std::vector<std::size_t>> messages(std::size_t n, std::size_t length) {
    std::vector<std::vector<std::size_t>> out{{}};
    for (std::size_t i = 0; i < length; ++i) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& m : out) {
            for (std::size_t s = 1; s <= n; ++s) {
                auto x = m;
                x.push_back(s);
                next.push_back(x);
            }
        }
        out = std::move(next);
    }
    return out;
}

}  // namespace

TEST_CASE("code validation") {
    CHECK_THROWS(string_code({"0", "0"}));
    CHECK_THROWS(string_code({"2"}));
    CHECK_THROWS(perm_code(CodomainKind::partial_perm, 3, {"11"}));
    CHECK_THROWS(perm_code(CodomainKind::partial_perm, 3, {""}));
    CHECK_THROWS(perm_code(CodomainKind::perm_pattern, 3, {"13"}));
    CHECK_THROWS(perm_code(CodomainKind::perm_pattern, 2, {"123"}));
    CHECK(string_code({"", "0"}).contains_empty_codeword());
}

TEST_CASE("parameter_sequence") {
    CHECK(parameter_sequence(string_code({"0", "10", "11"})) == ParameterSequence({0, 1, 2}));
    const Code empty({CodomainKind::string, 2}, {});
    CHECK(parameter_sequence(empty).support_end() == 0);
    CHECK(parameter_sequence(empty)[5] == 0);
    CHECK(parameter_sequence(perm_code(CodomainKind::perm_pattern, 3, {"1", "21", "321"})) ==
          ParameterSequence({0, 1, 1, 1}));
    CHECK(ParameterSequence({1, 0, 0}).support_end() == 1);
}

TEST_CASE("kraft_number") {
    CHECK(kraft_number(ParameterSequence({0, 1, 2}), 2) == 1);
    CHECK(kraft_number(ParameterSequence(), 2) == 0);
    CHECK(kraft_number(ParameterSequence({1}), 2) == 1);
    CHECK(kraft_number(ParameterSequence({0, 2, 1}), 2) == q(5, 4));
    CHECK(kraft_number(ParameterSequence({0, 0, 0, 1}), 3) == q(1, 27));
    CHECK_THROWS(kraft_number(ParameterSequence({1}), 0));
}

TEST_CASE("permutation constants") {
    CHECK(permutation_constant_T(ParameterSequence({0, 2, 3}), 3) == q(7, 6));
    CHECK(permutation_constant_T(ParameterSequence(), 3) == 0);
    CHECK(permutation_constant_T(ParameterSequence({0, 2, 2}), 3) == 1);
    CHECK_THROWS(permutation_constant_T(ParameterSequence({1}), 3));
    CHECK_THROWS(permutation_constant_T(ParameterSequence({0, 0, 0, 0, 1}), 3));

    CHECK(permutation_constant_S(ParameterSequence({0, 0, 1, 3}), 3) == 1);
    CHECK(permutation_constant_S(ParameterSequence(), 3) == 0);
    CHECK(permutation_constant_S(ParameterSequence({0, 1, 1}), 2) == q(3, 2));
    CHECK_THROWS(permutation_constant_S(ParameterSequence({0, 0, 0, 1}), 2));
}

TEST_CASE("constants are monotone and additive over disjoint supports") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::uint64_t> count(0, 9);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<std::uint64_t> low(5, 0), high(5, 0), both(5, 0);
        for (std::size_t i = 1; i < 5; ++i) {
            (i % 2 ? low : high)[i] = count(rng);
            both[i] = low[i] + high[i];
        }
        const ParameterSequence a(low), b(high), ab(both);
        CHECK(kraft_number(ab, 3) == kraft_number(a, 3) + kraft_number(b, 3));
        CHECK(permutation_constant_T(ab, 4) == permutation_constant_T(a, 4) + permutation_constant_T(b, 4));
        CHECK(permutation_constant_S(ab, 4) == permutation_constant_S(a, 4) + permutation_constant_S(b, 4));
        auto bumped = both;
        ++bumped[1 + trial % 4];
        CHECK(kraft_number(ParameterSequence(bumped), 3) > kraft_number(ab, 3));
        CHECK(permutation_constant_S(ParameterSequence(bumped), 4) > permutation_constant_S(ab, 4));
    }
}

TEST_CASE("is_free") {
    CHECK(is_free(string_code({"0", "10", "11"}), Relation::prefix));
    const auto pattern = is_free(perm_code(CodomainKind::perm_pattern, 2, {"1", "21"}), Relation::pattern);
    CHECK_FALSE(pattern.free);
    REQUIRE(pattern.witness.has_value());
    CHECK(*pattern.witness == std::pair<std::size_t, std::size_t>{0, 1});

    for (auto relation : {Relation::prefix, Relation::subsequence, Relation::substring}) {
        CHECK(is_free(string_code({"0110"}), relation));
        CHECK(is_free(perm_code(CodomainKind::partial_perm, 4, {"2413"}), relation));
    }
    for (auto relation : {Relation::pattern, Relation::substring_pattern})
        CHECK(is_free(perm_code(CodomainKind::perm_pattern, 3, {"132"}), relation));

    CHECK_THROWS(is_free(string_code({"0", "1"}), Relation::pattern));
    CHECK_THROWS(is_free(perm_code(CodomainKind::partial_perm, 3, {"1", "2"}), Relation::substring_pattern));

    // 13 is a subsequence but not a substring of 123.
    const auto code = perm_code(CodomainKind::partial_perm, 3, {"13", "123"});
    CHECK_FALSE(is_free(code, Relation::subsequence));
    CHECK(is_free(code, Relation::substring));
    CHECK(is_free(code, Relation::prefix));

    // ε is a prefix of everything.
    CHECK_FALSE(is_free(string_code({"", "0"}), Relation::prefix));
    CHECK(is_free(string_code({""}), Relation::prefix));
}

TEST_CASE("encode and decode") {
    const auto code = string_code({"0", "10", "11"});
    const std::vector<std::size_t> message{1, 2, 3};
    const Word out = encode(code, message);
    CHECK(format_word(out) == "01011");
    CHECK(decode_prefix_free(code, out) == message);
    CHECK(encode(code, std::vector<std::size_t>{}).empty());
    CHECK(decode_prefix_free(code, Word{}).empty());

    CHECK(decode_prefix_free(string_code({"1", "01"}), Word{1}) == std::vector<std::size_t>{1});
    CHECK_THROWS_WITH(decode_prefix_free(string_code({"1", "10"}), Word{1}), "code is not prefix-free");
    CHECK_THROWS(decode_prefix_free(code, Word{1}));
    CHECK_THROWS(decode_prefix_free(string_code({""}), Word{}));
    CHECK_THROWS(encode(code, std::vector<std::size_t>{4}));
    CHECK_THROWS(encode(code, std::vector<std::size_t>{0}));

    const auto perms = perm_code(CodomainKind::partial_perm, 3, {"12", "3"});
    CHECK(encode(perms, std::vector<std::size_t>{1, 2}) == Word{1, 2, 3});
    CHECK_THROWS_WITH(encode(perms, std::vector<std::size_t>{1, 1}), "concatenation leaves codomain");
    const auto patterns = perm_code(CodomainKind::perm_pattern, 3, {"1", "21"});
    CHECK_THROWS_WITH(encode(patterns, std::vector<std::size_t>{1, 2}), "concatenation leaves codomain");
    CHECK(encode(patterns, std::vector<std::size_t>{2}) == Word{2, 1});
}

TEST_CASE("decode inverts encode on prefix-free codes") {
    const std::vector<Code> codes{string_code({"0", "10", "11"}), string_code({"00", "01", "1"}),
                                  string_code({"0", "10", "110", "111"}), string_code({"2", "01", "00", "1"}, 3),
                                  perm_code(CodomainKind::partial_perm, 4, {"1", "21", "23", "4"})};
    for (const Code& code : codes) {
        REQUIRE(is_free(code, Relation::prefix));
        CHECK(is_uniquely_decodable(code));
        for (std::size_t length = 0; length <= 6; ++length) {
            for (const auto& m : messages(code.size(), length)) {
                Word out;
                for (std::size_t s : m) out.insert(out.end(), code.codeword(s).begin(), code.codeword(s).end());
                CHECK(decode_prefix_free(code, out) == m);
                if (code.codomain().kind == CodomainKind::string) CHECK(encode(code, m) == out);
            }
        }
    }
}

TEST_CASE("unique decodability") {
    CHECK(is_uniquely_decodable(string_code({"0", "10", "11"})));
    CHECK_FALSE(is_uniquely_decodable(string_code({"0", "00"})));
    CHECK(is_uniquely_decodable(string_code({"0"})));
    CHECK_FALSE(is_uniquely_decodable(string_code({""})));
    // Suffix codes are uniquely decodable without being prefix-free.
    CHECK(is_uniquely_decodable(string_code({"0", "01", "11"})));
    CHECK_FALSE(is_uniquely_decodable(string_code({"0", "01", "10"})));

    const auto collision = find_extension_collision(string_code({"0", "00"}));
    REQUIRE(collision.has_value());
    CHECK(collision->first != collision->second);
    CHECK(!find_extension_collision(string_code({"0", "10", "11"})).has_value());
    CHECK(find_extension_collision(string_code({"1", ""})).has_value());
}

TEST_CASE("ulam subsequence condition") {
    CHECK(ulam_subsequence_condition(perm_code(CodomainKind::partial_perm, 3, {"231"}), 1));
    CHECK(ulam_subsequence_condition(perm_code(CodomainKind::partial_perm, 3, {"231"}), 3));
    CHECK(ulam_subsequence_condition(perm_code(CodomainKind::partial_perm, 3, {"123", "321"}), 2));
    CHECK_FALSE(ulam_subsequence_condition(perm_code(CodomainKind::partial_perm, 3, {"123", "132"}), 2));
    CHECK_THROWS(ulam_subsequence_condition(perm_code(CodomainKind::partial_perm, 3, {"123"}), 0));
    CHECK_THROWS(ulam_subsequence_condition(perm_code(CodomainKind::partial_perm, 3, {"123"}), 4));
    CHECK_THROWS(ulam_subsequence_condition(perm_code(CodomainKind::partial_perm, 3, {"12"}), 2));
    CHECK_THROWS(ulam_subsequence_condition(string_code({"01"}), 1));
}

// Every word of [k]^{k-d+1}, including words with repeats, against each codeword.
TEST_CASE("ulam condition agrees with exhaustive word enumeration") {
    std::mt19937_64 rng(5);
    for (int k = 2; k <= 4; ++k) {
        auto perms = enumerate(SequenceKind::permutation, k, k);
        for (int trial = 0; trial < 60; ++trial) {
            std::shuffle(perms.begin(), perms.end(), rng);
            const std::size_t n = 1 + trial % std::min<std::size_t>(4, perms.size());
            const Code code({CodomainKind::partial_perm, k}, std::vector<Word>(perms.begin(), perms.begin() + n));
            for (int d = 1; d <= k; ++d) {
                bool expected = true;
                for (const Word& s : oracle::all_words(1, k, static_cast<std::size_t>(k - d + 1))) {
                    std::size_t hits = 0;
                    for (const Word& c : code.codewords()) hits += oracle::is_subsequence(s, c) ? 1 : 0;
                    expected = expected && hits <= 1;
                }
                CHECK(ulam_subsequence_condition(code, d) == expected);
            }
        }
    }
}
