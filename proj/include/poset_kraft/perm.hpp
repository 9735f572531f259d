#pragma once

// Strings, partial permutations and the five order relations between them.
//
// Every element is a canonical integer sequence that carries the size of the
// universe it lives in. Binary relations refuse to compare elements of
// different universes: 253 in T_6^3 and 253 in T_5^3 are different objects.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace poset_kraft {

using Symbol = int;
using Word = std::vector<Symbol>;

class UniverseMismatch : public std::invalid_argument {
public:
    UniverseMismatch(int lhs, int rhs);
};

/// A string over the alphabet {0, ..., r-1}. Repetition is allowed and the
/// empty string is a valid value.
class Str {
public:
    Str(Word symbols, int alphabet_size);
    static Str epsilon(int alphabet_size) { return Str({}, alphabet_size); }

    std::span<const Symbol> symbols() const { return symbols_; }
    const Word& word() const { return symbols_; }
    int alphabet_size() const { return alphabet_size_; }
    std::size_t length() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }

    friend auto operator<=>(const Str&, const Str&) = default;

private:
    Word symbols_;
    int alphabet_size_;
};

/// An injective sequence tau : [l] -> [k] with 1 <= l <= k.
class PartialPermutation {
public:
    PartialPermutation(Word entries, int universe);

    std::span<const Symbol> entries() const { return entries_; }
    const Word& word() const { return entries_; }
    int universe() const { return universe_; }
    std::size_t length() const { return entries_.size(); }
    /// True when this is a permutation of [length()].
    bool is_full() const { return static_cast<std::size_t>(universe_) == entries_.size(); }

    friend auto operator<=>(const PartialPermutation&, const PartialPermutation&) = default;

private:
    Word entries_;
    int universe_;
};

enum class Strictness { non_strict, proper };

// Raw relations on sequences, shared by codes and poset builders. No universe
// checks happen here.
namespace words {

bool is_prefix(std::span<const Symbol> t, std::span<const Symbol> u);
bool is_subsequence(std::span<const Symbol> sigma, std::span<const Symbol> tau);
bool is_substring(std::span<const Symbol> sigma, std::span<const Symbol> tau);
/// The permutation of [size] with the same relative order as `tau`.
/// Throws std::invalid_argument on empty input or repeated entries.
Word pattern_of(std::span<const Symbol> tau);
/// `sigma` must be a permutation of [|sigma|].
bool is_pattern_in(std::span<const Symbol> sigma, std::span<const Symbol> tau);
bool is_substring_pattern_in(std::span<const Symbol> sigma, std::span<const Symbol> tau);

}  // namespace words

PartialPermutation pattern_of(const PartialPermutation& tau);

bool is_prefix(const Str& t, const Str& u, Strictness strictness = Strictness::non_strict);
bool is_prefix(const PartialPermutation& t, const PartialPermutation& u,
               Strictness strictness = Strictness::non_strict);
bool is_subsequence(const Str& sigma, const Str& tau);
bool is_subsequence(const PartialPermutation& sigma, const PartialPermutation& tau);
bool is_substring(const Str& sigma, const Str& tau);
bool is_substring(const PartialPermutation& sigma, const PartialPermutation& tau);

/// `sigma` must be a full permutation; `tau` may live in any universe.
bool is_pattern_in(const PartialPermutation& sigma, const PartialPermutation& tau);
bool is_substring_pattern_in(const PartialPermutation& sigma, const PartialPermutation& tau);

enum class SequenceKind {
    partial_permutation,  // T_k^l
    permutation,          // S_l
    string,               // S^l over an r-symbol alphabet
};

/// All elements of the requested kind and length in lexicographic order.
/// `universe` is k for partial permutations and permutations, r for strings.
/// For permutations the result is S_length and requires length <= universe.
std::vector<Word> enumerate(SequenceKind kind, int universe, int length);

struct ParsedWord {
    Word symbols;
    std::optional<int> universe;
};

/// Accepts `2513`, `(2,5,1,3)`, an optional `@6` universe suffix, and `ε` or
/// the empty text for the empty word.
ParsedWord parse_word(std::string_view text);

/// Digits when every symbol is at most 9, otherwise `(a,b,...)`; `ε` when empty.
std::string format_word(std::span<const Symbol> symbols);

std::string to_string(const Str& s);
std::string to_string(const PartialPermutation& tau, bool with_universe = false);

}  // namespace poset_kraft
