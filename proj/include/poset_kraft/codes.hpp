#pragma once

#include "poset_kraft/perm.hpp"
#include "poset_kraft/poset.hpp"
#include "poset_kraft/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace poset_kraft {

enum class CodomainKind {
    string,        // words over {0, ..., r-1}
    partial_perm,  // T_k
    perm_pattern,  // S_1 ∪ ... ∪ S_k
};

std::string_view to_string(CodomainKind kind);

struct Codomain {
    CodomainKind kind = CodomainKind::string;
    int size = 2;  // r for strings, k otherwise

    friend bool operator==(const Codomain&, const Codomain&) = default;
};

/// An injective assignment of codewords to source symbols 1..#S; the source
/// symbol of a codeword is its 1-based position in `codewords()`.
class Code {
public:
    /// Throws std::invalid_argument on duplicates or codewords outside the codomain.
    Code(Codomain codomain, std::vector<Word> codewords);

    const Codomain& codomain() const { return codomain_; }
    std::span<const Word> codewords() const { return codewords_; }
    const Word& codeword(std::size_t source_symbol) const { return codewords_.at(source_symbol - 1); }
    std::size_t size() const { return codewords_.size(); }
    bool contains_empty_codeword() const;

private:
    Codomain codomain_;
    std::vector<Word> codewords_;
};

/// a_j = number of codewords of length j. Trailing zeros are dropped.
class ParameterSequence {
public:
    ParameterSequence() = default;
    explicit ParameterSequence(std::vector<std::uint64_t> counts);

    std::uint64_t operator[](std::size_t length) const {
        return length < counts_.size() ? counts_[length] : 0;
    }
    /// One past the longest length with a nonzero count.
    std::size_t support_end() const { return counts_.size(); }
    const std::vector<std::uint64_t>& counts() const { return counts_; }

    friend bool operator==(const ParameterSequence&, const ParameterSequence&) = default;

private:
    std::vector<std::uint64_t> counts_;
};

ParameterSequence parameter_sequence(const Code& code);

/// K = sum_i a_i / r^i.
ExactRational kraft_number(const ParameterSequence& params, int r);
/// P = sum_{l=1..k} a_l / (C(k,l) l!). Throws when a_0 or a_l for l > k is nonzero.
ExactRational permutation_constant_T(const ParameterSequence& params, int k);
/// sum_{l=1..k} a_l / l!, with the same support requirement.
ExactRational permutation_constant_S(const ParameterSequence& params, int k);

/// Whether codeword `a` is related into codeword `b` under `relation`, as
/// interpreted for the code's codomain.
bool related_into(const Code& code, Relation relation, const Word& a, const Word& b);

struct FreenessResult {
    bool free = true;
    /// 0-based codeword indices (i, j) with codeword i related into codeword j.
    std::optional<std::pair<std::size_t, std::size_t>> witness;
    explicit operator bool() const { return free; }
};

/// Pairwise check over distinct codewords. Pattern relations need a
/// perm_pattern codomain.
FreenessResult is_free(const Code& code, Relation relation);

/// c(s_1 ... s_n) = c(s_1) ... c(s_n) for 1-based source symbols. Over
/// permutation codomains the concatenation must stay inside the codomain.
Word encode(const Code& code, std::span<const std::size_t> message);

/// Left-to-right instantaneous decoding; the code must be prefix-free and
/// free of the empty codeword.
std::vector<std::size_t> decode_prefix_free(const Code& code, std::span<const Symbol> output);

/// Sardinas–Patterson: the code is uniquely decodable iff no dangling suffix
/// is a codeword. A code with the empty codeword is never uniquely decodable.
bool is_uniquely_decodable(const Code& code);

struct ExtensionCollision {
    std::vector<std::size_t> first;
    std::vector<std::size_t> second;
};

/// Brute-force search for two distinct messages whose encodings agree, over
/// all messages with encoded length at most `max_output_length`.
std::optional<ExtensionCollision> find_extension_collision(const Code& code, std::size_t max_output_length = 12);

/// True iff every word of length k-d+1 over [k] is a subsequence of at most
/// one codeword. Needs a partial_perm code whose codewords all have length k.
bool ulam_subsequence_condition(const Code& code, int d);

}  // namespace poset_kraft
