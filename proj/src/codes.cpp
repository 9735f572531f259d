#include "poset_kraft/codes.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace poset_kraft {

std::string_view to_string(CodomainKind kind) {
    switch (kind) {
        case CodomainKind::string: return "string";
        case CodomainKind::partial_perm: return "partial_perm";
        case CodomainKind::perm_pattern: return "perm_pattern";
    }
    return "?";
}

namespace {

void validate_codeword(const Codomain& codomain, const Word& w) {
    switch (codomain.kind) {
        case CodomainKind::string:
            Str(w, codomain.size);
            break;
        case CodomainKind::partial_perm:
            PartialPermutation(w, codomain.size);
            break;
        case CodomainKind::perm_pattern:
            if (w.size() > static_cast<std::size_t>(codomain.size))
                throw std::invalid_argument("codeword longer than k");
            if (!PartialPermutation(w, static_cast<int>(w.size())).is_full())
                throw std::invalid_argument("codeword is not a permutation");
            break;
    }
}

}  // namespace

Code::Code(Codomain codomain, std::vector<Word> codewords)
    : codomain_(codomain), codewords_(std::move(codewords)) {
    if (codomain_.size < 1) throw std::invalid_argument("codomain size must be at least 1");
    std::set<Word> seen;
    for (const Word& w : codewords_) {
        validate_codeword(codomain_, w);
        if (!seen.insert(w).second)
            throw std::invalid_argument("duplicate codeword " + format_word(w) + "; codes are injective");
    }
}

bool Code::contains_empty_codeword() const {
    return std::ranges::any_of(codewords_, [](const Word& w) { return w.empty(); });
}

ParameterSequence::ParameterSequence(std::vector<std::uint64_t> counts) : counts_(std::move(counts)) {
    while (!counts_.empty() && counts_.back() == 0) counts_.pop_back();
}

ParameterSequence parameter_sequence(const Code& code) {
    std::vector<std::uint64_t> counts;
    for (const Word& w : code.codewords()) {
        if (counts.size() <= w.size()) counts.resize(w.size() + 1, 0);
        ++counts[w.size()];
    }
    return ParameterSequence(std::move(counts));
}

ExactRational kraft_number(const ParameterSequence& params, int r) {
    if (r < 1) throw std::invalid_argument("r must be at least 1");
    ExactRational sum = 0;
    BigInt power = 1;
    for (std::size_t i = 0; i < params.support_end(); ++i) {
        sum += ExactRational(BigInt(params[i]), power);
        power *= r;
    }
    return sum;
}

namespace {

ExactRational permutation_constant(const ParameterSequence& params, int k, bool partial) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (params[0] != 0) throw std::invalid_argument("permutation codes have no codeword of length 0");
    if (params.support_end() > static_cast<std::size_t>(k) + 1)
        throw std::invalid_argument("parameter support exceeds length k");
    ExactRational sum = 0;
    for (unsigned l = 1; l < params.support_end(); ++l) {
        const BigInt level_size = partial ? falling_factorial(static_cast<unsigned>(k), l) : factorial(l);
        sum += ExactRational(BigInt(params[l]), level_size);
    }
    return sum;
}

}  // namespace

ExactRational permutation_constant_T(const ParameterSequence& params, int k) {
    return permutation_constant(params, k, true);
}

ExactRational permutation_constant_S(const ParameterSequence& params, int k) {
    return permutation_constant(params, k, false);
}

bool related_into(const Code& code, Relation relation, const Word& a, const Word& b) {
    const bool permutations = code.codomain().kind == CodomainKind::perm_pattern;
    switch (relation) {
        case Relation::prefix: return words::is_prefix(a, b);
        case Relation::subsequence: return words::is_subsequence(a, b);
        case Relation::substring: return words::is_substring(a, b);
        case Relation::pattern:
            if (!permutations) throw std::invalid_argument("pattern relations need a perm_pattern codomain");
            return a.size() <= b.size() && words::is_pattern_in(a, b);
        case Relation::substring_pattern:
            if (!permutations) throw std::invalid_argument("pattern relations need a perm_pattern codomain");
            return a.size() <= b.size() && words::is_substring_pattern_in(a, b);
    }
    return false;
}

FreenessResult is_free(const Code& code, Relation relation) {
    const auto words_list = code.codewords();
    if ((relation == Relation::pattern || relation == Relation::substring_pattern) &&
        code.codomain().kind != CodomainKind::perm_pattern)
        throw std::invalid_argument("pattern relations need a perm_pattern codomain");
    for (std::size_t i = 0; i < words_list.size(); ++i) {
        for (std::size_t j = 0; j < words_list.size(); ++j) {
            if (i != j && related_into(code, relation, words_list[i], words_list[j]))
                return {false, std::pair{i, j}};
        }
    }
    return {};
}

Word encode(const Code& code, std::span<const std::size_t> message) {
    Word out;
    for (std::size_t s : message) {
        if (s < 1 || s > code.size())
            throw std::invalid_argument("source symbol " + std::to_string(s) + " outside 1.." +
                                        std::to_string(code.size()));
        const Word& w = code.codeword(s);
        out.insert(out.end(), w.begin(), w.end());
    }
    if (out.empty() || code.codomain().kind == CodomainKind::string) return out;
    const int universe = code.codomain().kind == CodomainKind::partial_perm ? code.codomain().size
                                                                            : static_cast<int>(out.size());
    try {
        const PartialPermutation concatenated(out, universe);
        if (code.codomain().kind == CodomainKind::perm_pattern &&
            out.size() > static_cast<std::size_t>(code.codomain().size))
            throw std::invalid_argument("too long");
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("concatenation leaves codomain");
    }
    return out;
}

std::vector<std::size_t> decode_prefix_free(const Code& code, std::span<const Symbol> output) {
    if (code.contains_empty_codeword()) throw std::invalid_argument("cannot decode a code containing ε");
    if (!is_free(code, Relation::prefix)) throw std::invalid_argument("code is not prefix-free");
    std::map<Word, std::size_t> symbol_of;
    for (std::size_t i = 0; i < code.size(); ++i) symbol_of.emplace(code.codewords()[i], i + 1);
    std::vector<std::size_t> message;
    Word block;
    for (Symbol s : output) {
        block.push_back(s);
        if (const auto it = symbol_of.find(block); it != symbol_of.end()) {
            message.push_back(it->second);
            block.clear();
        }
    }
    if (!block.empty()) throw std::invalid_argument("unparseable residue " + format_word(block));
    return message;
}

bool is_uniquely_decodable(const Code& code) {
    if (code.contains_empty_codeword()) return false;
    const std::set<Word> codewords(code.codewords().begin(), code.codewords().end());

    std::set<Word> dangling;
    std::vector<Word> pending;
    const auto add_suffix = [&](const Word& longer, std::size_t cut) {
        Word suffix(longer.begin() + static_cast<std::ptrdiff_t>(cut), longer.end());
        if (dangling.insert(suffix).second) pending.push_back(std::move(suffix));
    };
    for (const Word& u : codewords) {
        for (const Word& v : codewords) {
            if (u.size() < v.size() && words::is_prefix(u, v)) add_suffix(v, u.size());
        }
    }
    while (!pending.empty()) {
        const Word d = std::move(pending.back());
        pending.pop_back();
        if (codewords.contains(d)) return false;
        for (const Word& x : codewords) {
            if (x.size() < d.size() && words::is_prefix(x, d)) add_suffix(d, x.size());
            if (d.size() < x.size() && words::is_prefix(d, x)) add_suffix(x, d.size());
        }
    }
    return true;
}

namespace {

struct CollisionSearch {
    const Code& code;
    std::size_t limit;
    std::map<Word, std::vector<std::size_t>> first_message;
    std::vector<std::size_t> message;
    Word output;
    std::optional<ExtensionCollision> found;

    void visit() {
        if (found) return;
        if (const auto [it, inserted] = first_message.emplace(output, message); !inserted) {
            found = ExtensionCollision{it->second, message};
            return;
        }
        for (std::size_t s = 1; s <= code.size() && !found; ++s) {
            const Word& w = code.codeword(s);
            if (output.size() + w.size() > limit) continue;
            message.push_back(s);
            output.insert(output.end(), w.begin(), w.end());
            visit();
            output.resize(output.size() - w.size());
            message.pop_back();
        }
    }
};

}  // namespace

std::optional<ExtensionCollision> find_extension_collision(const Code& code, std::size_t max_output_length) {
    for (std::size_t i = 0; i < code.size(); ++i) {
        if (code.codewords()[i].empty()) return ExtensionCollision{{}, {i + 1}};
    }
    CollisionSearch search{code, max_output_length, {}, {}, {}, std::nullopt};
    search.visit();
    return search.found;
}

namespace {

void collect_subsequences(const Word& w, std::size_t length, std::size_t start, Word& current,
                          std::set<Word>& out) {
    if (current.size() == length) {
        out.insert(current);
        return;
    }
    for (std::size_t i = start; i + (length - current.size()) <= w.size(); ++i) {
        current.push_back(w[i]);
        collect_subsequences(w, length, i + 1, current, out);
        current.pop_back();
    }
}

}  // namespace

bool ulam_subsequence_condition(const Code& code, int d) {
    if (code.codomain().kind != CodomainKind::partial_perm)
        throw std::invalid_argument("Ulam condition needs a partial_perm codomain");
    const int k = code.codomain().size;
    if (d < 1 || d > k) throw std::invalid_argument("d must lie in [1, k]");
    for (const Word& w : code.codewords()) {
        if (w.size() != static_cast<std::size_t>(k))
            throw std::invalid_argument("Ulam condition needs codewords of length k");
    }
    const auto length = static_cast<std::size_t>(k - d + 1);
    std::set<Word> claimed;
    for (const Word& w : code.codewords()) {
        std::set<Word> own;
        Word current;
        collect_subsequences(w, length, 0, current, own);
        for (const Word& s : own) {
            if (!claimed.insert(s).second) return false;
        }
    }
    return true;
}

}  // namespace poset_kraft
