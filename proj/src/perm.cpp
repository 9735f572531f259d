#include "poset_kraft/perm.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace poset_kraft {

UniverseMismatch::UniverseMismatch(int lhs, int rhs)
    : std::invalid_argument("universe mismatch: " + std::to_string(lhs) + " vs " +
                            std::to_string(rhs)) {}

Str::Str(Word symbols, int alphabet_size)
    : symbols_(std::move(symbols)), alphabet_size_(alphabet_size) {
    if (alphabet_size_ < 1) throw std::invalid_argument("alphabet size must be at least 1");
    for (Symbol s : symbols_) {
        if (s < 0 || s >= alphabet_size_)
            throw std::invalid_argument("symbol " + std::to_string(s) + " outside alphabet of size " +
                                        std::to_string(alphabet_size_));
    }
}

PartialPermutation::PartialPermutation(Word entries, int universe)
    : entries_(std::move(entries)), universe_(universe) {
    if (entries_.empty()) throw std::invalid_argument("empty partial permutation");
    if (entries_.size() > static_cast<std::size_t>(universe_))
        throw std::invalid_argument("partial permutation longer than its universe");
    std::vector<bool> seen(static_cast<std::size_t>(universe_) + 1, false);
    for (Symbol s : entries_) {
        if (s < 1 || s > universe_)
            throw std::invalid_argument("entry " + std::to_string(s) + " outside [1, " +
                                        std::to_string(universe_) + "]");
        if (seen[s]) throw std::invalid_argument("repeated entry " + std::to_string(s));
        seen[s] = true;
    }
}

namespace words {

bool is_prefix(std::span<const Symbol> t, std::span<const Symbol> u) {
    return t.size() <= u.size() && std::equal(t.begin(), t.end(), u.begin());
}

bool is_subsequence(std::span<const Symbol> sigma, std::span<const Symbol> tau) {
    // Greedy leftmost matching is exact for plain subsequences.
    std::size_t i = 0;
    for (std::size_t j = 0; j < tau.size() && i < sigma.size(); ++j) {
        if (tau[j] == sigma[i]) ++i;
    }
    return i == sigma.size();
}

bool is_substring(std::span<const Symbol> sigma, std::span<const Symbol> tau) {
    if (sigma.size() > tau.size()) return false;
    return std::search(tau.begin(), tau.end(), sigma.begin(), sigma.end()) != tau.end() ||
           sigma.empty();
}

Word pattern_of(std::span<const Symbol> tau) {
    if (tau.empty()) throw std::invalid_argument("empty partial permutation");
    std::vector<std::size_t> order(tau.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return tau[a] < tau[b]; });
    Word out(tau.size());
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        if (rank > 0 && tau[order[rank]] == tau[order[rank - 1]])
            throw std::invalid_argument("repeated entry in partial permutation");
        out[order[rank]] = static_cast<Symbol>(rank + 1);
    }
    return out;
}

namespace {

bool is_full_permutation(std::span<const Symbol> sigma) {
    std::vector<bool> seen(sigma.size() + 1, false);
    for (Symbol s : sigma) {
        if (s < 1 || static_cast<std::size_t>(s) > sigma.size() || seen[s]) return false;
        seen[s] = true;
    }
    return true;
}

// Extends a partial embedding of sigma[0..depth) into tau, keeping relative
// order consistent with every earlier choice.
bool embed(std::span<const Symbol> sigma, std::span<const Symbol> tau, std::vector<std::size_t>& chosen,
           std::size_t next) {
    const std::size_t depth = chosen.size();
    if (depth == sigma.size()) return true;
    const std::size_t remaining = sigma.size() - depth;
    for (std::size_t j = next; j + remaining <= tau.size(); ++j) {
        bool consistent = true;
        for (std::size_t i = 0; i < depth && consistent; ++i)
            consistent = (sigma[i] < sigma[depth]) == (tau[chosen[i]] < tau[j]);
        if (!consistent) continue;
        chosen.push_back(j);
        if (embed(sigma, tau, chosen, j + 1)) return true;
        chosen.pop_back();
    }
    return false;
}

}  // namespace

bool is_pattern_in(std::span<const Symbol> sigma, std::span<const Symbol> tau) {
    if (!is_full_permutation(sigma)) throw std::invalid_argument("pattern must be a full permutation");
    std::vector<std::size_t> chosen;
    chosen.reserve(sigma.size());
    return embed(sigma, tau, chosen, 0);
}

bool is_substring_pattern_in(std::span<const Symbol> sigma, std::span<const Symbol> tau) {
    if (!is_full_permutation(sigma)) throw std::invalid_argument("pattern must be a full permutation");
    if (sigma.empty()) return true;
    if (sigma.size() > tau.size()) return false;
    for (std::size_t n = 0; n + sigma.size() <= tau.size(); ++n) {
        const auto block = tau.subspan(n, sigma.size());
        if (std::ranges::equal(pattern_of(block), sigma)) return true;
    }
    return false;
}

}  // namespace words

namespace {

void require_same_universe(int lhs, int rhs) {
    if (lhs != rhs) throw UniverseMismatch(lhs, rhs);
}

}  // namespace

PartialPermutation pattern_of(const PartialPermutation& tau) {
    return PartialPermutation(words::pattern_of(tau.entries()), static_cast<int>(tau.length()));
}

bool is_prefix(const Str& t, const Str& u, Strictness strictness) {
    require_same_universe(t.alphabet_size(), u.alphabet_size());
    if (strictness == Strictness::proper && t.length() == u.length()) return false;
    return words::is_prefix(t.symbols(), u.symbols());
}

bool is_prefix(const PartialPermutation& t, const PartialPermutation& u, Strictness strictness) {
    require_same_universe(t.universe(), u.universe());
    if (strictness == Strictness::proper && t.length() == u.length()) return false;
    return words::is_prefix(t.entries(), u.entries());
}

bool is_subsequence(const Str& sigma, const Str& tau) {
    require_same_universe(sigma.alphabet_size(), tau.alphabet_size());
    return words::is_subsequence(sigma.symbols(), tau.symbols());
}

bool is_subsequence(const PartialPermutation& sigma, const PartialPermutation& tau) {
    require_same_universe(sigma.universe(), tau.universe());
    return words::is_subsequence(sigma.entries(), tau.entries());
}

bool is_substring(const Str& sigma, const Str& tau) {
    require_same_universe(sigma.alphabet_size(), tau.alphabet_size());
    return words::is_substring(sigma.symbols(), tau.symbols());
}

bool is_substring(const PartialPermutation& sigma, const PartialPermutation& tau) {
    require_same_universe(sigma.universe(), tau.universe());
    return words::is_substring(sigma.entries(), tau.entries());
}

bool is_pattern_in(const PartialPermutation& sigma, const PartialPermutation& tau) {
    if (!sigma.is_full()) throw std::invalid_argument("pattern must be a full permutation");
    return words::is_pattern_in(sigma.entries(), tau.entries());
}

bool is_substring_pattern_in(const PartialPermutation& sigma, const PartialPermutation& tau) {
    if (!sigma.is_full()) throw std::invalid_argument("pattern must be a full permutation");
    return words::is_substring_pattern_in(sigma.entries(), tau.entries());
}

namespace {

void extend_injective(int universe, std::size_t length, Word& current, std::vector<bool>& used,
                      std::vector<Word>& out) {
    if (current.size() == length) {
        out.push_back(current);
        return;
    }
    for (Symbol s = 1; s <= universe; ++s) {
        if (used[s]) continue;
        used[s] = true;
        current.push_back(s);
        extend_injective(universe, length, current, used, out);
        current.pop_back();
        used[s] = false;
    }
}

}  // namespace

std::vector<Word> enumerate(SequenceKind kind, int universe, int length) {
    if (universe < 1 && kind != SequenceKind::permutation)
        throw std::invalid_argument("universe must be at least 1");
    if (length < 0) throw std::invalid_argument("length must be non-negative");
    std::vector<Word> out;
    switch (kind) {
        case SequenceKind::permutation:
            if (length > universe) throw std::invalid_argument("permutation length exceeds k");
            universe = length;
            [[fallthrough]];
        case SequenceKind::partial_permutation: {
            if (length > universe) throw std::invalid_argument("length exceeds universe size");
            Word current;
            std::vector<bool> used(static_cast<std::size_t>(universe) + 1, false);
            extend_injective(universe, static_cast<std::size_t>(length), current, used, out);
            break;
        }
        case SequenceKind::string: {
            Word current(static_cast<std::size_t>(length), 0);
            while (true) {
                out.push_back(current);
                int pos = length - 1;
                while (pos >= 0 && current[pos] == universe - 1) current[pos--] = 0;
                if (pos < 0) break;
                ++current[pos];
            }
            break;
        }
    }
    return out;
}

namespace {

int parse_int(std::string_view text) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw std::invalid_argument("malformed integer '" + std::string(text) + "'");
    return value;
}

}  // namespace

ParsedWord parse_word(std::string_view text) {
    ParsedWord out;
    if (const auto at = text.rfind('@'); at != std::string_view::npos) {
        out.universe = parse_int(text.substr(at + 1));
        text = text.substr(0, at);
    }
    if (text.empty() || text == "ε") return out;
    if (text.front() == '(') {
        if (text.back() != ')') throw std::invalid_argument("unterminated element '" + std::string(text) + "'");
        std::string_view body = text.substr(1, text.size() - 2);
        while (!body.empty()) {
            const auto comma = body.find(',');
            out.symbols.push_back(parse_int(body.substr(0, comma)));
            if (comma == std::string_view::npos) break;
            body = body.substr(comma + 1);
        }
        return out;
    }
    for (char c : text) {
        if (c < '0' || c > '9') throw std::invalid_argument("malformed element '" + std::string(text) + "'");
        out.symbols.push_back(c - '0');
    }
    return out;
}

std::string format_word(std::span<const Symbol> symbols) {
    if (symbols.empty()) return "ε";
    const bool digits = std::ranges::all_of(symbols, [](Symbol s) { return s >= 0 && s <= 9; });
    std::string out;
    if (digits) {
        for (Symbol s : symbols) out.push_back(static_cast<char>('0' + s));
        return out;
    }
    out.push_back('(');
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (i > 0) out.push_back(',');
        out += std::to_string(symbols[i]);
    }
    out.push_back(')');
    return out;
}

std::string to_string(const Str& s) { return format_word(s.symbols()); }

std::string to_string(const PartialPermutation& tau, bool with_universe) {
    std::string out = format_word(tau.entries());
    if (with_universe) out += "@" + std::to_string(tau.universe());
    return out;
}

}  // namespace poset_kraft
