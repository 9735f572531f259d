#include "poset_kraft/poset.hpp"

#include <boost/pending/disjoint_sets.hpp>

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace poset_kraft {

std::string_view to_string(Relation relation) {
    switch (relation) {
        case Relation::prefix: return "prefix";
        case Relation::subsequence: return "subsequence";
        case Relation::substring: return "substring";
        case Relation::pattern: return "pattern";
        case Relation::substring_pattern: return "substring_pattern";
    }
    return "?";
}

Relation parse_relation(std::string_view name) {
    if (name == "prefix") return Relation::prefix;
    if (name == "subsequence") return Relation::subsequence;
    if (name == "substring") return Relation::substring;
    if (name == "pattern") return Relation::pattern;
    if (name == "substring_pattern" || name == "substring-pattern") return Relation::substring_pattern;
    throw std::invalid_argument("unknown relation '" + std::string(name) + "'");
}

std::string_view to_string(Family family) {
    switch (family) {
        case Family::string: return "string";
        case Family::partial_perm: return "partial_perm";
        case Family::pattern: return "pattern";
        case Family::subset: return "subset";
        case Family::custom: return "custom";
    }
    return "?";
}

struct GradedPoset::Closure {
    std::once_flag once;
    std::vector<boost::dynamic_bitset<>> below;
};

GradedPoset::GradedPoset(Family family, std::optional<Relation> relation, std::vector<Level> levels,
                         std::vector<std::vector<CoverEdge>> covers)
    : family_(family),
      relation_(relation),
      levels_(std::move(levels)),
      covers_(std::move(covers)),
      closure_(std::make_shared<Closure>()) {
    if (levels_.empty()) throw std::invalid_argument("a graded poset needs at least one level");
    if (covers_.size() + 1 != levels_.size())
        throw std::invalid_argument("expected one cover list per consecutive level pair");

    offsets_.assign(1, 0);
    lookup_.resize(levels_.size());
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        const auto& elems = levels_[i].elements;
        if (elems.empty()) throw std::invalid_argument("level " + std::to_string(i) + " is empty");
        for (std::size_t j = 0; j < elems.size(); ++j) {
            if (!lookup_[i].emplace(elems[j], j).second)
                throw std::invalid_argument("duplicate element on level " + std::to_string(i));
        }
        offsets_.push_back(offsets_.back() + elems.size());
    }

    up_.resize(levels_.size());
    down_.resize(levels_.size());
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        up_[i].resize(levels_[i].elements.size());
        down_[i].resize(levels_[i].elements.size());
    }
    for (std::size_t i = 0; i < covers_.size(); ++i) {
        auto& edges = covers_[i];
        std::sort(edges.begin(), edges.end(), [](const CoverEdge& a, const CoverEdge& b) {
            return std::tie(a.lower, a.upper) < std::tie(b.lower, b.upper);
        });
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const auto& edge = edges[e];
            if (edge.lower >= levels_[i].elements.size() || edge.upper >= levels_[i + 1].elements.size())
                throw std::invalid_argument("cover edge endpoint out of range");
            if (edge.multiplicity == 0) throw std::invalid_argument("cover edge multiplicity must be positive");
            if (e > 0 && edges[e - 1].lower == edge.lower && edges[e - 1].upper == edge.upper)
                throw std::invalid_argument("repeated cover edge; use the multiplicity field");
            up_[i][edge.lower].push_back({edge.upper, edge.multiplicity});
            down_[i + 1][edge.upper].push_back({edge.lower, edge.multiplicity});
        }
    }
}

std::span<const Neighbor> GradedPoset::up_neighbors(ElementRef e) const { return up_.at(e.level).at(e.index); }

std::span<const Neighbor> GradedPoset::down_neighbors(ElementRef e) const {
    return down_.at(e.level).at(e.index);
}

std::optional<std::size_t> GradedPoset::find(std::size_t level, const Word& element) const {
    if (level >= lookup_.size()) return std::nullopt;
    const auto it = lookup_[level].find(element);
    if (it == lookup_[level].end()) return std::nullopt;
    return it->second;
}

std::string GradedPoset::label(ElementRef e) const {
    const Word& w = element(e);
    if (family_ != Family::subset) return format_word(w);
    if (w.empty()) return "∅";
    std::string out = "{";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0) out += ",";
        out += std::to_string(w[i]);
    }
    return out + "}";
}

const GradedPoset::Closure& GradedPoset::closure() const {
    std::call_once(closure_->once, [this] {
        auto& below = closure_->below;
        below.assign(size(), boost::dynamic_bitset<>(size()));
        for (std::size_t i = 1; i < levels_.size(); ++i) {
            for (std::size_t j = 0; j < levels_[i].elements.size(); ++j) {
                auto& set = below[offsets_[i] + j];
                for (const Neighbor& n : down_[i][j]) {
                    const std::size_t g = offsets_[i - 1] + n.index;
                    set |= below[g];
                    set.set(g);
                }
            }
        }
    });
    return *closure_;
}

const boost::dynamic_bitset<>& GradedPoset::down_set(ElementRef e) const {
    return closure().below.at(global_index(e));
}

bool GradedPoset::less(ElementRef a, ElementRef b) const {
    if (a.level >= b.level) return false;
    return down_set(b).test(global_index(a));
}

namespace {

// Builds the cover multigraph by deleting from every upper element; each
// deletion result counts once toward the multiplicity of its edge.
using Deleter = std::function<std::vector<Word>(const Word& upper, std::size_t upper_level)>;

std::vector<std::vector<CoverEdge>> covers_by_deletion(const std::vector<Level>& levels, const Deleter& deleter) {
    std::vector<std::vector<CoverEdge>> covers(levels.size() - 1);
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
        std::map<Word, std::size_t> lower_index;
        for (std::size_t j = 0; j < levels[i].elements.size(); ++j) lower_index.emplace(levels[i].elements[j], j);
        for (std::size_t u = 0; u < levels[i + 1].elements.size(); ++u) {
            std::map<std::size_t, std::size_t> counts;
            for (const Word& lower : deleter(levels[i + 1].elements[u], i + 1)) {
                const auto it = lower_index.find(lower);
                if (it == lower_index.end()) throw std::logic_error("deletion left the lower level");
                ++counts[it->second];
            }
            for (const auto& [lower, mult] : counts) covers[i].push_back({lower, u, mult});
        }
    }
    return covers;
}

Word erase_at(const Word& w, std::size_t pos) {
    Word out = w;
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(pos));
    return out;
}

// Deletion positions for one step down in the given relation. Prefix removes
// the last entry, substring the first or last (one position when length 1),
// subsequence any entry.
std::vector<std::size_t> deletion_positions(Relation relation, std::size_t length) {
    std::vector<std::size_t> out;
    if (length == 0) return out;
    switch (relation) {
        case Relation::prefix: out.push_back(length - 1); break;
        case Relation::substring:
        case Relation::substring_pattern:
            out.push_back(0);
            if (length > 1) out.push_back(length - 1);
            break;
        case Relation::subsequence:
        case Relation::pattern:
            out.resize(length);
            std::iota(out.begin(), out.end(), std::size_t{0});
            break;
    }
    return out;
}

std::vector<Word> delete_per_relation(Relation relation, const Word& upper) {
    std::vector<Word> out;
    for (std::size_t pos : deletion_positions(relation, upper.size())) out.push_back(erase_at(upper, pos));
    return out;
}

void require_word_relation(Relation relation) {
    if (relation != Relation::prefix && relation != Relation::subsequence && relation != Relation::substring)
        throw std::invalid_argument("relation must be prefix, subsequence or substring");
}

}  // namespace

GradedPoset build_string_poset(int r, Relation relation, int max_level) {
    if (r < 1) throw std::invalid_argument("r must be at least 1");
    if (max_level < 0) throw std::invalid_argument("max_level must be non-negative");
    require_word_relation(relation);
    std::vector<Level> levels;
    for (int l = 0; l <= max_level; ++l) levels.push_back({r, enumerate(SequenceKind::string, r, l)});
    auto covers = covers_by_deletion(levels, [relation](const Word& w, std::size_t) {
        return delete_per_relation(relation, w);
    });
    return GradedPoset(Family::string, relation, std::move(levels), std::move(covers));
}

GradedPoset build_partial_perm_poset(int k, Relation relation) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    require_word_relation(relation);
    std::vector<Level> levels;
    for (int l = 1; l <= k; ++l) levels.push_back({k, enumerate(SequenceKind::partial_permutation, k, l)});
    auto covers = covers_by_deletion(levels, [relation](const Word& w, std::size_t) {
        return delete_per_relation(relation, w);
    });
    return GradedPoset(Family::partial_perm, relation, std::move(levels), std::move(covers));
}

GradedPoset build_pattern_poset(int k, Relation relation) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (relation != Relation::pattern && relation != Relation::substring_pattern)
        throw std::invalid_argument("relation must be pattern or substring_pattern");
    std::vector<Level> levels;
    for (int l = 1; l <= k; ++l) {
        if (l > 1) levels.push_back({l, enumerate(SequenceKind::partial_permutation, l, l - 1)});
        levels.push_back({l, enumerate(SequenceKind::permutation, l, l)});
    }
    // Odd ranks are intermediates: they cover their pattern. Even ranks are
    // permutations: they cover their literal deletions.
    auto covers = covers_by_deletion(levels, [relation](const Word& w, std::size_t upper_level) {
        if (upper_level % 2 == 1) return std::vector<Word>{words::pattern_of(w)};
        return delete_per_relation(relation, w);
    });
    return GradedPoset(Family::pattern, relation, std::move(levels), std::move(covers));
}

GradedPoset build_subset_poset(int n) {
    if (n < 0) throw std::invalid_argument("n must be non-negative");
    std::vector<Level> levels(static_cast<std::size_t>(n) + 1);
    for (auto& level : levels) level.universe = n;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        Word subset;
        for (int b = 0; b < n; ++b) {
            if (mask & (1u << b)) subset.push_back(b + 1);
        }
        levels[subset.size()].elements.push_back(std::move(subset));
    }
    for (auto& level : levels) std::sort(level.elements.begin(), level.elements.end());
    auto covers = covers_by_deletion(levels, [](const Word& w, std::size_t) {
        return delete_per_relation(Relation::subsequence, w);
    });
    return GradedPoset(Family::subset, std::nullopt, std::move(levels), std::move(covers));
}

std::size_t rank_of_length(const GradedPoset& poset, std::size_t length) {
    switch (poset.family()) {
        case Family::string:
        case Family::subset:
        case Family::custom: return length;
        case Family::partial_perm:
            if (length == 0) throw std::invalid_argument("partial permutation posets start at length 1");
            return length - 1;
        case Family::pattern:
            if (length == 0) throw std::invalid_argument("pattern posets start at length 1");
            return 2 * (length - 1);
    }
    return length;
}

bool RegularityReport::biregular() const {
    return std::ranges::all_of(pairs, [](const LevelPairRegularity& p) { return p.biregular(); });
}

RegularityReport regularity_check(const GradedPoset& poset) {
    RegularityReport report;
    const auto uniform = [](const std::vector<std::size_t>& degrees) -> std::optional<std::size_t> {
        if (std::adjacent_find(degrees.begin(), degrees.end(), std::not_equal_to<>()) != degrees.end())
            return std::nullopt;
        return degrees.front();
    };
    for (std::size_t i = 0; i + 1 < poset.level_count(); ++i) {
        LevelPairRegularity pair;
        pair.lower_level = i;
        pair.lower_size = poset.level_size(i);
        pair.upper_size = poset.level_size(i + 1);
        std::vector<std::size_t> up(pair.lower_size, 0);
        std::vector<std::size_t> down(pair.upper_size, 0);
        for (const CoverEdge& e : poset.covers(i)) {
            up[e.lower] += e.multiplicity;
            down[e.upper] += e.multiplicity;
            pair.edge_count += e.multiplicity;
        }
        pair.up_degree = uniform(up);
        pair.down_degree = uniform(down);
        report.pairs.push_back(pair);
    }
    return report;
}

namespace {

std::size_t common_level(std::span<const ElementRef> set) {
    const std::size_t level = set.front().level;
    for (const ElementRef& e : set) {
        if (e.level != level) throw std::invalid_argument("shadow input mixes levels");
    }
    return level;
}

}  // namespace

std::vector<ElementRef> lower_shadow(const GradedPoset& poset, std::span<const ElementRef> set) {
    if (set.empty()) return {};
    const std::size_t level = common_level(set);
    if (level == 0) return {};
    std::set<ElementRef> out;
    for (const ElementRef& e : set) {
        for (const Neighbor& n : poset.down_neighbors(e)) out.insert({level - 1, n.index});
    }
    return {out.begin(), out.end()};
}

std::vector<ElementRef> upper_shadow(const GradedPoset& poset, std::span<const ElementRef> set) {
    if (set.empty()) return {};
    const std::size_t level = common_level(set);
    if (level + 1 >= poset.level_count()) return {};
    std::set<ElementRef> out;
    for (const ElementRef& e : set) {
        for (const Neighbor& n : poset.up_neighbors(e)) out.insert({level + 1, n.index});
    }
    return {out.begin(), out.end()};
}

bool is_weakly_connected_pair(const GradedPoset& poset, std::size_t lower_level) {
    if (lower_level + 1 >= poset.level_count()) throw std::out_of_range("level pair does not exist");
    const std::size_t lower = poset.level_size(lower_level);
    const std::size_t total = lower + poset.level_size(lower_level + 1);
    std::vector<std::size_t> rank(total), parent(total);
    boost::disjoint_sets<std::size_t*, std::size_t*> sets(rank.data(), parent.data());
    for (std::size_t v = 0; v < total; ++v) sets.make_set(v);
    for (const CoverEdge& e : poset.covers(lower_level)) sets.union_set(e.lower, lower + e.upper);
    const std::size_t root = sets.find_set(0);
    for (std::size_t v = 1; v < total; ++v) {
        if (sets.find_set(v) != root) return false;
    }
    return true;
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

std::string node_id(std::size_t level, std::size_t index) {
    return "n" + std::to_string(level) + "_" + std::to_string(index);
}

}  // namespace

std::string export_hasse_dot(const GradedPoset& poset, std::size_t vertex_cap) {
    if (poset.size() > vertex_cap)
        throw InstanceTooLarge("Hasse diagram has " + std::to_string(poset.size()) + " vertices, above the cap of " +
                               std::to_string(vertex_cap) + "; choose a smaller instance");
    std::ostringstream out;
    out << "digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n";
    for (std::size_t i = 0; i < poset.level_count(); ++i) {
        out << "  { rank=same;";
        for (std::size_t j = 0; j < poset.level_size(i); ++j)
            out << " " << node_id(i, j) << " [label=\"" << dot_escape(poset.label({i, j})) << "\"];";
        out << " }\n";
    }
    for (std::size_t i = 0; i + 1 < poset.level_count(); ++i) {
        for (const CoverEdge& e : poset.covers(i)) {
            out << "  " << node_id(i, e.lower) << " -> " << node_id(i + 1, e.upper);
            if (e.multiplicity > 1) out << " [label=\"" << e.multiplicity << "\"]";
            out << ";\n";
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace poset_kraft
