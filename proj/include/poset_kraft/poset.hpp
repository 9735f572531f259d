#pragma once

// Finite graded posets stored as explicit levels plus the cover multigraph
// between consecutive levels, and the concrete families built from strings,
// partial permutations, patterns and subsets.

#include "poset_kraft/perm.hpp"

#include <boost/dynamic_bitset.hpp>

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace poset_kraft {

enum class Relation { prefix, subsequence, substring, pattern, substring_pattern };

std::string_view to_string(Relation relation);
/// Accepts the names printed by to_string, plus `substring-pattern`.
Relation parse_relation(std::string_view name);

enum class Family { string, partial_perm, pattern, subset, custom };

std::string_view to_string(Family family);

struct Level {
    int universe = 0;          // r, k, l or n depending on the family
    std::vector<Word> elements;  // lexicographically sorted, duplicate-free
};

/// A cover edge between level i (lower) and level i+1 (upper).
struct CoverEdge {
    std::size_t lower = 0;
    std::size_t upper = 0;
    std::size_t multiplicity = 1;
};

struct ElementRef {
    std::size_t level = 0;
    std::size_t index = 0;
    friend auto operator<=>(const ElementRef&, const ElementRef&) = default;
};

struct Neighbor {
    std::size_t index = 0;
    std::size_t multiplicity = 1;
};

/// Raised when an operation would materialize an instance above its cap.
class InstanceTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GradedPoset {
public:
    /// `covers[i]` holds the edges between level i and level i+1, so it has
    /// one entry fewer than `levels`. Throws std::invalid_argument when the
    /// edges or levels are malformed.
    GradedPoset(Family family, std::optional<Relation> relation, std::vector<Level> levels,
                std::vector<std::vector<CoverEdge>> covers);

    Family family() const { return family_; }
    std::optional<Relation> relation() const { return relation_; }

    std::size_t level_count() const { return levels_.size(); }
    const Level& level(std::size_t i) const { return levels_.at(i); }
    std::size_t level_size(std::size_t i) const { return levels_.at(i).elements.size(); }
    std::size_t size() const { return offsets_.back(); }

    std::span<const CoverEdge> covers(std::size_t lower_level) const { return covers_.at(lower_level); }
    std::span<const Neighbor> up_neighbors(ElementRef e) const;
    std::span<const Neighbor> down_neighbors(ElementRef e) const;

    const Word& element(ElementRef e) const { return levels_.at(e.level).elements.at(e.index); }
    std::optional<std::size_t> find(std::size_t level, const Word& element) const;
    std::string label(ElementRef e) const;

    std::size_t global_index(ElementRef e) const { return offsets_.at(e.level) + e.index; }
    /// Every element strictly below `e`, indexed by global_index.
    const boost::dynamic_bitset<>& down_set(ElementRef e) const;
    /// Strict order: a < b.
    bool less(ElementRef a, ElementRef b) const;
    bool comparable(ElementRef a, ElementRef b) const { return less(a, b) || less(b, a); }

private:
    struct Closure;
    const Closure& closure() const;

    Family family_;
    std::optional<Relation> relation_;
    std::vector<Level> levels_;
    std::vector<std::vector<CoverEdge>> covers_;
    std::vector<std::size_t> offsets_;
    std::vector<std::vector<std::vector<Neighbor>>> up_;
    std::vector<std::vector<std::vector<Neighbor>>> down_;
    std::vector<std::map<Word, std::size_t>> lookup_;
    std::shared_ptr<Closure> closure_;
};

/// Levels 0..max_level with level l = all strings of length l over {0..r-1}.
GradedPoset build_string_poset(int r, Relation relation, int max_level);
/// Levels T_k^1, ..., T_k^k (ranks 0..k-1), covers by one-symbol deletion.
GradedPoset build_partial_perm_poset(int k, Relation relation);
/// Levels S_1, T_2^1, S_2, T_3^2, ..., S_k: 2k-1 ranks with S_l at rank 2(l-1).
GradedPoset build_pattern_poset(int k, Relation relation);
/// Subsets of [n] ordered by inclusion; elements are increasing sequences.
GradedPoset build_subset_poset(int n);

/// Rank at which elements of the given length live, for the built-in families.
/// For pattern posets this is the rank of S_length.
std::size_t rank_of_length(const GradedPoset& poset, std::size_t length);

struct LevelPairRegularity {
    std::size_t lower_level = 0;
    std::size_t lower_size = 0;
    std::size_t upper_size = 0;
    std::size_t edge_count = 0;  // with multiplicity
    std::optional<std::size_t> up_degree;    // set when uniform over the lower level
    std::optional<std::size_t> down_degree;  // set when uniform over the upper level
    bool biregular() const { return up_degree.has_value() && down_degree.has_value(); }
};

struct RegularityReport {
    std::vector<LevelPairRegularity> pairs;
    bool biregular() const;
};

RegularityReport regularity_check(const GradedPoset& poset);

/// Elements covered by some member of `set`; all members must share a level.
std::vector<ElementRef> lower_shadow(const GradedPoset& poset, std::span<const ElementRef> set);
std::vector<ElementRef> upper_shadow(const GradedPoset& poset, std::span<const ElementRef> set);

bool is_weakly_connected_pair(const GradedPoset& poset, std::size_t lower_level);

inline constexpr std::size_t default_dot_vertex_cap = 5000;

/// Graphviz rendering of the Hasse diagram, one rank per level. Edges with
/// multiplicity above one carry it as a label.
std::string export_hasse_dot(const GradedPoset& poset, std::size_t vertex_cap = default_dot_vertex_cap);

}  // namespace poset_kraft
