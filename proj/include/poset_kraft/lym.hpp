#pragma once

// Antichains in graded posets: LYM numbers, the local LYM inequality, the
// shadow reduction that drives the LYM bound, McMillan's greedy prefix code,
// the gcd counterexample vectors and the exhaustive antichain search.

#include "poset_kraft/codes.hpp"
#include "poset_kraft/poset.hpp"
#include "poset_kraft/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace poset_kraft {

/// A set of poset elements claimed to be pairwise incomparable. Members are
/// kept sorted by (level, index) and duplicate-free; is_antichain checks the claim.
class Antichain {
public:
    Antichain() = default;
    explicit Antichain(std::vector<ElementRef> members);

    std::span<const ElementRef> members() const { return members_; }
    std::vector<ElementRef> at_level(std::size_t level) const;
    std::optional<std::size_t> top_level() const;
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }

    friend bool operator==(const Antichain&, const Antichain&) = default;

private:
    std::vector<ElementRef> members_;
};

/// Number of elements requested on each level, indexed by rank.
using LevelCounts = std::vector<std::size_t>;

struct AntichainCheck {
    bool holds = true;
    /// (lower, upper) with lower < upper in the poset.
    std::optional<std::pair<ElementRef, ElementRef>> witness;
    explicit operator bool() const { return holds; }
};

/// Throws std::out_of_range when a member is not an element of `poset`.
AntichainCheck is_antichain(const GradedPoset& poset, const Antichain& set);

/// L_A = sum_i #A^(i) / #P^(i).
ExactRational lym_number(const GradedPoset& poset, const Antichain& set);
/// sum_i a_i / #P^(i) for a count vector.
ExactRational lym_number(const GradedPoset& poset, const LevelCounts& counts);

struct LocalLymResult {
    ExactRational lhs;  // #lower_shadow(A) / #P^(level-1)
    ExactRational rhs;  // #A / #P^(level)
    bool holds = false;
};

/// Requires level >= 1, a nonempty set on `level`, and a biregular pair
/// (level-1, level); throws std::invalid_argument otherwise.
LocalLymResult local_lym_check(const GradedPoset& poset, std::size_t level, std::span<const ElementRef> set);

/// Replaces the top level of `set` by its lower shadow. The result is checked
/// to be an antichain with LYM number at least that of the input; a failed
/// check throws std::logic_error.
Antichain reduce_top_level(const GradedPoset& poset, const Antichain& set);

struct McMillanInfeasible {
    std::size_t level = 0;  // first length with too few prefix-free strings left
};

/// Greedy construction in the r-ary tree: lengths in increasing order, and at
/// each length the lexicographically smallest strings with no chosen prefix.
std::variant<Code, McMillanInfeasible> mcmillan_construct(int r, const ParameterSequence& params);

struct CounterexampleParams {
    std::size_t lower_level = 0;
    std::size_t upper_level = 0;
    LevelCounts counts;
    ExactRational lym_sum;
    std::size_t gcd = 0;
    std::optional<std::size_t> up_degree;
    std::optional<std::size_t> down_degree;
};

struct Rejection {
    std::string reason;
};

using CounterexampleOutcome = std::variant<CounterexampleParams, Rejection>;

/// Checks u > 1, d > 1, weak connectivity and g = gcd(#P^(i), #P^(i+1)) > 1
/// on the biregular pair (i, i+1). On success a_i = (g-1)/g #P^(i) and
/// a_{i+1} = #P^(i+1)/g, whose LYM sum is exactly 1.
CounterexampleOutcome counterexample_params(const GradedPoset& poset, std::size_t lower_level);

/// The same gcd split on two arbitrary levels, with no degree or
/// connectivity hypotheses. Only g > 1 is required.
CounterexampleOutcome gcd_split_params(const GradedPoset& poset, std::size_t lower_level, std::size_t upper_level);

class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(std::uint64_t budget);
    std::uint64_t budget() const { return budget_; }

private:
    std::uint64_t budget_;
};

inline constexpr std::uint64_t default_search_budget = 10'000'000;

struct SearchOptions {
    std::uint64_t budget = default_search_budget;  // partial assignments
    unsigned threads = 1;
};

struct AntichainFound {
    Antichain antichain;
    std::uint64_t search_nodes = 0;
};

struct NoAntichain {
    std::uint64_t search_nodes = 0;
    /// Complete choices of every level above the lowest requested one that
    /// were tested against it.
    std::uint64_t leaf_checks = 0;
};

using AntichainSearchResult = std::variant<AntichainFound, NoAntichain>;

/// Exhaustive backtracking from the top requested level down. The witness,
/// when one exists, is the first in lexicographic order of index choices.
AntichainSearchResult antichain_exists(const GradedPoset& poset, const LevelCounts& counts,
                                       const SearchOptions& options = {});

/// Random antichain for property testing. Alternates two schemes: a sparse
/// random subset repaired by dropping comparable members, and a greedy
/// maximal antichain grown in random element order.
Antichain sample_antichain(const GradedPoset& poset, std::mt19937_64& rng);

}  // namespace poset_kraft
