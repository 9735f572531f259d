#include "poset_kraft/lym.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

namespace poset_kraft {

Antichain::Antichain(std::vector<ElementRef> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

std::vector<ElementRef> Antichain::at_level(std::size_t level) const {
    std::vector<ElementRef> out;
    for (const ElementRef& e : members_) {
        if (e.level == level) out.push_back(e);
    }
    return out;
}

std::optional<std::size_t> Antichain::top_level() const {
    if (members_.empty()) return std::nullopt;
    return members_.back().level;
}

namespace {

void require_members(const GradedPoset& poset, std::span<const ElementRef> members) {
    for (const ElementRef& e : members) {
        if (e.level >= poset.level_count() || e.index >= poset.level_size(e.level))
            throw std::out_of_range("element (" + std::to_string(e.level) + ", " + std::to_string(e.index) +
                                    ") is not in the poset");
    }
}

}  // namespace

AntichainCheck is_antichain(const GradedPoset& poset, const Antichain& set) {
    const auto members = set.members();
    require_members(poset, members);
    for (const ElementRef& upper : members) {
        for (const ElementRef& lower : members) {
            if (lower.level >= upper.level) break;
            if (poset.less(lower, upper)) return {false, std::pair{lower, upper}};
        }
    }
    return {};
}

ExactRational lym_number(const GradedPoset& poset, const Antichain& set) {
    require_members(poset, set.members());
    LevelCounts counts(poset.level_count(), 0);
    for (const ElementRef& e : set.members()) ++counts[e.level];
    return lym_number(poset, counts);
}

ExactRational lym_number(const GradedPoset& poset, const LevelCounts& counts) {
    if (counts.size() > poset.level_count()) throw std::invalid_argument("more counts than poset levels");
    ExactRational sum = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] != 0) sum += ExactRational(counts[i], poset.level_size(i));
    }
    return sum;
}

LocalLymResult local_lym_check(const GradedPoset& poset, std::size_t level, std::span<const ElementRef> set) {
    if (level == 0 || level >= poset.level_count()) throw std::invalid_argument("level has no level below it");
    if (set.empty()) throw std::invalid_argument("local LYM needs a nonempty set");
    require_members(poset, set);
    for (const ElementRef& e : set) {
        if (e.level != level) throw std::invalid_argument("set member outside the requested level");
    }
    const auto report = regularity_check(poset);
    if (!report.pairs[level - 1].biregular())
        throw std::invalid_argument("levels " + std::to_string(level - 1) + " and " + std::to_string(level) +
                                    " are not biregular");
    const Antichain distinct{std::vector<ElementRef>(set.begin(), set.end())};
    const auto shadow = lower_shadow(poset, distinct.members());
    LocalLymResult out;
    out.lhs = ExactRational(shadow.size(), poset.level_size(level - 1));
    out.rhs = ExactRational(distinct.size(), poset.level_size(level));
    out.holds = out.lhs >= out.rhs;
    return out;
}

Antichain reduce_top_level(const GradedPoset& poset, const Antichain& set) {
    const auto top = set.top_level();
    if (!top || *top == 0) throw std::invalid_argument("reduction needs an antichain with top level at least 1");
    std::vector<ElementRef> members;
    for (const ElementRef& e : set.members()) {
        if (e.level < *top) members.push_back(e);
    }
    const auto shadow = lower_shadow(poset, set.at_level(*top));
    members.insert(members.end(), shadow.begin(), shadow.end());
    Antichain reduced(std::move(members));
    if (!is_antichain(poset, reduced)) throw std::logic_error("shadow reduction produced a comparable pair");
    if (lym_number(poset, reduced) < lym_number(poset, set))
        throw std::logic_error("shadow reduction decreased the LYM number");
    return reduced;
}

std::variant<Code, McMillanInfeasible> mcmillan_construct(int r, const ParameterSequence& params) {
    if (r < 1) throw std::invalid_argument("r must be at least 1");
    std::vector<Word> codewords;
    // `next` is the first length-i node, in base-r order, with no chosen prefix.
    BigInt next = 0;
    BigInt level_size = 1;
    for (std::size_t i = 0; i < params.support_end(); ++i) {
        if (i > 0) {
            next *= r;
            level_size *= r;
        }
        const BigInt wanted(params[i]);
        if (next + wanted > level_size) return McMillanInfeasible{i};
        for (BigInt value = next; value < next + wanted; ++value) {
            Word w(i, 0);
            BigInt rest = value;
            for (std::size_t pos = i; pos-- > 0;) {
                w[pos] = static_cast<Symbol>(rest % r);
                rest /= r;
            }
            codewords.push_back(std::move(w));
        }
        next += wanted;
    }
    return Code({CodomainKind::string, r}, std::move(codewords));
}

namespace {

CounterexampleOutcome split_by_gcd(const GradedPoset& poset, std::size_t lower, std::size_t upper) {
    const std::size_t lower_size = poset.level_size(lower);
    const std::size_t upper_size = poset.level_size(upper);
    const std::size_t g = std::gcd(lower_size, upper_size);
    if (g <= 1) return Rejection{"gcd of level sizes not > 1"};
    CounterexampleParams out;
    out.lower_level = lower;
    out.upper_level = upper;
    out.gcd = g;
    out.counts.assign(upper + 1, 0);
    out.counts[lower] = (g - 1) * (lower_size / g);
    out.counts[upper] = upper_size / g;
    out.lym_sum = lym_number(poset, out.counts);
    return out;
}

}  // namespace

CounterexampleOutcome counterexample_params(const GradedPoset& poset, std::size_t lower_level) {
    if (lower_level + 1 >= poset.level_count()) throw std::out_of_range("level pair does not exist");
    const auto& pair = regularity_check(poset).pairs[lower_level];
    if (!pair.biregular()) return Rejection{"level pair not biregular"};
    if (*pair.up_degree <= 1) return Rejection{"up-degree not > 1"};
    if (*pair.down_degree <= 1) return Rejection{"down-degree not > 1"};
    if (!is_weakly_connected_pair(poset, lower_level)) return Rejection{"level pair not weakly connected"};
    auto outcome = split_by_gcd(poset, lower_level, lower_level + 1);
    if (auto* params = std::get_if<CounterexampleParams>(&outcome)) {
        params->up_degree = pair.up_degree;
        params->down_degree = pair.down_degree;
    }
    return outcome;
}

CounterexampleOutcome gcd_split_params(const GradedPoset& poset, std::size_t lower_level, std::size_t upper_level) {
    if (lower_level >= upper_level || upper_level >= poset.level_count())
        throw std::out_of_range("need two existing levels, lower below upper");
    return split_by_gcd(poset, lower_level, upper_level);
}

BudgetExceeded::BudgetExceeded(std::uint64_t budget)
    : std::runtime_error("search budget of " + std::to_string(budget) +
                         " nodes exceeded; try a smaller instance or raise POSET_KRAFT_BUDGET"),
      budget_(budget) {}

namespace {

constexpr std::size_t no_branch = std::numeric_limits<std::size_t>::max();

struct SearchPlan {
    std::vector<std::size_t> levels;  // requested levels, top first
    std::vector<std::size_t> counts;  // aligned with levels
};

struct SharedState {
    std::uint64_t budget = 0;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<std::size_t> winner{no_branch};
};

// One branch of the search: the first top-level element is fixed.
class BranchSearch {
public:
    BranchSearch(const GradedPoset& poset, const SearchPlan& plan, SharedState& shared, std::size_t branch)
        : poset_(poset), plan_(plan), shared_(shared), branch_(branch) {}

    bool run() {
        const ElementRef first{plan_.levels[0], branch_};
        if (!count_node()) return false;
        chosen_.push_back(first);
        boost::dynamic_bitset<> forbidden = poset_.down_set(first);
        return descend(0, branch_ + 1, plan_.counts[0] - 1, forbidden);
    }

    std::uint64_t nodes() const { return nodes_; }
    std::uint64_t leaf_checks() const { return leaf_checks_; }
    const std::vector<ElementRef>& chosen() const { return chosen_; }

private:
    bool count_node() {
        if (branch_ > shared_.winner.load(std::memory_order_relaxed)) {
            aborted_ = true;
            return false;
        }
        ++nodes_;
        if (shared_.nodes.fetch_add(1, std::memory_order_relaxed) + 1 > shared_.budget)
            throw BudgetExceeded(shared_.budget);
        return true;
    }

    bool descend(std::size_t pos, std::size_t start, std::size_t remaining, const boost::dynamic_bitset<>& forbidden) {
        if (aborted_) return false;
        if (remaining == 0) return descend(pos + 1, 0, plan_.counts[pos + 1], forbidden);
        const std::size_t level = plan_.levels[pos];
        const std::size_t offset = poset_.global_index({level, 0});
        std::vector<std::size_t> available;
        for (std::size_t j = start; j < poset_.level_size(level); ++j) {
            if (!forbidden.test(offset + j)) available.push_back(j);
        }
        if (pos + 1 == plan_.levels.size()) {
            ++leaf_checks_;
            if (available.size() < remaining) return false;
            for (std::size_t p = 0; p < remaining; ++p) chosen_.push_back({level, available[p]});
            return true;
        }
        for (std::size_t p = 0; p + remaining <= available.size(); ++p) {
            const ElementRef e{level, available[p]};
            if (!count_node()) return false;
            chosen_.push_back(e);
            if (descend(pos, e.index + 1, remaining - 1, forbidden | poset_.down_set(e))) return true;
            chosen_.pop_back();
            if (aborted_) return false;
        }
        return false;
    }

    const GradedPoset& poset_;
    const SearchPlan& plan_;
    SharedState& shared_;
    std::size_t branch_;
    std::uint64_t nodes_ = 0;
    std::uint64_t leaf_checks_ = 0;
    bool aborted_ = false;
    std::vector<ElementRef> chosen_;
};

struct BranchOutcome {
    bool done = false;
    bool found = false;
    std::uint64_t nodes = 0;
    std::uint64_t leaf_checks = 0;
    std::vector<ElementRef> chosen;
};

}  // namespace

AntichainSearchResult antichain_exists(const GradedPoset& poset, const LevelCounts& counts,
                                       const SearchOptions& options) {
    if (counts.size() > poset.level_count()) throw std::invalid_argument("more counts than poset levels");
    SearchPlan plan;
    for (std::size_t i = counts.size(); i-- > 0;) {
        if (counts[i] == 0) continue;
        if (counts[i] > poset.level_size(i))
            throw std::invalid_argument("level " + std::to_string(i) + " has only " +
                                        std::to_string(poset.level_size(i)) + " elements");
        plan.levels.push_back(i);
        plan.counts.push_back(counts[i]);
    }
    if (plan.levels.empty()) return AntichainFound{Antichain{}, 1};

    const std::size_t top = plan.levels[0];
    if (plan.levels.size() == 1) {
        std::vector<ElementRef> members;
        for (std::size_t j = 0; j < plan.counts[0]; ++j) members.push_back({top, j});
        return AntichainFound{Antichain(std::move(members)), 1};
    }

    SharedState shared;
    shared.budget = options.budget;
    shared.nodes = 1;  // root
    if (shared.nodes > shared.budget) throw BudgetExceeded(shared.budget);
    const std::size_t branches = poset.level_size(top) - plan.counts[0] + 1;
    std::vector<BranchOutcome> outcomes(branches);

    std::atomic<std::size_t> next_branch{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    const auto worker = [&] {
        try {
            for (std::size_t b = next_branch++; b < branches; b = next_branch++) {
                if (b > shared.winner.load()) break;
                BranchSearch search(poset, plan, shared, b);
                const bool found = search.run();
                outcomes[b] = {true, found, search.nodes(), search.leaf_checks(), search.chosen()};
                if (found) {
                    std::size_t current = shared.winner.load();
                    while (b < current && !shared.winner.compare_exchange_weak(current, b)) {
                    }
                }
            }
        } catch (...) {
            const std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            shared.winner = 0;
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(branches)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);

    // Report what a sequential scan would: every branch up to the winner.
    std::uint64_t nodes = 1;
    std::uint64_t leaf_checks = 0;
    const std::size_t winner = shared.winner.load();
    for (std::size_t b = 0; b < branches && b <= winner; ++b) {
        nodes += outcomes[b].nodes;
        leaf_checks += outcomes[b].leaf_checks;
    }
    if (winner != no_branch) return AntichainFound{Antichain(outcomes[winner].chosen), nodes};
    return NoAntichain{nodes, leaf_checks};
}

Antichain sample_antichain(const GradedPoset& poset, std::mt19937_64& rng) {
    std::vector<ElementRef> candidates;
    if (rng() % 2 == 0) {
        const double cap = 1.0 / (2.0 * static_cast<double>(poset.level_count()));
        std::uniform_real_distribution<double> density(0.0, cap);
        for (std::size_t i = poset.level_count(); i-- > 0;) {
            std::bernoulli_distribution keep(density(rng));
            for (std::size_t j = 0; j < poset.level_size(i); ++j) {
                if (keep(rng)) candidates.push_back({i, j});
            }
        }
    } else {
        for (std::size_t i = 0; i < poset.level_count(); ++i) {
            for (std::size_t j = 0; j < poset.level_size(i); ++j) candidates.push_back({i, j});
        }
        std::shuffle(candidates.begin(), candidates.end(), rng);
    }

    boost::dynamic_bitset<> kept(poset.size());
    boost::dynamic_bitset<> below_kept(poset.size());
    std::vector<ElementRef> members;
    for (const ElementRef& e : candidates) {
        const std::size_t g = poset.global_index(e);
        if (below_kept.test(g) || (poset.down_set(e) & kept).any()) continue;
        kept.set(g);
        below_kept |= poset.down_set(e);
        members.push_back(e);
    }
    return Antichain(std::move(members));
}

}  // namespace poset_kraft
