#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "prefront/kernel.hpp"
#include "prefront/market.hpp"
#include "prefront/relation.hpp"

namespace prefront {

/// One scored criterion: what to evaluate on a portfolio and whether larger
/// (u-family) or smaller (v-family) values are preferred.
class ObjectiveSpec {
public:
    enum class Kind {
        ExpectedReturn,
        Variance,
        CentralMoment,   // order >= 2
        SkewSquared,
        KurtSquared,
        SDCurve,         // order >= 1, fixed threshold t; always minimized
        KernelColumn,    // f(., p) on a bound kernel instance
        KernelRow,       // f(p, .) on a bound kernel instance
        Custom,
    };
    enum class Direction { Maximize, Minimize };
    enum class DegeneratePolicy { Error, TreatAsZero };

    static ObjectiveSpec expected_return();
    static ObjectiveSpec variance();
    static ObjectiveSpec central_moment(int order, Direction dir = Direction::Minimize);
    static ObjectiveSpec skew_squared(DegeneratePolicy policy = DegeneratePolicy::TreatAsZero);
    static ObjectiveSpec kurt_squared(DegeneratePolicy policy = DegeneratePolicy::TreatAsZero);
    static ObjectiveSpec sd_curve(int order, double t);
    static ObjectiveSpec kernel_column(std::size_t p);
    static ObjectiveSpec kernel_row(std::size_t p);
    static ObjectiveSpec custom(std::string label, Direction dir,
                                std::function<double(const Portfolio&)> fn);

    Kind kind() const { return kind_; }
    Direction direction() const { return direction_; }
    DegeneratePolicy degenerate_policy() const { return policy_; }
    int order() const { return order_; }
    double threshold() const { return threshold_; }
    std::size_t index() const { return index_; }

    /// Short stable name used in CSV headers and reports.
    std::string label() const;

private:
    friend class PreorderInstance;
    ObjectiveSpec(Kind kind, Direction dir) : kind_(kind), direction_(dir) {}

    Kind kind_;
    Direction direction_;
    DegeneratePolicy policy_ = DegeneratePolicy::TreatAsZero;
    int order_ = 0;
    double threshold_ = 0.0;
    std::size_t index_ = 0;
    std::string label_;
    std::function<double(const Portfolio&)> fn_;
};

/// Result of computing the maximal subset of a candidate list. dominator[i]
/// holds a maximal index strictly dominating candidate i, or nothing when i
/// is itself maximal.
struct FrontierResult {
    std::vector<std::size_t> maximal_indices;          // ascending
    std::vector<std::optional<std::size_t>> dominator; // size = candidate count
};

/// Greedy improvement trail from a start portfolio to a maximal one.
struct AscentResult {
    Portfolio maximal;
    std::vector<Portfolio> path;   // starts at x, ends at maximal
};

/// Extremum bookkeeping for one (u, v) objective pairing over a chain. Index
/// sets refer to positions in the chain list. Single-family instances leave
/// the absent side's index unset and its sets empty.
struct ChainObjectiveRecord {
    std::optional<std::size_t> u_index;      // position in the u-family
    double max_value = 0.0;                  // sup of u over the chain
    std::vector<std::size_t> attain_max;     // chain positions attaining it
    std::vector<std::size_t> below_max;      // complement

    std::optional<std::size_t> v_index;      // position in the v-family
    double min_value = 0.0;                  // inf of v over the chain
    std::vector<std::size_t> attain_min;
    std::vector<std::size_t> above_min;

    bool lemma_i = true;   // attain_min and attain_max nest one way or the other
};

struct ChainReport {
    std::vector<std::size_t> chain;              // positions 0..k-1, echo of the input
    std::vector<ChainObjectiveRecord> records;   // one per (u, v) pairing
    /// Record indices ordered so the intersections attain_max & attain_min
    /// are nested from smallest to largest.
    std::vector<std::size_t> nesting_order;
    std::vector<bool> lemma_ii_pairs;            // flattened upper triangle, row-major
    bool lemma_i_holds = true;
    bool lemma_ii_holds = true;
    bool corollary_holds = true;
};

/// A bound preference relation: a maximize family u, a minimize family v, the
/// market (or kernel) they evaluate against, and the comparison tolerance.
class PreorderInstance {
public:
    PreorderInstance(std::vector<ObjectiveSpec> u_family, std::vector<ObjectiveSpec> v_family,
                     std::optional<ScenarioMarket> market, double epsilon = 1e-9,
                     std::optional<KernelInstance> kernel = std::nullopt);

    const std::vector<ObjectiveSpec>& u_family() const { return u_family_; }
    const std::vector<ObjectiveSpec>& v_family() const { return v_family_; }
    std::size_t objective_count() const { return u_family_.size() + v_family_.size(); }
    const std::optional<ScenarioMarket>& market() const { return market_; }
    double epsilon() const { return epsilon_; }

    /// Objective values for one portfolio: u-family first, then v-family.
    std::vector<double> evaluate(const Portfolio& x) const;

    /// Label of objective i in the concatenated u+v order, prefixed with its
    /// family and one-based position (e.g. "u1_mean", "v2_skew2").
    std::string objective_label(std::size_t i) const;

private:
    std::vector<ObjectiveSpec> u_family_;
    std::vector<ObjectiveSpec> v_family_;
    std::optional<ScenarioMarket> market_;
    double epsilon_;
    std::optional<KernelInstance> kernel_;

    double evaluate_one(const ObjectiveSpec& spec, const Portfolio& x,
                        std::optional<DiscreteDistribution>& dist_cache) const;
};

/// Pairwise verdict under the instance's relation.
DominanceVerdict relate(const PreorderInstance& preorder, const Portfolio& x, const Portfolio& y);

/// True when no candidate strictly dominates x.
bool is_maximal(const PreorderInstance& preorder, const Portfolio& x,
                const std::vector<Portfolio>& candidates);

/// The classical efficiency test, evaluated literally over the candidate set:
/// x attains the best u among candidates with no worse v, and the best v
/// among candidates with no worse u. Requires exactly one u and one v
/// objective; agrees with is_maximal on every input.
bool is_markowitz_efficient(const PreorderInstance& preorder, const Portfolio& x,
                            const std::vector<Portfolio>& candidates);

/// All maximal candidates plus, for every dominated one, a maximal strict
/// dominator reached by greedy ascent. Deterministic for any thread count;
/// ties are broken by canonical (weight-lexicographic) candidate order.
FrontierResult maximal_set(const PreorderInstance& preorder,
                           const std::vector<Portfolio>& candidates, unsigned threads = 1);

/// Follows strict improvements from x (greedy: best objective vector first)
/// until no candidate strictly dominates the current element.
AscentResult ascend_to_maximal(const PreorderInstance& preorder, const Portfolio& x,
                               const std::vector<Portfolio>& candidates);

/// True when every pair in the subset is comparable.
bool verify_chain(const PreorderInstance& preorder, const std::vector<Portfolio>& subset);

/// Extrema, attainment sets and nesting checks over a chain. All lemma flags
/// are guaranteed on finite chains, so a false flag indicates a tolerance or
/// implementation fault. Throws NotAChain when the input is not a chain.
ChainReport chain_report(const PreorderInstance& preorder, const std::vector<Portfolio>& chain);

/// Greatest element of a finite chain (every member relates up to it). Ties
/// between equivalent tops go to the canonically first element.
Portfolio chain_upper_bound(const PreorderInstance& preorder, const std::vector<Portfolio>& chain);

/// Positions of the candidates in canonical (weight-lexicographic) order;
/// rank[i] is the sort position of candidate i. Shared tie-break basis for
/// all deterministic selections.
std::vector<std::size_t> canonical_ranks(const std::vector<Portfolio>& candidates);

} // namespace prefront
