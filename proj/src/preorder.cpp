#include "prefront/preorder.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <thread>

namespace prefront {

namespace {

std::string short_real(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace

ObjectiveSpec ObjectiveSpec::expected_return() {
    return ObjectiveSpec(Kind::ExpectedReturn, Direction::Maximize);
}

ObjectiveSpec ObjectiveSpec::variance() {
    return ObjectiveSpec(Kind::Variance, Direction::Minimize);
}

ObjectiveSpec ObjectiveSpec::central_moment(int order, Direction dir) {
    if (order < 2) throw ValidationError("central moment objective needs order >= 2");
    ObjectiveSpec s(Kind::CentralMoment, dir);
    s.order_ = order;
    return s;
}

ObjectiveSpec ObjectiveSpec::skew_squared(DegeneratePolicy policy) {
    ObjectiveSpec s(Kind::SkewSquared, Direction::Minimize);
    s.policy_ = policy;
    return s;
}

ObjectiveSpec ObjectiveSpec::kurt_squared(DegeneratePolicy policy) {
    ObjectiveSpec s(Kind::KurtSquared, Direction::Minimize);
    s.policy_ = policy;
    return s;
}

ObjectiveSpec ObjectiveSpec::sd_curve(int order, double t) {
    if (order < 1) throw ValidationError("stochastic dominance objective needs order >= 1");
    ObjectiveSpec s(Kind::SDCurve, Direction::Minimize);
    s.order_ = order;
    s.threshold_ = t;
    return s;
}

ObjectiveSpec ObjectiveSpec::kernel_column(std::size_t p) {
    ObjectiveSpec s(Kind::KernelColumn, Direction::Maximize);
    s.index_ = p;
    return s;
}

ObjectiveSpec ObjectiveSpec::kernel_row(std::size_t p) {
    ObjectiveSpec s(Kind::KernelRow, Direction::Minimize);
    s.index_ = p;
    return s;
}

ObjectiveSpec ObjectiveSpec::custom(std::string label, Direction dir,
                                    std::function<double(const Portfolio&)> fn) {
    if (!fn) throw ValidationError("custom objective needs a callable");
    ObjectiveSpec s(Kind::Custom, dir);
    s.label_ = std::move(label);
    s.fn_ = std::move(fn);
    return s;
}

std::string ObjectiveSpec::label() const {
    switch (kind_) {
    case Kind::ExpectedReturn: return "mean";
    case Kind::Variance: return "variance";
    case Kind::CentralMoment: return "moment" + std::to_string(order_);
    case Kind::SkewSquared: return "skew2";
    case Kind::KurtSquared: return "kurt2";
    case Kind::SDCurve: return "sd" + std::to_string(order_) + "@" + short_real(threshold_);
    case Kind::KernelColumn: return "col" + std::to_string(index_ + 1);
    case Kind::KernelRow: return "row" + std::to_string(index_ + 1);
    case Kind::Custom: return label_;
    }
    return "?";
}

PreorderInstance::PreorderInstance(std::vector<ObjectiveSpec> u_family,
                                   std::vector<ObjectiveSpec> v_family,
                                   std::optional<ScenarioMarket> market, double epsilon,
                                   std::optional<KernelInstance> kernel)
    : u_family_(std::move(u_family)), v_family_(std::move(v_family)),
      market_(std::move(market)), epsilon_(epsilon), kernel_(std::move(kernel)) {
    if (u_family_.empty() && v_family_.empty()) {
        throw ValidationError("preorder needs at least one objective");
    }
    if (epsilon_ < 0.0) throw ValidationError("epsilon must be nonnegative");
    for (const auto& s : u_family_) {
        if (s.direction() != ObjectiveSpec::Direction::Maximize) {
            throw ValidationError("u-family objectives must have maximize direction");
        }
    }
    for (const auto& s : v_family_) {
        if (s.direction() != ObjectiveSpec::Direction::Minimize) {
            throw ValidationError("v-family objectives must have minimize direction");
        }
    }
    auto check = [&](const ObjectiveSpec& s) {
        using Kind = ObjectiveSpec::Kind;
        switch (s.kind()) {
        case Kind::ExpectedReturn:
        case Kind::Variance:
        case Kind::CentralMoment:
        case Kind::SkewSquared:
        case Kind::KurtSquared:
        case Kind::SDCurve:
            if (!market_) throw ValidationError("objective '" + s.label() + "' needs a market");
            break;
        case Kind::KernelColumn:
        case Kind::KernelRow:
            if (!kernel_) throw ValidationError("objective '" + s.label() + "' needs a kernel");
            if (s.index() >= kernel_->size()) {
                throw ValidationError("kernel objective index out of range");
            }
            break;
        case Kind::Custom:
            break;
        }
    };
    for (const auto& s : u_family_) check(s);
    for (const auto& s : v_family_) check(s);
}

namespace {

// Kernel objectives act on the finite set {0..k-1} embedded as the simplex
// vertices: the portfolio must put weight 1 on exactly one asset.
std::size_t vertex_index(const Portfolio& x) {
    std::optional<std::size_t> hit;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::abs(x[i] - 1.0) <= 1e-9) {
            if (hit) throw ValidationError("portfolio is not a simplex vertex");
            hit = i;
        } else if (std::abs(x[i]) > 1e-9) {
            throw ValidationError("portfolio is not a simplex vertex");
        }
    }
    if (!hit) throw ValidationError("portfolio is not a simplex vertex");
    return *hit;
}

} // namespace

double PreorderInstance::evaluate_one(const ObjectiveSpec& spec, const Portfolio& x,
                                      std::optional<DiscreteDistribution>& dist_cache) const {
    using Kind = ObjectiveSpec::Kind;

    auto dist = [&]() -> const DiscreteDistribution& {
        if (!dist_cache) dist_cache = return_distribution(*market_, x);
        return *dist_cache;
    };
    auto dist_moment = [&](int ell) {
        const auto& d = dist();
        const double mu = d.mean();
        double m = 0.0;
        for (std::size_t k = 0; k < d.size(); ++k) {
            double term = d.masses()[k];
            for (int e = 0; e < ell; ++e) term *= d.support()[k] - mu;
            m += term;
        }
        return m;
    };
    auto standardized_sq = [&](int ell) {
        const double var = dist_moment(2);
        if (var < 1e-12) {
            if (spec.degenerate_policy() == ObjectiveSpec::DegeneratePolicy::Error) {
                throw DegenerateDistribution("objective '" + spec.label() +
                                             "' undefined: zero variance");
            }
            return 0.0;
        }
        const double m = dist_moment(ell);
        if (ell == 3) return (m * m) / (var * var * var);
        const double kurt = m / (var * var) - 3.0;
        return kurt * kurt;
    };

    switch (spec.kind()) {
    case Kind::ExpectedReturn: return expected_return(*market_, x);
    case Kind::Variance: return dist_moment(2);
    case Kind::CentralMoment: return dist_moment(spec.order());
    case Kind::SkewSquared: return standardized_sq(3);
    case Kind::KurtSquared: return standardized_sq(4);
    case Kind::SDCurve: return sd_integral(dist(), spec.order(), spec.threshold());
    case Kind::KernelColumn: return kernel_->f(vertex_index(x), spec.index());
    case Kind::KernelRow: return kernel_->f(spec.index(), vertex_index(x));
    case Kind::Custom: return spec.fn_(x);
    }
    throw ValidationError("unknown objective kind");
}

std::vector<double> PreorderInstance::evaluate(const Portfolio& x) const {
    std::vector<double> values;
    values.reserve(objective_count());
    std::optional<DiscreteDistribution> dist_cache;
    for (const auto& s : u_family_) values.push_back(evaluate_one(s, x, dist_cache));
    for (const auto& s : v_family_) values.push_back(evaluate_one(s, x, dist_cache));
    return values;
}

std::string PreorderInstance::objective_label(std::size_t i) const {
    if (i < u_family_.size()) return "u" + std::to_string(i + 1) + "_" + u_family_[i].label();
    const std::size_t j = i - u_family_.size();
    return "v" + std::to_string(j + 1) + "_" + v_family_[j].label();
}

DominanceVerdict relate(const PreorderInstance& preorder, const Portfolio& x, const Portfolio& y) {
    const auto fx = preorder.evaluate(x);
    const auto fy = preorder.evaluate(y);
    return classify_values(fx, fy, preorder.u_family().size(), preorder.epsilon());
}

std::vector<std::size_t> canonical_ranks(const std::vector<Portfolio>& candidates) {
    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(
            candidates[a].weights().begin(), candidates[a].weights().end(),
            candidates[b].weights().begin(), candidates[b].weights().end());
    });
    std::vector<std::size_t> rank(candidates.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) rank[order[pos]] = pos;
    return rank;
}

namespace {

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(count));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < count; i += workers) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

struct EvaluatedSet {
    std::vector<std::vector<double>> values;
    std::size_t u_count = 0;
    double eps = 0.0;

    DominanceVerdict classify(std::size_t i, std::size_t j) const {
        return classify_values(values[i], values[j], u_count, eps);
    }
};

EvaluatedSet evaluate_all(const PreorderInstance& preorder,
                          const std::vector<Portfolio>& candidates, unsigned threads = 1) {
    EvaluatedSet set;
    set.values.resize(candidates.size());
    set.u_count = preorder.u_family().size();
    set.eps = preorder.epsilon();
    parallel_for(candidates.size(), threads,
                 [&](std::size_t i) { set.values[i] = preorder.evaluate(candidates[i]); });
    return set;
}

// Preference order on objective vectors used only for deterministic
// tie-breaking: the first coordinate that differs decides, in its family's
// direction. Exact comparisons keep the choice schedule-independent.
bool objective_lex_better(const std::vector<double>& a, const std::vector<double>& b,
                          std::size_t u_count) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == b[i]) continue;
        return i < u_count ? a[i] > b[i] : a[i] < b[i];
    }
    return false;
}

// One greedy improvement sweep: the strict dominator with the best objective
// vector, canonical rank deciding exact ties. Returns nothing if i is maximal.
std::optional<std::size_t> best_strict_dominator(const EvaluatedSet& set,
                                                 const std::vector<double>& from,
                                                 const std::vector<std::size_t>& rank) {
    std::optional<std::size_t> best;
    for (std::size_t j = 0; j < set.values.size(); ++j) {
        if (classify_values(from, set.values[j], set.u_count, set.eps).relation !=
            Relation::XBelowYStrict) {
            continue;
        }
        if (!best) {
            best = j;
        } else if (objective_lex_better(set.values[j], set.values[*best], set.u_count) ||
                   (set.values[j] == set.values[*best] && rank[j] < rank[*best])) {
            best = j;
        }
    }
    return best;
}

std::vector<std::size_t> ascend_indices(const EvaluatedSet& set,
                                        const std::vector<double>& start_values,
                                        const std::vector<std::size_t>& rank,
                                        std::size_t step_limit) {
    std::vector<std::size_t> path;
    const std::vector<double>* current = &start_values;
    while (auto next = best_strict_dominator(set, *current, rank)) {
        path.push_back(*next);
        current = &set.values[*next];
        if (path.size() > step_limit) {
            throw ComputationError("dominator ascent did not terminate; "
                                   "objective gaps are inside the tolerance band");
        }
    }
    return path;
}

} // namespace

bool is_maximal(const PreorderInstance& preorder, const Portfolio& x,
                const std::vector<Portfolio>& candidates) {
    const auto fx = preorder.evaluate(x);
    for (const auto& y : candidates) {
        const auto fy = preorder.evaluate(y);
        if (classify_values(fx, fy, preorder.u_family().size(), preorder.epsilon()).relation ==
            Relation::XBelowYStrict) {
            return false;
        }
    }
    return true;
}

bool is_markowitz_efficient(const PreorderInstance& preorder, const Portfolio& x,
                            const std::vector<Portfolio>& candidates) {
    if (preorder.u_family().size() != 1 || preorder.v_family().size() != 1) {
        throw ValidationError("classical efficiency needs exactly one u and one v objective");
    }
    const double eps = preorder.epsilon();
    const auto fx = preorder.evaluate(x);
    const double ux = fx[0], vx = fx[1];

    // u(x) attains the max over {v(y) <= v(x)}, and v(x) the min over
    // {u(y) >= u(x)}, all inequalities eps-relaxed.
    for (const auto& y : candidates) {
        const auto fy = preorder.evaluate(y);
        if (eps_leq(fy[1], vx, eps) && eps_lt(ux, fy[0], eps)) return false;
        if (eps_leq(ux, fy[0], eps) && eps_lt(fy[1], vx, eps)) return false;
    }
    return true;
}

FrontierResult maximal_set(const PreorderInstance& preorder,
                           const std::vector<Portfolio>& candidates, unsigned threads) {
    if (candidates.empty()) throw ValidationError("maximal_set needs at least one candidate");
    const auto set = evaluate_all(preorder, candidates, threads);
    const auto rank = canonical_ranks(candidates);
    const std::size_t n = candidates.size();

    std::vector<char> maximal(n, 1);
    parallel_for(n, threads, [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (set.classify(i, j).relation == Relation::XBelowYStrict) {
                maximal[i] = 0;
                return;
            }
        }
    });

    FrontierResult result;
    result.dominator.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (maximal[i]) result.maximal_indices.push_back(i);
    }
    parallel_for(n, threads, [&](std::size_t i) {
        if (maximal[i]) return;
        const auto path = ascend_indices(set, set.values[i], rank, n);
        result.dominator[i] = path.back();
    });
    return result;
}

AscentResult ascend_to_maximal(const PreorderInstance& preorder, const Portfolio& x,
                               const std::vector<Portfolio>& candidates) {
    const auto set = evaluate_all(preorder, candidates);
    const auto rank = canonical_ranks(candidates);
    const auto start = preorder.evaluate(x);
    const auto path = ascend_indices(set, start, rank, candidates.size());

    AscentResult result{x, {x}};
    for (std::size_t idx : path) result.path.push_back(candidates[idx]);
    result.maximal = result.path.back();
    return result;
}

bool verify_chain(const PreorderInstance& preorder, const std::vector<Portfolio>& subset) {
    if (subset.empty()) throw ValidationError("chain must be nonempty");
    const auto set = evaluate_all(preorder, subset);
    for (std::size_t i = 0; i < subset.size(); ++i) {
        for (std::size_t j = i + 1; j < subset.size(); ++j) {
            if (set.classify(i, j).relation == Relation::Incomparable) return false;
        }
    }
    return true;
}

namespace {

// Ascending positions whose value is within eps of the extremum, plus the
// complement.
void split_attainment(const std::vector<double>& values, double extremum, bool is_max, double eps,
                      std::vector<std::size_t>& attain, std::vector<std::size_t>& rest) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double gap = is_max ? extremum - values[i] : values[i] - extremum;
        if (gap <= eps) {
            attain.push_back(i);
        } else {
            rest.push_back(i);
        }
    }
}

bool subset_of(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<std::size_t> intersect(const std::vector<std::size_t>& a,
                                   const std::vector<std::size_t>& b) {
    std::vector<std::size_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace

ChainReport chain_report(const PreorderInstance& preorder, const std::vector<Portfolio>& chain) {
    if (!verify_chain(preorder, chain)) throw NotAChain("portfolio list is not a chain");
    const auto set = evaluate_all(preorder, chain);
    const double eps = preorder.epsilon();
    const std::size_t k = chain.size();
    const std::size_t nu = preorder.u_family().size();
    const std::size_t nv = preorder.v_family().size();

    ChainReport report;
    report.chain.resize(k);
    std::iota(report.chain.begin(), report.chain.end(), std::size_t{0});

    // Column extractor over the evaluated matrix.
    auto column = [&](std::size_t obj) {
        std::vector<double> col(k);
        for (std::size_t i = 0; i < k; ++i) col[i] = set.values[i][obj];
        return col;
    };

    // The paper's per-index records pair one u with one v; with families kept
    // as separate lists every (u, v) combination forms a record, and a record
    // carries only one side when the other family is empty.
    auto make_record = [&](std::optional<std::size_t> ui, std::optional<std::size_t> vi) {
        ChainObjectiveRecord rec;
        if (ui) {
            rec.u_index = ui;
            const auto col = column(*ui);
            rec.max_value = *std::max_element(col.begin(), col.end());
            split_attainment(col, rec.max_value, true, eps, rec.attain_max, rec.below_max);
        }
        if (vi) {
            rec.v_index = vi;
            const auto col = column(nu + *vi);
            rec.min_value = *std::min_element(col.begin(), col.end());
            split_attainment(col, rec.min_value, false, eps, rec.attain_min, rec.above_min);
        }
        if (ui && vi) {
            rec.lemma_i = subset_of(rec.attain_min, rec.attain_max) ||
                          subset_of(rec.attain_max, rec.attain_min);
        }
        return rec;
    };

    if (nu > 0 && nv > 0) {
        for (std::size_t p = 0; p < nu; ++p) {
            for (std::size_t q = 0; q < nv; ++q) report.records.push_back(make_record(p, q));
        }
    } else if (nu > 0) {
        for (std::size_t p = 0; p < nu; ++p) report.records.push_back(make_record(p, std::nullopt));
    } else {
        for (std::size_t q = 0; q < nv; ++q) {
            report.records.push_back(make_record(std::nullopt, q));
        }
    }

    for (const auto& rec : report.records) report.lemma_i_holds = report.lemma_i_holds && rec.lemma_i;

    // Intersection of the two attainment sets (or the single present one).
    auto core = [&](const ChainObjectiveRecord& rec) {
        if (rec.u_index && rec.v_index) return intersect(rec.attain_max, rec.attain_min);
        return rec.u_index ? rec.attain_max : rec.attain_min;
    };
    std::vector<std::vector<std::size_t>> cores;
    cores.reserve(report.records.size());
    for (const auto& rec : report.records) cores.push_back(core(rec));

    for (std::size_t i = 0; i < cores.size(); ++i) {
        for (std::size_t j = i + 1; j < cores.size(); ++j) {
            const bool nested = subset_of(cores[i], cores[j]) || subset_of(cores[j], cores[i]);
            report.lemma_ii_pairs.push_back(nested);
            report.lemma_ii_holds = report.lemma_ii_holds && nested;
        }
    }

    report.nesting_order.resize(cores.size());
    std::iota(report.nesting_order.begin(), report.nesting_order.end(), std::size_t{0});
    std::stable_sort(report.nesting_order.begin(), report.nesting_order.end(),
                     [&](std::size_t a, std::size_t b) { return cores[a].size() < cores[b].size(); });

    // Every prefix intersection of the cores must equal one of the halves
    // contributing to it.
    std::vector<std::size_t> running(k);
    std::iota(running.begin(), running.end(), std::size_t{0});
    for (std::size_t i = 0; i < report.records.size() && report.corollary_holds; ++i) {
        running = intersect(running, cores[i]);
        bool matched = false;
        for (std::size_t j = 0; j <= i && !matched; ++j) {
            const auto& rec = report.records[j];
            if (rec.u_index) matched = matched || running == rec.attain_max;
            if (rec.v_index) matched = matched || running == rec.attain_min;
        }
        report.corollary_holds = matched;
    }
    return report;
}

Portfolio chain_upper_bound(const PreorderInstance& preorder,
                            const std::vector<Portfolio>& chain) {
    if (!verify_chain(preorder, chain)) throw NotAChain("portfolio list is not a chain");
    const auto set = evaluate_all(preorder, chain);
    const auto rank = canonical_ranks(chain);

    std::optional<std::size_t> best;
    for (std::size_t b = 0; b < chain.size(); ++b) {
        bool upper = true;
        for (std::size_t y = 0; y < chain.size() && upper; ++y) {
            if (y == b) continue;
            const auto rel = set.classify(y, b).relation;
            upper = rel == Relation::EquivalentE || rel == Relation::XBelowYStrict;
        }
        if (upper && (!best || rank[b] < rank[*best])) best = b;
    }
    if (!best) {
        // A finite chain always has a greatest element; reaching this means
        // the tolerance band broke transitivity.
        throw ComputationError("chain has no greatest element within tolerance");
    }
    return chain[*best];
}

} // namespace prefront
