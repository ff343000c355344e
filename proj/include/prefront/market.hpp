#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "prefront/errors.hpp"

namespace prefront {

/// Finite scenario market: m scenarios with probabilities and one return
/// column per scenario for each of n assets. returns[i][j] is the return of
/// asset i in scenario j, per unit of wealth.
struct ScenarioMarket {
    std::size_t asset_count = 0;
    std::size_t scenario_count = 0;
    std::vector<double> probabilities;            // size scenario_count
    std::vector<std::vector<double>> returns;     // asset_count x scenario_count

    /// Expected return of a single asset.
    double asset_mean(std::size_t asset) const;
};

/// Validates dimensions and probabilities and renormalizes the probability
/// vector exactly (division by its sum). Probabilities must be nonnegative
/// and sum to 1 within 1e-9 before renormalization.
ScenarioMarket build_market(std::vector<double> probabilities,
                            std::vector<std::vector<double>> returns);

/// Ball domain in the hyperplane sum(x) = 1, allowing bounded short sales.
struct BallDomain {
    std::vector<double> center;   // must lie on the hyperplane
    double radius = 0.0;          // > 0
};

/// Weight vector over n assets. Weights sum to 1 within 1e-9. Simplex
/// portfolios have nonnegative weights (within -1e-12); ball portfolios stay
/// within Euclidean distance radius + 1e-12 of the ball center.
class Portfolio {
public:
    enum class DomainKind { Simplex, Ball };

    explicit Portfolio(std::vector<double> weights);
    Portfolio(std::vector<double> weights, BallDomain ball);

    const std::vector<double>& weights() const { return weights_; }
    std::size_t size() const { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }
    DomainKind domain_kind() const { return kind_; }
    const BallDomain* ball() const { return ball_.get(); }

private:
    std::vector<double> weights_;
    DomainKind kind_;
    std::shared_ptr<const BallDomain> ball_;   // set for ball portfolios only
};

bool operator==(const Portfolio& a, const Portfolio& b);

/// Distribution of a discrete real random variable: strictly increasing
/// support, positive masses summing to 1 within 1e-12.
class DiscreteDistribution {
public:
    DiscreteDistribution(std::vector<double> support, std::vector<double> masses);

    /// Builds a canonical distribution from unsorted outcome/probability
    /// pairs. Values within merge_tol of a group's first value are merged
    /// (masses aggregated); zero-mass outcomes are dropped.
    static DiscreteDistribution from_samples(const std::vector<double>& values,
                                             const std::vector<double>& masses,
                                             double merge_tol = 1e-12);

    const std::vector<double>& support() const { return support_; }
    const std::vector<double>& masses() const { return masses_; }
    std::size_t size() const { return support_.size(); }
    double mean() const;

private:
    DiscreteDistribution() = default;
    std::vector<double> support_;
    std::vector<double> masses_;
};

bool operator==(const DiscreteDistribution& a, const DiscreteDistribution& b);

/// Distribution of the portfolio return: per-scenario weighted sums of the
/// asset returns, with equal outcomes merged.
DiscreteDistribution return_distribution(const ScenarioMarket& market, const Portfolio& x,
                                         double merge_tol = 1e-12);

/// Expected portfolio return, computed as the weight-mean dot product.
double expected_return(const ScenarioMarket& market, const Portfolio& x);

/// ell-th central moment of the portfolio return, ell >= 2.
double central_moment(const ScenarioMarket& market, const Portfolio& x, int ell);

/// Second central moment; always nonnegative.
double variance(const ScenarioMarket& market, const Portfolio& x);

/// Third standardized central moment. Throws DegenerateDistribution when the
/// variance falls below eps_var.
double skewness(const ScenarioMarket& market, const Portfolio& x, double eps_var = 1e-12);

/// Fourth standardized central moment minus 3. Same degeneracy rule as
/// skewness.
double excess_kurtosis(const ScenarioMarket& market, const Portfolio& x, double eps_var = 1e-12);

/// Left-continuous CDF value: total mass strictly below t.
double cdf_value(const DiscreteDistribution& dist, double t);

/// Iterated CDF integral. ell = 1 is the CDF itself; for ell >= 2 the closed
/// form sum_k m_k * max(t - s_k, 0)^(ell-1) / (ell-1)! of the recursive
/// integral of the CDF.
double sd_integral(const DiscreteDistribution& dist, int ell, double t);

/// Outcome of comparing the order-ell integrated CDF curves of two
/// distributions over all t.
enum class SdVerdict {
    Equal,
    YDominates,           // weak dominance, strict gap nowhere beyond tolerance
    YDominatesStrictly,
    XDominates,
    XDominatesStrictly,
    Incomparable,
};

const char* to_string(SdVerdict v);

/// Stochastic-dominance comparison of order ell.
///
/// Exactness: ell = 1 compares the step CDFs at every union-support point and
/// its right limit (exact); ell = 2 compares the piecewise-linear curves at
/// all breakpoints plus the constant tail, which equals the mean difference
/// (exact); ell >= 3 additionally samples samples_per_interval interior
/// points per breakpoint interval and a finite tail segment, and resolves the
/// asymptotic tail sign from raw-moment differences (approximation: a sign
/// change strictly between sample points can be missed).
///
/// With tolerance = 0 (default) comparisons are exact and the weak verdicts
/// cannot occur; a positive tolerance treats gaps within it as ties, making
/// YDominates/XDominates reachable for curves that differ only below it.
SdVerdict sd_compare(const DiscreteDistribution& dist_x, const DiscreteDistribution& dist_y,
                     int ell, int samples_per_interval = 16, double tolerance = 0.0);

} // namespace prefront
