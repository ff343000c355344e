#include "prefront/market.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace prefront {

namespace {

constexpr double kProbSumTol = 1e-9;
constexpr double kWeightSumTol = 1e-9;
constexpr double kSimplexTol = 1e-12;
constexpr double kBallTol = 1e-12;

double ipow(double base, int exp) {
    double r = 1.0;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= static_cast<double>(i);
    return r;
}

std::string describe(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

double ScenarioMarket::asset_mean(std::size_t asset) const {
    const auto& row = returns[asset];
    double m = 0.0;
    for (std::size_t j = 0; j < scenario_count; ++j) m += probabilities[j] * row[j];
    return m;
}

ScenarioMarket build_market(std::vector<double> probabilities,
                            std::vector<std::vector<double>> returns) {
    if (returns.empty()) throw ValidationError("market needs at least one asset");
    if (probabilities.empty()) throw ValidationError("market needs at least one scenario");
    const std::size_t m = probabilities.size();
    for (std::size_t i = 0; i < returns.size(); ++i) {
        if (returns[i].size() != m) {
            throw ValidationError("asset " + std::to_string(i + 1) + " has " +
                                  std::to_string(returns[i].size()) + " returns, expected " +
                                  std::to_string(m));
        }
    }
    double sum = 0.0;
    for (double p : probabilities) {
        if (p < 0.0) throw ValidationError("negative probability " + describe(p));
        sum += p;
    }
    if (std::abs(sum - 1.0) > kProbSumTol) {
        throw ValidationError("probabilities sum to " + describe(sum) + ", expected 1");
    }
    for (double& p : probabilities) p /= sum;

    ScenarioMarket market;
    market.asset_count = returns.size();
    market.scenario_count = m;
    market.probabilities = std::move(probabilities);
    market.returns = std::move(returns);
    return market;
}

namespace {

void check_weight_sum(const std::vector<double>& w) {
    if (w.empty()) throw ValidationError("portfolio needs at least one weight");
    double sum = std::accumulate(w.begin(), w.end(), 0.0);
    if (std::abs(sum - 1.0) > kWeightSumTol) {
        throw ValidationError("portfolio weights sum to " + describe(sum) + ", expected 1");
    }
}

} // namespace

Portfolio::Portfolio(std::vector<double> weights)
    : weights_(std::move(weights)), kind_(DomainKind::Simplex) {
    check_weight_sum(weights_);
    for (double w : weights_) {
        if (w < -kSimplexTol) {
            throw ValidationError("negative weight " + describe(w) + " in a simplex portfolio");
        }
    }
}

Portfolio::Portfolio(std::vector<double> weights, BallDomain ball)
    : weights_(std::move(weights)), kind_(DomainKind::Ball),
      ball_(std::make_shared<const BallDomain>(std::move(ball))) {
    check_weight_sum(weights_);
    if (ball_->center.size() != weights_.size()) {
        throw ValidationError("ball center dimension does not match portfolio");
    }
    double d2 = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        const double d = weights_[i] - ball_->center[i];
        d2 += d * d;
    }
    if (std::sqrt(d2) > ball_->radius + kBallTol) {
        throw ValidationError("portfolio lies outside the ball domain");
    }
}

bool operator==(const Portfolio& a, const Portfolio& b) {
    return a.weights() == b.weights();
}

DiscreteDistribution::DiscreteDistribution(std::vector<double> support,
                                           std::vector<double> masses)
    : support_(std::move(support)), masses_(std::move(masses)) {
    if (support_.empty() || support_.size() != masses_.size()) {
        throw ValidationError("distribution support/mass lengths invalid");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < support_.size(); ++k) {
        if (k > 0 && !(support_[k] > support_[k - 1])) {
            throw ValidationError("distribution support must be strictly increasing");
        }
        if (!(masses_[k] > 0.0)) throw ValidationError("distribution masses must be positive");
        sum += masses_[k];
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw ValidationError("distribution masses sum to " + describe(sum) + ", expected 1");
    }
}

DiscreteDistribution DiscreteDistribution::from_samples(const std::vector<double>& values,
                                                        const std::vector<double>& masses,
                                                        double merge_tol) {
    if (values.empty() || values.size() != masses.size()) {
        throw ValidationError("sample value/mass lengths invalid");
    }
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    DiscreteDistribution d;
    for (std::size_t idx : order) {
        const double v = values[idx];
        const double p = masses[idx];
        if (p < 0.0) throw ValidationError("negative sample mass " + describe(p));
        if (p == 0.0) continue;
        // merge against the group's first value so near-ties cannot drift
        if (!d.support_.empty() && v - d.support_.back() <= merge_tol) {
            d.masses_.back() += p;
        } else {
            d.support_.push_back(v);
            d.masses_.push_back(p);
        }
    }
    if (d.support_.empty()) throw ValidationError("all sample masses are zero");
    return d;
}

double DiscreteDistribution::mean() const {
    double m = 0.0;
    for (std::size_t k = 0; k < support_.size(); ++k) m += masses_[k] * support_[k];
    return m;
}

bool operator==(const DiscreteDistribution& a, const DiscreteDistribution& b) {
    return a.support() == b.support() && a.masses() == b.masses();
}

DiscreteDistribution return_distribution(const ScenarioMarket& market, const Portfolio& x,
                                         double merge_tol) {
    if (x.size() != market.asset_count) {
        throw ValidationError("portfolio has " + std::to_string(x.size()) +
                              " weights, market has " + std::to_string(market.asset_count) +
                              " assets");
    }
    std::vector<double> values(market.scenario_count, 0.0);
    for (std::size_t i = 0; i < market.asset_count; ++i) {
        const double w = x[i];
        if (w == 0.0) continue;
        const auto& row = market.returns[i];
        for (std::size_t j = 0; j < market.scenario_count; ++j) values[j] += w * row[j];
    }
    return DiscreteDistribution::from_samples(values, market.probabilities, merge_tol);
}

double expected_return(const ScenarioMarket& market, const Portfolio& x) {
    if (x.size() != market.asset_count) {
        throw ValidationError("portfolio/market dimension mismatch");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < market.asset_count; ++i) m += x[i] * market.asset_mean(i);
    return m;
}

namespace {

double dist_central_moment(const DiscreteDistribution& d, int ell) {
    const double mu = d.mean();
    double m = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
        m += d.masses()[k] * ipow(d.support()[k] - mu, ell);
    }
    return m;
}

} // namespace

double central_moment(const ScenarioMarket& market, const Portfolio& x, int ell) {
    if (ell < 2) throw ValidationError("central moment order must be >= 2");
    return dist_central_moment(return_distribution(market, x), ell);
}

double variance(const ScenarioMarket& market, const Portfolio& x) {
    return central_moment(market, x, 2);
}

double skewness(const ScenarioMarket& market, const Portfolio& x, double eps_var) {
    const DiscreteDistribution d = return_distribution(market, x);
    const double var = dist_central_moment(d, 2);
    if (var < eps_var) throw DegenerateDistribution("skewness undefined: variance below threshold");
    return dist_central_moment(d, 3) / std::pow(var, 1.5);
}

double excess_kurtosis(const ScenarioMarket& market, const Portfolio& x, double eps_var) {
    const DiscreteDistribution d = return_distribution(market, x);
    const double var = dist_central_moment(d, 2);
    if (var < eps_var) throw DegenerateDistribution("kurtosis undefined: variance below threshold");
    return dist_central_moment(d, 4) / (var * var) - 3.0;
}

double cdf_value(const DiscreteDistribution& dist, double t) {
    double mass = 0.0;
    for (std::size_t k = 0; k < dist.size() && dist.support()[k] < t; ++k) {
        mass += dist.masses()[k];
    }
    return mass;
}

double sd_integral(const DiscreteDistribution& dist, int ell, double t) {
    if (ell < 1) throw ValidationError("stochastic dominance order must be >= 1");
    if (ell == 1) return cdf_value(dist, t);
    const double scale = 1.0 / factorial(ell - 1);
    double sum = 0.0;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        const double gap = t - dist.support()[k];
        if (gap <= 0.0) break;   // support is increasing
        sum += dist.masses()[k] * ipow(gap, ell - 1);
    }
    return sum * scale;
}

const char* to_string(SdVerdict v) {
    switch (v) {
    case SdVerdict::Equal: return "equal";
    case SdVerdict::YDominates: return "y dominates";
    case SdVerdict::YDominatesStrictly: return "y dominates strictly";
    case SdVerdict::XDominates: return "x dominates";
    case SdVerdict::XDominatesStrictly: return "x dominates strictly";
    case SdVerdict::Incomparable: return "incomparable";
    }
    return "?";
}

namespace {

double mass_at_most(const DiscreteDistribution& d, double t) {
    double mass = 0.0;
    for (std::size_t k = 0; k < d.size() && d.support()[k] <= t; ++k) mass += d.masses()[k];
    return mass;
}

double raw_moment(const DiscreteDistribution& d, int r) {
    double m = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) m += d.masses()[k] * ipow(d.support()[k], r);
    return m;
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

struct SignAccumulator {
    bool strict_pos = false, strict_neg = false;   // beyond tolerance
    bool any_pos = false, any_neg = false;
    double tol;

    explicit SignAccumulator(double tolerance) : tol(tolerance) {}

    void add(double diff) {
        if (diff > 0.0) any_pos = true;
        if (diff < 0.0) any_neg = true;
        if (diff > tol) strict_pos = true;
        if (diff < -tol) strict_neg = true;
    }
};

// Sign of D_x - D_y for t past the last support point, where both curves are
// the same polynomial of degree ell-1 up to lower-order raw-moment terms.
double tail_leading_difference(const DiscreteDistribution& x, const DiscreteDistribution& y,
                               int ell) {
    const int deg = ell - 1;
    const double scale = 1.0 / factorial(deg);
    for (int j = deg - 1; j >= 0; --j) {
        const int r = deg - j;   // raw-moment order in the t^j coefficient
        const double coeff = binomial(deg, j) * (r % 2 == 0 ? 1.0 : -1.0) *
                             (raw_moment(x, r) - raw_moment(y, r)) * scale;
        if (coeff != 0.0) return coeff;
    }
    return 0.0;
}

} // namespace

SdVerdict sd_compare(const DiscreteDistribution& dist_x, const DiscreteDistribution& dist_y,
                     int ell, int samples_per_interval, double tolerance) {
    if (ell < 1) throw ValidationError("stochastic dominance order must be >= 1");
    if (samples_per_interval < 1) throw ValidationError("samples_per_interval must be >= 1");

    std::vector<double> points;
    points.reserve(dist_x.size() + dist_y.size());
    points.insert(points.end(), dist_x.support().begin(), dist_x.support().end());
    points.insert(points.end(), dist_y.support().begin(), dist_y.support().end());
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    SignAccumulator acc(tolerance);

    if (ell == 1) {
        // Step functions: the difference takes a new value at each union
        // support point and just past it; both evaluations make the check
        // exact.
        for (double t : points) {
            acc.add(cdf_value(dist_x, t) - cdf_value(dist_y, t));
            acc.add(mass_at_most(dist_x, t) - mass_at_most(dist_y, t));
        }
    } else {
        for (double t : points) acc.add(sd_integral(dist_x, ell, t) - sd_integral(dist_y, ell, t));
        if (ell == 2) {
            // Past the last breakpoint both curves are t - mean, so the
            // difference is constant; one comparison settles the whole tail.
            acc.add(dist_y.mean() - dist_x.mean());
        } else {
            const double span = points.back() - points.front();
            for (std::size_t i = 0; i + 1 < points.size(); ++i) {
                const double a = points[i], b = points[i + 1];
                for (int s = 1; s <= samples_per_interval; ++s) {
                    const double t = a + (b - a) * static_cast<double>(s) /
                                             static_cast<double>(samples_per_interval + 1);
                    acc.add(sd_integral(dist_x, ell, t) - sd_integral(dist_y, ell, t));
                }
            }
            const double ext = span > 0.0 ? 2.0 * span : 2.0;
            for (int s = 1; s <= samples_per_interval; ++s) {
                const double t = points.back() + ext * static_cast<double>(s) /
                                         static_cast<double>(samples_per_interval);
                acc.add(sd_integral(dist_x, ell, t) - sd_integral(dist_y, ell, t));
            }
            acc.add(tail_leading_difference(dist_x, dist_y, ell));
        }
    }

    // D_x >= D_y everywhere means y dominates x.
    if (acc.strict_pos && acc.strict_neg) return SdVerdict::Incomparable;
    if (acc.strict_pos) return SdVerdict::YDominatesStrictly;
    if (acc.strict_neg) return SdVerdict::XDominatesStrictly;
    if (acc.any_pos && acc.any_neg) return SdVerdict::Incomparable;
    if (acc.any_pos) return SdVerdict::YDominates;
    if (acc.any_neg) return SdVerdict::XDominates;
    return SdVerdict::Equal;
}

} // namespace prefront
