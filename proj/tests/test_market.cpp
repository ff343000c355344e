#include <doctest.h>

#include <cmath>
#include <random>

#include "prefront/market.hpp"
#include "oracles.hpp"

using namespace prefront;

namespace {

// Two equal-probability scenarios; asset 1 riskless at 1, asset 2 pays 0 or 4.
ScenarioMarket m0() { return build_market({0.5, 0.5}, {{1, 1}, {0, 4}}); }

} // namespace

TEST_CASE("build_market validates and renormalizes") {
    const auto market = m0();
    CHECK(market.asset_count == 2);
    CHECK(market.scenario_count == 2);
    CHECK(market.asset_mean(0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(market.asset_mean(1) == doctest::Approx(2.0).epsilon(1e-15));

    const auto single = build_market({1.0}, {{0.07}});
    CHECK(single.asset_mean(0) == doctest::Approx(0.07));

    CHECK_THROWS_AS(build_market({0.5, 0.6}, {{1, 1}}), ValidationError);
    CHECK_THROWS_AS(build_market({-0.1, 1.1}, {{1, 1}}), ValidationError);
    CHECK_THROWS_AS(build_market({0.5, 0.5}, {{1, 1}, {0}}), ValidationError);
    CHECK_THROWS_AS(build_market({}, {{}}), ValidationError);
    CHECK_THROWS_AS(build_market({1.0}, {}), ValidationError);

    // Renormalization makes the stored probabilities sum to 1 exactly enough
    // for the distribution invariant downstream.
    const auto skewed = build_market({0.3 + 1e-10, 0.7}, {{1, 2}});
    double sum = 0.0;
    for (double p : skewed.probabilities) sum += p;
    CHECK(std::abs(sum - 1.0) <= 1e-12);
}

TEST_CASE("portfolio validation") {
    CHECK_NOTHROW(Portfolio({0.5, 0.5}));
    CHECK_THROWS_AS(Portfolio({0.5, 0.4}), ValidationError);
    CHECK_THROWS_AS(Portfolio({1.5, -0.5}), ValidationError);

    const BallDomain ball{{0.5, 0.5}, 1.0};
    CHECK_NOTHROW(Portfolio({1.2, -0.2}, ball));
    CHECK_THROWS_AS(Portfolio({1.6, -0.6}, ball), ValidationError);   // outside radius
    CHECK_THROWS_AS(Portfolio({0.6, 0.6}, ball), ValidationError);    // off the hyperplane
}

TEST_CASE("return_distribution merges equal outcomes") {
    const auto market = m0();

    const auto half = return_distribution(market, Portfolio({0.5, 0.5}));
    CHECK(half.support() == std::vector<double>{0.5, 2.5});
    CHECK(half.masses() == std::vector<double>{0.5, 0.5});

    const auto riskless = return_distribution(market, Portfolio({1, 0}));
    CHECK(riskless.support() == std::vector<double>{1.0});
    CHECK(riskless.masses() == std::vector<double>{1.0});

    const auto risky = return_distribution(market, Portfolio({0, 1}));
    CHECK(risky.support() == std::vector<double>{0.0, 4.0});

    CHECK_THROWS_AS(return_distribution(market, Portfolio({1.0})), ValidationError);
}

TEST_CASE("expected_return matches the distribution mean") {
    const auto market = m0();
    CHECK(expected_return(market, Portfolio({0.5, 0.5})) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(expected_return(market, Portfolio({1, 0})) == doctest::Approx(1.0).epsilon(1e-15));

    std::mt19937_64 rng(20250811);
    for (int trial = 0; trial < 50; ++trial) {
        const auto random = oracles::random_market(rng);
        // Unit vectors reproduce the per-asset means.
        for (std::size_t i = 0; i < random.asset_count; ++i) {
            std::vector<double> w(random.asset_count, 0.0);
            w[i] = 1.0;
            CHECK(expected_return(random, Portfolio(w)) ==
                  doctest::Approx(random.asset_mean(i)).epsilon(1e-12));
        }
        const auto cands = oracles::random_candidates(rng, random.asset_count, 5);
        for (const auto& x : cands) {
            const double via_means = expected_return(random, x);
            const double via_dist = return_distribution(random, x).mean();
            CHECK(std::abs(via_means - via_dist) <= 1e-12);
            CHECK(via_means ==
                  doctest::Approx(oracles::mean_oracle(random, x.weights())).epsilon(1e-12));
        }
    }
}

TEST_CASE("central moments") {
    const auto market = m0();
    const Portfolio half({0.5, 0.5});
    CHECK(central_moment(market, half, 2) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(central_moment(market, half, 3) == doctest::Approx(0.0));
    CHECK(central_moment(market, Portfolio({1, 0}), 4) == doctest::Approx(0.0));
    CHECK_THROWS_AS(central_moment(market, half, 1), ValidationError);

    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const auto random = oracles::random_market(rng);
        for (const auto& x : oracles::random_candidates(rng, random.asset_count, 4)) {
            for (int ell = 2; ell <= 4; ++ell) {
                const double got = central_moment(random, x, ell);
                const double want = oracles::central_moment_oracle(random, x.weights(), ell);
                CHECK(got == doctest::Approx(want).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("variance is the second central moment and nonnegative") {
    const auto market = m0();
    CHECK(variance(market, Portfolio({0, 1})) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(variance(market, Portfolio({1, 0})) == 0.0);
    CHECK(variance(market, Portfolio({0.5, 0.5})) == doctest::Approx(1.0).epsilon(1e-15));

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const auto random = oracles::random_market(rng);
        for (const auto& x : oracles::random_candidates(rng, random.asset_count, 4)) {
            const double v = variance(random, x);
            CHECK(v >= 0.0);
            CHECK(v == central_moment(random, x, 2));   // same path, exact
        }
    }
}

TEST_CASE("skewness") {
    const auto market = m0();
    CHECK(skewness(market, Portfolio({0.5, 0.5})) == doctest::Approx(0.0));
    CHECK_THROWS_AS(skewness(market, Portfolio({1, 0})), DegenerateDistribution);

    // {0 w.p. 0.75, 4 w.p. 0.25}: third moment 6, variance 3.
    const auto tilted = build_market({0.75, 0.25}, {{0, 4}});
    const Portfolio all({1.0});
    const double want = 6.0 / std::pow(3.0, 1.5);
    CHECK(skewness(tilted, all) == doctest::Approx(want).epsilon(1e-12));
    const double oracle = oracles::central_moment_oracle(tilted, {1.0}, 3) /
                          std::pow(oracles::central_moment_oracle(tilted, {1.0}, 2), 1.5);
    CHECK(skewness(tilted, all) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("excess kurtosis") {
    const auto market = m0();
    CHECK(excess_kurtosis(market, Portfolio({0.5, 0.5})) == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK_THROWS_AS(excess_kurtosis(market, Portfolio({1, 0})), DegenerateDistribution);

    // Symmetric two-point distributions at +-a have excess kurtosis -2 at any scale.
    for (double a : {0.001, 0.5, 3.0, 250.0}) {
        const auto two_point = build_market({0.5, 0.5}, {{-a, a}});
        CHECK(excess_kurtosis(two_point, Portfolio({1.0})) ==
              doctest::Approx(-2.0).epsilon(1e-12));
    }
}

TEST_CASE("skewness and kurtosis are invariant under positive affine rescaling") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        auto market = oracles::random_market(rng);
        const auto cands = oracles::random_candidates(rng, market.asset_count, 3);
        const double a = oracles::uniform(rng, 0.1, 5.0);
        const double b = oracles::uniform(rng, -2.0, 2.0);
        auto scaled = market;
        for (auto& row : scaled.returns) {
            for (double& r : row) r = a * r + b;
        }
        for (const auto& x : cands) {
            if (variance(market, x) < 1e-8) continue;   // keep clear of the degeneracy band
            CHECK(skewness(scaled, x) == doctest::Approx(skewness(market, x)).epsilon(1e-9));
            CHECK(excess_kurtosis(scaled, x) ==
                  doctest::Approx(excess_kurtosis(market, x)).epsilon(1e-9));
        }
    }
}

TEST_CASE("cdf_value is the left-continuous step function") {
    const DiscreteDistribution dist({0.5, 2.5}, {0.5, 0.5});
    CHECK(cdf_value(dist, 0.5) == 0.0);    // strict inequality excludes mass at t
    CHECK(cdf_value(dist, 1.0) == 0.5);
    CHECK(cdf_value(dist, 10.0) == 1.0);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const auto d = oracles::random_distribution(rng);
        double below = 0.0;
        for (std::size_t k = 0; k < d.size(); ++k) {
            CHECK(cdf_value(d, d.support()[k]) == below);   // value excludes the jump at s_k
            below += d.masses()[k];
        }
        CHECK(cdf_value(d, d.support().back() + 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("sd_integral closed form") {
    const DiscreteDistribution dist({0.5, 2.5}, {0.5, 0.5});
    CHECK(sd_integral(dist, 2, 3.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(sd_integral(dist, 2, 0.4) == 0.0);
    const DiscreteDistribution point({1.0}, {1.0});
    CHECK(sd_integral(point, 2, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(sd_integral(dist, 0, 1.0), ValidationError);

    // The tabulated example cross-checked against the recursion oracle.
    CHECK(sd_integral(dist, 2, 3.0) ==
          doctest::Approx(oracles::sd_recursion_oracle(dist, 2, 3.0)).epsilon(1e-8));
}

TEST_CASE("sd_integral matches trapezoid integration of the recursion") {
    std::mt19937_64 rng(20240301);
    for (int trial = 0; trial < 15; ++trial) {
        const auto d = oracles::random_distribution(rng);
        const double span = d.support().back() - d.support().front();
        std::vector<double> probes = d.support();
        for (std::size_t k = 0; k + 1 < d.size(); ++k) {
            probes.push_back((d.support()[k] + d.support()[k + 1]) / 2.0);
        }
        probes.push_back(d.support().back() + std::max(span, 1.0) / 2.0);
        probes.push_back(d.support().back() + std::max(span, 1.0));
        for (int ell = 2; ell <= 4; ++ell) {
            for (double t : probes) {
                const double closed = sd_integral(d, ell, t);
                const double numeric = oracles::sd_recursion_oracle(d, ell, t);
                CHECK(std::abs(closed - numeric) <= 1e-6 * std::max(1e-12, std::abs(numeric)));
            }
        }
    }
}

TEST_CASE("sd_integral is nondecreasing and midpoint convex in t") {
    std::mt19937_64 rng(314);
    for (int trial = 0; trial < 30; ++trial) {
        const auto d = oracles::random_distribution(rng);
        const double lo = d.support().front() - 1.0;
        const double hi = d.support().back() + 1.0;
        for (int ell = 1; ell <= 4; ++ell) {
            double prev = -1.0;
            for (int i = 0; i <= 40; ++i) {
                const double t = lo + (hi - lo) * i / 40.0;
                const double v = sd_integral(d, ell, t);
                CHECK(v >= prev - 1e-12);
                prev = v;
            }
            if (ell < 2) continue;
            for (int i = 1; i < 40; ++i) {
                const double t = lo + (hi - lo) * i / 40.0;
                const double h = (hi - lo) / 80.0;
                const double mid = 2.0 * sd_integral(d, ell, t);
                CHECK(mid <= sd_integral(d, ell, t - h) + sd_integral(d, ell, t + h) + 1e-12);
            }
        }
    }
}

TEST_CASE("sd_compare verdicts") {
    const DiscreteDistribution point1({1.0}, {1.0});
    const DiscreteDistribution spread({0.0, 4.0}, {0.5, 0.5});
    const DiscreteDistribution point0({0.0}, {1.0});

    // CDFs cross: the point mass is safer low, the spread pays more high.
    CHECK(sd_compare(point1, spread, 1) == SdVerdict::Incomparable);
    CHECK(sd_compare(spread, spread, 1) == SdVerdict::Equal);
    CHECK(sd_compare(point0, point1, 1) == SdVerdict::YDominatesStrictly);
    CHECK(sd_compare(point1, point0, 1) == SdVerdict::XDominatesStrictly);
    CHECK_THROWS_AS(sd_compare(point0, point1, 0), ValidationError);

    // Same mean, different spread: second order ranks them, first order cannot.
    const DiscreteDistribution tight({1.9, 2.1}, {0.5, 0.5});
    const DiscreteDistribution wide({0.0, 4.0}, {0.5, 0.5});
    CHECK(sd_compare(tight, wide, 1) == SdVerdict::Incomparable);
    CHECK(sd_compare(wide, tight, 2) == SdVerdict::YDominatesStrictly);
    CHECK(sd_compare(tight, wide, 2) == SdVerdict::XDominatesStrictly);
    CHECK(sd_compare(wide, tight, 3) == SdVerdict::YDominatesStrictly);
}

TEST_CASE("first-order dominance implies mean dominance") {
    std::mt19937_64 rng(777);
    int dominated_pairs = 0;
    while (dominated_pairs < 100) {
        const auto base = oracles::random_distribution(rng);
        // Shift a copy upward so dominance actually occurs.
        std::vector<double> shifted = base.support();
        const double shift = oracles::uniform(rng, 0.0, 0.5);
        for (double& s : shifted) s += shift;
        const auto better = DiscreteDistribution::from_samples(shifted, base.masses());

        const auto verdict = sd_compare(base, better, 1);
        if (verdict == SdVerdict::YDominatesStrictly || verdict == SdVerdict::YDominates) {
            ++dominated_pairs;
            CHECK(better.mean() >= base.mean() - 1e-9);
        } else {
            CHECK(verdict == SdVerdict::Equal);   // zero shift
            ++dominated_pairs;
        }
    }
}

TEST_CASE("sd_compare is antisymmetric under argument swap") {
    std::mt19937_64 rng(31337);
    auto mirror = [](SdVerdict v) {
        switch (v) {
        case SdVerdict::YDominates: return SdVerdict::XDominates;
        case SdVerdict::YDominatesStrictly: return SdVerdict::XDominatesStrictly;
        case SdVerdict::XDominates: return SdVerdict::YDominates;
        case SdVerdict::XDominatesStrictly: return SdVerdict::YDominatesStrictly;
        default: return v;
        }
    };
    for (int trial = 0; trial < 60; ++trial) {
        const auto a = oracles::random_distribution(rng);
        const auto b = oracles::random_distribution(rng);
        for (int ell = 1; ell <= 3; ++ell) {
            CHECK(sd_compare(a, b, ell) == mirror(sd_compare(b, a, ell)));
        }
    }
}

TEST_CASE("distribution construction guards") {
    CHECK_THROWS_AS(DiscreteDistribution({2.0, 1.0}, {0.5, 0.5}), ValidationError);
    CHECK_THROWS_AS(DiscreteDistribution({1.0, 2.0}, {0.5, 0.4}), ValidationError);
    CHECK_THROWS_AS(DiscreteDistribution({1.0}, {0.0}), ValidationError);

    // Merging aggregates masses of near-equal values and drops zero masses.
    const auto merged =
        DiscreteDistribution::from_samples({1.0, 1.0 + 5e-13, 2.0}, {0.25, 0.25, 0.5});
    CHECK(merged.size() == 2);
    CHECK(merged.masses()[0] == doctest::Approx(0.5).epsilon(1e-15));
    const auto dropped = DiscreteDistribution::from_samples({1.0, 2.0}, {1.0, 0.0});
    CHECK(dropped.size() == 1);
}
