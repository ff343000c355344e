#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "prefront/domain.hpp"
#include "oracles.hpp"

using namespace prefront;

TEST_CASE("simplex_grid enumerates compositions") {
    CHECK(simplex_grid(3, 2).size() == 6);
    CHECK(simplex_grid(1, 7).size() == 1);
    CHECK(simplex_grid(1, 7)[0].weights() == std::vector<double>{1.0});

    const auto line = simplex_grid(2, 4);
    REQUIRE(line.size() == 5);
    CHECK(line[0].weights() == std::vector<double>{1.0, 0.0});
    CHECK(line[1].weights() == std::vector<double>{0.75, 0.25});
    CHECK(line[2].weights() == std::vector<double>{0.5, 0.5});
    CHECK(line[3].weights() == std::vector<double>{0.25, 0.75});
    CHECK(line[4].weights() == std::vector<double>{0.0, 1.0});

    // Count formula and uniqueness on a bigger instance.
    const auto grid = simplex_grid(4, 6);
    CHECK(grid.size() == 84);   // C(9, 3)
    std::set<std::vector<double>> seen;
    for (const auto& p : grid) seen.insert(p.weights());
    CHECK(seen.size() == grid.size());

    CHECK_THROWS_AS(simplex_grid(0, 1), ValidationError);
    CHECK_THROWS_AS(simplex_grid(3, 0), ValidationError);
    CHECK_THROWS_AS(simplex_grid(50, 50), ComputationError);   // cap overflow
}

TEST_CASE("ball_grid covers the hyperplane disc") {
    const auto spec = DomainSpec::ball({0.5, 0.5}, std::sqrt(2.0) / 2.0);
    const auto grid = ball_grid(spec, 2);
    auto contains = [&](std::vector<double> w) {
        return std::any_of(grid.begin(), grid.end(), [&](const Portfolio& p) {
            return std::abs(p[0] - w[0]) < 1e-12 && std::abs(p[1] - w[1]) < 1e-12;
        });
    };
    CHECK(grid.size() == 5);   // k in {-2..2} on one axis
    CHECK(contains({1.0, 0.0}));
    CHECK(contains({0.0, 1.0}));
    CHECK(contains({0.5, 0.5}));

    // Vanishing radius keeps only the center.
    const auto tiny = ball_grid(DomainSpec::ball({0.5, 0.5}, 1e-12), 3);
    CHECK(tiny.size() == 1);
    CHECK(tiny[0].weights()[0] == doctest::Approx(0.5));

    // Every lattice point stays on the hyperplane.
    const auto spec3 = DomainSpec::ball({0.2, 0.3, 0.5}, 0.8);
    for (const auto& p : ball_grid(spec3, 3)) {
        double sum = 0.0;
        for (double w : p.weights()) sum += w;
        CHECK(std::abs(sum - 1.0) <= 1e-9);
    }

    CHECK_THROWS_AS(DomainSpec::ball({0.6, 0.6}, 1.0), ValidationError);
    CHECK_THROWS_AS(DomainSpec::ball({0.5, 0.5}, 0.0), ValidationError);
    CHECK_THROWS_AS(ball_grid(DomainSpec::ball({0.5, 0.5}, 1.0), 2000000000), ComputationError);
}

TEST_CASE("growing the candidate set can only improve the frontier") {
    const auto market = build_market({0.5, 0.5}, {{1, 1}, {0, 4}, {0, 2}});
    const auto preorder = PreorderInstance({ObjectiveSpec::expected_return()},
                                           {ObjectiveSpec::variance()}, market);
    const auto simplex = simplex_grid(3, 4);
    // A ball wide enough to contain the whole simplex.
    auto enlarged = simplex;
    for (const auto& p : ball_grid(DomainSpec::ball({1.0 / 3, 1.0 / 3, 1.0 / 3}, 1.2), 4)) {
        enlarged.push_back(p);
    }

    const auto small = maximal_set(preorder, simplex);
    const auto large = maximal_set(preorder, enlarged);
    for (std::size_t i : small.maximal_indices) {
        // Same index in the enlarged set: the simplex points come first.
        const bool still_maximal = !large.dominator[i].has_value();
        if (!still_maximal) {
            const std::size_t d = *large.dominator[i];
            CHECK_FALSE(large.dominator[d].has_value());   // dominator is maximal
            CHECK(relate(preorder, enlarged[i], enlarged[d]).relation ==
                  Relation::XBelowYStrict);
        }
    }
}

TEST_CASE("random_sample is reproducible and valid") {
    const auto spec = DomainSpec::simplex(3);
    const auto a = random_sample(spec, 200, 12345);
    const auto b = random_sample(spec, 200, 12345);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].weights() == b[i].weights());
    CHECK(random_sample(spec, 200, 54321)[0].weights() != a[0].weights());

    for (const auto& p : random_sample(spec, 1000, 777)) {
        double sum = 0.0;
        for (double w : p.weights()) {
            CHECK(w >= 0.0);
            sum += w;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-9);
    }

    // Symmetry of the uniform simplex measure.
    const auto big = random_sample(spec, 10000, 2024);
    std::vector<double> mean(3, 0.0);
    for (const auto& p : big) {
        for (std::size_t i = 0; i < 3; ++i) mean[i] += p[i];
    }
    for (double& m : mean) m /= static_cast<double>(big.size());
    for (double m : mean) CHECK(std::abs(m - 1.0 / 3.0) <= 0.02);

    CHECK_THROWS_AS(random_sample(spec, 0, 1), ValidationError);
}

TEST_CASE("ball sampling stays in the disc and fails loudly when it cannot") {
    const auto spec = DomainSpec::ball({0.5, 0.25, 0.25}, 0.6);
    for (const auto& p : random_sample(spec, 500, 99)) {
        double sum = 0.0, d2 = 0.0;
        for (std::size_t i = 0; i < 3; ++i) {
            sum += p[i];
            const double d = p[i] - spec.center[i];
            d2 += d * d;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-9);
        CHECK(std::sqrt(d2) <= 0.6 + 1e-12);
    }

    // In 29 hyperplane dimensions the disc occupies a vanishing share of the
    // sampling cube, so rejection hits its attempt limit.
    std::vector<double> center(30, 1.0 / 30.0);
    const auto degenerate = DomainSpec::ball(std::move(center), 0.5);
    CHECK_THROWS_AS(random_sample(degenerate, 1, 7), ComputationError);
}

TEST_CASE("build_preorder presets") {
    const auto market = build_market({0.5, 0.5}, {{1, 1}, {0, 4}});
    const auto grid = simplex_grid(2, 4);

    ObjectiveConfig config;
    config.preset = "markowitz";
    const auto mk = build_preorder(config, market);
    REQUIRE(mk.u_family().size() == 1);
    REQUIRE(mk.v_family().size() == 1);
    CHECK(mk.u_family()[0].kind() == ObjectiveSpec::Kind::ExpectedReturn);
    CHECK(mk.v_family()[0].kind() == ObjectiveSpec::Kind::Variance);

    config.preset = "skew-kurt";
    const auto sk = build_preorder(config, market);
    REQUIRE(sk.v_family().size() == 3);
    CHECK(sk.v_family()[1].kind() == ObjectiveSpec::Kind::SkewSquared);
    CHECK(sk.v_family()[2].kind() == ObjectiveSpec::Kind::KurtSquared);

    config.preset = "utility";
    const auto util = build_preorder(config, market);
    CHECK(util.u_family().size() == 1);
    CHECK(util.v_family().empty());

    config.preset = "sd-2";
    CHECK_THROWS_AS(build_preorder(config, market), ValidationError);   // needs candidates
    const auto sd = build_preorder(config, market, &grid);
    CHECK(sd.u_family().empty());
    CHECK(sd.v_family().size() > grid.size());   // support points, midpoints, margins
    for (const auto& s : sd.v_family()) {
        CHECK(s.kind() == ObjectiveSpec::Kind::SDCurve);
        CHECK(s.order() == 2);
    }

    config.preset = "markowitz-sd-3";
    const auto mksd = build_preorder(config, market, &grid);
    CHECK(mksd.u_family().size() == 1);
    CHECK(mksd.v_family()[0].kind() == ObjectiveSpec::Kind::Variance);
    CHECK(mksd.v_family()[1].order() == 3);

    config.preset = "nonsense";
    CHECK_THROWS_AS(build_preorder(config, market), ValidationError);
    config.preset = "sd-x";
    CHECK_THROWS_AS(build_preorder(config, market, &grid), ValidationError);

    config.preset.clear();
    CHECK_THROWS_AS(build_preorder(config, market), ValidationError);   // nothing specified
}

TEST_CASE("preset objective values agree with the market module") {
    const auto market = build_market({0.5, 0.5}, {{1, 1}, {0, 4}});
    ObjectiveConfig config;
    config.preset = "skew-kurt";
    const auto preorder = build_preorder(config, market);
    const Portfolio x({0.25, 0.75});
    const auto values = preorder.evaluate(x);
    REQUIRE(values.size() == 4);
    CHECK(values[0] == doctest::Approx(expected_return(market, x)).epsilon(1e-15));
    CHECK(values[1] == doctest::Approx(variance(market, x)).epsilon(1e-15));
    const double skew = skewness(market, x);
    const double kurt = excess_kurtosis(market, x);
    CHECK(values[2] == doctest::Approx(skew * skew).epsilon(1e-12));
    CHECK(values[3] == doctest::Approx(kurt * kurt).epsilon(1e-12));
}

TEST_CASE("sd preset thresholds cover every distribution change point") {
    const auto market = build_market({0.5, 0.5}, {{1, 1}, {0, 4}});
    const auto grid = simplex_grid(2, 2);
    ObjectiveConfig config;
    config.preset = "sd-1";
    const auto preorder = build_preorder(config, market, &grid);

    std::set<double> thresholds;
    for (const auto& s : preorder.v_family()) thresholds.insert(s.threshold());
    for (const auto& c : grid) {
        for (double s : return_distribution(market, c).support()) {
            CHECK(thresholds.count(s) == 1);
        }
    }
}
