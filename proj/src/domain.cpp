#include "prefront/domain.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>

namespace prefront {

DomainSpec DomainSpec::simplex(std::size_t n) {
    if (n == 0) throw ValidationError("domain needs at least one asset");
    DomainSpec s;
    s.kind = Kind::Simplex;
    s.dimension = n;
    return s;
}

DomainSpec DomainSpec::ball(std::vector<double> center, double radius) {
    if (center.empty()) throw ValidationError("domain needs at least one asset");
    if (!(radius > 0.0)) throw ValidationError("ball radius must be positive");
    const double sum = std::accumulate(center.begin(), center.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-12) {
        throw ValidationError("ball center must lie on the hyperplane sum(x) = 1");
    }
    DomainSpec s;
    s.kind = Kind::Ball;
    s.dimension = center.size();
    s.center = std::move(center);
    s.radius = radius;
    return s;
}

namespace {

// C(n, k) with an early exit once the cap is crossed.
std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    double approx = 1.0;
    std::size_t exact = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        approx = approx * static_cast<double>(n - k + i) / static_cast<double>(i);
        if (approx > 2.0 * static_cast<double>(cap)) return cap + 1;
        exact = exact * (n - k + i) / i;   // divisible at each step
    }
    return exact;
}

// Orthonormal basis of {v : sum(v) = 0} from Gram-Schmidt over
// (e_1-e_n, ..., e_{n-1}-e_n), in that order.
std::vector<std::vector<double>> hyperplane_basis(std::size_t n) {
    std::vector<std::vector<double>> basis;
    basis.reserve(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::vector<double> v(n, 0.0);
        v[i] = 1.0;
        v[n - 1] = -1.0;
        for (const auto& b : basis) {
            double dot = 0.0;
            for (std::size_t j = 0; j < n; ++j) dot += v[j] * b[j];
            for (std::size_t j = 0; j < n; ++j) v[j] -= dot * b[j];
        }
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace

std::vector<Portfolio> simplex_grid(std::size_t n, std::size_t N, std::size_t cap) {
    if (n == 0 || N == 0) throw ValidationError("simplex grid needs n >= 1 and N >= 1");
    const std::size_t count = binomial_capped(N + n - 1, n - 1, cap);
    if (count > cap) {
        throw ComputationError("simplex grid would exceed the candidate cap of " +
                               std::to_string(cap));
    }

    std::vector<Portfolio> out;
    out.reserve(count);
    std::vector<std::size_t> parts(n, 0);
    // Assign k_i from the front, largest first, so the output is in
    // decreasing lexicographic order of the integer tuples.
    auto emit = [&]() {
        std::vector<double> w(n);
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = static_cast<double>(parts[i]) / static_cast<double>(N);
        }
        out.emplace_back(std::move(w));
    };
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
        if (i + 1 == n) {
            parts[i] = left;
            emit();
            return;
        }
        for (std::size_t k = left + 1; k-- > 0;) {
            parts[i] = k;
            rec(i + 1, left - k);
        }
    };
    rec(0, N);
    return out;
}

std::vector<Portfolio> ball_grid(const DomainSpec& spec, std::size_t N, std::size_t cap) {
    if (spec.kind != DomainSpec::Kind::Ball) throw ValidationError("ball grid needs a ball domain");
    if (N == 0) throw ValidationError("ball grid needs N >= 1");
    const std::size_t n = spec.dimension;
    const BallDomain ball{spec.center, spec.radius};

    if (n == 1) return {Portfolio({1.0}, ball)};

    double lattice = 1.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        lattice *= static_cast<double>(2 * N + 1);
        if (lattice > static_cast<double>(cap)) {
            throw ComputationError("ball grid would exceed the candidate cap of " +
                                   std::to_string(cap));
        }
    }

    const auto basis = hyperplane_basis(n);
    const double step = spec.radius / static_cast<double>(N);
    std::vector<Portfolio> out;
    std::vector<long long> k(n - 1, 0);

    std::function<void(std::size_t, long long)> rec = [&](std::size_t axis, long long norm2) {
        if (axis == n - 1) {
            std::vector<double> w = spec.center;
            for (std::size_t j = 0; j + 1 < n; ++j) {
                const double c = static_cast<double>(k[j]) * step;
                for (std::size_t i = 0; i < n; ++i) w[i] += c * basis[j][i];
            }
            out.emplace_back(std::move(w), ball);
            return;
        }
        const long long limit = static_cast<long long>(N);
        for (long long v = -limit; v <= limit; ++v) {
            // Orthonormal basis: the offset length is |k| * radius / N, so the
            // ball constraint is exactly |k|^2 <= N^2 in integers.
            const long long next = norm2 + v * v;
            if (next > limit * limit) continue;
            k[axis] = v;
            rec(axis + 1, next);
        }
    };
    rec(0, 0);
    return out;
}

namespace {

// Fixed uniform mappings so sampling depends only on the engine's bit
// stream, not on library-specific distribution internals.
double unit_open(std::mt19937_64& rng) {   // (0, 1]
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

double unit_halfopen(std::mt19937_64& rng) {   // [0, 1)
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

std::vector<Portfolio> random_sample(const DomainSpec& spec, std::size_t count,
                                     std::uint64_t seed) {
    if (count == 0) throw ValidationError("sample count must be >= 1");
    const std::size_t n = spec.dimension;
    std::mt19937_64 rng(seed);
    std::vector<Portfolio> out;
    out.reserve(count);

    if (spec.kind == DomainSpec::Kind::Simplex) {
        for (std::size_t c = 0; c < count; ++c) {
            std::vector<double> w(n);
            double sum = 0.0;
            for (double& x : w) {
                x = -std::log(unit_open(rng));
                sum += x;
            }
            if (sum <= 0.0) {   // all draws hit log(1) = 0
                w.assign(n, 1.0);
                sum = static_cast<double>(n);
            }
            for (double& x : w) x /= sum;
            out.emplace_back(std::move(w));
        }
        return out;
    }

    const BallDomain ball{spec.center, spec.radius};
    if (n == 1) {
        for (std::size_t c = 0; c < count; ++c) out.emplace_back(std::vector<double>{1.0}, ball);
        return out;
    }
    const auto basis = hyperplane_basis(n);
    constexpr std::size_t kMaxAttempts = 100000;
    for (std::size_t c = 0; c < count; ++c) {
        std::vector<double> coeff(n - 1);
        bool accepted = false;
        for (std::size_t attempt = 0; attempt < kMaxAttempts && !accepted; ++attempt) {
            double norm2 = 0.0;
            for (double& x : coeff) {
                x = (2.0 * unit_halfopen(rng) - 1.0) * spec.radius;
                norm2 += x * x;
            }
            accepted = norm2 <= spec.radius * spec.radius;
        }
        if (!accepted) {
            throw ComputationError("ball sampling rejection limit reached; "
                                   "the disc volume is too small for this dimension");
        }
        std::vector<double> w = spec.center;
        for (std::size_t j = 0; j + 1 < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) w[i] += coeff[j] * basis[j][i];
        }
        out.emplace_back(std::move(w), ball);
    }
    return out;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {
        "utility", "markowitz", "skew", "kurt", "skew-kurt", "sd", "markowitz-sd",
    };
    return names;
}

namespace {

// Threshold grid for a stochastic-dominance family: every support point of
// every candidate's return distribution, midpoints between neighbors, and one
// point past each end.
std::vector<double> sd_threshold_grid(const ScenarioMarket& market,
                                      const std::vector<Portfolio>& candidates) {
    std::vector<double> points;
    for (const auto& c : candidates) {
        const auto dist = return_distribution(market, c);
        points.insert(points.end(), dist.support().begin(), dist.support().end());
    }
    std::sort(points.begin(), points.end());
    std::vector<double> merged;
    for (double p : points) {
        if (merged.empty() || p - merged.back() > 1e-12) merged.push_back(p);
    }
    std::vector<double> grid;
    grid.reserve(2 * merged.size() + 1);
    const double span = merged.back() - merged.front();
    const double margin = span > 0.0 ? span / 2.0 : 1.0;
    grid.push_back(merged.front() - margin);
    for (std::size_t i = 0; i < merged.size(); ++i) {
        grid.push_back(merged[i]);
        if (i + 1 < merged.size()) grid.push_back((merged[i] + merged[i + 1]) / 2.0);
    }
    grid.push_back(merged.back() + margin);
    return grid;
}

} // namespace

PreorderInstance build_preorder(const ObjectiveConfig& config, const ScenarioMarket& market,
                                const std::vector<Portfolio>* candidates) {
    std::vector<ObjectiveSpec> u, v;

    if (config.preset.empty()) {
        if (config.objectives.empty()) {
            throw ValidationError("configuration needs a preset or an explicit objective list");
        }
        for (const auto& s : config.objectives) {
            (s.direction() == ObjectiveSpec::Direction::Maximize ? u : v).push_back(s);
        }
        return PreorderInstance(std::move(u), std::move(v), market, config.epsilon);
    }
    if (!config.objectives.empty()) {
        throw ValidationError("configuration must use a preset or explicit objectives, not both");
    }

    // "sd" and "markowitz-sd" accept an order suffix, e.g. "sd-3".
    std::string p = config.preset;
    int sd_order = config.sd_order;
    for (const char* stem : {"markowitz-sd-", "sd-"}) {
        if (p.rfind(stem, 0) == 0) {
            const std::string suffix = p.substr(std::string(stem).size());
            try {
                std::size_t used = 0;
                sd_order = std::stoi(suffix, &used);
                if (used != suffix.size() || sd_order < 1) throw std::invalid_argument(suffix);
            } catch (const std::exception&) {
                throw ValidationError("bad stochastic dominance order in preset '" + p + "'");
            }
            p = p.substr(0, std::string(stem).size() - 1);
            break;
        }
    }
    const bool wants_sd = p == "sd" || p == "markowitz-sd";
    if (p == "utility") {
        u.push_back(ObjectiveSpec::expected_return());
    } else if (p == "markowitz") {
        u.push_back(ObjectiveSpec::expected_return());
        v.push_back(ObjectiveSpec::variance());
    } else if (p == "skew") {
        u.push_back(ObjectiveSpec::expected_return());
        v.push_back(ObjectiveSpec::variance());
        v.push_back(ObjectiveSpec::skew_squared());
    } else if (p == "kurt") {
        u.push_back(ObjectiveSpec::expected_return());
        v.push_back(ObjectiveSpec::variance());
        v.push_back(ObjectiveSpec::kurt_squared());
    } else if (p == "skew-kurt") {
        u.push_back(ObjectiveSpec::expected_return());
        v.push_back(ObjectiveSpec::variance());
        v.push_back(ObjectiveSpec::skew_squared());
        v.push_back(ObjectiveSpec::kurt_squared());
    } else if (wants_sd) {
        if (!candidates || candidates->empty()) {
            throw ValidationError("preset '" + p + "' needs the candidate set to place its "
                                  "threshold grid");
        }
        if (p == "markowitz-sd") {
            u.push_back(ObjectiveSpec::expected_return());
            v.push_back(ObjectiveSpec::variance());
        }
        for (double t : sd_threshold_grid(market, *candidates)) {
            v.push_back(ObjectiveSpec::sd_curve(sd_order, t));
        }
    } else {
        throw ValidationError("unknown preset '" + p + "'");
    }
    return PreorderInstance(std::move(u), std::move(v), market, config.epsilon);
}

} // namespace prefront
