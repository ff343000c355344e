#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "prefront/market.hpp"
#include "prefront/preorder.hpp"

namespace prefront {

/// Discretizable portfolio domain: the standard simplex or a ball in the
/// hyperplane sum(x) = 1 (bounded short sales).
struct DomainSpec {
    enum class Kind { Simplex, Ball };

    static DomainSpec simplex(std::size_t n);
    static DomainSpec ball(std::vector<double> center, double radius);

    Kind kind = Kind::Simplex;
    std::size_t dimension = 0;      // number of assets
    std::vector<double> center;     // ball only; must sum to 1 within 1e-12
    double radius = 0.0;            // ball only; > 0
};

/// Default cap on generated candidate counts; grids beyond it fail loudly.
inline constexpr std::size_t kDefaultCandidateCap = 10'000'000;

/// All weight vectors (k_1/N, ..., k_n/N) with nonnegative integers summing
/// to N, in lexicographically decreasing order of (k_1, ..., k_n). The count
/// is C(N+n-1, n-1).
std::vector<Portfolio> simplex_grid(std::size_t n, std::size_t N,
                                    std::size_t cap = kDefaultCandidateCap);

/// Lattice points center + sum_j (k_j/N) r b_j inside the ball, where {b_j}
/// is the Gram-Schmidt orthonormalization of (e_1-e_n, ..., e_{n-1}-e_n) in
/// the hyperplane's direction space. Integer tuples are enumerated in
/// lexicographic order, each axis ascending from -N to N.
std::vector<Portfolio> ball_grid(const DomainSpec& spec, std::size_t N,
                                 std::size_t cap = kDefaultCandidateCap);

/// Seeded sampling: uniform on the simplex via normalized unit-exponential
/// draws, uniform on the ball disc via rejection in the hyperplane
/// coordinates. Same seed, same output.
std::vector<Portfolio> random_sample(const DomainSpec& spec, std::size_t count,
                                     std::uint64_t seed);

/// Named objective family plus comparison settings, ready to bind to a
/// market. Either a preset name or an explicit objective list.
struct ObjectiveConfig {
    std::string preset;                      // empty when objectives are explicit
    std::vector<ObjectiveSpec> objectives;   // explicit list, any direction mix
    double epsilon = 1e-9;
    int sd_order = 2;                        // order for the sd presets
    int sd_samples = 16;
};

/// Names of the built-in presets, in documentation order.
const std::vector<std::string>& preset_names();

/// Binds a configuration to a market. Presets with a stochastic-dominance
/// family need the candidate list: the threshold grid is the union of the
/// candidates' support points, their midpoints, and one point beyond each
/// extreme.
PreorderInstance build_preorder(const ObjectiveConfig& config, const ScenarioMarket& market,
                                const std::vector<Portfolio>* candidates = nullptr);

} // namespace prefront
