#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

namespace prefront {

/// Classification of an ordered pair (x, y) under the preference relation:
/// E-equivalent, strictly below (xFy), strictly above (yFx), or incomparable.
enum class Relation {
    EquivalentE,
    XBelowYStrict,
    YBelowXStrict,
    Incomparable,
};

const char* to_string(Relation r);

struct DominanceVerdict {
    Relation relation = Relation::Incomparable;
    /// Index into the concatenated u+v objective list: the first strict
    /// margin for the strict verdicts, the first violated inequality for
    /// Incomparable, absent for EquivalentE.
    std::optional<std::size_t> witness;
};

/// Epsilon comparisons used everywhere: values within +-eps are ties, "less"
/// requires a margin beyond eps.
inline bool eps_leq(double a, double b, double eps) { return a <= b + eps; }
inline bool eps_lt(double a, double b, double eps) { return a < b - eps; }

/// Classifies two evaluated objective vectors (u-family values first, then
/// v-family). xRy holds when every u value of x is <= the one of y and every
/// v value of x is >= the one of y, all within eps.
DominanceVerdict classify_values(std::span<const double> fx, std::span<const double> fy,
                                 std::size_t u_count, double eps);

} // namespace prefront
