#include "prefront/relation.hpp"

namespace prefront {

const char* to_string(Relation r) {
    switch (r) {
    case Relation::EquivalentE: return "equivalent";
    case Relation::XBelowYStrict: return "strictly dominated";
    case Relation::YBelowXStrict: return "strictly dominates";
    case Relation::Incomparable: return "incomparable";
    }
    return "?";
}

DominanceVerdict classify_values(std::span<const double> fx, std::span<const double> fy,
                                 std::size_t u_count, double eps) {
    bool x_below_y = true;   // xRy
    bool y_below_x = true;   // yRx
    std::optional<std::size_t> first_xy_violation;
    std::optional<std::size_t> first_yx_violation;

    for (std::size_t i = 0; i < fx.size(); ++i) {
        const bool is_u = i < u_count;
        // xRy at coordinate i: u_i(x) <= u_i(y), v_i(x) >= v_i(y), within eps.
        const bool xy_ok = is_u ? eps_leq(fx[i], fy[i], eps) : eps_leq(fy[i], fx[i], eps);
        const bool yx_ok = is_u ? eps_leq(fy[i], fx[i], eps) : eps_leq(fx[i], fy[i], eps);
        if (!xy_ok && !first_xy_violation) first_xy_violation = i;
        if (!yx_ok && !first_yx_violation) first_yx_violation = i;
        x_below_y = x_below_y && xy_ok;
        y_below_x = y_below_x && yx_ok;
    }

    if (x_below_y && y_below_x) return {Relation::EquivalentE, std::nullopt};
    if (x_below_y) return {Relation::XBelowYStrict, first_yx_violation};
    if (y_below_x) return {Relation::YBelowXStrict, first_xy_violation};
    return {Relation::Incomparable, first_xy_violation};
}

} // namespace prefront
