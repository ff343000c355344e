#include "prefront/kernel.hpp"

#include <cmath>
#include <string>

namespace prefront {

KernelInstance::KernelInstance(std::vector<std::vector<double>> rows) {
    size_ = rows.size();
    if (size_ == 0) throw ValidationError("kernel matrix must be nonempty");
    values_.reserve(size_ * size_);
    for (const auto& row : rows) {
        if (row.size() != size_) throw ValidationError("kernel matrix must be square");
        for (double v : row) {
            if (!std::isfinite(v)) throw ValidationError("kernel matrix entries must be finite");
            values_.push_back(v);
        }
    }
}

DominanceVerdict kernel_relate(const KernelInstance& instance, std::size_t x, std::size_t y,
                               double eps) {
    const std::size_t k = instance.size();
    if (x >= k || y >= k) throw ValidationError("kernel index out of range");

    bool x_below_y = true, y_below_x = true;
    std::optional<std::size_t> first_xy_violation, first_yx_violation;
    for (std::size_t p = 0; p < 2 * k; ++p) {
        bool xy_ok, yx_ok;
        if (p < k) {
            // u_p: column p as a function of the first argument, maximized.
            xy_ok = eps_leq(instance.f(x, p), instance.f(y, p), eps);
            yx_ok = eps_leq(instance.f(y, p), instance.f(x, p), eps);
        } else {
            // v_p: row p as a function of the second argument, minimized.
            const std::size_t q = p - k;
            xy_ok = eps_leq(instance.f(q, y), instance.f(q, x), eps);
            yx_ok = eps_leq(instance.f(q, x), instance.f(q, y), eps);
        }
        if (!xy_ok && !first_xy_violation) first_xy_violation = p;
        if (!yx_ok && !first_yx_violation) first_yx_violation = p;
        x_below_y = x_below_y && xy_ok;
        y_below_x = y_below_x && yx_ok;
    }
    if (x_below_y && y_below_x) return {Relation::EquivalentE, std::nullopt};
    if (x_below_y) return {Relation::XBelowYStrict, first_yx_violation};
    if (y_below_x) return {Relation::YBelowXStrict, first_xy_violation};
    return {Relation::Incomparable, first_xy_violation};
}

namespace {

// Membership in the four constraint sets, with the optional excluded index.
bool in_u_set(const KernelInstance& k, std::size_t base, std::size_t y,
              std::optional<std::size_t> skip, double eps) {
    for (std::size_t q = 0; q < k.size(); ++q) {
        if (skip && q == *skip) continue;
        if (!eps_leq(k.f(base, q), k.f(y, q), eps)) return false;   // f(y,q) >= f(base,q)
    }
    return true;
}

bool in_v_set(const KernelInstance& k, std::size_t base, std::size_t y,
              std::optional<std::size_t> skip, double eps) {
    for (std::size_t q = 0; q < k.size(); ++q) {
        if (skip && q == *skip) continue;
        if (!eps_leq(k.f(q, y), k.f(q, base), eps)) return false;   // f(q,y) <= f(q,base)
    }
    return true;
}

} // namespace

KernelCertification kernel_maximal_certify(const KernelInstance& instance, double eps) {
    const std::size_t k = instance.size();

    KernelCertification out;
    for (std::size_t x = 0; x < k; ++x) {
        bool maximal = true;
        for (std::size_t y = 0; y < k && maximal; ++y) {
            if (y == x) continue;
            maximal = kernel_relate(instance, x, y, eps).relation != Relation::XBelowYStrict;
        }
        if (maximal) out.maximal_indices.push_back(x);
    }

    for (std::size_t m : out.maximal_indices) {
        std::vector<KernelCertificate> certs;
        certs.reserve(k);
        for (std::size_t p = 0; p < k; ++p) {
            double best_max = instance.f(m, p);
            double best_min = instance.f(p, m);
            for (std::size_t y = 0; y < k; ++y) {
                if (in_u_set(instance, m, y, p, eps) && in_v_set(instance, m, y, std::nullopt, eps)) {
                    best_max = std::max(best_max, instance.f(y, p));
                }
                if (in_u_set(instance, m, y, std::nullopt, eps) && in_v_set(instance, m, y, p, eps)) {
                    best_min = std::min(best_min, instance.f(p, y));
                }
            }
            if (best_max > instance.f(m, p) + eps || best_min < instance.f(p, m) - eps) {
                throw ComputationError("kernel certificate failed for maximal element " +
                                       std::to_string(m) + " at p=" + std::to_string(p));
            }
            certs.push_back({p, best_max, best_min});
        }
        out.certificates.push_back(std::move(certs));
    }
    return out;
}

} // namespace prefront
