#pragma once

#include <cstddef>
#include <vector>

#include "prefront/errors.hpp"
#include "prefront/relation.hpp"

namespace prefront {

/// Preorder on a finite set {0..k-1} induced by a bivariate function given as
/// a dense k x k matrix: element x prefers larger f(x, p) across columns p
/// and smaller f(p, x) across rows p.
class KernelInstance {
public:
    explicit KernelInstance(std::vector<std::vector<double>> rows);

    std::size_t size() const { return size_; }
    /// f(x, p): row x, column p.
    double f(std::size_t x, std::size_t p) const { return values_[x * size_ + p]; }

private:
    std::size_t size_ = 0;
    std::vector<double> values_;   // row-major
};

/// Pairwise verdict between two elements. xRy holds when f(x,p) <= f(y,p) and
/// f(p,x) >= f(p,y) for every p, within eps.
DominanceVerdict kernel_relate(const KernelInstance& instance, std::size_t x, std::size_t y,
                               double eps = 1e-9);

/// Per-column witness of the max/min characterization of a maximal element:
/// f(m,p) attains the max of f(.,p) over the admissible set and f(p,m) the
/// min of f(p,.) over its counterpart.
struct KernelCertificate {
    std::size_t p = 0;
    double attained_max = 0.0;
    double attained_min = 0.0;
};

struct KernelCertification {
    std::vector<std::size_t> maximal_indices;                  // ascending
    std::vector<std::vector<KernelCertificate>> certificates;  // one list per maximal index
};

/// Finds all maximal elements and verifies, for each of them and every p,
/// both extremal equalities by direct enumeration of the constraint sets.
/// Throws ComputationError if a certificate fails: the property holds for
/// every maximal element, so a failure signals an implementation fault.
KernelCertification kernel_maximal_certify(const KernelInstance& instance, double eps = 1e-9);

} // namespace prefront
