#include "bcfrac/domain.hpp"

#include "bcfrac/errors.hpp"

#include <algorithm>

namespace bcfrac {

void RectDomain::validate() const {
    if (!(a1 < b1 && c1 < d1 && a2 < b2 && c2 < d2))
        throw DomainError("RectDomain: requires a_l < b_l and c_l < d_l");
}

bool RectDomain::contains(const Bicomplex& z) const {
    const double eps = 1e-12 * std::max(1.0, edge_length());
    return component(1).contains(z.z1, eps) && component(2).contains(z.z2, eps);
}

double RectDomain::edge_length() const { return std::min({b1 - a1, d1 - c1, b2 - a2, d2 - c2}); }

} // namespace bcfrac
