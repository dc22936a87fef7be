#include "bcfrac/gauss_legendre.hpp"

#include "bcfrac/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>

namespace bcfrac {

namespace {

std::vector<QuadNode> reference_rule() {
    using Rule = boost::math::quadrature::gauss<double, kGaussPoints>;
    std::vector<QuadNode> out;
    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) {
            out.push_back({0.5, 0.5 * w[i]});
            continue;
        }
        out.push_back({0.5 - 0.5 * x[i], 0.5 * w[i]});
        out.push_back({0.5 + 0.5 * x[i], 0.5 * w[i]});
    }
    std::sort(out.begin(), out.end(), [](const QuadNode& a, const QuadNode& b) { return a.x < b.x; });
    return out;
}

} // namespace

std::vector<QuadNode> composite_gauss_legendre(std::size_t panels) {
    if (panels == 0) throw DomainError("composite_gauss_legendre: panels must be positive");
    static const std::vector<QuadNode> ref = reference_rule();
    std::vector<QuadNode> out;
    out.reserve(panels * ref.size());
    const double h = 1.0 / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const double x0 = h * static_cast<double>(p);
        for (const auto& n : ref) out.push_back({x0 + h * n.x, h * n.w});
    }
    return out;
}

std::vector<QuadNode> composite_gauss_legendre(std::size_t panels, double lo, double hi) {
    auto out = composite_gauss_legendre(panels);
    const double len = hi - lo;
    for (auto& n : out) {
        n.x = lo + len * n.x;
        n.w *= len;
    }
    return out;
}

} // namespace bcfrac
