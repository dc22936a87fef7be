#include "bcfrac/quadrature_verify.hpp"

#include "bcfrac/errors.hpp"
#include "bcfrac/gauss_legendre.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

namespace bcfrac {

namespace {

const Complex kI{0.0, 1.0};
constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool same_rect(const Rect& a, const Rect& b) {
    const double tol = 1e-12 * std::max(1.0, a.area());
    return std::abs(a.x0 - b.x0) <= tol && std::abs(a.x1 - b.x1) <= tol && std::abs(a.y0 - b.y0) <= tol &&
           std::abs(a.y1 - b.y1) <= tol;
}

void check_inside(const SurfacePatch& patch, const RectDomain& dom) {
    for (int l : {1, 2}) {
        const Rect& p = patch.component(l);
        const Rect d = dom.component(l);
        if (p.x0 < d.x0 || p.x1 > d.x1 || p.y0 < d.y0 || p.y1 > d.y1)
            throw DomainError("surface patch leaves the rectangle");
    }
}

// Node i of component 1 paired with node i of component 2; valid because
// every quantity here acts componentwise.
struct PairedArea {
    std::vector<AreaNode> n1, n2;
    [[nodiscard]] std::size_t size() const { return n1.size(); }
    [[nodiscard]] Bicomplex z(std::size_t i) const { return {n1[i].z, n2[i].z}; }
    [[nodiscard]] Bicomplex w(std::size_t i) const { return {n1[i].w, n2[i].w}; }
};

struct PairedBoundary {
    std::vector<BoundaryNode> n1, n2;
    [[nodiscard]] std::size_t size() const { return n1.size(); }
    [[nodiscard]] Bicomplex z(std::size_t i) const { return {n1[i].z, n2[i].z}; }
    // dz = tangent * weight per component
    [[nodiscard]] Bicomplex dz(std::size_t i) const { return {n1[i].tangent * n1[i].w, n2[i].tangent * n2[i].w}; }
    [[nodiscard]] Tangent tangent(std::size_t i) const {
        const Complex a = n1[i].tangent * n1[i].w, b = n2[i].tangent * n2[i].w;
        return {a.real(), a.imag(), b.real(), b.imag()};
    }
};

PairedArea paired_area(const SurfacePatch& patch) {
    return {area_nodes(patch.lambda1, patch.m), area_nodes(patch.lambda2, patch.m)};
}

PairedBoundary paired_boundary(const SurfacePatch& patch) {
    return {boundary_nodes(patch.lambda1, patch.k), boundary_nodes(patch.lambda2, patch.k)};
}

Complex comp(const Bicomplex& z, int l) { return l == 1 ? z.z1 : z.z2; }

// iint (g(v) - g0)/(xi(v) - xi0) dA(v) + g0 iint dA/(xi(v) - xi0) for a real-linear
// map xi; the second integral is the closed-form Cauchy transform of the image
// parallelogram.
Complex singular_area(const std::vector<AreaNode>& nodes, const std::vector<Complex>& g, Complex g0,
                      const std::function<Complex(Complex)>& xi, double jac, const Rect& r, Complex z) {
    const Complex xi0 = xi(z);
    Complex sum{};
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Complex d = xi(nodes[i].z) - xi0;
        if (d != Complex{}) sum += nodes[i].w * (g[i] - g0) / d;
    }
    std::vector<Complex> poly{xi({r.x0, r.y0}), xi({r.x1, r.y0}), xi({r.x1, r.y1}), xi({r.x0, r.y1})};
    if (jac < 0.0) std::reverse(poly.begin(), poly.end());
    return sum + g0 * polygon_cauchy_transform(poly, xi0) / std::abs(jac);
}

} // namespace

SurfacePatch SurfacePatch::from_domain(const RectDomain& dom, std::size_t m, std::size_t k) {
    dom.validate();
    return {dom.component(1), dom.component(2), m, k};
}

SurfacePatch SurfacePatch::interior(const RectDomain& dom, double margin, std::size_t m, std::size_t k) {
    dom.validate();
    if (!(margin > 0.0 && margin < 0.5)) throw DomainError("SurfacePatch::interior: margin must lie in (0, 0.5)");
    auto shrink = [margin](Rect r) {
        const double hx = margin * (r.x1 - r.x0), hy = margin * (r.y1 - r.y0);
        return Rect{r.x0 + hx, r.x1 - hx, r.y0 + hy, r.y1 - hy};
    };
    return {shrink(dom.component(1)), shrink(dom.component(2)), m, k};
}

std::vector<AreaNode> area_nodes(const Rect& r, std::size_t m) {
    const auto xs = composite_gauss_legendre(m, r.x0, r.x1);
    const auto ys = composite_gauss_legendre(m, r.y0, r.y1);
    std::vector<AreaNode> out;
    out.reserve(xs.size() * ys.size());
    for (const auto& x : xs)
        for (const auto& y : ys) out.push_back({{x.x, y.x}, x.w * y.w});
    return out;
}

std::vector<BoundaryNode> boundary_nodes(const Rect& r, std::size_t k) {
    const std::array<Complex, 4> corners{Complex(r.x0, r.y0), Complex(r.x1, r.y0), Complex(r.x1, r.y1),
                                         Complex(r.x0, r.y1)};
    std::vector<BoundaryNode> out;
    for (int e = 0; e < 4; ++e) {
        const Complex a = corners[e], b = corners[(e + 1) % 4];
        const double len = std::abs(b - a);
        const Complex d = (b - a) / len;
        for (const auto& s : composite_gauss_legendre(k, 0.0, len)) out.push_back({a + d * s.x, s.w, d});
    }
    return out;
}

Bicomplex contour_integral(const ProductFunction& f, const SurfacePatch& patch, Measure measure,
                           const WeightPair* wp) {
    if (measure == Measure::dRho && wp == nullptr) throw DomainError("contour_integral: d rho needs a weight pair");
    const auto nodes = paired_boundary(patch);
    Bicomplex sum;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Bicomplex z = nodes.z(i);
        const Bicomplex dm = measure == Measure::dZ ? nodes.dz(i) : boundary_measure(*wp, z, nodes.tangent(i));
        sum += f(z) * dm;
    }
    return sum;
}

Bicomplex area_integral(const ProductFunction& g, const SurfacePatch& patch) {
    const auto nodes = paired_area(patch);
    Bicomplex sum;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += g(nodes.z(i)) * nodes.w(i);
    return sum;
}

Bicomplex surface_integral(const ProductFunction& g, const SurfacePatch& patch) {
    return Complex(0.0, -2.0) * area_integral(g, patch);
}

Complex polygon_cauchy_transform(const std::vector<Complex>& vertices, Complex z) {
    if (vertices.size() < 3) throw DomainError("polygon_cauchy_transform: need at least 3 vertices");
    // iint dA/(xi - z) = (1/2i) oint conj(xi - z)/(xi - z) dxi, edge by edge with
    // xi = v0 + d s: integrand conj(d) (1 + (conj(p) - p)/(p + s)), p = (v0 - z)/d.
    Complex sum{};
    for (std::size_t e = 0; e < vertices.size(); ++e) {
        const Complex v0 = vertices[e], v1 = vertices[(e + 1) % vertices.size()];
        const double len = std::abs(v1 - v0);
        if (len == 0.0) continue;
        const Complex d = (v1 - v0) / len;
        const Complex p = (v0 - z) / d;
        Complex term = len;
        if (std::abs(p.imag()) > 1e-300) term += (std::conj(p) - p) * (std::log(p + len) - std::log(p));
        sum += std::conj(d) * term;
    }
    return sum / Complex(0.0, 2.0);
}

ResidualReport gauss_residual(const ProductFunction& f, const WeightPair& wp, const SurfacePatch& patch) {
    const auto t0 = Clock::now();
    const auto area = paired_area(patch);
    Bicomplex lhs;
    for (std::size_t i = 0; i < area.size(); ++i) {
        const Bicomplex z = area.z(i);
        const Bicomplex fz = f(z);
        const Divergence dv = weight_divergence(wp, z);
        lhs += (apply_cr_weighted(wp, f, z) + dv.a * fz + dv.b * units::i * fz) * area.w(i);
    }
    const Bicomplex rhs = contour_integral(f, patch, Measure::dRho, &wp);
    return {"gauss", patch.m, patch.k, 0, mod_k(lhs - rhs), std::nullopt, since(t0)};
}

ReconstructionResult borel_pompeiu_classical(const ProductFunction& f, const Bicomplex& w,
                                             const SurfacePatch& patch) {
    const auto t0 = Clock::now();
    if (!patch.lambda1.strictly_contains(w.z1) || !patch.lambda2.strictly_contains(w.z2))
        throw WOnBoundaryError("borel_pompeiu_classical: W must lie inside the patch");
    ReconstructionResult out;
    const auto bnd = paired_boundary(patch);
    Bicomplex boundary;
    for (std::size_t i = 0; i < bnd.size(); ++i) {
        const Bicomplex z = bnd.z(i);
        boundary += f(z) * invert(z - w) * bnd.dz(i);
    }
    boundary *= 1.0 / (kTwoPi * kI);

    Bicomplex area;
    for (int l : {1, 2}) {
        const auto& fl = f.component(l);
        auto dbar = [&fl](Complex z) { return 0.5 * (fl.dx(z.real(), z.imag()) + kI * fl.dy(z.real(), z.imag())); };
        const auto nodes = area_nodes(patch.component(l), patch.m);
        std::vector<Complex> g(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) g[i] = dbar(nodes[i].z);
        const Complex wl = comp(w, l);
        const Complex integral =
            singular_area(nodes, g, dbar(wl), [](Complex z) { return z; }, 1.0, patch.component(l), wl);
        // dz ^ dzbar = -2i dx dy
        (l == 1 ? area.z1 : area.z2) = Complex(0.0, -2.0) * integral / (kTwoPi * kI);
    }
    out.reconstructed = boundary + area;
    out.expected = f(w);
    out.report = {"borel_pompeiu", patch.m, patch.k, 0, mod_k(out.reconstructed - out.expected), std::nullopt,
                  since(t0)};
    return out;
}

ReconstructionResult borel_pompeiu_weighted(const ProductFunction& f, const Bicomplex& w, const WeightPair& wp,
                                            const SurfacePatch& patch) {
    const auto t0 = Clock::now();
    if (!patch.lambda1.strictly_contains(w.z1) || !patch.lambda2.strictly_contains(w.z2))
        throw WOnBoundaryError("borel_pompeiu_weighted: W must lie inside the patch");
    const Bicomplex c = kernel_constant(wp);
    const auto bnd = paired_boundary(patch);
    Bicomplex boundary;
    for (std::size_t i = 0; i < bnd.size(); ++i) {
        const Bicomplex v = bnd.z(i);
        boundary += f(v) * cauchy_kernel(wp, v, w) * boundary_measure(wp, v, bnd.tangent(i));
    }
    Bicomplex area;
    for (int l : {1, 2}) {
        const auto& cs = *wp.constants;
        const ConstantKernel ker{l == 1 ? cs[0] : cs[1], l == 1 ? cs[2] : cs[3]};
        const auto& fl = f.component(l);
        auto lf = [&](Complex z) {
            return ker.theta * fl.dx(z.real(), z.imag()) + ker.phi * fl.dy(z.real(), z.imag());
        };
        const auto nodes = area_nodes(patch.component(l), patch.m);
        std::vector<Complex> g(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) g[i] = lf(nodes[i].z);
        const Complex wl = comp(w, l);
        const Complex integral = singular_area(nodes, g, lf(wl), [&ker](Complex z) { return ker.zeta(z); },
                                               ker.jacobian(), patch.component(l), wl);
        (l == 1 ? area.z1 : area.z2) = integral / (kTwoPi * kI);
    }
    ReconstructionResult out;
    out.reconstructed = (boundary - area) * invert(c);
    out.expected = f(w);
    out.report = {"borel_pompeiu_weighted", patch.m, patch.k, 0, mod_k(out.reconstructed - out.expected),
                  std::nullopt, since(t0)};
    return out;
}

FracGaussResult frac_gauss_residual(const ProductFunction& f, const Bicomplex& w, const FracParams& p,
                                    const WeightPair& wp, const LambdaWeights& lam, const RectDomain& dom,
                                    const SurfacePatch& patch) {
    const auto t0 = Clock::now();
    check_inside(patch, dom);
    const TraceIntegral tf(f, w, p, dom, Side::Left, true);
    const Bicomplex inv_sigma = invert(p.sigma_composite());
    FracGaussResult out;
    const auto bnd = paired_boundary(patch);
    for (std::size_t i = 0; i < bnd.size(); ++i) {
        const Bicomplex v = bnd.z(i);
        out.boundary_term += lam.exp_at(v) * tf(v) * boundary_measure(wp, v, bnd.tangent(i));
    }
    const auto area = paired_area(patch);
    for (std::size_t i = 0; i < area.size(); ++i) {
        const Bicomplex v = area.z(i);
        const Bicomplex el = lam.exp_at(v);
        const Bicomplex g = el * tf(v);
        const Divergence dv = weight_divergence(wp, v);
        const Bicomplex integrand = el * dphi(p.phi, v).to_bicomplex() * inv_sigma * frac_cr_apply(tf, p, wp, v) +
                                    dv.a * g + dv.b * units::i * g;
        out.area_term += integrand * area.w(i);
    }
    out.report = {"frac_gauss", patch.m, patch.k, p.quad.n, mod_k(out.boundary_term - out.area_term),
                  std::nullopt, since(t0)};
    return out;
}

FracGaussResult frac_gauss_residual_direct(const ProductFunction& f, const Bicomplex& w, const FracParams& p,
                                           const WeightPair& wp, const RectDomain& dom, const SurfacePatch& patch) {
    const auto t0 = Clock::now();
    check_inside(patch, dom);
    const TraceIntegral tf(f, w, p, dom, Side::Left, false);
    FracGaussResult out;
    const auto bnd = paired_boundary(patch);
    for (std::size_t i = 0; i < bnd.size(); ++i) {
        const Bicomplex v = bnd.z(i);
        out.boundary_term += tf(v) * boundary_measure(wp, v, bnd.tangent(i));
    }
    const auto area = paired_area(patch);
    for (std::size_t i = 0; i < area.size(); ++i) {
        const Bicomplex v = area.z(i);
        const Bicomplex g = tf(v);
        const Divergence dv = weight_divergence(wp, v);
        out.area_term += (tf.weighted_cr(wp, v) + dv.a * g + dv.b * units::i * g) * area.w(i);
    }
    out.report = {"frac_gauss_direct", patch.m, patch.k, p.quad.n, mod_k(out.boundary_term - out.area_term),
                  std::nullopt, since(t0)};
    return out;
}

FracBPResult frac_bp_reconstruct(const ProductFunction& f, const Bicomplex& w, const Bicomplex& z,
                                 const FracParams& p, const WeightPair& wp, const LambdaWeights& lam,
                                 const RectDomain& dom, const SurfacePatch& patch) {
    const auto t0 = Clock::now();
    if (!wp.constants) throw UnsupportedWeightsError("frac_bp_reconstruct: requires constant weights");
    // D_Z runs along lines from the lower edges of J, so the representation of
    // the integrated function must hold on all of J.
    if (!same_rect(patch.lambda1, dom.component(1)) || !same_rect(patch.lambda2, dom.component(2)))
        throw DomainError("frac_bp_reconstruct: the patch must be the whole rectangle");
    if (!dom.component(1).strictly_contains(z.z1) || !dom.component(2).strictly_contains(z.z2))
        throw DomainError("frac_bp_reconstruct: Z must be interior");
    const auto& cs = *wp.constants;
    const std::array<ConstantKernel, 2> ker{ConstantKernel{cs[0], cs[2]}, ConstantKernel{cs[1], cs[3]}};
    const Bicomplex c = kernel_constant(wp);
    const TraceIntegral tf(f, w, p, dom, Side::Left, true);
    FracBPResult out;

    // Boundary term: calE(V, Z) = D_Z[e^{lambda(V) - lambda(Z)} E(V, Z)/c] per node.
    const auto bnd = paired_boundary(patch);
    for (std::size_t i = 0; i < bnd.size(); ++i) {
        const Bicomplex v = bnd.z(i);
        auto kv = [&](int l, Complex zp) {
            const auto& lm = lam.component(l);
            return std::exp(lm(comp(v, l)) - lm(zp)) * ker[l - 1](comp(v, l), zp) / comp(c, l);
        };
        const Bicomplex cal_e = apply_trace_derivative(kv, p, dom, Side::Left, z);
        out.boundary_term += cal_e * tf(v) * boundary_measure(wp, v, bnd.tangent(i));
    }

    out.remainder = remainder_R(f, w, p, dom, z);

    // Area term: D_Z of AI(Z') = iint e^{lambda(V) - lambda(Z')} E(V, Z') D phi sigma^{-1} dF(V)/c dA.
    const Bicomplex inv_sigma = invert(p.sigma_composite());
    auto density = [&](const Bicomplex& v) {
        return lam.exp_at(v) * dphi(p.phi, v).to_bicomplex() * inv_sigma * frac_cr_apply(tf, p, wp, v) * invert(c);
    };
    const auto area = paired_area(patch);
    std::array<std::vector<AreaNode>, 2> nodes{area.n1, area.n2};
    std::array<std::vector<Complex>, 2> g{std::vector<Complex>(area.size()), std::vector<Complex>(area.size())};
    for (std::size_t i = 0; i < area.size(); ++i) {
        const Bicomplex d = density(area.z(i));
        g[0][i] = d.z1;
        g[1][i] = d.z2;
    }
    auto ai = [&](int l, Complex zp) {
        // the density at Z' for the subtraction; the other component is irrelevant
        const Bicomplex zz = l == 1 ? Bicomplex{zp, z.z2} : Bicomplex{z.z1, zp};
        const Complex g0 = comp(density(zz), l);
        const auto& k = ker[l - 1];
        const Complex s = singular_area(nodes[l - 1], g[l - 1], g0, [&k](Complex q) { return k.zeta(q); },
                                        k.jacobian(), patch.component(l), zp);
        return std::exp(-lam.component(l)(zp)) * s / (kTwoPi * kI);
    };
    out.area_term = apply_trace_derivative(ai, p, dom, Side::Left, z);

    out.rhs = out.boundary_term - out.remainder - out.area_term;
    out.trace_sum = trace_sum(f, w, z);
    out.report = {"frac_borel_pompeiu", patch.m, patch.k, p.quad.n, mod_k(out.rhs - out.trace_sum), std::nullopt,
                  since(t0)};
    return out;
}

std::optional<double> fit_order(const std::vector<double>& residuals) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < residuals.size(); ++i)
        if (residuals[i] > kResidualFloor) pts.emplace_back(static_cast<double>(i), std::log2(residuals[i]));
    if (pts.size() < 2) return std::nullopt;
    double mx = 0.0, my = 0.0;
    for (auto [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxy = 0.0, sxx = 0.0;
    for (auto [x, y] : pts) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    return -sxy / sxx;
}

ConvergenceResult convergence_study(const std::function<ResidualReport(const Resolution&)>& run,
                                    const Resolution& base, int levels) {
    if (levels < 2) throw DomainError("convergence_study: need at least 2 levels");
    ConvergenceResult out;
    std::vector<double> res;
    for (int lv = 0; lv < levels; ++lv) {
        Resolution r = base;
        r.m <<= lv;
        r.k <<= lv;
        r.n <<= lv;
        r.fd_step = std::ldexp(base.fd_step, -lv);
        const auto t0 = Clock::now();
        ResidualReport rep = run(r);
        if (rep.seconds == 0.0) rep.seconds = since(t0);
        const double v = rep.residual.max();
        if (!res.empty() && res.back() > kResidualFloor && v > kResidualFloor) rep.order = std::log2(res.back() / v);
        res.push_back(v);
        out.reports.push_back(std::move(rep));
    }
    out.order = fit_order(res);
    out.saturated = std::all_of(res.begin(), res.end(), [](double v) { return v <= kResidualFloor; });
    return out;
}

} // namespace bcfrac
