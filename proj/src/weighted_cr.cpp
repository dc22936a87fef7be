#include "bcfrac/weighted_cr.hpp"

#include "bcfrac/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace bcfrac {

namespace {

const Complex kI{0.0, 1.0};

template <class Op>
Bicomplex per_component(const Bicomplex& z, Op op) {
    return {op(1, z.z1), op(2, z.z2)};
}

} // namespace

PlaneFunction PlaneFunction::constant(Complex c) {
    return {[c](double, double) { return c; }, [](double, double) { return Complex{}; },
            [](double, double) { return Complex{}; }};
}

PlaneFunction PlaneFunction::holomorphic(std::function<Complex(Complex)> f, std::function<Complex(Complex)> df) {
    return {[f](double x, double y) { return f({x, y}); }, [df](double x, double y) { return df({x, y}); },
            [df](double x, double y) { return kI * df({x, y}); }};
}

double partials_consistency(const PlaneFunction& f, const std::vector<Complex>& probes, double h) {
    if (probes.empty()) throw EmptyProbesError("partials_consistency: no probes");
    double worst = 0.0;
    for (Complex p : probes) {
        const double x = p.real(), y = p.imag();
        const Complex fx = (f(x + h, y) - f(x - h, y)) / (2.0 * h);
        const Complex fy = (f(x, y + h) - f(x, y - h)) / (2.0 * h);
        worst = std::max({worst, std::abs(fx - f.dx(x, y)), std::abs(fy - f.dy(x, y))});
    }
    return worst;
}

WeightPair WeightPair::classical() { return constant(1.0, kI); }

WeightPair WeightPair::constant(Complex theta, Complex phi) { return constant(theta, theta, phi, phi); }

WeightPair WeightPair::constant(Complex theta1, Complex theta2, Complex phi1, Complex phi2) {
    return {PlaneFunction::constant(theta1), PlaneFunction::constant(theta2), PlaneFunction::constant(phi1),
            PlaneFunction::constant(phi2), std::array<Complex, 4>{theta1, theta2, phi1, phi2}};
}

WeightPair WeightPair::scaled_classical(const PlaneFunction& g) {
    PlaneFunction ig{[g](double x, double y) { return kI * g(x, y); },
                     [g](double x, double y) { return kI * g.dx(x, y); },
                     [g](double x, double y) { return kI * g.dy(x, y); }};
    return {g, g, ig, ig, std::nullopt};
}

WeightPair WeightPair::orthogonal(const PlaneFunction& theta1, const PlaneFunction& theta2, const PlaneFunction& g1,
                                  const PlaneFunction& g2) {
    auto partner = [](const PlaneFunction& th, const PlaneFunction& g) {
        return PlaneFunction{
            [th, g](double x, double y) { return kI * g(x, y) * th(x, y); },
            [th, g](double x, double y) { return kI * (g.dx(x, y) * th(x, y) + g(x, y) * th.dx(x, y)); },
            [th, g](double x, double y) { return kI * (g.dy(x, y) * th(x, y) + g(x, y) * th.dy(x, y)); }};
    };
    return {theta1, theta2, partner(theta1, g1), partner(theta2, g2), std::nullopt};
}

OrthogonalityReport check_orthogonality(const WeightPair& wp, const std::vector<Bicomplex>& probes) {
    if (probes.empty()) throw EmptyProbesError("check_orthogonality: no probes");
    OrthogonalityReport rep;
    for (const auto& z : probes) {
        for (int l : {1, 2}) {
            const Complex zl = l == 1 ? z.z1 : z.z2;
            const Complex th = wp.theta(l)(zl);
            const Complex ph = wp.phi(l)(zl);
            const double inner = std::abs(inner_c(th, ph));
            // p_{l,2} phi_l = -i q_{l,1} theta_l
            const double crit = std::abs(th.imag() * ph + kI * ph.real() * th);
            rep.max_inner = std::max(rep.max_inner, inner);
            rep.max_criterion = std::max(rep.max_criterion, crit);
            rep.max_discrepancy = std::max(rep.max_discrepancy, std::abs(inner - crit));
        }
    }
    return rep;
}

Bicomplex apply_cr_weighted(const WeightPair& wp, const ProductFunction& f, const Bicomplex& z) {
    return per_component(z, [&](int l, Complex zl) {
        const double x = zl.real(), y = zl.imag();
        const auto& fl = f.component(l);
        return wp.theta(l)(x, y) * fl.dx(x, y) + wp.phi(l)(x, y) * fl.dy(x, y);
    });
}

Bicomplex apply_cr_weighted(const WeightPair& wp, const ProductFunction& f, const Bicomplex& z,
                            const RectDomain& domain) {
    if (!domain.contains(z)) throw DomainError("apply_cr_weighted: Z outside the rectangle");
    return apply_cr_weighted(wp, f, z);
}

Divergence weight_divergence(const WeightPair& wp, const Bicomplex& z) {
    Divergence d;
    for (int l : {1, 2}) {
        const Complex zl = l == 1 ? z.z1 : z.z2;
        const double x = zl.real(), y = zl.imag();
        const Complex s = wp.theta(l).dx(x, y) + wp.phi(l).dy(x, y);
        (l == 1 ? d.a.z1 : d.a.z2) = s.real();
        (l == 1 ? d.b.z1 : d.b.z2) = s.imag();
    }
    return d;
}

Bicomplex boundary_measure(const WeightPair& wp, const Bicomplex& z, const Tangent& t) {
    return {wp.theta1(z.z1) * t.dy1 - wp.phi1(z.z1) * t.dx1, wp.theta2(z.z2) * t.dy2 - wp.phi2(z.z2) * t.dx2};
}

Complex ConstantKernel::zeta(Complex z) const { return -kI * (phi * z.real() - theta * z.imag()); }

Complex ConstantKernel::operator()(Complex v, Complex z) const {
    const Complex d = zeta(v) - zeta(z);
    if (d == Complex{}) throw NotInvertibleError("cauchy_kernel: V - Z is not invertible");
    return 1.0 / (2.0 * std::numbers::pi * kI * d);
}

double ConstantKernel::jacobian() const {
    // columns d zeta/dx = -i phi, d zeta/dy = i theta
    const Complex cx = -kI * phi, cy = kI * theta;
    return cx.real() * cy.imag() - cx.imag() * cy.real();
}

namespace {

ConstantKernel kernel_for(const WeightPair& wp, int l) {
    if (!wp.constants) throw UnsupportedWeightsError("Cauchy kernel requires constant weights");
    const auto& c = *wp.constants;
    ConstantKernel k{l == 1 ? c[0] : c[1], l == 1 ? c[2] : c[3]};
    if (std::abs(k.jacobian()) <= 1e-12 * std::abs(k.theta) * std::abs(k.phi))
        throw UnsupportedWeightsError("Cauchy kernel requires real-linearly independent weights");
    return k;
}

} // namespace

Bicomplex cauchy_kernel(const WeightPair& wp, const Bicomplex& v, const Bicomplex& z) {
    const ConstantKernel k1 = kernel_for(wp, 1), k2 = kernel_for(wp, 2);
    return {k1(v.z1, z.z1), k2(v.z2, z.z2)};
}

Complex kernel_constant(Complex theta, Complex phi) {
    const ConstantKernel k{theta, phi};
    if (std::abs(k.jacobian()) <= 1e-12 * std::abs(theta) * std::abs(phi))
        throw UnsupportedWeightsError("Cauchy kernel requires real-linearly independent weights");
    using Key = std::tuple<double, double, double, double>;
    static std::mutex mu;
    static std::map<Key, Complex> cache;
    const Key key{theta.real(), theta.imag(), phi.real(), phi.imag()};
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    // Loop integral of E(v, 0) d rho(v) over the unit circle; the integrand is
    // smooth and periodic, so the trapezoidal rule converges geometrically.
    constexpr int n = 512;
    Complex sum{};
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * std::numbers::pi * i / n;
        const Complex v{std::cos(t), std::sin(t)};
        const Complex drho = theta * std::cos(t) + phi * std::sin(t);  // theta dy - phi dx
        sum += k(v, 0.0) * drho;
    }
    const Complex c = sum * (2.0 * std::numbers::pi / n);
    cache.emplace(key, c);
    return c;
}

Bicomplex kernel_constant(const WeightPair& wp) {
    const ConstantKernel k1 = kernel_for(wp, 1), k2 = kernel_for(wp, 2);
    return {kernel_constant(k1.theta, k1.phi), kernel_constant(k2.theta, k2.phi)};
}

} // namespace bcfrac
