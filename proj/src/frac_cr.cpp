#include "bcfrac/frac_cr.hpp"

#include "bcfrac/errors.hpp"

#include <algorithm>
#include <cmath>

namespace bcfrac {

namespace {

int comp_of(int dir) { return dir < 2 ? 1 : 2; }
bool is_x(int dir) { return dir % 2 == 0; }

Complex comp_value(const Bicomplex& z, int l) { return l == 1 ? z.z1 : z.z2; }
Complex& comp_ref(Bicomplex& z, int l) { return l == 1 ? z.z1 : z.z2; }

std::pair<double, double> interval(const RectDomain& dom, int dir) {
    const Rect r = dom.component(comp_of(dir));
    return is_x(dir) ? std::pair{r.x0, r.x1} : std::pair{r.y0, r.y1};
}

double coordinate(const Bicomplex& z, int dir) {
    const Complex zl = comp_value(z, comp_of(dir));
    return is_x(dir) ? zl.real() : zl.imag();
}

// Point of the line through `base` in direction dir at coordinate t.
Complex line_point(const Bicomplex& base, int dir, double t) {
    const Complex b = comp_value(base, comp_of(dir));
    return is_x(dir) ? Complex(t, b.imag()) : Complex(b.real(), t);
}

// Second-order finite difference of fn at t on [lo, hi]; central when the
// stencil fits, one-sided otherwise.
Complex fd_derivative(const std::function<Complex(double)>& fn, double t, double lo, double hi, double h,
                      bool richardson) {
    auto diff = [&](double s) -> Complex {
        if (t - s >= lo && t + s <= hi) return (fn(t + s) - fn(t - s)) / (2.0 * s);
        if (t + 2.0 * s <= hi) return (-3.0 * fn(t) + 4.0 * fn(t + s) - fn(t + 2.0 * s)) / (2.0 * s);
        if (t - 2.0 * s >= lo) return (3.0 * fn(t) - 4.0 * fn(t - s) + fn(t - 2.0 * s)) / (2.0 * s);
        throw StepError("finite-difference stencil does not fit in the interval");
    };
    const Complex d = diff(h);
    return richardson ? (4.0 * diff(0.5 * h) - d) / 3.0 : d;
}

ScalarWeightFn restriction_impl(const PhiComponent& c, bool x_dir, double fixed, double lo, double hi) {
    ScalarWeightFn w;
    w.lo = lo;
    w.hi = hi;
    if (x_dir) {
        w.phi = [&c, fixed](double t) { return c.eval(t, fixed); };
        w.dphi = [&c, fixed](double t) { return c.dx(t, fixed); };
        if (c.inv_x) w.inverse = [&c, fixed](double u) { return c.inv_x(u, fixed); };
    } else {
        w.phi = [&c, fixed](double t) { return c.eval(fixed, t); };
        w.dphi = [&c, fixed](double t) { return c.dy(fixed, t); };
        if (c.inv_y) w.inverse = [&c, fixed](double u) { return c.inv_y(fixed, u); };
    }
    return w;
}

} // namespace

Hyperbolic Phi4::operator()(const Bicomplex& z) const {
    return {c1.eval(z.z1.real(), z.z1.imag()), c2.eval(z.z2.real(), z.z2.imag())};
}

ScalarWeightFn Phi4::restriction(int dir, const Bicomplex& base, const RectDomain& dom) const {
    if (dir < 0 || dir > 3) throw DomainError("Phi4::restriction: direction must be 0..3");
    const auto [lo, hi] = interval(dom, dir);
    const Complex b = comp_value(base, comp_of(dir));
    // The returned closures refer to this Phi4's components; copy them into
    // shared storage so the weight outlives the caller's Phi4.
    auto keep = std::make_shared<PhiComponent>(component(comp_of(dir)));
    ScalarWeightFn w = restriction_impl(*keep, is_x(dir), is_x(dir) ? b.imag() : b.real(), lo, hi);
    w.phi = [keep, f = w.phi](double t) { return f(t); };
    w.dphi = [keep, f = w.dphi](double t) { return f(t); };
    if (w.inverse) w.inverse = [keep, f = w.inverse](double u) { return f(u); };
    return w;
}

void Phi4::validate(const RectDomain& dom) const {
    for (int l : {1, 2}) {
        const Rect r = dom.component(l);
        const auto& c = component(l);
        if (!c.eval || !c.dx || !c.dy) throw DomainError("Phi4: missing evaluation or partials");
        for (int i = 0; i <= 4; ++i) {
            for (int j = 0; j <= 4; ++j) {
                const double x = r.x0 + (r.x1 - r.x0) * i / 4.0;
                const double y = r.y0 + (r.y1 - r.y0) * j / 4.0;
                const double px = c.dx(x, y), py = c.dy(x, y);
                if (!std::isfinite(c.eval(x, y)) || !std::isfinite(px) || !std::isfinite(py) || !(px > 0.0) ||
                    !(py > 0.0))
                    throw DomainError("Phi4: partials must be finite and positive on the rectangle");
            }
        }
    }
}

Phi4 Phi4::linear() {
    PhiComponent c{[](double x, double y) { return x + y; },
                   [](double, double) { return 1.0; },
                   [](double, double) { return 1.0; },
                   [](double u, double y) { return u - y; },
                   [](double x, double u) { return u - x; },
                   [](double x) { return x; },
                   [](double y) { return y; }};
    return {c, c};
}

Phi4 Phi4::fractal(const std::array<double, 4>& delta) {
    for (double d : delta)
        if (!(d > 0.0 && d <= 1.0)) throw DomainError("Phi4::fractal: exponents must lie in (0, 1]");
    auto make = [](double dx, double dy) {
        return PhiComponent{
            [=](double x, double y) { return std::pow(x, dx) + std::pow(y, dy); },
            [=](double x, double) { return dx * std::pow(x, dx - 1.0); },
            [=](double, double y) { return dy * std::pow(y, dy - 1.0); },
            [=](double u, double y) { return std::pow(std::max(u - std::pow(y, dy), 0.0), 1.0 / dx); },
            [=](double x, double u) { return std::pow(std::max(u - std::pow(x, dx), 0.0), 1.0 / dy); },
            [=](double x) { return std::pow(x, dx); },
            [=](double y) { return std::pow(y, dy); }};
    };
    return {make(delta[0], delta[1]), make(delta[2], delta[3])};
}

Hyperbolic dphi(const Phi4& phi, const Bicomplex& z) {
    const double x1 = z.z1.real(), y1 = z.z1.imag(), x2 = z.z2.real(), y2 = z.z2.imag();
    return {phi.c1.dx(x1, y1) + phi.c1.dy(x1, y1), phi.c2.dx(x2, y2) + phi.c2.dy(x2, y2)};
}

Hyperbolic dphi(const Phi4& phi, const Bicomplex& z, const RectDomain& dom) {
    if (!dom.contains(z)) throw DomainError("dphi: Z outside the rectangle");
    return dphi(phi, z);
}

Bicomplex FracParams::sigma_composite() const { return {{sigma[0], sigma[1]}, {sigma[2], sigma[3]}}; }

void FracParams::validate() const {
    for (double a : alpha)
        if (!(a > 0.0 && a < 1.0)) throw DomainError("FracParams: each alpha must lie in (0, 1)");
    for (int i : {0, 2})
        if (!(sigma[i] > 0.0 && sigma[i] <= 1.0)) throw DomainError("FracParams: sigma0, sigma2 must lie in (0, 1]");
    for (int i : {1, 3})
        if (!(sigma[i] >= 0.0 && sigma[i] <= 1.0)) throw DomainError("FracParams: sigma1, sigma3 must lie in [0, 1]");
    if (!(fd_step > 0.0 && fd_step < 0.25)) throw DomainError("FracParams: fd_step must lie in (0, 0.25)");
    if (table_nodes < 2) throw DomainError("FracParams: table_nodes must be at least 2");
    quad.validate();
}

Complex trace_value(const ProductFunction& f, const Bicomplex& w, int dir, double t) {
    return f.component(comp_of(dir))(line_point(w, dir, t));
}

Bicomplex trace_sum(const ProductFunction& f, const Bicomplex& w, const Bicomplex& z) {
    return {trace_value(f, w, 0, z.z1.real()) + trace_value(f, w, 1, z.z1.imag()),
            trace_value(f, w, 2, z.z2.real()) + trace_value(f, w, 3, z.z2.imag())};
}

TraceIntegral::TraceIntegral(const ProductFunction& f, const Bicomplex& w, const FracParams& p, const RectDomain& dom,
                             Side side, bool tabulate)
    : f_(f), w_(w), p_(p), dom_(dom), side_(side) {
    p_.validate();
    dom_.validate();
    if (!dom_.contains(w_)) throw DomainError("TraceIntegral: W outside the rectangle");
    for (int dir = 0; dir < 4; ++dir) {
        weight_[dir] = p_.phi.restriction(dir, w_, dom_);
        if (tabulate && p_.sigma[dir] > 0.0) {
            ScalarFn trace = [this, dir](double t) { return trace_value(f_, w_, dir, t); };
            table_[dir].emplace(trace, FracOrder{1.0 - p_.alpha[dir], p_.sigma[dir]}, weight_[dir], side_, p_.quad,
                                p_.table_nodes);
        }
    }
}

Complex TraceIntegral::direction(int dir, double t) const {
    if (p_.sigma[dir] == 0.0) return trace_value(f_, w_, dir, t);
    if (table_[dir]) return (*table_[dir])(t);
    ScalarFn trace = [this, dir](double s) { return trace_value(f_, w_, dir, s); };
    return prop_frac_integral(trace, {1.0 - p_.alpha[dir], p_.sigma[dir]}, weight_[dir], side_, t, p_.quad);
}

Complex TraceIntegral::derivative(int dir, double t) const {
    if (p_.sigma[dir] == 0.0) {
        const Complex pt = line_point(w_, dir, t);
        const auto& fl = f_.component(comp_of(dir));
        return is_x(dir) ? fl.dx(pt.real(), pt.imag()) : fl.dy(pt.real(), pt.imag());
    }
    const auto [lo, hi] = interval(dom_, dir);
    return fd_derivative([this, dir](double s) { return direction(dir, s); }, t, lo, hi, p_.fd_step * (hi - lo),
                         p_.richardson);
}

Bicomplex TraceIntegral::operator()(const Bicomplex& z) const {
    return {direction(0, z.z1.real()) + direction(1, z.z1.imag()),
            direction(2, z.z2.real()) + direction(3, z.z2.imag())};
}

Bicomplex TraceIntegral::weighted_cr(const WeightPair& wp, const Bicomplex& z) const {
    return {wp.theta1(z.z1) * derivative(0, z.z1.real()) + wp.phi1(z.z1) * derivative(1, z.z1.imag()),
            wp.theta2(z.z2) * derivative(2, z.z2.real()) + wp.phi2(z.z2) * derivative(3, z.z2.imag())};
}

Bicomplex trace_integral(const ProductFunction& f, const Bicomplex& w, const FracParams& p, const RectDomain& dom,
                         Side side, const Bicomplex& z) {
    if (!dom.contains(z)) throw DomainError("trace_integral: Z outside the rectangle");
    return TraceIntegral(f, w, p, dom, side, false)(z);
}

Bicomplex trace_derivative(const ProductFunction& f, const Bicomplex& w, const FracParams& p, const RectDomain& dom,
                           Side side, const Bicomplex& z) {
    p.validate();
    if (!dom.contains(z) || !dom.contains(w)) throw DomainError("trace_derivative: point outside the rectangle");
    Bicomplex out;
    for (int dir = 0; dir < 4; ++dir) {
        const double t = coordinate(z, dir);
        Complex v;
        if (p.sigma[dir] == 0.0) {
            v = trace_value(f, w, dir, t);
        } else {
            const auto [lo, hi] = interval(dom, dir);
            ScalarFn trace = [&, dir](double s) { return trace_value(f, w, dir, s); };
            v = prop_frac_derivative(trace, {1.0 - p.alpha[dir], p.sigma[dir]}, p.phi.restriction(dir, w, dom), side,
                                     t, p.quad, {p.fd_step * (hi - lo), p.richardson});
        }
        comp_ref(out, comp_of(dir)) += v;
    }
    return out;
}

Bicomplex apply_trace_derivative(const std::function<Complex(int, Complex)>& g, const FracParams& p,
                                 const RectDomain& dom, Side side, const Bicomplex& z) {
    if (!dom.contains(z)) throw DomainError("apply_trace_derivative: Z outside the rectangle");
    Bicomplex out;
    for (int dir = 0; dir < 4; ++dir) {
        const int l = comp_of(dir);
        const double t = coordinate(z, dir);
        Complex v;
        if (p.sigma[dir] == 0.0) {
            v = g(l, comp_value(z, l));
        } else {
            const auto [lo, hi] = interval(dom, dir);
            ScalarFn line = [&, dir, l](double s) { return g(l, line_point(z, dir, s)); };
            v = prop_frac_derivative(line, {1.0 - p.alpha[dir], p.sigma[dir]}, p.phi.restriction(dir, z, dom), side,
                                     t, p.quad, {p.fd_step * (hi - lo), p.richardson});
        }
        comp_ref(out, l) += v;
    }
    return out;
}

namespace {

// D_dir[1] at Z along the line through Z.
Complex derivative_of_one(const FracParams& p, const RectDomain& dom, const Bicomplex& z, int dir) {
    if (p.sigma[dir] == 0.0) return 1.0;
    const auto [lo, hi] = interval(dom, dir);
    ScalarFn one = [](double) { return Complex(1.0); };
    return prop_frac_derivative(one, {1.0 - p.alpha[dir], p.sigma[dir]}, p.phi.restriction(dir, z, dom), Side::Left,
                                coordinate(z, dir), p.quad, {p.fd_step * (hi - lo), p.richardson});
}

Bicomplex remainder_from(const TraceIntegral& tf, const FracParams& p, const RectDomain& dom, const Bicomplex& z) {
    Bicomplex out;
    for (int l : {1, 2}) {
        const int dx = 2 * (l - 1), dy = dx + 1;
        const Complex ix = tf.direction(dx, coordinate(z, dx));
        const Complex iy = tf.direction(dy, coordinate(z, dy));
        Complex v{};
        // An empty integral contributes nothing, whatever D[1] is at the edge.
        if (iy != Complex{}) v += iy * derivative_of_one(p, dom, z, dx);
        if (ix != Complex{}) v += ix * derivative_of_one(p, dom, z, dy);
        comp_ref(out, l) = v;
    }
    return out;
}

} // namespace

Bicomplex remainder_R(const ProductFunction& f, const Bicomplex& w, const FracParams& p, const RectDomain& dom,
                      const Bicomplex& z) {
    if (!dom.contains(z)) throw DomainError("remainder_R: Z outside the rectangle");
    return remainder_from(TraceIntegral(f, w, p, dom, Side::Left, false), p, dom, z);
}

InversionResult inversion_check(const ProductFunction& f, const Bicomplex& w, const FracParams& p,
                                const RectDomain& dom, const Bicomplex& z) {
    if (!dom.contains(z)) throw DomainError("inversion_check: Z outside the rectangle");
    const TraceIntegral tf(f, w, p, dom, Side::Left, true);
    auto g = [&](int l, Complex pt) {
        return l == 1 ? tf.direction(0, pt.real()) + tf.direction(1, pt.imag())
                      : tf.direction(2, pt.real()) + tf.direction(3, pt.imag());
    };
    InversionResult r;
    r.composed = apply_trace_derivative(g, p, dom, Side::Left, z);
    r.trace_sum = trace_sum(f, w, z);
    r.remainder = remainder_from(tf, p, dom, z);
    r.residual = mod_k(r.composed - r.trace_sum - r.remainder);
    return r;
}

Bicomplex frac_cr_apply(const TraceIntegral& tf, const FracParams& p, const WeightPair& wp, const Bicomplex& z) {
    const Bicomplex sigma = p.sigma_composite();
    const Bicomplex inv_dphi = invert(dphi(p.phi, z).to_bicomplex());
    return (units::one - sigma) * tf(z) + sigma * tf.weighted_cr(wp, z) * inv_dphi;
}

Bicomplex frac_cr_apply(const ProductFunction& f, const Bicomplex& w, const FracParams& p, const WeightPair& wp,
                        const RectDomain& dom, Side side, const Bicomplex& z) {
    if (!dom.contains(z)) throw DomainError("frac_cr_apply: Z outside the rectangle");
    return frac_cr_apply(TraceIntegral(f, w, p, dom, side, true), p, wp, z);
}

Bicomplex LambdaWeights::exp_at(const Bicomplex& z, double sign) const {
    return {std::exp(sign * lam1(z.z1)), std::exp(sign * lam2(z.z2))};
}

LambdaWeights LambdaWeights::zero() { return {PlaneFunction::zero(), PlaneFunction::zero()}; }

LambdaWeights LambdaWeights::for_constant_weights(const WeightPair& wp, const FracParams& p) {
    if (!wp.constants) throw UnsupportedWeightsError("lambda constructor requires constant weights");
    if (!p.phi.separable()) throw DomainError("lambda constructor requires an additively separable phi");
    const Bicomplex s = p.sigma_composite();
    const Bicomplex kappa = (units::one - s) * invert(s);
    const auto& c = *wp.constants;
    auto make = [](Complex k, Complex th, Complex ph, const PhiComponent& pc) {
        return PlaneFunction{
            [=](double x, double y) { return k * (pc.sep_x(x) / th + pc.sep_y(y) / ph); },
            [=](double x, double y) { return k * pc.dx(x, y) / th; },
            [=](double x, double y) { return k * pc.dy(x, y) / ph; }};
    };
    return {make(kappa.z1, c[0], c[2], p.phi.c1), make(kappa.z2, c[1], c[3], p.phi.c2)};
}

double lambda_residual(const LambdaWeights& lam, const WeightPair& wp, const FracParams& p,
                       const std::vector<Bicomplex>& probes) {
    if (probes.empty()) throw EmptyProbesError("lambda_residual: no probes");
    const Bicomplex s = p.sigma_composite();
    const Bicomplex kappa = (units::one - s) * invert(s);
    double worst = 0.0;
    for (const auto& z : probes) {
        const Bicomplex rhs = dphi(p.phi, z).to_bicomplex() * kappa;
        for (int l : {1, 2}) {
            const Complex zl = comp_value(z, l);
            const double x = zl.real(), y = zl.imag();
            const auto& lm = lam.component(l);
            const Complex lhs = wp.theta(l)(x, y) * lm.dx(x, y) + wp.phi(l)(x, y) * lm.dy(x, y);
            worst = std::max(worst, std::abs(lhs - comp_value(rhs, l)));
        }
    }
    return worst;
}

Hyperbolic factorization_check(const ProductFunction& f, const Bicomplex& w, const FracParams& p,
                               const WeightPair& wp, const LambdaWeights& lam, const RectDomain& dom, Side side,
                               const Bicomplex& z) {
    if (!dom.contains(z)) throw DomainError("factorization_check: Z outside the rectangle");
    const TraceIntegral tf(f, w, p, dom, side, true);
    const Bicomplex lhs = frac_cr_apply(tf, p, wp, z);
    const Bicomplex sigma = p.sigma_composite();
    const Hyperbolic dp = dphi(p.phi, z);
    Bicomplex rhs;
    for (int l : {1, 2}) {
        const int dx = 2 * (l - 1), dy = dx + 1;
        const Complex zl = comp_value(z, l);
        const auto& lm = lam.component(l);
        // e^{lambda_l} (I F)_l as a function of the plane point
        auto G = [&](double x, double y) {
            return std::exp(lm(x, y)) * (tf.direction(dx, x) + tf.direction(dy, y));
        };
        const auto [xlo, xhi] = interval(dom, dx);
        const auto [ylo, yhi] = interval(dom, dy);
        const Complex gx = fd_derivative([&](double s) { return G(s, zl.imag()); }, zl.real(), xlo, xhi,
                                         p.fd_step * (xhi - xlo), p.richardson);
        const Complex gy = fd_derivative([&](double s) { return G(zl.real(), s); }, zl.imag(), ylo, yhi,
                                         p.fd_step * (yhi - ylo), p.richardson);
        const Complex cr = wp.theta(l)(zl) * gx + wp.phi(l)(zl) * gy;
        const double d = l == 1 ? dp.l1 : dp.l2;
        comp_ref(rhs, l) = std::exp(-lm(zl)) * comp_value(sigma, l) * cr / d;
    }
    return mod_k(lhs - rhs);
}

} // namespace bcfrac
