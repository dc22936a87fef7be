#include "bcfrac/fracops1d.hpp"

#include "bcfrac/errors.hpp"
#include "bcfrac/gauss_legendre.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace bcfrac {

namespace {

void check_alpha(double alpha, const char* where) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError(std::string(where) + ": alpha must lie in (0, 1)");
}

void check_sigma(double sigma, const char* where) {
    if (!(sigma > 0.0 && sigma <= 1.0)) throw DomainError(std::string(where) + ": sigma must lie in (0, 1]");
}

void check_in_domain(const ScalarWeightFn& w, double t, const char* where) {
    if (!w.contains(t)) throw DomainError(std::string(where) + ": t outside [lo, hi]");
}

// 1/(sigma^alpha Gamma(alpha)), written with Gamma(alpha+1) so that tiny
// orders do not overflow.
double integral_prefactor(double alpha, double sigma) {
    return alpha / (std::pow(sigma, alpha) * std::tgamma(alpha + 1.0));
}

Complex integrate(const ScalarFn& f, FracOrder p, const ScalarWeightFn& w, Side side, double t,
                  const detail::SingularRule& rule) {
    const double u = w(t);
    const double L = side == Side::Left ? u - w(w.lo) : w(w.hi) - u;
    if (!(L > 0.0)) return {0.0, 0.0};
    const double c = (p.sigma - 1.0) / p.sigma;
    const double dir = side == Side::Left ? -1.0 : 1.0;
    Complex sum{0.0, 0.0};
    for (std::size_t j = 0; j < rule.y.size(); ++j) {
        const double s = L * rule.y[j];
        const double tau = w.invert(u + dir * s);
        const double kern = c == 0.0 ? rule.w[j] : rule.w[j] * std::exp(c * s);
        sum += kern * f(tau);
    }
    return std::pow(L, p.alpha) * integral_prefactor(p.alpha, p.sigma) * sum;
}

} // namespace

bool ScalarWeightFn::contains(double t) const {
    const double eps = 1e-12 * std::max(1.0, hi - lo);
    return t >= lo - eps && t <= hi + eps;
}

double ScalarWeightFn::invert(double u) const {
    if (inverse) return std::clamp(inverse(u), lo, hi);
    double a = lo;
    double b = hi;
    const double ga = phi(a) - u;
    const double gb = phi(b) - u;
    if (ga >= 0.0) return lo;
    if (gb <= 0.0) return hi;
    double t = a + (b - a) * (-ga) / (gb - ga);
    for (int it = 0; it < 200; ++it) {
        const double g = phi(t) - u;
        if (g == 0.0) return t;
        if (g < 0.0)
            a = t;
        else
            b = t;
        double next = t - g / dphi(t);
        if (!(next > a && next < b)) next = 0.5 * (a + b);
        const double tol = 1e-13 * std::max(1.0, std::abs(next));
        if (std::abs(next - t) <= 1e-3 * tol || b - a <= tol) return next;
        t = next;
    }
    return t;
}

ScalarWeightFn ScalarWeightFn::identity(double lo, double hi) {
    return affine(1.0, 0.0, lo, hi);
}

ScalarWeightFn ScalarWeightFn::affine(double slope, double offset, double lo, double hi) {
    if (!(slope > 0.0)) throw DomainError("ScalarWeightFn::affine: slope must be positive");
    if (!(lo < hi)) throw DomainError("ScalarWeightFn::affine: empty interval");
    return {[=](double t) { return slope * t + offset; }, [=](double) { return slope; }, lo, hi,
            [=](double u) { return (u - offset) / slope; }};
}

ProportionalControl ProportionalControl::standard() {
    return {[](double sigma, double) { return 1.0 - sigma; }, [](double sigma, double) { return sigma; }};
}

void Quadrature1D::validate() const {
    if (n < 2) throw DomainError("Quadrature1D: n must be at least 2");
    if (grading != 0.0 && !(grading >= 1.0)) throw DomainError("Quadrature1D: grading must be >= 1");
    if (!(tail_grading >= 1.0)) throw DomainError("Quadrature1D: tail_grading must be >= 1");
    if (!(tolerance >= 0.0)) throw DomainError("Quadrature1D: tolerance must be non-negative");
}

namespace detail {

std::shared_ptr<const SingularRule> singular_rule(const Quadrature1D& q, double alpha) {
    q.validate();
    const double grade = q.scheme == QuadScheme::GaussJacobiTransformed ? 1.0 / alpha
                         : q.grading > 0.0                             ? q.grading
                                                                       : 2.0 / alpha;
    using Key = std::tuple<int, std::size_t, double, double, double>;
    static std::mutex mu;
    static std::map<Key, std::shared_ptr<const SingularRule>> cache;
    const Key key{static_cast<int>(q.scheme), q.n, alpha, grade, q.tail_grading};
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }

    const std::size_t n_head = std::max<std::size_t>(1, q.n / 2);
    const std::size_t n_tail = std::max<std::size_t>(1, q.n - n_head);
    auto base = [&](std::size_t count) {
        if (q.scheme == QuadScheme::GaussJacobiTransformed)
            return composite_gauss_legendre(std::max<std::size_t>(1, count / kGaussPoints));
        std::vector<QuadNode> mid(count);
        for (std::size_t i = 0; i < count; ++i)
            mid[i] = {(static_cast<double>(i) + 0.5) / static_cast<double>(count), 1.0 / static_cast<double>(count)};
        return mid;
    };

    auto rule = std::make_shared<SingularRule>();
    const double head_scale = std::pow(2.0, -alpha) * grade;
    for (const auto& nd : base(n_head)) {
        rule->y.push_back(0.5 * std::pow(nd.x, grade));
        rule->w.push_back(nd.w * head_scale * std::pow(nd.x, grade * alpha - 1.0));
    }
    const double r = q.tail_grading;
    for (const auto& nd : base(n_tail)) {
        const double y = 1.0 - 0.5 * std::pow(1.0 - nd.x, r);
        rule->y.push_back(y);
        rule->w.push_back(nd.w * 0.5 * r * std::pow(1.0 - nd.x, r - 1.0) * std::pow(y, alpha - 1.0));
    }

    std::lock_guard lock(mu);
    auto [it, inserted] = cache.emplace(key, std::move(rule));
    return it->second;
}

Complex prop_derivative_fd(const ScalarFn& g, const ScalarWeightFn& w, double sigma, Side side, double t,
                           FiniteDiff fd) {
    check_in_domain(w, t, "prop_derivative_fd");
    const double h = fd.h > 0.0 ? fd.h : 1e-4 * w.length();
    const double dist = side == Side::Left ? t - w.lo : w.hi - t;
    if (h >= 0.5 * dist) throw StepError("finite-difference step reaches the base point of the integral");

    std::map<double, Complex> memo;
    auto G = [&](double s) {
        auto [it, inserted] = memo.try_emplace(s);
        if (inserted) it->second = g(s);
        return it->second;
    };
    auto diff = [&](double step) -> Complex {
        if (side == Side::Left) {
            if (t + step <= w.hi) return (G(t + step) - G(t - step)) / (2.0 * step);
            return (3.0 * G(t) - 4.0 * G(t - step) + G(t - 2.0 * step)) / (2.0 * step);
        }
        if (t - step >= w.lo) return (G(t + step) - G(t - step)) / (2.0 * step);
        return (-3.0 * G(t) + 4.0 * G(t + step) - G(t + 2.0 * step)) / (2.0 * step);
    };
    Complex dg = diff(h);
    if (fd.richardson) dg = (4.0 * diff(0.5 * h) - dg) / 3.0;
    const double sgn = side == Side::Left ? 1.0 : -1.0;
    Complex out = sgn * sigma * dg / w.dphi(t);
    if (sigma < 1.0) out += (1.0 - sigma) * G(t);
    return out;
}

} // namespace detail

Complex prop_derivative(const ScalarFn& f, const ScalarFn& df, const ScalarWeightFn& w, double sigma, double t) {
    return prop_derivative(f, df, w, ProportionalControl::standard(), sigma, t);
}

Complex prop_derivative(const ScalarFn& f, const ScalarFn& df, const ScalarWeightFn& w,
                        const ProportionalControl& chi, double sigma, double t) {
    check_sigma(sigma, "prop_derivative");
    check_in_domain(w, t, "prop_derivative");
    const double c1 = chi.chi1(sigma, t);
    const double c0 = chi.chi0(sigma, t);
    Complex out = c0 * df(t) / w.dphi(t);
    if (c1 != 0.0) out += c1 * f(t);
    return out;
}

Complex prop_frac_integral(const ScalarFn& f, FracOrder p, const ScalarWeightFn& w, Side side, double t,
                           const Quadrature1D& q) {
    check_alpha(p.alpha, "prop_frac_integral");
    check_sigma(p.sigma, "prop_frac_integral");
    check_in_domain(w, t, "prop_frac_integral");
    t = std::clamp(t, w.lo, w.hi);
    const Complex val = integrate(f, p, w, side, t, *detail::singular_rule(q, p.alpha));
    if (!std::isfinite(val.real()) || !std::isfinite(val.imag()))
        throw QuadratureError("prop_frac_integral: non-finite quadrature result");
    if (q.tolerance > 0.0 && q.n >= 4) {
        Quadrature1D coarse = q;
        coarse.n = q.n / 2;
        const Complex est = integrate(f, p, w, side, t, *detail::singular_rule(coarse, p.alpha));
        if (std::abs(val - est) > q.tolerance)
            throw QuadratureError("prop_frac_integral: self-estimate " + std::to_string(std::abs(val - est)) +
                                  " exceeds tolerance");
    }
    return val;
}

Complex prop_frac_derivative(const ScalarFn& f, FracOrder p, const ScalarWeightFn& w, Side side, double t,
                             const Quadrature1D& q, FiniteDiff fd) {
    check_alpha(p.alpha, "prop_frac_derivative");
    check_sigma(p.sigma, "prop_frac_derivative");
    const FracOrder inner{1.0 - p.alpha, p.sigma};
    auto g = [&](double s) { return prop_frac_integral(f, inner, w, side, s, q); };
    return detail::prop_derivative_fd(g, w, p.sigma, side, t, fd);
}

Complex hausdorff_derivative(const ScalarFn&, const ScalarFn& dl, double alpha, double a, double t) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("hausdorff_derivative: alpha must lie in (0, 1]");
    if (!(t > a)) throw DomainError("hausdorff_derivative: requires t > a");
    return dl(t) / (alpha * std::pow(t - a, alpha - 1.0));
}

FracIntegralTable::FracIntegralTable(const ScalarFn& f, FracOrder p, ScalarWeightFn w, Side side,
                                     const Quadrature1D& q, std::size_t nodes)
    : p_(p), w_(std::move(w)), side_(side) {
    check_alpha(p.alpha, "FracIntegralTable");
    check_sigma(p.sigma, "FracIntegralTable");
    if (nodes < 2) throw DomainError("FracIntegralTable: need at least 2 nodes");
    u_lo_ = w_(w_.lo);
    u_hi_ = w_(w_.hi);
    const double mid = 0.5 * (u_lo_ + u_hi_);
    const double half = 0.5 * (u_hi_ - u_lo_);
    x_.resize(nodes);
    bary_.resize(nodes);
    h_.resize(nodes);
    for (std::size_t k = 0; k < nodes; ++k) {
        const double theta = (2.0 * static_cast<double>(k) + 1.0) * std::numbers::pi / (2.0 * static_cast<double>(nodes));
        x_[k] = std::cos(theta);
        bary_[k] = (k % 2 == 0 ? 1.0 : -1.0) * std::sin(theta);
        const double u = mid + half * x_[k];
        const double t = w_.invert(u);
        const double dist = side == Side::Left ? u - u_lo_ : u_hi_ - u;
        h_[k] = prop_frac_integral(f, p, w_, side, t, q) / std::pow(dist, p.alpha);
    }
}

Complex FracIntegralTable::operator()(double t) const {
    const double u = w_(t);
    const double dist = side_ == Side::Left ? u - u_lo_ : u_hi_ - u;
    if (!(dist > 0.0)) return {0.0, 0.0};
    const double x = (2.0 * u - u_lo_ - u_hi_) / (u_hi_ - u_lo_);
    Complex num{0.0, 0.0};
    double den = 0.0;
    for (std::size_t k = 0; k < x_.size(); ++k) {
        const double d = x - x_[k];
        if (d == 0.0) return std::pow(dist, p_.alpha) * h_[k];
        const double c = bary_[k] / d;
        num += c * h_[k];
        den += c;
    }
    return std::pow(dist, p_.alpha) * (num / den);
}

ScalarFn FracIntegralTable::as_function() const {
    return [self = *this](double t) { return self(t); };
}

} // namespace bcfrac
