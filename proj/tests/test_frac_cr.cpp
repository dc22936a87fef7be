#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bcfrac/closed_forms.hpp"
#include "bcfrac/errors.hpp"
#include "bcfrac/frac_cr.hpp"

#include <cmath>
#include <random>

using namespace bcfrac;

namespace {

const Complex I{0.0, 1.0};
const RectDomain kDom{0.0, 1.0, 0.0, 1.0, 0.5, 1.5, -0.5, 0.5};
constexpr double kNearOne = 1.0 - 1e-8;

PlaneFunction exp_fn(Complex k) {
    return PlaneFunction::holomorphic([k](Complex z) { return std::exp(k * z); },
                                      [k](Complex z) { return k * std::exp(k * z); });
}

// x^2 + y + i x y^2, not holomorphic
PlaneFunction poly_fn() {
    return {[](double x, double y) { return Complex(x * x + y, x * y * y); },
            [](double x, double y) { return Complex(2 * x, y * y); },
            [](double x, double y) { return Complex(1.0, 2 * x * y); }};
}

ProductFunction smooth_f() { return {exp_fn({0.7, 0.3}), poly_fn()}; }

Bicomplex random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.1, 0.9);
    return {{u(rng), u(rng)}, {0.5 + u(rng), -0.5 + u(rng)}};
}

double kmax(const Bicomplex& z) { return mod_k(z).max(); }

// Riemann-Liouville integral of h on [a, x] by the substitution
// tau = x - (x-a) y^(1/beta), which removes the endpoint singularity.
Complex brute_rl(const std::function<Complex(double)>& h, double beta, double a, double x, int n = 100000) {
    Complex sum{};
    for (int i = 0; i < n; ++i) {
        const double y = (i + 0.5) / n;
        sum += h(x - (x - a) * std::pow(y, 1.0 / beta));
    }
    return sum / double(n) * std::pow(x - a, beta) / (beta * std::tgamma(beta));
}

} // namespace

TEST_CASE("dphi") {
    const Bicomplex z{{0.3, 0.4}, {1.0, 0.2}};
    const Hyperbolic d = dphi(Phi4::linear(), z);
    CHECK(d.l1 == 2.0);
    CHECK(d.l2 == 2.0);
    const RectDomain pos{0.5, 1.5, 0.5, 1.5, 0.5, 1.5, 0.5, 1.5};
    const Hyperbolic f = dphi(Phi4::fractal({0.5, 0.5, 0.5, 0.5}), Bicomplex{{1.0, 1.0}, {1.0, 1.0}}, pos);
    CHECK(f.l1 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f.l2 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f.positive(true));
    CHECK_THROWS_AS(dphi(Phi4::linear(), Bicomplex{{2.0, 0.0}, {1.0, 0.0}}, kDom), DomainError);
    CHECK_THROWS_AS(Phi4::fractal({0.5, 1.5, 0.5, 0.5}), DomainError);
    CHECK_NOTHROW(Phi4::fractal({0.5, 0.25, 0.75, 1.0}).validate(pos));
}

TEST_CASE("parameter validation") {
    FracParams p;
    CHECK_NOTHROW(p.validate());
    p.alpha[2] = 1.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p = {};
    p.sigma[0] = 0.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p = {};
    p.sigma = {1.0, 1.0, 1.0, 1.0};
    CHECK_NOTHROW(p.validate());
    p.fd_step = 0.3;
    CHECK_THROWS_AS(p.validate(), DomainError);
    CHECK_THROWS_AS(TraceIntegral(smooth_f(), Bicomplex{{1.5, 0.0}, {1.0, 0.0}}, FracParams{}, kDom, Side::Left),
                    DomainError);
}

TEST_CASE("trace integral") {
    const auto f = smooth_f();
    const Bicomplex w{{0.4, 0.3}, {0.8, 0.1}}, z{{0.6, 0.7}, {1.2, -0.2}};

    FracParams p;
    p.alpha = {kNearOne, kNearOne, kNearOne, kNearOne};
    p.sigma = {0.6, 0.3, 0.9, 0.5};
    CHECK(kmax(trace_integral(f, w, p, kDom, Side::Left, z) - trace_sum(f, w, z)) <= 1e-6);
    CHECK(kmax(trace_integral(f, w, p, kDom, Side::Right, z) - trace_sum(f, w, z)) <= 1e-6);

    p.alpha = {0.3, 0.5, 0.6, 0.8};
    p.sigma = {1.0, 1.0, 1.0, 1.0};
    const auto one = ProductFunction::constant(1.0, 1.0);
    const Bicomplex got = trace_integral(one, w, p, kDom, Side::Left, z);
    const double e1 = closed::rl_const_integral(0.7, 0.0, 0.6) + closed::rl_const_integral(0.5, 0.0, 0.7);
    const double e2 = closed::rl_const_integral(0.4, 0.5, 1.2) + closed::rl_const_integral(0.2, -0.5, -0.2);
    CHECK(std::abs(got.z1 - e1) <= 1e-7);
    CHECK(std::abs(got.z2 - e2) <= 1e-7);
    {
        FracParams gj = p;
        gj.quad.scheme = QuadScheme::GaussJacobiTransformed;
        gj.quad.n = 256;
        const Bicomplex v = trace_integral(one, w, gj, kDom, Side::Left, z);
        CHECK(std::abs(v.z1 - e1) <= 1e-12);
        CHECK(std::abs(v.z2 - e2) <= 1e-12);
    }

    const Bicomplex corner = kDom.lower();
    CHECK(trace_integral(f, corner, p, kDom, Side::Left, corner) == Bicomplex{});
    CHECK(trace_integral(f, kDom.upper(), p, kDom, Side::Right, kDom.upper()) == Bicomplex{});
    CHECK_THROWS_AS(trace_integral(f, w, p, kDom, Side::Left, Bicomplex{{0.5, 1.5}, {1.0, 0.0}}), DomainError);

    // tabulated and direct evaluation agree
    p.sigma = {0.7, 0.4, 0.7, 0.4};
    const TraceIntegral tab(f, w, p, kDom, Side::Left, true);
    CHECK(kmax(tab(z) - trace_integral(f, w, p, kDom, Side::Left, z)) <= 1e-7);
}

TEST_CASE("trace derivative") {
    const Bicomplex w{{0.4, 0.3}, {0.8, 0.1}}, z{{0.6, 0.7}, {1.2, -0.2}};
    FracParams p;
    p.alpha = {0.3, 0.5, 0.6, 0.8};
    p.sigma = {1.0, 1.0, 1.0, 1.0};
    const auto one = ProductFunction::constant(1.0, 1.0);
    const Bicomplex got = trace_derivative(one, w, p, kDom, Side::Left, z);
    const double e1 = closed::rl_const_derivative(0.7, 0.0, 0.6) + closed::rl_const_derivative(0.5, 0.0, 0.7);
    const double e2 = closed::rl_const_derivative(0.4, 0.5, 1.2) + closed::rl_const_derivative(0.2, -0.5, -0.2);
    CHECK(std::abs(got.z1 - e1) <= 1e-6);
    CHECK(std::abs(got.z2 - e2) <= 1e-6);

    const auto f = smooth_f();
    p.alpha = {kNearOne, kNearOne, kNearOne, kNearOne};
    p.sigma = {0.6, 0.0, 0.9, 0.5};
    CHECK(kmax(trace_derivative(f, w, p, kDom, Side::Left, z) - trace_sum(f, w, z)) <= 1e-6);
}

TEST_CASE("linearity of the trace operators") {
    const ProductFunction f = smooth_f(), g{poly_fn(), exp_fn({-0.2, 1.1})};
    const Complex a{2.0, -1.0}, b{0.5, 3.0};
    auto comb = [&](const PlaneFunction& u, const PlaneFunction& v) {
        return PlaneFunction{[=](double x, double y) { return a * u(x, y) + b * v(x, y); },
                             [=](double x, double y) { return a * u.dx(x, y) + b * v.dx(x, y); },
                             [=](double x, double y) { return a * u.dy(x, y) + b * v.dy(x, y); }};
    };
    const ProductFunction h{comb(f.f1, g.f1), comb(f.f2, g.f2)};
    const Bicomplex w{{0.4, 0.3}, {0.8, 0.1}}, z{{0.6, 0.7}, {1.2, -0.2}};
    FracParams p;
    p.sigma = {0.7, 0.7, 0.7, 0.7};
    p.quad.n = 512;
    for (Side side : {Side::Left, Side::Right}) {
        const Bicomplex lin = a * trace_integral(f, w, p, kDom, side, z) + b * trace_integral(g, w, p, kDom, side, z);
        CHECK(kmax(trace_integral(h, w, p, kDom, side, z) - lin) <= 1e-12);
        const Bicomplex dlin =
            a * trace_derivative(f, w, p, kDom, side, z) + b * trace_derivative(g, w, p, kDom, side, z);
        CHECK(kmax(trace_derivative(h, w, p, kDom, side, z) - dlin) <= 1e-8);
    }
}

TEST_CASE("remainder") {
    const Bicomplex w{{0.4, 0.3}, {0.8, 0.1}}, z{{0.6, 0.7}, {1.2, -0.2}};
    FracParams p;
    p.alpha = {0.3, 0.5, 0.6, 0.8};
    p.sigma = {1.0, 1.0, 1.0, 1.0};
    const auto one = ProductFunction::constant(1.0, 1.0);
    const Bicomplex r = remainder_R(one, w, p, kDom, z);
    using namespace closed;
    const double e1 = rl_const_integral(0.5, 0.0, 0.7) * rl_const_derivative(0.7, 0.0, 0.6) +
                      rl_const_integral(0.7, 0.0, 0.6) * rl_const_derivative(0.5, 0.0, 0.7);
    const double e2 = rl_const_integral(0.2, -0.5, -0.2) * rl_const_derivative(0.4, 0.5, 1.2) +
                      rl_const_integral(0.4, 0.5, 1.2) * rl_const_derivative(0.2, -0.5, -0.2);
    CHECK(std::abs(r.z1 - e1) <= 1e-6);
    CHECK(std::abs(r.z2 - e2) <= 1e-6);
    CHECK(remainder_R(smooth_f(), kDom.lower(), p, kDom, kDom.lower()) == Bicomplex{});
}

TEST_CASE("inversion identity") {
    std::mt19937_64 rng(5);
    FracParams p;
    p.alpha = {0.5, 0.5, 0.5, 0.5};
    p.sigma = {0.7, 0.7, 0.7, 0.7};
    p.quad.n = 1024;
    const auto f = smooth_f();
    for (int i = 0; i < 4; ++i) {
        const Bicomplex w = random_point(rng), z = random_point(rng);
        CHECK(inversion_check(f, w, p, kDom, z).residual.max() <= 1e-3);
    }
    const Bicomplex w = random_point(rng), z = random_point(rng);
    CHECK(inversion_check(ProductFunction::zero(), w, p, kDom, z).residual.max() == 0.0);

    // residual decreases under refinement
    double prev = 1.0;
    for (std::size_t n : {128, 256, 512}) {
        p.quad.n = n;
        const double r = inversion_check(f, w, p, kDom, z).residual.max();
        CHECK(r < 0.5 * prev);
        prev = r;
    }

    p.alpha = {kNearOne, kNearOne, kNearOne, kNearOne};
    p.quad.n = 1024;
    CHECK(inversion_check(f, w, p, kDom, z).residual.max() <= 1e-6);
    p.quad.scheme = QuadScheme::GaussJacobiTransformed;
    p.quad.n = 256;
    CHECK(inversion_check(f, w, p, kDom, z).residual.max() <= 1e-6);
}

TEST_CASE("fractional Cauchy-Riemann operator, sigma = 1") {
    const auto f = smooth_f();
    const auto wp = WeightPair::classical();
    const Bicomplex w{{0.4, 0.3}, {0.8, 0.1}}, z{{0.6, 0.7}, {1.2, -0.2}};
    FracParams p;
    p.alpha = {0.4, 0.5, 0.65, 0.5};
    p.sigma = {1.0, 0.0, 1.0, 0.0};

    // d/dx I^beta g = I^beta g' + g(a) (x-a)^(beta-1)/Gamma(beta); the y
    // directions carry the identity, so their partial is f_y on the trace.
    const Bicomplex got = frac_cr_apply(f, w, p, wp, kDom, Side::Left, z) * Bicomplex{2.0, 2.0};
    for (int l : {1, 2}) {
        const auto& fl = f.component(l);
        const Complex zl = l == 1 ? z.z1 : z.z2, wl = l == 1 ? w.z1 : w.z2;
        const double beta = 1.0 - p.alpha[2 * (l - 1)], a = kDom.component(l).x0;
        auto gp = [&](double t) { return fl.dx(t, wl.imag()); };
        const Complex dx = brute_rl(gp, beta, a, zl.real()) +
                           fl(a, wl.imag()) * std::pow(zl.real() - a, beta - 1.0) / std::tgamma(beta);
        const Complex expect = dx + I * fl.dy(wl.real(), zl.imag());
        CHECK(std::abs((l == 1 ? got.z1 : got.z2) - expect) <= 1e-5);
    }

    // order near one: the weighted derivative of the trace sum
    p.alpha = {kNearOne, kNearOne, kNearOne, kNearOne};
    const Bicomplex near = frac_cr_apply(f, w, p, wp, kDom, Side::Left, z) * Bicomplex{2.0, 2.0};
    const Bicomplex ts{f.f1.dx(z.z1.real(), w.z1.imag()) + I * f.f1.dy(w.z1.real(), z.z1.imag()),
                       f.f2.dx(z.z2.real(), w.z2.imag()) + I * f.f2.dy(w.z2.real(), z.z2.imag())};
    CHECK(kmax(near - ts) <= 1e-5);

    // holomorphic F on the diagonal Z = W
    const ProductFunction h{exp_fn({0.7, 0.3}), exp_fn({-1.0, 0.5})};
    CHECK(kmax(frac_cr_apply(h, w, p, wp, kDom, Side::Left, w)) <= 1e-5);
}

TEST_CASE("lambda equation") {
    const auto wp = WeightPair::classical();
    FracParams p;
    p.sigma = {0.7, 0.0, 0.7, 0.0};
    const double g = 2.0 * 0.3 / 0.7;
    PlaneFunction gx{[g](double x, double) { return Complex(g * x); }, [g](double, double) { return Complex(g); },
                     [](double, double) { return Complex{}; }};
    std::mt19937_64 rng(9);
    std::vector<Bicomplex> probes;
    for (int i = 0; i < 20; ++i) probes.push_back(random_point(rng));
    CHECK(lambda_residual({gx, gx}, wp, p, probes) <= 1e-12);
    CHECK(lambda_residual(LambdaWeights::for_constant_weights(wp, p), wp, p, probes) <= 1e-12);
    CHECK_THROWS_AS(lambda_residual({gx, gx}, wp, p, {}), EmptyProbesError);

    // constructor on other constant weights and a bicomplex sigma
    p.sigma = {0.6, 0.3, 0.8, 0.1};
    const auto cw = WeightPair::constant({1.0, 1.0}, {-2.0, 2.0});
    CHECK(lambda_residual(LambdaWeights::for_constant_weights(cw, p), cw, p, probes) <= 1e-12);
    CHECK_THROWS_AS(LambdaWeights::for_constant_weights(WeightPair::scaled_classical(PlaneFunction::constant(2.0)), p),
                    UnsupportedWeightsError);

    p.sigma = {1.0, 0.0, 1.0, 0.0};
    CHECK(lambda_residual(LambdaWeights::zero(), wp, p, probes) == 0.0);

    // x^2 against a constant right-hand side: the residual grows with x
    p.sigma = {0.7, 0.0, 0.7, 0.0};
    PlaneFunction sq{[](double x, double) { return Complex(x * x); }, [](double x, double) { return Complex(2 * x); },
                     [](double, double) { return Complex{}; }};
    const double r1 = lambda_residual({sq, sq}, wp, p, {Bicomplex{{2.0, 0.0}, {2.0, 0.0}}});
    const double r2 = lambda_residual({sq, sq}, wp, p, {Bicomplex{{4.0, 0.0}, {4.0, 0.0}}});
    CHECK(r1 == doctest::Approx(4.0 - g));
    CHECK(r2 == doctest::Approx(8.0 - g));
}

TEST_CASE("lambda factorisation") {
    const auto f = smooth_f();
    const Bicomplex w{{0.4, 0.3}, {0.8, 0.1}}, z{{0.6, 0.7}, {1.2, -0.2}};
    const auto wp = WeightPair::classical();
    FracParams p;
    p.quad.n = 512;
    p.sigma = {1.0, 0.0, 1.0, 0.0};
    CHECK(factorization_check(f, w, p, wp, LambdaWeights::zero(), kDom, Side::Left, z).max() <= 1e-6);

    p.sigma = {0.7, 0.0, 0.7, 0.0};
    for (Side side : {Side::Left, Side::Right}) {
        CHECK(factorization_check(f, w, p, wp, LambdaWeights::for_constant_weights(wp, p), kDom, side, z).max() <=
              1e-3);
        CHECK(factorization_check(ProductFunction::zero(), w, p, wp, LambdaWeights::for_constant_weights(wp, p), kDom,
                                  side, z)
                  .max() == 0.0);
    }
    const double g = 2.0 * 0.3 / 0.7;
    PlaneFunction gx{[g](double x, double) { return Complex(g * x); }, [g](double, double) { return Complex(g); },
                     [](double, double) { return Complex{}; }};
    CHECK(factorization_check(f, w, p, wp, {gx, gx}, kDom, Side::Left, z).max() <= 1e-3);

    // a lambda that misses the equation breaks the factorisation
    CHECK(factorization_check(f, w, p, wp, LambdaWeights::zero(), kDom, Side::Left, z).max() > 1e-2);

    p.sigma = {0.6, 0.3, 0.8, 0.1};
    const auto cw = WeightPair::constant({1.0, 1.0}, {-2.0, 2.0});
    CHECK(factorization_check(f, w, p, cw, LambdaWeights::for_constant_weights(cw, p), kDom, Side::Left, z).max() <=
          1e-3);
}
