#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bcfrac/errors.hpp"
#include "bcfrac/gauss_legendre.hpp"
#include "bcfrac/quadrature_verify.hpp"

#include <cmath>
#include <numbers>

using namespace bcfrac;

namespace {

const Complex I{0.0, 1.0};
constexpr double kPi = std::numbers::pi;
const RectDomain kDom{0.0, 1.0, 0.0, 1.0, 0.5, 1.5, -0.5, 0.5};
constexpr double kNearOne = 1.0 - 1e-8;

double kmax(const Bicomplex& z) { return mod_k(z).max(); }

PlaneFunction exp_fn(Complex k) {
    return PlaneFunction::holomorphic([k](Complex z) { return std::exp(k * z); },
                                      [k](Complex z) { return k * std::exp(k * z); });
}

PlaneFunction identity_fn() {
    return PlaneFunction::holomorphic([](Complex z) { return z; }, [](Complex) { return Complex(1.0); });
}

PlaneFunction conj_fn() {
    return {[](double x, double y) { return Complex(x, -y); }, [](double, double) { return Complex(1.0); },
            [](double, double) { return Complex(0.0, -1.0); }};
}

// exp(k conj z)
PlaneFunction exp_conj_fn(Complex k) {
    return {[k](double x, double y) { return std::exp(k * Complex(x, -y)); },
            [k](double x, double y) { return k * std::exp(k * Complex(x, -y)); },
            [k](double x, double y) { return -I * k * std::exp(k * Complex(x, -y)); }};
}

// x^2 y + i (x - y^3)
PlaneFunction poly_fn() {
    return {[](double x, double y) { return Complex(x * x * y, x - y * y * y); },
            [](double x, double y) { return Complex(2 * x * y, 1.0); },
            [](double x, double y) { return Complex(x * x, -3 * y * y); }};
}

// x^2 + y + i x y^2
PlaneFunction poly2_fn() {
    return {[](double x, double y) { return Complex(x * x + y, x * y * y); },
            [](double x, double y) { return Complex(2 * x, y * y); },
            [](double x, double y) { return Complex(1.0, 2 * x * y); }};
}

ProductFunction pair(const PlaneFunction& f) { return {f, f}; }

SurfacePatch unit_square(std::size_t m, std::size_t k) { return {Rect{}, Rect{}, m, k}; }

} // namespace

TEST_CASE("nodes") {
    const Rect r{0.0, 2.0, -1.0, 0.5};
    double area = 0.0;
    for (const auto& n : area_nodes(r, 3)) area += n.w;
    CHECK(area == doctest::Approx(3.0).epsilon(1e-14));
    const auto b = boundary_nodes(r, 2);
    CHECK(b.size() == 4 * 2 * kGaussPoints);
    double len = 0.0;
    for (const auto& n : b) len += n.w;
    CHECK(len == doctest::Approx(7.0).epsilon(1e-14));
    CHECK(b.front().tangent == Complex(1.0, 0.0));  // bottom edge first, counterclockwise
    CHECK(b.back().tangent == Complex(0.0, -1.0));
}

TEST_CASE("contour integral") {
    const auto patch = SurfacePatch::from_domain(kDom, 4, 64);
    CHECK(kmax(contour_integral(ProductFunction::constant(1.0, 1.0), patch, Measure::dZ)) <= 1e-14);

    const Bicomplex w{{0.3, 0.6}, {1.1, 0.2}};
    ProductFunction pole{{[&](double x, double y) { return 1.0 / (Complex(x, y) - w.z1); }, {}, {}},
                         {[&](double x, double y) { return 1.0 / (Complex(x, y) - w.z2); }, {}, {}}};
    const Bicomplex res = contour_integral(pole, patch, Measure::dZ);
    CHECK(std::abs(res.z1 - 2.0 * kPi * I) <= 1e-8);
    CHECK(std::abs(res.z2 - 2.0 * kPi * I) <= 1e-8);

    CHECK(kmax(contour_integral(pair(identity_fn()), unit_square(4, 4), Measure::dZ)) <= 1e-10);

    // d rho = -i dz for classical weights
    const auto wp = WeightPair::classical();
    const auto f = pair(conj_fn());
    CHECK(kmax(contour_integral(f, patch, Measure::dRho, &wp) + I * contour_integral(f, patch, Measure::dZ)) <=
          1e-13);
    CHECK_THROWS_AS(contour_integral(f, patch, Measure::dRho), DomainError);
}

TEST_CASE("surface integral") {
    const auto sq = unit_square(4, 4);
    const Bicomplex one = surface_integral(ProductFunction::constant(1.0, 1.0), sq);
    CHECK(std::abs(one.z1 - Complex(0, -2)) <= 1e-14);
    CHECK(std::abs(one.z2 - Complex(0, -2)) <= 1e-14);
    CHECK(surface_integral(ProductFunction::zero(), sq) == Bicomplex{});
    PlaneFunction x{[](double x, double) { return Complex(x); }, {}, {}};
    const Bicomplex xs = surface_integral(pair(x), sq);
    CHECK(std::abs(xs.z1 - Complex(0, -1)) <= 1e-14);
    CHECK(std::abs(xs.z2 - Complex(0, -1)) <= 1e-14);
}

TEST_CASE("polygon Cauchy transform") {
    const std::vector<Complex> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    // outside the square the integrand is smooth: compare with tensor Gauss-Legendre
    for (Complex z : {Complex(1.5, 0.3), Complex(-0.2, -0.4), Complex(0.5, 2.0)}) {
        Complex ref{};
        for (const auto& n : area_nodes(Rect{}, 32)) ref += n.w / (n.z - z);
        CHECK(std::abs(polygon_cauchy_transform(sq, z) - ref) <= 1e-10);
    }
    // odd symmetry about the centre
    CHECK(std::abs(polygon_cauchy_transform(sq, {0.5, 0.5})) <= 1e-14);
    // at a vertex the transform is still finite: compare a symmetric split
    const std::vector<Complex> big{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
    CHECK(std::abs(polygon_cauchy_transform(big, 0.0)) <= 1e-14);
    CHECK_THROWS_AS(polygon_cauchy_transform({{0, 0}, {1, 0}}, 0.5), DomainError);
}

TEST_CASE("weighted Gauss theorem") {
    const auto cl = WeightPair::classical();
    CHECK(gauss_residual(ProductFunction{exp_fn({1.0, 0.5}), identity_fn()}, cl, SurfacePatch::from_domain(kDom, 8, 8))
              .residual.max() <= 1e-10);
    CHECK(gauss_residual(pair(conj_fn()), cl, unit_square(64, 64)).residual.max() <= 1e-8);

    // constant weights 1 + i with an orthogonal partner i g (1 + i), g = 2
    const Complex th{1.0, 1.0};
    const auto cw = WeightPair::constant(th, 2.0 * I * th);
    CHECK(std::abs(inner_c(th, 2.0 * I * th)) == 0.0);
    CHECK(gauss_residual({poly_fn(), poly2_fn()}, cw, SurfacePatch::from_domain(kDom, 64, 64)).residual.max() <= 1e-8);

    // non-constant orthogonal weights
    PlaneFunction th1{[](double x, double y) { return Complex(1.0 + x * y, 0.5 * x); },
                      [](double x, double y) { return Complex(y, 0.5); }, [](double x, double) { return Complex(x); }};
    PlaneFunction g1{[](double x, double y) { return Complex(1.0 + x * x + y); },
                     [](double x, double) { return Complex(2 * x); }, [](double, double) { return Complex(1.0); }};
    const auto ow = WeightPair::orthogonal(th1, exp_fn({0.3, -0.2}), g1, PlaneFunction::constant(0.5));
    CHECK(check_orthogonality(ow, {Bicomplex{{0.3, 0.2}, {1.0, 0.1}}}).max_inner <= 1e-15);
    CHECK(gauss_residual({exp_conj_fn({0.5, 1.0}), poly_fn()}, ow, SurfacePatch::from_domain(kDom, 32, 32))
              .residual.max() <= 1e-6);
}

TEST_CASE("classical Borel-Pompeiu") {
    const auto patch = SurfacePatch::from_domain(kDom, 8, 64);
    const Bicomplex w{{0.3, 0.6}, {1.1, 0.2}};
    CHECK(borel_pompeiu_classical(pair(identity_fn()), w, patch).report.residual.max() <= 1e-8);
    CHECK(borel_pompeiu_classical({exp_fn({1.0, -2.0}), exp_fn({0.5, 0.5})}, w, patch).report.residual.max() <= 1e-8);
    const auto c = borel_pompeiu_classical(ProductFunction::constant({2.0, 1.0}, -3.0), w, patch);
    CHECK(kmax(c.reconstructed - Bicomplex{{2.0, 1.0}, -3.0}) <= 1e-8);

    const auto fine = SurfacePatch::from_domain(kDom, 128, 64);
    CHECK(borel_pompeiu_classical(pair(conj_fn()), w, fine).report.residual.max() <= 1e-3);
    double prev = 1.0;
    for (std::size_t m : {8, 16, 32}) {
        const double r =
            borel_pompeiu_classical({exp_conj_fn({1.0, 0.5}), poly_fn()}, w, SurfacePatch::from_domain(kDom, m, 64))
                .report.residual.max();
        CHECK(r <= 1e-3);
        CHECK((r < prev || r <= 1e-12));
        prev = r;
    }
    CHECK_THROWS_AS(borel_pompeiu_classical(pair(identity_fn()), Bicomplex{{0.0, 0.5}, {1.0, 0.0}}, patch),
                    WOnBoundaryError);
}

TEST_CASE("weighted Borel-Pompeiu with constant weights") {
    const Bicomplex w{{0.3, 0.6}, {1.1, 0.2}};
    const auto patch = SurfacePatch::from_domain(kDom, 64, 64);
    const auto wp = WeightPair::constant(1.0, 2.0 * I);
    CHECK(borel_pompeiu_weighted(pair(identity_fn()), w, wp, patch).report.residual.max() <= 1e-6);
    // non-holomorphic data: the subtracted area quadrature is second order
    const ProductFunction nh{poly_fn(), exp_conj_fn({0.5, 1.0})};
    const double r32 = borel_pompeiu_weighted(nh, w, wp, SurfacePatch::from_domain(kDom, 32, 64)).report.residual.max();
    const double r64 = borel_pompeiu_weighted(nh, w, wp, patch).report.residual.max();
    CHECK(r64 <= 1e-4);
    CHECK(r64 < 0.5 * r32);
    // classical weights agree with the classical formula
    const auto f = ProductFunction{exp_conj_fn({1.0, 0.5}), poly_fn()};
    CHECK(kmax(borel_pompeiu_weighted(f, w, WeightPair::classical(), patch).reconstructed -
               borel_pompeiu_classical(f, w, patch).reconstructed) <= 1e-8);
    // a negative orientation of the weights is handled too
    const auto neg = WeightPair::constant({1.0, 1.0}, {1.0, -1.0});
    CHECK(borel_pompeiu_weighted(f, w, neg, patch).report.residual.max() <= 1e-4);
    CHECK(borel_pompeiu_weighted(pair(identity_fn()), w, neg, patch).report.residual.max() <= 1e-8);
    CHECK_THROWS_AS(
        borel_pompeiu_weighted(f, w, WeightPair::scaled_classical(PlaneFunction::constant(2.0)), patch),
        UnsupportedWeightsError);
}

TEST_CASE("fractional Gauss theorem") {
    const ProductFunction f{exp_fn({0.7, 0.3}), poly2_fn()};
    const Bicomplex w{{0.4, 0.3}, {0.8, 0.1}};
    const auto wp = WeightPair::classical();
    const auto patch = SurfacePatch::interior(kDom, 0.1, 32, 32);
    FracParams p;
    p.sigma = {1.0, 0.0, 1.0, 0.0};
    p.quad.n = 512;
    const auto a = frac_gauss_residual(f, w, p, wp, LambdaWeights::zero(), kDom, patch);
    CHECK(a.report.residual.max() <= 1e-3);
    const auto b = frac_gauss_residual_direct(f, w, p, wp, kDom, patch);
    CHECK(kmax(a.area_term - b.area_term) <= 1e-6);
    CHECK(kmax(a.boundary_term - b.boundary_term) <= 1e-6);

    CHECK(frac_gauss_residual(ProductFunction::zero(), w, p, wp, LambdaWeights::zero(), kDom, patch)
              .report.residual.max() == 0.0);

    p.sigma = {0.7, 0.0, 0.7, 0.0};
    const auto lam = LambdaWeights::for_constant_weights(wp, p);
    const auto study = convergence_study(
        [&](const Resolution& r) {
            FracParams q = p;
            q.quad.n = r.n;
            q.fd_step = r.fd_step;
            return frac_gauss_residual(f, w, q, wp, lam, kDom, SurfacePatch::interior(kDom, 0.1, r.m, r.k)).report;
        },
        {2, 2, 64, 1e-4}, 3);
    REQUIRE(study.order);
    CHECK(*study.order >= 1.0);
    CHECK(study.reports[2].residual.max() < study.reports[1].residual.max());

    CHECK_THROWS_AS(frac_gauss_residual(f, w, p, wp, lam, kDom, SurfacePatch{Rect{-0.5, 0.5, 0, 1}, Rect{}, 4, 4}),
                    DomainError);
}

TEST_CASE("fractional Borel-Pompeiu") {
    const auto wp = WeightPair::classical();
    const auto patch = SurfacePatch::from_domain(kDom, 32, 32);
    const Bicomplex z{{0.6, 0.7}, {1.2, -0.2}};
    // Base point at the lower corner and traces vanishing there keep I F
    // continuous up to the edges as alpha -> 1.
    const Bicomplex wc = kDom.lower();
    auto vanishing = [](Complex zc) {
        return PlaneFunction{[zc](double x, double y) {
                                 const Complex u{x, y};
                                 return (u - zc) * (1.0 + 0.3 * std::norm(u));
                             },
                             [zc](double x, double y) {
                                 const Complex u{x, y};
                                 return (1.0 + 0.3 * std::norm(u)) + (u - zc) * 0.6 * x;
                             },
                             [zc](double x, double y) {
                                 const Complex u{x, y};
                                 return I * (1.0 + 0.3 * std::norm(u)) + (u - zc) * 0.6 * y;
                             }};
    };
    const ProductFunction f{vanishing(wc.z1), vanishing(wc.z2)};
    CHECK(partials_consistency(f.f1, {{0.3, 0.4}, {0.8, 0.1}}) <= 1e-6);

    FracParams p;
    p.sigma = {1.0, 0.0, 1.0, 0.0};
    p.alpha = {kNearOne, kNearOne, kNearOne, kNearOne};
    p.quad.n = 256;
    const auto degenerate = frac_bp_reconstruct(f, wc, z, p, wp, LambdaWeights::zero(), kDom, patch);
    CHECK(degenerate.report.residual.max() <= 1e-2);

    // Cauchy corollary: linear traces are annihilated, so the area term drops.
    auto linear = [](Complex zc) {
        return PlaneFunction::holomorphic([zc](Complex u) { return Complex(1, 2) * (u - zc); },
                                          [](Complex) { return Complex(1, 2); });
    };
    const ProductFunction g{linear(wc.z1), linear(wc.z2)};
    const auto cauchy = frac_bp_reconstruct(g, wc, z, p, wp, LambdaWeights::zero(), kDom, patch);
    CHECK(kmax(cauchy.area_term) <= 1e-6);
    CHECK(cauchy.report.residual.max() <= 1e-2);

    const auto zero = frac_bp_reconstruct(ProductFunction::zero(), wc, z, p, wp, LambdaWeights::zero(), kDom, patch);
    CHECK(kmax(zero.rhs) == 0.0);
    CHECK(kmax(zero.trace_sum) == 0.0);

    // a genuinely fractional case with a bicomplex-free sigma and lambda
    p.alpha = {0.5, 0.5, 0.5, 0.5};
    p.sigma = {0.7, 0.0, 0.7, 0.0};
    const Bicomplex w{{0.4, 0.3}, {0.8, 0.1}};
    const ProductFunction h{exp_fn({0.7, 0.3}), poly2_fn()};
    CHECK(frac_bp_reconstruct(h, w, z, p, wp, LambdaWeights::for_constant_weights(wp, p), kDom, patch)
              .report.residual.max() <= 1e-2);

    CHECK_THROWS_AS(frac_bp_reconstruct(h, w, z, p, WeightPair::scaled_classical(PlaneFunction::constant(2.0)),
                                        LambdaWeights::zero(), kDom, patch),
                    UnsupportedWeightsError);
    CHECK_THROWS_AS(frac_bp_reconstruct(h, w, z, p, wp, LambdaWeights::zero(), kDom,
                                        SurfacePatch::interior(kDom, 0.1, 8, 8)),
                    DomainError);
}

TEST_CASE("convergence study") {
    CHECK(fit_order({1.0, 0.5, 0.25}).value() == doctest::Approx(1.0));
    CHECK(fit_order({1e-2, 1e-4, 1e-6}).value() == doctest::Approx(2.0 * std::log2(10.0)));
    CHECK_FALSE(fit_order({0.0, 0.0, 1e-3}));

    const auto cl = WeightPair::classical();
    const ProductFunction f{exp_conj_fn({1.5, 0.5}), poly_fn()};
    const auto gauss = convergence_study(
        [&](const Resolution& r) { return gauss_residual(f, cl, SurfacePatch::from_domain(kDom, r.m, r.k)); },
        {1, 1, 0, 1e-4}, 3);
    REQUIRE(gauss.reports.size() == 3);
    CHECK(gauss.reports[1].m == 2);
    CHECK(gauss.reports[2].k == 4);
    REQUIRE(gauss.order);
    CHECK(*gauss.order >= 3.0);
    CHECK_FALSE(gauss.saturated);

    FracParams p;
    p.sigma = {0.7, 0.7, 0.7, 0.7};
    const Bicomplex w{{0.4, 0.3}, {0.8, 0.1}}, z{{0.6, 0.7}, {1.2, -0.2}};
    const auto inv = convergence_study(
        [&](const Resolution& r) {
            FracParams q = p;
            q.quad.n = r.n;
            q.fd_step = r.fd_step;
            const auto res = inversion_check(f, w, q, kDom, z);
            return ResidualReport{"inversion", 0, 0, r.n, res.residual, std::nullopt, 0.0};
        },
        {4, 4, 128, 1e-4}, 3);
    REQUIRE(inv.order);
    CHECK(*inv.order >= 1.0);
    REQUIRE(inv.reports[1].order);

    const auto zero = convergence_study(
        [&](const Resolution& r) {
            return gauss_residual(ProductFunction::zero(), cl, SurfacePatch::from_domain(kDom, r.m, r.k));
        },
        {2, 2, 0, 1e-4}, 3);
    CHECK(zero.saturated);
    CHECK_FALSE(zero.order);
    for (const auto& r : zero.reports) CHECK(r.residual.max() == 0.0);

    CHECK_THROWS_AS(convergence_study([&](const Resolution&) { return ResidualReport{}; }, {}, 1), DomainError);
}
