#pragma once

// Weighted Cauchy-Riemann operators theta d/dx + phi d/dy acting on
// product-type bicomplex functions, the divergence coefficients A and B of
// the weighted Gauss theorem, the boundary measure
// d rho = theta dy - phi dx, and Cauchy kernels for constant weights.

#include "bcfrac/bicomplex.hpp"
#include "bcfrac/domain.hpp"

#include <array>
#include <functional>
#include <optional>
#include <vector>

namespace bcfrac {

using PlaneFn = std::function<Complex(double, double)>;

// Complex function of (x, y) with analytic partials.
struct PlaneFunction {
    PlaneFn eval;
    PlaneFn dx;
    PlaneFn dy;

    Complex operator()(double x, double y) const { return eval(x, y); }
    Complex operator()(Complex z) const { return eval(z.real(), z.imag()); }

    static PlaneFunction constant(Complex c);
    static PlaneFunction zero() { return constant(0.0); }
    // f(x + i y) for holomorphic f with derivative df: d/dx = df, d/dy = i df.
    static PlaneFunction holomorphic(std::function<Complex(Complex)> f, std::function<Complex(Complex)> df);
};

// Largest |finite difference - analytic partial| over the probes (step h).
double partials_consistency(const PlaneFunction& f, const std::vector<Complex>& probes, double h = 1e-6);

// F(Z) = f1(z1) e + f2(z2) e†
struct ProductFunction {
    PlaneFunction f1;
    PlaneFunction f2;

    [[nodiscard]] const PlaneFunction& component(int l) const { return l == 1 ? f1 : f2; }
    Bicomplex operator()(const Bicomplex& z) const { return {f1(z.z1), f2(z.z2)}; }

    static ProductFunction zero() { return {PlaneFunction::zero(), PlaneFunction::zero()}; }
    static ProductFunction constant(Complex c1, Complex c2) { return {PlaneFunction::constant(c1), PlaneFunction::constant(c2)}; }
};

// theta = theta1 e + theta2 e†, phi = phi1 e + phi2 e†
struct WeightPair {
    PlaneFunction theta1;
    PlaneFunction theta2;
    PlaneFunction phi1;
    PlaneFunction phi2;
    // Set when every component is constant: (theta1, theta2, phi1, phi2).
    std::optional<std::array<Complex, 4>> constants;

    [[nodiscard]] const PlaneFunction& theta(int l) const { return l == 1 ? theta1 : theta2; }
    [[nodiscard]] const PlaneFunction& phi(int l) const { return l == 1 ? phi1 : phi2; }

    // theta = 1, phi = i
    static WeightPair classical();
    // theta_l = theta, phi_l = phi on both components
    static WeightPair constant(Complex theta, Complex phi);
    static WeightPair constant(Complex theta1, Complex theta2, Complex phi1, Complex phi2);
    // theta_l = g, phi_l = i g
    static WeightPair scaled_classical(const PlaneFunction& g);
    // phi_l = i g_l theta_l; orthogonal whenever g_l is real valued
    static WeightPair orthogonal(const PlaneFunction& theta1, const PlaneFunction& theta2, const PlaneFunction& g1,
                                 const PlaneFunction& g2);
};

struct OrthogonalityReport {
    double max_inner = 0.0;          // max |<theta_l, phi_l>_C|
    double max_criterion = 0.0;      // max |p_{l,2} phi_l + i q_{l,1} theta_l|
    double max_discrepancy = 0.0;    // max | |inner| - |criterion| |
};

OrthogonalityReport check_orthogonality(const WeightPair& wp, const std::vector<Bicomplex>& probes);

Bicomplex apply_cr_weighted(const WeightPair& wp, const ProductFunction& f, const Bicomplex& z);
Bicomplex apply_cr_weighted(const WeightPair& wp, const ProductFunction& f, const Bicomplex& z,
                            const RectDomain& domain);

struct Divergence {
    Bicomplex a;
    Bicomplex b;
};
// A = (d Re theta/dx + d Re phi/dy) per component, B the same with imaginary parts.
Divergence weight_divergence(const WeightPair& wp, const Bicomplex& z);

struct Tangent {
    double dx1 = 0.0, dy1 = 0.0, dx2 = 0.0, dy2 = 0.0;
};
// (theta1 dy1 - phi1 dx1) e + (theta2 dy2 - phi2 dx2) e†
Bicomplex boundary_measure(const WeightPair& wp, const Bicomplex& z, const Tangent& t);

// Constant weights theta, phi on one component. zeta(x, y) = -i (phi x - theta y)
// is annihilated by theta d/dx + phi d/dy and reduces to x + i y in the
// classical case. E(v, z) = 1/(2 pi i (zeta(v) - zeta(z))).
struct ConstantKernel {
    Complex theta;
    Complex phi;

    [[nodiscard]] Complex zeta(Complex z) const;
    [[nodiscard]] Complex operator()(Complex v, Complex z) const;
    // Real Jacobian determinant of (x, y) -> zeta.
    [[nodiscard]] double jacobian() const;
};

// Componentwise kernel E(V, Z); requires constant, real-linearly independent weights.
Bicomplex cauchy_kernel(const WeightPair& wp, const Bicomplex& v, const Bicomplex& z);

// The constant c with c f(z) = oint f E d rho - iint E (theta f_x + phi f_y) dx dy,
// obtained from the loop integral of E d rho around z and cached per weight
// pair. c = -i in the classical case.
Bicomplex kernel_constant(const WeightPair& wp);
Complex kernel_constant(Complex theta, Complex phi);

} // namespace bcfrac
