#pragma once

// One-dimensional proportional derivatives and proportional fractional
// integrals/derivatives taken with respect to a monotone function phi.
//
// Left integral of order alpha, proportion sigma, from a:
//
//   I f(t) = 1/(sigma^alpha Gamma(alpha)) *
//            int_a^t exp(c (phi(t)-phi(s))) (phi(t)-phi(s))^(alpha-1) f(s) phi'(s) ds,
//   c = (sigma - 1)/sigma.
//
// The right integral runs over [t, b] with phi(s) - phi(t) in place of
// phi(t) - phi(s). Both are evaluated after the substitution u = phi(s),
// which leaves the kernel exp(c r) r^(alpha-1) in the distance r from the
// evaluation point; the endpoint singularity at r = 0 is absorbed by a graded
// change of variables (see Quadrature1D).

#include "bcfrac/bicomplex.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

namespace bcfrac {

using RealFn = std::function<double(double)>;
using ScalarFn = std::function<Complex(double)>;

// phi on [lo, hi], continuously differentiable with dphi > 0.
struct ScalarWeightFn {
    RealFn phi;
    RealFn dphi;
    double lo = 0.0;
    double hi = 1.0;
    RealFn inverse;  // optional; bracketing Newton/bisection is used when empty

    [[nodiscard]] double operator()(double t) const { return phi(t); }
    [[nodiscard]] double length() const { return hi - lo; }
    [[nodiscard]] bool contains(double t) const;
    // phi^{-1}(u), clamped to [lo, hi]; accurate to 1e-13 when no inverse is given.
    [[nodiscard]] double invert(double u) const;

    static ScalarWeightFn identity(double lo, double hi);
    // slope * t + offset, slope > 0
    static ScalarWeightFn affine(double slope, double offset, double lo, double hi);
};

// chi1(sigma, t) f + chi0(sigma, t) f'/phi'
struct ProportionalControl {
    std::function<double(double, double)> chi1;
    std::function<double(double, double)> chi0;

    // chi1 = 1 - sigma, chi0 = sigma
    static ProportionalControl standard();
};

enum class Side { Left, Right };

enum class QuadScheme {
    // r = (L/2) x^(1/alpha) absorbs the r^(alpha-1) weight exactly; composite
    // 4-point Gauss-Legendre in x.
    GaussJacobiTransformed,
    // r = (L/2) x^grading with composite midpoint in x (second order).
    GradedMesh,
};

// Discretisation of one weakly singular integral. The interval [0, L] in the
// distance variable is split in halves: the half at the singular point is
// graded with exponent `grading`, the far half with `tail_grading` so that
// endpoint behaviour of f (e.g. (t-a)^beta from a previous integral) is also
// resolved. Each half receives n/2 nodes.
struct Quadrature1D {
    std::size_t n = 2048;
    QuadScheme scheme = QuadScheme::GradedMesh;
    double grading = 0.0;  // 0 selects 2/alpha
    double tail_grading = 2.0;
    double tolerance = 0.0;  // > 0: compare against the n/2 rule, throw QuadratureError above it

    void validate() const;
};

struct FracOrder {
    double alpha = 0.5;  // in (0, 1)
    double sigma = 1.0;  // in (0, 1]
};

// Central difference with optional Richardson extrapolation; one-sided at the
// far end of the domain.
struct FiniteDiff {
    double h = 0.0;  // 0 selects 1e-4 * domain length
    bool richardson = false;
};

Complex prop_derivative(const ScalarFn& f, const ScalarFn& df, const ScalarWeightFn& w, double sigma, double t);
Complex prop_derivative(const ScalarFn& f, const ScalarFn& df, const ScalarWeightFn& w,
                        const ProportionalControl& chi, double sigma, double t);

// Left integral from w.lo or right integral from w.hi, evaluated at t.
Complex prop_frac_integral(const ScalarFn& f, FracOrder p, const ScalarWeightFn& w, Side side, double t,
                           const Quadrature1D& q = {});

// D^{alpha} f = D^{1,sigma,phi} I^{1-alpha} f. The right-sided derivative uses
// (1-sigma) g - sigma g'/phi', the sign for which D_b o I_b = id.
Complex prop_frac_derivative(const ScalarFn& f, FracOrder p, const ScalarWeightFn& w, Side side, double t,
                             const Quadrature1D& q = {}, FiniteDiff fd = {});

// dl/d(t-a)^alpha = dl/dt / (alpha (t-a)^(alpha-1))
Complex hausdorff_derivative(const ScalarFn& l, const ScalarFn& dl, double alpha, double a, double t);

// Chebyshev interpolant of t -> I f(t) over the whole domain. The endpoint
// factor (phi(t)-phi(a))^alpha is divided out before interpolating, which
// leaves an analytic function of u = phi(t) for analytic f and phi. Used to
// compose operators without nesting quadratures.
class FracIntegralTable {
public:
    FracIntegralTable(const ScalarFn& f, FracOrder p, ScalarWeightFn w, Side side, const Quadrature1D& q,
                      std::size_t nodes = 48);

    Complex operator()(double t) const;
    [[nodiscard]] ScalarFn as_function() const;

private:
    FracOrder p_;
    ScalarWeightFn w_;
    Side side_;
    double u_lo_ = 0.0;
    double u_hi_ = 0.0;
    std::vector<double> x_;
    std::vector<double> bary_;
    std::vector<Complex> h_;
};

namespace detail {

// Reference rule on [0, 1]: int_0^L r^(alpha-1) K(r) dr ~ L^alpha sum w_j K(L y_j).
struct SingularRule {
    std::vector<double> y;
    std::vector<double> w;
};

std::shared_ptr<const SingularRule> singular_rule(const Quadrature1D& q, double alpha);

// (1-sigma) g(t) +- sigma g'(t)/phi'(t) with g' by finite differences; the
// base point of g is w.lo (Left) or w.hi (Right).
Complex prop_derivative_fd(const ScalarFn& g, const ScalarWeightFn& w, double sigma, Side side, double t,
                           FiniteDiff fd);

} // namespace detail

} // namespace bcfrac
