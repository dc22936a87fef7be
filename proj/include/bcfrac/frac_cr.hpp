#pragma once

// Bicomplex proportional fractional (theta, phi)-weighted Cauchy-Riemann
// operators on the hyper-rectangle J = ([a1,b1] + i[c1,d1]) e + ([a2,b2] + i[c2,d2]) e†.
//
// The four 1-D directions are numbered 0: x1, 1: y1, 2: x2, 3: y2. Direction i
// carries order 1 - alpha[i] and proportion sigma[i]. A direction with
// sigma[i] = 0 uses the sigma -> 0+ limit of the proportional operators, which
// is the identity.

#include "bcfrac/bicomplex.hpp"
#include "bcfrac/domain.hpp"
#include "bcfrac/fracops1d.hpp"
#include "bcfrac/weighted_cr.hpp"

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace bcfrac {

using RealPlaneFn = std::function<double(double, double)>;

// One idempotent component phi_l(x, y) of the monotone weight.
struct PhiComponent {
    RealPlaneFn eval;
    RealPlaneFn dx;
    RealPlaneFn dy;
    // Optional: x with eval(x, y) = u, and y with eval(x, y) = u.
    std::function<double(double u, double y)> inv_x;
    std::function<double(double x, double u)> inv_y;
    // Optional additive split eval(x, y) = sep_x(x) + sep_y(y).
    RealFn sep_x;
    RealFn sep_y;
};

// phi = phi1(x1, y1) e + phi2(x2, y2) e†, real valued with positive partials.
struct Phi4 {
    PhiComponent c1;
    PhiComponent c2;

    [[nodiscard]] const PhiComponent& component(int l) const { return l == 1 ? c1 : c2; }
    [[nodiscard]] Hyperbolic operator()(const Bicomplex& z) const;
    [[nodiscard]] bool separable() const { return c1.sep_x && c1.sep_y && c2.sep_x && c2.sep_y; }

    // Restriction phi_dir(t) through the base point (Definition of the trace
    // operators): direction 0 is t -> phi1(t, Im base1), 1 is t -> phi1(Re base1, t), etc.
    [[nodiscard]] ScalarWeightFn restriction(int dir, const Bicomplex& base, const RectDomain& dom) const;

    // Throws DomainError unless every partial is finite and positive on a probe grid.
    void validate(const RectDomain& dom) const;

    // x1 + y1 on e, x2 + y2 on e†
    static Phi4 linear();
    // x1^d0 + y1^d1 on e, x2^d2 + y2^d3 on e† (needs a positive domain)
    static Phi4 fractal(const std::array<double, 4>& delta);
};

// (d phi/dx1 + d phi/dy1) e + (d phi/dx2 + d phi/dy2) e†
Hyperbolic dphi(const Phi4& phi, const Bicomplex& z);
Hyperbolic dphi(const Phi4& phi, const Bicomplex& z, const RectDomain& dom);

struct FracParams {
    std::array<double, 4> alpha{0.5, 0.5, 0.5, 0.5};
    std::array<double, 4> sigma{1.0, 0.0, 1.0, 0.0};
    Phi4 phi = Phi4::linear();
    Quadrature1D quad{};
    double fd_step = 1e-4;  // relative to the length of the direction's interval
    bool richardson = true;
    std::size_t table_nodes = 48;

    // (sigma0 + i sigma1) e + (sigma2 + i sigma3) e†
    [[nodiscard]] Bicomplex sigma_composite() const;
    // alpha in (0,1); sigma0, sigma2 in (0,1]; sigma1, sigma3 in [0,1].
    void validate() const;
};

// The four 1-D integrals I^{1-alpha_i, sigma_i, phi_i} of the traces of F
// through W, evaluated from the lower (Left) or upper (Right) edges. With
// `tabulate` each direction is replaced by a Chebyshev table, which makes
// repeated evaluation (finite differences, area quadrature) cheap.
class TraceIntegral {
public:
    TraceIntegral(const ProductFunction& f, const Bicomplex& w, const FracParams& p, const RectDomain& dom, Side side,
                  bool tabulate = true);

    // I_dir [trace of f through W] at t
    [[nodiscard]] Complex direction(int dir, double t) const;
    // d/dt of direction(dir, .) at t: finite differences, exact for identity directions
    [[nodiscard]] Complex derivative(int dir, double t) const;
    // (I F)(Z, W)
    [[nodiscard]] Bicomplex operator()(const Bicomplex& z) const;
    // d/dZ_{theta phi} (I F)(Z, W)
    [[nodiscard]] Bicomplex weighted_cr(const WeightPair& wp, const Bicomplex& z) const;

    [[nodiscard]] const Bicomplex& base() const { return w_; }

private:
    ProductFunction f_;
    Bicomplex w_;
    FracParams p_;
    RectDomain dom_;
    Side side_;
    std::array<ScalarWeightFn, 4> weight_;
    std::array<std::optional<FracIntegralTable>, 4> table_;
};

// Trace value f_l on direction dir through base W at coordinate t.
Complex trace_value(const ProductFunction& f, const Bicomplex& w, int dir, double t);
// (f1(x1 + i Im w1) + f1(Re w1 + i y1)) e + (f2(x2 + i Im w2) + f2(Re w2 + i y2)) e†
Bicomplex trace_sum(const ProductFunction& f, const Bicomplex& w, const Bicomplex& z);

Bicomplex trace_integral(const ProductFunction& f, const Bicomplex& w, const FracParams& p, const RectDomain& dom,
                         Side side, const Bicomplex& z);
Bicomplex trace_derivative(const ProductFunction& f, const Bicomplex& w, const FracParams& p, const RectDomain& dom,
                           Side side, const Bicomplex& z);

// Applies the outer operator D_{a+}^{1-alpha, sigma, phi} to a function of Z,
// acting along the lines through Z itself: for the e-component,
// D_0[x -> g1(x + i y1)](x1) + D_1[y -> g1(x1 + i y)](y1), with phi restricted
// through Z as well.
Bicomplex apply_trace_derivative(const std::function<Complex(int, Complex)>& g, const FracParams& p,
                                 const RectDomain& dom, Side side, const Bicomplex& z);

// Cross terms I[f-trace] D[1] of the composition D o I (left-sided).
Bicomplex remainder_R(const ProductFunction& f, const Bicomplex& w, const FracParams& p, const RectDomain& dom,
                      const Bicomplex& z);

struct InversionResult {
    Bicomplex composed;   // D o I F (Z, W)
    Bicomplex trace_sum;
    Bicomplex remainder;
    Hyperbolic residual;  // |composed - trace_sum - remainder|_k
};
InversionResult inversion_check(const ProductFunction& f, const Bicomplex& w, const FracParams& p,
                                const RectDomain& dom, const Bicomplex& z);

// (1 - sigma) (I F)(Z, W) + sigma d/dZ_{theta phi}(I F)(Z, W) / D phi(Z)
Bicomplex frac_cr_apply(const ProductFunction& f, const Bicomplex& w, const FracParams& p, const WeightPair& wp,
                        const RectDomain& dom, Side side, const Bicomplex& z);
Bicomplex frac_cr_apply(const TraceIntegral& tf, const FracParams& p, const WeightPair& wp, const Bicomplex& z);

struct LambdaWeights {
    PlaneFunction lam1;
    PlaneFunction lam2;

    [[nodiscard]] const PlaneFunction& component(int l) const { return l == 1 ? lam1 : lam2; }
    [[nodiscard]] Bicomplex exp_at(const Bicomplex& z, double sign = 1.0) const;

    static LambdaWeights zero();
    // Solution of theta_l d lambda/dx + phi_l d lambda/dy = [D phi sigma^{-1}(1 - sigma)]_l
    // for constant weights and additively separable phi:
    // lambda_l = k_l (X_l(x)/theta_l + Y_l(y)/phi_l), k = sigma^{-1}(1 - sigma).
    static LambdaWeights for_constant_weights(const WeightPair& wp, const FracParams& p);
};

double lambda_residual(const LambdaWeights& lam, const WeightPair& wp, const FracParams& p,
                       const std::vector<Bicomplex>& probes);

// |frac_cr_apply - e^{-lambda} (D phi)^{-1} sigma d/dZ_{theta phi}[e^{lambda} I F]|_k,
// the outer derivative taken by finite differences of the product.
Hyperbolic factorization_check(const ProductFunction& f, const Bicomplex& w, const FracParams& p,
                               const WeightPair& wp, const LambdaWeights& lam, const RectDomain& dom, Side side,
                               const Bicomplex& z);

} // namespace bcfrac
