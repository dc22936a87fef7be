#pragma once

// Contour and surface quadrature on rectangles and the residuals of the
// integral identities: weighted Gauss, classical and weighted Borel-Pompeiu,
// and their fractional counterparts.

#include "bcfrac/bicomplex.hpp"
#include "bcfrac/domain.hpp"
#include "bcfrac/frac_cr.hpp"
#include "bcfrac/weighted_cr.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bcfrac {

// Per-component rectangles Lambda_l with counterclockwise boundaries, m panels
// per axis for area quadrature and k panels per edge for the boundary, each
// panel carrying a 4-point Gauss-Legendre rule.
struct SurfacePatch {
    Rect lambda1;
    Rect lambda2;
    std::size_t m = 32;
    std::size_t k = 32;

    [[nodiscard]] const Rect& component(int l) const { return l == 1 ? lambda1 : lambda2; }
    static SurfacePatch from_domain(const RectDomain& dom, std::size_t m, std::size_t k);
    // Lambda shrunk by `margin` (fraction of each side) on every side.
    static SurfacePatch interior(const RectDomain& dom, double margin, std::size_t m, std::size_t k);
};

struct AreaNode {
    Complex z;
    double w;
};
struct BoundaryNode {
    Complex z;
    double w;         // parameter weight
    Complex tangent;  // dz/ds (unit, counterclockwise)
};

std::vector<AreaNode> area_nodes(const Rect& r, std::size_t m);
std::vector<BoundaryNode> boundary_nodes(const Rect& r, std::size_t k);

struct ResidualReport {
    std::string identity;
    std::size_t m = 0;
    std::size_t k = 0;
    std::size_t n = 0;
    Hyperbolic residual;
    std::optional<double> order;  // empty until a convergence study fills it in
    double seconds = 0.0;
};

enum class Measure { dZ, dRho };

// Componentwise oint f_l dz_l (Measure::dZ) or oint f_l d rho_l (Measure::dRho, needs weights).
Bicomplex contour_integral(const ProductFunction& f, const SurfacePatch& patch, Measure measure,
                           const WeightPair* wp = nullptr);
// Componentwise iint g_l dz_l ^ d conj(z_l) = -2i iint g_l dx dy.
Bicomplex surface_integral(const ProductFunction& g, const SurfacePatch& patch);
// Componentwise iint g_l dx dy.
Bicomplex area_integral(const ProductFunction& g, const SurfacePatch& patch);

// iint_P dA(xi)/(xi - z) for a counterclockwise polygon P, in closed form.
Complex polygon_cauchy_transform(const std::vector<Complex>& vertices, Complex z);

// |iint (dF/dZ_{theta phi} + A F + B i F) dx dy - oint F d rho|_k
ResidualReport gauss_residual(const ProductFunction& f, const WeightPair& wp, const SurfacePatch& patch);

struct ReconstructionResult {
    Bicomplex reconstructed;
    Bicomplex expected;
    ResidualReport report;
};

// (1/2 pi i) oint F/(Z - W) dZ + (1/2 pi i) iint (dF/dZ*)/(Z - W) dZ ^ dZ*
ReconstructionResult borel_pompeiu_classical(const ProductFunction& f, const Bicomplex& w, const SurfacePatch& patch);
// c^{-1} (oint F E d rho - iint E dF/dZ_{theta phi} dx dy) for constant weights
ReconstructionResult borel_pompeiu_weighted(const ProductFunction& f, const Bicomplex& w, const WeightPair& wp,
                                            const SurfacePatch& patch);

struct FracGaussResult {
    Bicomplex boundary_term;
    Bicomplex area_term;
    ResidualReport report;  // |boundary_term - area_term|_k
};

// Fractional Gauss theorem for G = e^lambda (I F)(., W):
// oint G d rho = iint [e^lambda D phi sigma^{-1} dF^{alpha,sigma,phi}/dZ + A G + B i G] dx dy.
// The patch must lie inside the rectangle.
FracGaussResult frac_gauss_residual(const ProductFunction& f, const Bicomplex& w, const FracParams& p,
                                    const WeightPair& wp, const LambdaWeights& lam, const RectDomain& dom,
                                    const SurfacePatch& patch);

// The sigma = 1 form of the same identity, evaluated without the fractional
// operator or its tables: the area integrand is d/dZ_{theta phi}(I F) + A (I F) + B i (I F),
// with I F and its partials computed by direct quadrature at every node.
FracGaussResult frac_gauss_residual_direct(const ProductFunction& f, const Bicomplex& w, const FracParams& p,
                                           const WeightPair& wp, const RectDomain& dom, const SurfacePatch& patch);

struct FracBPResult {
    Bicomplex boundary_term;  // oint calE(V, Z) (I F)(V, W) d rho(V)
    Bicomplex remainder;      // R F(Z, W)
    Bicomplex area_term;      // D_Z of the area integral
    Bicomplex rhs;            // boundary_term - remainder - area_term
    Bicomplex trace_sum;
    ResidualReport report;
};

// Fractional Borel-Pompeiu reconstruction of the trace sum at Z. Requires
// constant weights; the patch must be the whole rectangle because the outer
// derivative integrates in Z from the rectangle edges.
FracBPResult frac_bp_reconstruct(const ProductFunction& f, const Bicomplex& w, const Bicomplex& z,
                                 const FracParams& p, const WeightPair& wp, const LambdaWeights& lam,
                                 const RectDomain& dom, const SurfacePatch& patch);

struct Resolution {
    std::size_t m = 32;
    std::size_t k = 32;
    std::size_t n = 256;
    double fd_step = 1e-4;
};

struct ConvergenceResult {
    std::vector<ResidualReport> reports;
    std::optional<double> order;  // least-squares fit of log2 residual against level
    bool saturated = false;       // every residual at the floor
};

// Residuals below this are treated as exact.
inline constexpr double kResidualFloor = 1e-13;

// Runs `run` at levels 0..levels-1; each level doubles m, k, n and halves fd_step.
// Each report's `order` is the local order against the previous level.
ConvergenceResult convergence_study(const std::function<ResidualReport(const Resolution&)>& run,
                                    const Resolution& base, int levels);

// Least-squares order from residuals at successive halvings; empty if fewer
// than two residuals lie above the floor.
std::optional<double> fit_order(const std::vector<double>& residuals);

} // namespace bcfrac
