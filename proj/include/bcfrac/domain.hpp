#pragma once

#include "bcfrac/bicomplex.hpp"

namespace bcfrac {

// Axis-aligned rectangle [x0, x1] x [y0, y1] in one idempotent plane.
struct Rect {
    double x0 = 0.0;
    double x1 = 1.0;
    double y0 = 0.0;
    double y1 = 1.0;

    [[nodiscard]] bool contains(Complex z, double eps = 0.0) const {
        return z.real() >= x0 - eps && z.real() <= x1 + eps && z.imag() >= y0 - eps && z.imag() <= y1 + eps;
    }
    [[nodiscard]] bool strictly_contains(Complex z) const {
        return z.real() > x0 && z.real() < x1 && z.imag() > y0 && z.imag() < y1;
    }
    [[nodiscard]] double area() const { return (x1 - x0) * (y1 - y0); }
};

// J_P^Q with P = (a1, c1, a2, c2), Q = (b1, d1, b2, d2): the set of
// Z = (x1 + i y1) e + (x2 + i y2) e† with a_l <= x_l <= b_l, c_l <= y_l <= d_l.
struct RectDomain {
    double a1 = 0.0, b1 = 1.0, c1 = 0.0, d1 = 1.0;
    double a2 = 0.0, b2 = 1.0, c2 = 0.0, d2 = 1.0;

    // Throws DomainError unless a_l < b_l and c_l < d_l.
    void validate() const;
    [[nodiscard]] Rect component(int l) const { return l == 1 ? Rect{a1, b1, c1, d1} : Rect{a2, b2, c2, d2}; }
    [[nodiscard]] bool contains(const Bicomplex& z) const;
    [[nodiscard]] Bicomplex lower() const { return {{a1, c1}, {a2, c2}}; }
    [[nodiscard]] Bicomplex upper() const { return {{b1, d1}, {b2, d2}}; }
    [[nodiscard]] double edge_length() const;  // smallest side length
};

} // namespace bcfrac
