#pragma once

// Bicomplex and hyperbolic numbers in the idempotent basis {e, e†}.
//
//   Z = z1 e + z2 e†,   e = (1 + k)/2,  e† = (1 - k)/2,  k = i j
//
// Every operation acts componentwise on (z1, z2); the cartesian form
// z1' + z2' j only appears in from_cartesian / to_cartesian.

#include <complex>
#include <string>
#include <utility>

namespace bcfrac {

using Complex = std::complex<double>;

// Components below this magnitude count as zero when inverting.
inline constexpr double kZeroDivisorTolerance = 1e-12;

struct Bicomplex {
    Complex z1{};  // coefficient of e
    Complex z2{};  // coefficient of e†

    constexpr Bicomplex() = default;
    constexpr Bicomplex(Complex a, Complex b) : z1(a), z2(b) {}
    // Embeds a complex scalar c as c e + c e†.
    static constexpr Bicomplex scalar(Complex c) { return {c, c}; }

    constexpr Bicomplex& operator+=(const Bicomplex& o) { z1 += o.z1; z2 += o.z2; return *this; }
    constexpr Bicomplex& operator-=(const Bicomplex& o) { z1 -= o.z1; z2 -= o.z2; return *this; }
    constexpr Bicomplex& operator*=(const Bicomplex& o) { z1 *= o.z1; z2 *= o.z2; return *this; }
    constexpr Bicomplex& operator*=(Complex c) { z1 *= c; z2 *= c; return *this; }

    friend constexpr Bicomplex operator+(Bicomplex a, const Bicomplex& b) { return a += b; }
    friend constexpr Bicomplex operator-(Bicomplex a, const Bicomplex& b) { return a -= b; }
    friend constexpr Bicomplex operator*(Bicomplex a, const Bicomplex& b) { return a *= b; }
    friend constexpr Bicomplex operator*(Bicomplex a, Complex c) { return a *= c; }
    friend constexpr Bicomplex operator*(Complex c, Bicomplex a) { return a *= c; }
    friend constexpr Bicomplex operator-(const Bicomplex& a) { return {-a.z1, -a.z2}; }
    friend constexpr bool operator==(const Bicomplex&, const Bicomplex&) = default;
};

// lambda1 e + lambda2 e† with real components.
struct Hyperbolic {
    double l1 = 0.0;
    double l2 = 0.0;

    // Membership in D+ (strict: the open cone).
    [[nodiscard]] constexpr bool positive(bool strict = false) const {
        return strict ? (l1 > 0.0 && l2 > 0.0) : (l1 >= 0.0 && l2 >= 0.0);
    }
    [[nodiscard]] constexpr Bicomplex to_bicomplex() const { return {l1, l2}; }
    [[nodiscard]] constexpr double max() const { return l1 > l2 ? l1 : l2; }

    friend constexpr bool operator==(const Hyperbolic&, const Hyperbolic&) = default;
};

namespace units {
inline constexpr Bicomplex e{1.0, 0.0};
inline constexpr Bicomplex edag{0.0, 1.0};
inline constexpr Bicomplex one{1.0, 1.0};
inline constexpr Bicomplex k{1.0, -1.0};
inline constexpr Bicomplex i{Complex(0.0, 1.0), Complex(0.0, 1.0)};
inline constexpr Bicomplex j{Complex(0.0, -1.0), Complex(0.0, 1.0)};
} // namespace units

// a + b j  ->  (a - i b) e + (a + i b) e†
Bicomplex from_cartesian(Complex a, Complex b);
// Inverse of from_cartesian: returns (a, b) with Z = a + b j.
std::pair<Complex, Complex> to_cartesian(const Bicomplex& x);

Bicomplex star(const Bicomplex& x);
Hyperbolic mod_k(const Bicomplex& x);

// <z, w>_C = (conj(z) w + conj(w) z) / 2, always real.
Complex inner_c(Complex z, Complex w);
// <Z, W>_k = (Z* W + W* Z) / 2 = <z1,w1>_C e + <z2,w2>_C e†
Bicomplex inner_k(const Bicomplex& x, const Bicomplex& y);

enum class Invertibility { Invertible, ZeroDivisor, Zero };
Invertibility classify(const Bicomplex& x, double tol = kZeroDivisorTolerance);

// Throws ZeroDivisorError when exactly one component vanishes, ZeroError when both do.
Bicomplex invert(const Bicomplex& x, double tol = kZeroDivisorTolerance);
Bicomplex divide(const Bicomplex& x, const Bicomplex& y, double tol = kZeroDivisorTolerance);

// x ⪯ y  iff  y - x lies in D+.
bool d_leq(const Hyperbolic& x, const Hyperbolic& y);

// Textual form "z1 E + z2 E*" with complex components written "a+bi".
std::string to_string(Complex c);
std::string to_string(const Bicomplex& x);
Complex parse_complex(const std::string& text);
Bicomplex parse_bicomplex(const std::string& text);

} // namespace bcfrac
