#include "bcfrac/bicomplex.hpp"

#include "bcfrac/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace bcfrac {

namespace {
constexpr Complex kI{0.0, 1.0};
} // namespace

Bicomplex from_cartesian(Complex a, Complex b) { return {a - kI * b, a + kI * b}; }

std::pair<Complex, Complex> to_cartesian(const Bicomplex& x) {
    return {(x.z1 + x.z2) * 0.5, (x.z2 - x.z1) / (2.0 * kI)};
}

Bicomplex star(const Bicomplex& x) { return {std::conj(x.z1), std::conj(x.z2)}; }

Hyperbolic mod_k(const Bicomplex& x) { return {std::abs(x.z1), std::abs(x.z2)}; }

Complex inner_c(Complex z, Complex w) {
    // Written out so the imaginary part is exactly zero.
    return {z.real() * w.real() + z.imag() * w.imag(), 0.0};
}

Bicomplex inner_k(const Bicomplex& x, const Bicomplex& y) {
    return {inner_c(x.z1, y.z1), inner_c(x.z2, y.z2)};
}

Invertibility classify(const Bicomplex& x, double tol) {
    const bool zero1 = std::abs(x.z1) <= tol;
    const bool zero2 = std::abs(x.z2) <= tol;
    if (zero1 && zero2) return Invertibility::Zero;
    if (zero1 || zero2) return Invertibility::ZeroDivisor;
    return Invertibility::Invertible;
}

Bicomplex invert(const Bicomplex& x, double tol) {
    switch (classify(x, tol)) {
    case Invertibility::Zero:
        throw ZeroError("cannot invert the zero bicomplex number");
    case Invertibility::ZeroDivisor:
        throw ZeroDivisorError("cannot invert zero divisor " + to_string(x));
    case Invertibility::Invertible:
        break;
    }
    return {1.0 / x.z1, 1.0 / x.z2};
}

Bicomplex divide(const Bicomplex& x, const Bicomplex& y, double tol) { return x * invert(y, tol); }

bool d_leq(const Hyperbolic& x, const Hyperbolic& y) {
    return y.l1 - x.l1 >= 0.0 && y.l2 - x.l2 >= 0.0;
}

std::string to_string(Complex c) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", c.real(), c.imag());
    return buf;
}

std::string to_string(const Bicomplex& x) { return to_string(x.z1) + " E + " + to_string(x.z2) + " E*"; }

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_real(const std::string& s, const std::string& whole) {
    if (s.empty()) throw DomainError("malformed complex number '" + whole + "'");
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) throw DomainError("malformed complex number '" + whole + "'");
    return v;
}

} // namespace

Complex parse_complex(const std::string& text) {
    const std::string s = trim(text);
    if (s.empty()) throw DomainError("empty complex number");
    if (s.back() != 'i') return {parse_real(s, s), 0.0};
    const std::string body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not leading and not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t p = body.size(); p-- > 1;) {
        if ((body[p] == '+' || body[p] == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
            split = p;
            break;
        }
    }
    if (split == std::string::npos) {
        if (body.empty() || body == "+") return {0.0, 1.0};
        if (body == "-") return {0.0, -1.0};
        return {0.0, parse_real(body, s)};
    }
    const std::string re = body.substr(0, split);
    std::string im = body.substr(split);
    if (im == "+") im = "1";
    if (im == "-") im = "-1";
    return {parse_real(re, s), parse_real(im, s)};
}

Bicomplex parse_bicomplex(const std::string& text) {
    const std::string s = trim(text);
    const std::string sep = " E + ";
    const std::string tail = " E*";
    const auto at = s.find(sep);
    if (at == std::string::npos || s.size() < tail.size() || s.compare(s.size() - tail.size(), tail.size(), tail) != 0)
        throw DomainError("expected 'z1 E + z2 E*', got '" + s + "'");
    const std::string first = s.substr(0, at);
    const std::string second = s.substr(at + sep.size(), s.size() - tail.size() - at - sep.size());
    return {parse_complex(first), parse_complex(second)};
}

} // namespace bcfrac
