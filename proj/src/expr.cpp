#include "bcfrac/expr.hpp"

#include "bcfrac/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <numbers>

namespace bcfrac {

namespace {

using Fn = std::function<Dual(const Dual&, const Dual&)>;

const Complex kI{0.0, 1.0};

Dual constant(Complex c) { return {c, {}, {}}; }

Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.dx + b.dx, a.dy + b.dy}; }
Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.dx - b.dx, a.dy - b.dy}; }
Dual operator-(const Dual& a) { return {-a.v, -a.dx, -a.dy}; }
Dual operator*(const Dual& a, const Dual& b) {
    return {a.v * b.v, a.dx * b.v + a.v * b.dx, a.dy * b.v + a.v * b.dy};
}
Dual operator/(const Dual& a, const Dual& b) {
    const Complex b2 = b.v * b.v;
    return {a.v / b.v, (a.dx * b.v - a.v * b.dx) / b2, (a.dy * b.v - a.v * b.dy) / b2};
}

// g(a) for holomorphic g with derivative dg
Dual chain(const Dual& a, Complex g, Complex dg) { return {g, dg * a.dx, dg * a.dy}; }

Dual int_power(Dual base, long long e) {
    const bool neg = e < 0;
    unsigned long long k = static_cast<unsigned long long>(neg ? -e : e);
    Dual r = constant(1.0);
    while (k) {
        if (k & 1u) r = r * base;
        base = base * base;
        k >>= 1u;
    }
    return neg ? constant(1.0) / r : r;
}

Dual power(const Dual& a, const Dual& b) {
    const bool const_exp = b.dx == Complex{} && b.dy == Complex{};
    if (const_exp && b.v.imag() == 0.0 && std::abs(b.v.real()) <= 64.0 && b.v.real() == std::round(b.v.real()))
        return int_power(a, static_cast<long long>(b.v.real()));
    if (const_exp) {
        const Complex p = std::pow(a.v, b.v);
        return chain(a, p, b.v * std::pow(a.v, b.v - 1.0));
    }
    // a^b = exp(b log a)
    const Dual la = chain(a, std::log(a.v), 1.0 / a.v);
    const Dual t = b * la;
    const Complex e = std::exp(t.v);
    return chain(t, e, e);
}

class Parser {
public:
    Parser(const std::string& s, const std::vector<std::string>& xs, const std::vector<std::string>& ys)
        : s_(s), xs_(xs), ys_(ys) {}

    Fn parse() {
        Fn f = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return f;
    }

private:
    const std::string& s_;
    std::vector<std::string> xs_, ys_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError("expression '" + s_ + "', column " + std::to_string(pos_ + 1) + ": " + what);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Fn expr() {
        Fn lhs = term();
        for (;;) {
            if (eat('+')) {
                Fn r = term();
                lhs = [lhs, r](const Dual& x, const Dual& y) { return lhs(x, y) + r(x, y); };
            } else if (eat('-')) {
                Fn r = term();
                lhs = [lhs, r](const Dual& x, const Dual& y) { return lhs(x, y) - r(x, y); };
            } else {
                return lhs;
            }
        }
    }

    Fn term() {
        Fn lhs = unary();
        for (;;) {
            if (eat('*')) {
                Fn r = unary();
                lhs = [lhs, r](const Dual& x, const Dual& y) { return lhs(x, y) * r(x, y); };
            } else if (eat('/')) {
                Fn r = unary();
                lhs = [lhs, r](const Dual& x, const Dual& y) { return lhs(x, y) / r(x, y); };
            } else {
                return lhs;
            }
        }
    }

    Fn unary() {
        if (eat('-')) {
            Fn u = unary();
            return [u](const Dual& x, const Dual& y) { return -u(x, y); };
        }
        if (eat('+')) return unary();
        return pow_expr();
    }

    Fn pow_expr() {
        Fn base = primary();
        if (eat('^')) {
            Fn e = unary();  // right associative
            return [base, e](const Dual& x, const Dual& y) { return power(base(x, y), e(x, y)); };
        }
        return base;
    }

    Fn primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Fn inner = expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail("unexpected '" + std::string(1, c) + "'");
    }

    Fn number() {
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("malformed number");
        pos_ += static_cast<std::size_t>(end - begin);
        Complex c = v;
        // 2i, 0.5i
        if (pos_ < s_.size() && s_[pos_] == 'i' &&
            (pos_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
            ++pos_;
            c = Complex(0.0, v);
        }
        return [c](const Dual&, const Dual&) { return constant(c); };
    }

    Fn identifier() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        const std::string name = s_.substr(start, pos_ - start);
        auto in = [&name](const std::vector<std::string>& v) { return std::find(v.begin(), v.end(), name) != v.end(); };
        if (name == "x" || in(xs_)) return [](const Dual& x, const Dual&) { return x; };
        if (name == "y" || in(ys_)) return [](const Dual&, const Dual& y) { return y; };
        if (name == "z") return [](const Dual& x, const Dual& y) { return x + constant(kI) * y; };
        if (name == "i") return [](const Dual&, const Dual&) { return constant(kI); };
        if (name == "pi") return [](const Dual&, const Dual&) { return constant(std::numbers::pi); };

        using Unary = Dual (*)(const Dual&);
        static const std::pair<const char*, Unary> funcs[] = {
            {"exp", [](const Dual& a) { const Complex e = std::exp(a.v); return chain(a, e, e); }},
            {"sin", [](const Dual& a) { return chain(a, std::sin(a.v), std::cos(a.v)); }},
            {"cos", [](const Dual& a) { return chain(a, std::cos(a.v), -std::sin(a.v)); }},
            {"log", [](const Dual& a) { return chain(a, std::log(a.v), 1.0 / a.v); }},
            {"sqrt", [](const Dual& a) { const Complex r = std::sqrt(a.v); return chain(a, r, 0.5 / r); }},
            {"conj", [](const Dual& a) { return Dual{std::conj(a.v), std::conj(a.dx), std::conj(a.dy)}; }},
            {"re", [](const Dual& a) { return Dual{a.v.real(), a.dx.real(), a.dy.real()}; }},
            {"im", [](const Dual& a) { return Dual{a.v.imag(), a.dx.imag(), a.dy.imag()}; }},
        };
        for (const auto& [fname, op] : funcs) {
            if (name != fname) continue;
            if (!eat('(')) fail("expected '(' after " + name);
            Fn arg = expr();
            if (!eat(')')) fail("expected ')'");
            return [arg, op](const Dual& x, const Dual& y) { return op(arg(x, y)); };
        }
        pos_ = start;
        fail("unknown name '" + name + "'");
    }
};

} // namespace

Expression::Expression(const std::string& text, const std::vector<std::string>& x_aliases,
                       const std::vector<std::string>& y_aliases)
    : text_(text) {
    fn_ = Parser(text_, x_aliases, y_aliases).parse();
}

Dual Expression::eval(double x, double y) const { return fn_(Dual{x, 1.0, 0.0}, Dual{y, 0.0, 1.0}); }

PlaneFunction Expression::plane_function() const {
    auto self = std::make_shared<Expression>(*this);
    return {[self](double x, double y) { return self->eval(x, y).v; },
            [self](double x, double y) { return self->eval(x, y).dx; },
            [self](double x, double y) { return self->eval(x, y).dy; }};
}

} // namespace bcfrac
