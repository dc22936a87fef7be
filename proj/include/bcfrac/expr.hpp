#pragma once

// Small arithmetic expression language for configuration files: complex
// constants, the variables x, y and z = x + i y, + - * / ^, and the functions
// exp, sin, cos, log, sqrt, conj, re, im. Evaluation carries first partials
// in x and y alongside the value.

#include "bcfrac/bicomplex.hpp"
#include "bcfrac/weighted_cr.hpp"

#include <functional>
#include <string>
#include <vector>

namespace bcfrac {

struct Dual {
    Complex v;
    Complex dx;
    Complex dy;
};

class Expression {
public:
    // `aliases` are extra names for x and y, e.g. {"x1", "y1"}.
    // Throws ConfigError with the column of the offending token.
    explicit Expression(const std::string& text, const std::vector<std::string>& x_aliases = {},
                        const std::vector<std::string>& y_aliases = {});

    [[nodiscard]] Dual eval(double x, double y) const;
    [[nodiscard]] const std::string& text() const { return text_; }
    [[nodiscard]] PlaneFunction plane_function() const;

private:
    std::string text_;
    std::function<Dual(const Dual&, const Dual&)> fn_;
};

} // namespace bcfrac
