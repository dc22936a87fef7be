#include "bcfrac/closed_forms.hpp"

#include "bcfrac/errors.hpp"

#include <cmath>

namespace bcfrac::closed {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw DomainError(msg);
}

// Gamma(x)/Gamma(y) through log-gamma so large arguments stay finite.
double gamma_ratio(double x, double y) { return std::exp(std::lgamma(x) - std::lgamma(y)); }

} // namespace

double rl_power_integral(double alpha, double beta, double a, double t) {
    require(alpha > 0.0 && beta > 0.0, "rl_power_integral: alpha and beta must be positive");
    require(t >= a, "rl_power_integral: requires t >= a");
    return gamma_ratio(beta, beta + alpha) * std::pow(t - a, beta + alpha - 1.0);
}

double prop_eigen_integral(double alpha, double beta, double sigma, double phi_t, double phi_a) {
    require(alpha > 0.0 && beta > 0.0, "prop_eigen_integral: alpha and beta must be positive");
    require(sigma > 0.0 && sigma <= 1.0, "prop_eigen_integral: sigma must lie in (0, 1]");
    require(phi_t >= phi_a, "prop_eigen_integral: requires phi(t) >= phi(a)");
    const double c = (sigma - 1.0) / sigma;
    return gamma_ratio(beta, beta + alpha) / std::pow(sigma, alpha) * std::exp(c * phi_t) *
           std::pow(phi_t - phi_a, beta + alpha - 1.0);
}

double rl_const_derivative(double alpha, double a, double t) {
    require(alpha > 0.0 && alpha < 1.0, "rl_const_derivative: alpha must lie in (0, 1)");
    require(t > a, "rl_const_derivative: requires t > a");
    return std::pow(t - a, -alpha) / std::tgamma(1.0 - alpha);
}

double rl_const_integral(double alpha, double a, double t) {
    require(alpha > 0.0, "rl_const_integral: alpha must be positive");
    require(t >= a, "rl_const_integral: requires t >= a");
    return std::pow(t - a, alpha) / std::tgamma(1.0 + alpha);
}

} // namespace bcfrac::closed
