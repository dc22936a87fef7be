#pragma once

// Closed-form values of the one-dimensional operators, used as reference
// values by the CLI `oracle` command and by the tests.

namespace bcfrac::closed {

// Riemann-Liouville integral of (s-a)^(beta-1): Gamma(beta)/Gamma(beta+alpha) (t-a)^(beta+alpha-1)
double rl_power_integral(double alpha, double beta, double a, double t);

// Left proportional integral (order alpha, proportion sigma) of
// f(s) = exp(c phi(s)) (phi(s)-phi(a))^(beta-1), c = (sigma-1)/sigma:
// Gamma(beta)/(sigma^alpha Gamma(beta+alpha)) exp(c phi(t)) (phi(t)-phi(a))^(beta+alpha-1)
double prop_eigen_integral(double alpha, double beta, double sigma, double phi_t, double phi_a);

// Riemann-Liouville derivative of the constant 1: (t-a)^(-alpha)/Gamma(1-alpha)
double rl_const_derivative(double alpha, double a, double t);

// Riemann-Liouville integral of the constant 1: (t-a)^alpha/Gamma(1+alpha)
double rl_const_integral(double alpha, double a, double t);

} // namespace bcfrac::closed
