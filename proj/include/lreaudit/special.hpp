#pragma once

namespace lreaudit {

/// Convergence controls shared by the iterative special-function kernels.
struct SpecialFunState {
    double tolerance = 1e-15;  // relative, per series or continued fraction
    int max_iter = 500;
};

/// log|Gamma(x)| for x > 0: Lanczos (g = 7, n = 9) below 10, Stirling above.
/// Measured absolute error below 2e-15 * max(1, |result|) on [0.5, 1e6].
double log_gamma(double x);

/// log(1 + d) - d without cancellation near d = 0; requires d > -1.
double log1pmx(double d);

/// Stirling-series remainder: log_gamma(a) - (a - 1/2) log a + a - log(2 pi) / 2.
double stirlerr(double a);

double erf_host(double x, const SpecialFunState& st = {});
double erfc_host(double x, const SpecialFunState& st = {});

/// log(x^a e^-x / Gamma(a)), the common prefix of P and Q.
double log_gamma_prefix(double a, double x);

/// Regularized incomplete gamma P(a, x) and its complement Q(a, x) = 1 - P.
/// Series below x = a + 1, Lentz continued fraction above, and Temme's uniform
/// expansion when a >= 20 and |x - a| <= 0.4 a. Throws ConvergenceError.
double gamma_p(double a, double x, const SpecialFunState& st = {});
double gamma_q(double a, double x, const SpecialFunState& st = {});

double log_beta(double a, double b);

/// Regularized incomplete beta I(x; a, b) and the upper tail 1 - I(x; a, b),
/// each evaluated without subtracting from 1 on its natural side. Throws
/// ConvergenceError.
double beta_inc(double x, double a, double b, const SpecialFunState& st = {});
double beta_inc_upper(double x, double a, double b, const SpecialFunState& st = {});

}  // namespace lreaudit
