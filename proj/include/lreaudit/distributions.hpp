#pragma once

#include "lreaudit/datasets.hpp"
#include "lreaudit/special.hpp"

namespace lreaudit {

/// Pr(X <= k) for X ~ Binomial(n, p), as I(1-p; n-k, k+1).
double binom_cdf(double k, double n, double p, const SpecialFunState& st = {});
/// exp(k log(lambda) - lambda - log_gamma(k+1)).
double poisson_pmf(double k, double lambda);
/// Pr(X <= k) = Q(k+1, lambda).
double poisson_cdf(double k, double lambda, const SpecialFunState& st = {});
/// Gamma(shape alpha, scale beta) distribution function P(alpha, x/beta).
double gamma_cdf(double x, double alpha, double beta, const SpecialFunState& st = {});

// Distribution functions inverted by the quantiles below; "upper" means Pr(X > x).
double normal_cdf(double z, const SpecialFunState& st = {});
double chi2_upper(double x, double n, const SpecialFunState& st = {});
double t_upper(double t, double n, const SpecialFunState& st = {});
double f_upper(double f, double n1, double n2, const SpecialFunState& st = {});
double beta_cdf(double x, double alpha, double beta, const SpecialFunState& st = {});

// Quantiles: rational initial guess, then safeguarded Newton on log F with a
// bisection fallback. Probabilities must lie strictly inside (0, 1); throws
// std::domain_error otherwise and ConvergenceError when the solver stalls.
// A quantile beyond the double range comes back as 0 or +inf.
double normal_quantile(double p, double mu = 0.0, double sigma = 1.0, const SpecialFunState& st = {});
/// x with Pr(X > x) = p_upper.
double chi2_quantile(double p_upper, double n, const SpecialFunState& st = {});
/// x with I(x; alpha, beta) = p.
double beta_quantile(double p, double alpha, double beta, const SpecialFunState& st = {});
/// t with Pr(T > t) = p_upper.
double t_quantile(double p_upper, double n, const SpecialFunState& st = {});
/// f with Pr(F > f) = p_upper.
double f_quantile(double p_upper, double n1, double n2, const SpecialFunState& st = {});

/// Evaluates a table row with the host kernels. Throws on bad parameters.
double evaluate_distribution(const DistributionCase& c, const SpecialFunState& st = {});

}  // namespace lreaudit
