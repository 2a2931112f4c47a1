#include "lreaudit/distributions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "lreaudit/error.hpp"

namespace lreaudit {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;

void check_probability(double p, const char* who) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error(std::string(who) + ": probability must lie in (0, 1)");
}

void check_positive(double v, const char* who) {
    if (!(v > 0.0) || std::isinf(v)) throw std::domain_error(std::string(who) + ": parameter must be positive");
}

// Solves log_tail(v) = log_target on (lo, hi). `increasing` gives the direction
// of log_tail; slope(v, log_tail_v) is its derivative. Newton steps that leave
// the shrinking bracket are replaced by bisection.
template <class Tail, class Slope>
double solve_log(Tail log_tail, Slope slope, double log_target, double v, double lo, double hi, bool increasing,
                 const SpecialFunState& st, const char* who) {
    if (!(v > lo && v < hi)) v = 0.5 * (lo + hi);
    for (int it = 0; it < st.max_iter; ++it) {
        const double lt = log_tail(v);
        double g = lt - log_target;
        if (g == 0.0) return v;
        if (!increasing) g = -g;
        if (g > 0.0) hi = v; else lo = v;  // NaN-free: -inf log tails land on the correct side
        double s = std::isfinite(lt) ? slope(v, lt) : 0.0;
        if (!increasing) s = -s;
        double next = (s > 0.0 && std::isfinite(g)) ? v - g / s : lo - 1.0;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::fabs(next - v);
        v = next;
        if (step <= 1e-15 * std::fabs(v) || hi - lo <= 1e-15 * std::fabs(v)) return v;
    }
    throw ConvergenceError(std::string(who) + ": quantile iteration did not converge");
}

// Newton steps in x itself after a log-space solve: u = log x only resolves x to
// ulp(u), which is many ulps of x once |u| is large. Steps are kept only while
// they shrink the residual.
template <class Tail, class Slope>
double polish(Tail log_tail_x, Slope slope_u, double log_target, double x) {
    if (!(x > 0.0) || !std::isfinite(x)) return x;
    double lt = log_tail_x(x);
    double g = lt - log_target;
    for (int i = 0; i < 4 && std::isfinite(g) && g != 0.0; ++i) {
        const double s = slope_u(std::log(x), lt) / x;
        if (!std::isfinite(s) || s == 0.0) break;
        const double next = x - g / s;
        if (!(next > 0.0) || !std::isfinite(next) || next == x) break;
        const double lt2 = log_tail_x(next);
        const double g2 = lt2 - log_target;
        if (!(std::fabs(g2) < std::fabs(g))) break;
        x = next;
        lt = lt2;
        g = g2;
    }
    return x;
}

const double kLogMax = std::log(std::numeric_limits<double>::max()) - 1e-12;
const double kLogDenormMin = std::log(std::numeric_limits<double>::denorm_min());

// Abramowitz and Stegun 26.2.23: |error| < 4.5e-4 for the lower-tail z with p < 0.5.
double normal_guess(double p) {
    const double t = std::sqrt(-2.0 * std::log(p));
    return -(t - (2.515517 + t * (0.802853 + t * 0.010328)) / (1.0 + t * (1.432788 + t * (0.189269 + t * 0.001308))));
}

double lower_normal_quantile(double p, const SpecialFunState& st) {
    const double log_p = std::log(p);
    auto log_tail = [&](double z) { return std::log(normal_cdf(z, st)); };
    auto slope = [](double z, double lt) { return std::exp(-0.5 * z * z - kHalfLog2Pi - lt); };
    return solve_log(log_tail, slope, log_p, normal_guess(p), -39.0, 0.0, true, st, "normal_quantile");
}

}  // namespace

double binom_cdf(double k, double n, double p, const SpecialFunState& st) {
    if (!(n >= 0) || !(k >= 0) || k != std::floor(k) || n != std::floor(n))
        throw std::domain_error("binom_cdf: k and n must be non-negative integers");
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binom_cdf: p must lie in [0, 1]");
    if (k >= n) return 1.0;
    if (p == 0.0) return 1.0;
    if (p == 1.0) return 0.0;
    return beta_inc(1.0 - p, n - k, k + 1.0, st);
}

double poisson_pmf(double k, double lambda) {
    if (!(k >= 0) || k != std::floor(k)) throw std::domain_error("poisson_pmf: k must be a non-negative integer");
    check_positive(lambda, "poisson_pmf");
    const double lk = k == 0.0 ? 0.0 : k * std::log(lambda);
    return std::exp(lk - lambda - log_gamma(k + 1.0));
}

double poisson_cdf(double k, double lambda, const SpecialFunState& st) {
    if (!(k >= 0) || k != std::floor(k)) throw std::domain_error("poisson_cdf: k must be a non-negative integer");
    check_positive(lambda, "poisson_cdf");
    return gamma_q(k + 1.0, lambda, st);
}

double gamma_cdf(double x, double alpha, double beta, const SpecialFunState& st) {
    check_positive(alpha, "gamma_cdf");
    check_positive(beta, "gamma_cdf");
    if (x <= 0.0) return 0.0;
    return gamma_p(alpha, x / beta, st);
}

double normal_cdf(double z, const SpecialFunState& st) { return 0.5 * erfc_host(-z / 1.4142135623730950488, st); }

double chi2_upper(double x, double n, const SpecialFunState& st) {
    check_positive(n, "chi2_upper");
    if (x <= 0.0) return 1.0;
    return gamma_q(0.5 * n, 0.5 * x, st);
}

double t_upper(double t, double n, const SpecialFunState& st) {
    check_positive(n, "t_upper");
    if (t < 0.0) return 1.0 - t_upper(-t, n, st);
    if (t == 0.0) return 0.5;
    // Pr(T > t) = I(n/(n+t^2); n/2, 1/2) / 2, formed without overflowing t^2.
    const double r = (n / t) / t;
    if (r < 1e-100) {
        // Leading term of I(x; n/2, 1/2) ~ x^(n/2) / ((n/2) B); the rest is O(r).
        // sqrt(r) = sqrt(n)/t cannot underflow, and pow keeps the full precision
        // that exp of a large logarithm would lose.
        return 0.5 * std::pow(std::sqrt(n) / t, n) / (0.5 * n) * std::exp(-log_beta(0.5 * n, 0.5));
    }
    if (r <= 1.0) return 0.5 * beta_inc(r / (1.0 + r), 0.5 * n, 0.5, st);
    return 0.5 * beta_inc_upper(1.0 / (1.0 + r), 0.5, 0.5 * n, st);
}

double f_upper(double f, double n1, double n2, const SpecialFunState& st) {
    check_positive(n1, "f_upper");
    check_positive(n2, "f_upper");
    if (f <= 0.0) return 1.0;
    // Pr(F > f) = I(n2/(n2 + n1 f); n2/2, n1/2).
    const double r = n2 / (n1 * f);
    if (r < 1e-100) {
        return std::pow(std::sqrt(n2 / n1) / std::sqrt(f), n2) / (0.5 * n2) * std::exp(-log_beta(0.5 * n2, 0.5 * n1));
    }
    if (r <= 1.0) return beta_inc(r / (1.0 + r), 0.5 * n2, 0.5 * n1, st);
    return beta_inc_upper(1.0 / (1.0 + r), 0.5 * n1, 0.5 * n2, st);
}

double beta_cdf(double x, double alpha, double beta, const SpecialFunState& st) {
    check_positive(alpha, "beta_cdf");
    check_positive(beta, "beta_cdf");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return beta_inc(x, alpha, beta, st);
}

double normal_quantile(double p, double mu, double sigma, const SpecialFunState& st) {
    check_probability(p, "normal_quantile");
    check_positive(sigma, "normal_quantile");
    if (p == 0.5) return mu;
    // 1 - p is exact for p >= 1/2, so the upper half reuses the lower-tail solver.
    const double z = p < 0.5 ? lower_normal_quantile(p, st) : -lower_normal_quantile(1.0 - p, st);
    return mu + sigma * z;
}

double chi2_quantile(double p_upper, double n, const SpecialFunState& st) {
    check_probability(p_upper, "chi2_quantile");
    check_positive(n, "chi2_quantile");
    const double a = 0.5 * n;
    // Wilson-Hilferty start, with the small-x series as a fallback.
    const double z = -normal_quantile(p_upper, 0.0, 1.0, st);
    const double c = 2.0 / (9.0 * n);
    double x0 = n * std::pow(1.0 - c + z * std::sqrt(c), 3);
    if (!(x0 > 0.01 * n)) x0 = 2.0 * std::exp((std::log1p(-p_upper) + log_gamma(a + 1.0)) / a);
    auto log_tail = [&](double u) { return std::log(gamma_q(a, 0.5 * std::exp(u), st)); };
    auto slope = [&](double u, double lt) { return -std::exp(log_gamma_prefix(a, 0.5 * std::exp(u)) - lt); };
    const double lp = std::log(p_upper);
    const double u = solve_log(log_tail, slope, lp, std::log(x0), -700.0, 700.0, false, st, "chi2_quantile");
    return polish([&](double x) { return std::log(gamma_q(a, 0.5 * x, st)); }, slope, lp, std::exp(u));
}

double beta_quantile(double p, double alpha, double beta, const SpecialFunState& st) {
    check_probability(p, "beta_quantile");
    check_positive(alpha, "beta_quantile");
    check_positive(beta, "beta_quantile");
    const double lb = log_beta(alpha, beta);
    // Lower-tail start from I(x; a, b) ~ x^a / (a B(a, b)), capped at the mean.
    const double mean = alpha / (alpha + beta);
    double x0 = std::exp((std::log(p) + std::log(alpha) + lb) / alpha);
    if (!(x0 > 0.0) || x0 > mean) x0 = mean;
    auto log_tail = [&](double u) { return std::log(beta_inc(std::exp(u), alpha, beta, st)); };
    auto slope = [&](double u, double lt) {
        const double x = std::exp(u);
        return std::exp(alpha * u + (beta - 1.0) * std::log1p(-x) - lb - lt);
    };
    const double lp = std::log(p);
    // Below the smallest subnormal the quantile rounds to zero.
    if (log_tail(kLogDenormMin) > lp) return 0.0;
    const double u = solve_log(log_tail, slope, lp, std::log(x0), kLogDenormMin, 0.0, true, st, "beta_quantile");
    return polish([&](double x) { return std::log(beta_cdf(x, alpha, beta, st)); }, slope, lp, std::exp(u));
}

double t_quantile(double p_upper, double n, const SpecialFunState& st) {
    check_probability(p_upper, "t_quantile");
    check_positive(n, "t_quantile");
    if (p_upper == 0.5) return 0.0;
    if (p_upper > 0.5) return -t_quantile(1.0 - p_upper, n, st);
    const double lb = log_beta(0.5 * n, 0.5);
    // Start from the normal quantile, or from the power-law tail T ~ n^(n/2) t^-n / (n B).
    double u0;
    if (p_upper > 0.01) {
        u0 = std::log(-normal_quantile(p_upper, 0.0, 1.0, st));
    } else {
        u0 = (0.5 * n * std::log(n) - std::log(n) - lb - std::log(p_upper)) / n;
    }
    auto log_tail = [&](double u) { return std::log(t_upper(std::exp(u), n, st)); };
    auto slope = [&](double u, double lt) {
        const double t = std::exp(u);
        const double l = t > 1e150 ? 2.0 * u - std::log(n) + std::log1p(n / t / t) : std::log1p(t * t / n);
        return -std::exp(u - 0.5 * (n + 1.0) * l - 0.5 * std::log(n) - lb - lt);
    };
    const double lp = std::log(p_upper);
    // Beyond the largest double the quantile overflows.
    if (log_tail(kLogMax) > lp) return std::numeric_limits<double>::infinity();
    const double u = solve_log(log_tail, slope, lp, u0, -700.0, kLogMax, false, st, "t_quantile");
    return polish([&](double t) { return std::log(t_upper(t, n, st)); }, slope, lp, std::exp(u));
}

double f_quantile(double p_upper, double n1, double n2, const SpecialFunState& st) {
    check_probability(p_upper, "f_quantile");
    check_positive(n1, "f_quantile");
    check_positive(n2, "f_quantile");
    const double lb = log_beta(0.5 * n1, 0.5 * n2);
    // For small p the tail behaves like (n2/(n1 f))^(n2/2) / ((n2/2) B).
    double u0 = 0.0;
    if (p_upper < 0.1)
        u0 = std::log(n2 / n1) + (2.0 / n2) * (-std::log(p_upper) - std::log(0.5 * n2) - lb);
    auto log_tail = [&](double u) { return std::log(f_upper(std::exp(u), n1, n2, st)); };
    auto slope = [&](double u, double lt) {
        // log(f * density(f)) with w = n1 f / n2.
        const double lw = std::log(n1 / n2) + u;
        const double w = std::exp(lw);
        const double l = w > 1.0 ? -0.5 * n2 * lw - 0.5 * (n1 + n2) * std::log1p(1.0 / w)
                                 : 0.5 * n1 * lw - 0.5 * (n1 + n2) * std::log1p(w);
        return -std::exp(l - lb - lt);
    };
    const double lp = std::log(p_upper);
    if (log_tail(kLogMax) > lp) return std::numeric_limits<double>::infinity();
    const double u = solve_log(log_tail, slope, lp, u0, -700.0, kLogMax, false, st, "f_quantile");
    return polish([&](double f) { return std::log(f_upper(f, n1, n2, st)); }, slope, lp, std::exp(u));
}

double evaluate_distribution(const DistributionCase& c, const SpecialFunState& st) {
    switch (c.family) {
        case DistFamily::binomial: return binom_cdf(c.param("k"), c.param("n"), c.param("p"), st);
        case DistFamily::poisson_pmf: return poisson_pmf(c.param("k"), c.param("lambda"));
        case DistFamily::poisson_cdf: return poisson_cdf(c.param("k"), c.param("lambda"), st);
        case DistFamily::gamma_cdf: return gamma_cdf(c.param("x"), c.param("alpha"), c.param("beta"), st);
        case DistFamily::normal_quantile:
            return normal_quantile(c.param("p"), c.param("mu"), c.param("sigma"), st);
        case DistFamily::chi2_quantile: return chi2_quantile(c.param("p"), c.param("n"), st);
        case DistFamily::beta_quantile: return beta_quantile(c.param("p"), c.param("alpha"), c.param("beta"), st);
        case DistFamily::t_quantile: return t_quantile(c.param("p"), c.param("n"), st);
        case DistFamily::f_quantile: return f_quantile(c.param("p"), c.param("n1"), c.param("n2"), st);
    }
    throw std::domain_error("unknown distribution family");
}

}  // namespace lreaudit
