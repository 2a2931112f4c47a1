#include "lreaudit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lreaudit/error.hpp"

namespace lreaudit {

DD dd_pairwise_sum(std::span<const DD> v) {
    if (v.size() <= 8) {
        DD s;
        for (const DD& x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return dd_pairwise_sum(v.first(half)) + dd_pairwise_sum(v.subspan(half));
}

CertifiedStats certify_stats(std::span<const DD> data) {
    const std::size_t n = data.size();
    if (n < 2) throw AuditError("certify_stats needs at least 2 values, got " + std::to_string(n));

    CertifiedStats out;
    out.n = n;
    out.mean = dd_pairwise_sum(data) / DD(static_cast<double>(n));

    std::vector<DD> dev(n), sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        dev[i] = data[i] - out.mean;
        sq[i] = dev[i] * dev[i];
    }
    const DD ss = dd_pairwise_sum(sq);
    out.stddev = dd_sqrt(ss / DD(static_cast<double>(n - 1)));

    if (n >= 3 && ss.hi > 0.0) {
        std::vector<DD> lag(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) lag[i] = dev[i] * dev[i + 1];
        out.autocorr_r1 = dd_pairwise_sum(lag) / ss;
    }
    return out;
}

CertifiedStats certify_stats(std::span<const double> data) {
    std::vector<DD> v(data.begin(), data.end());
    return certify_stats(std::span<const DD>(v));
}

namespace {

using DDMatrix = std::vector<std::vector<DD>>;

// Solves L L^T x = b given the lower Cholesky factor.
std::vector<DD> cholesky_solve(const DDMatrix& L, std::vector<DD> b) {
    const std::size_t p = L.size();
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t k = 0; k < i; ++k) b[i] -= L[i][k] * b[k];
        b[i] /= L[i][i];
    }
    for (std::size_t i = p; i-- > 0;) {
        for (std::size_t k = i + 1; k < p; ++k) b[i] -= L[k][i] * b[k];
        b[i] /= L[i][i];
    }
    return b;
}

}  // namespace

CertifiedRegression certify_regression(const Matrix& X, std::span<const double> y) {
    const std::size_t n = X.rows, p = X.cols;
    if (y.size() != n) throw AuditError("certify_regression: X and y disagree in length");
    if (p == 0 || n <= p) throw AuditError("certify_regression needs n > p >= 1");

    // Scale every column by a power of two so its largest entry lies in [0.5, 1).
    std::vector<int> scale(p, 0);
    for (std::size_t j = 0; j < p; ++j) {
        double mx = 0.0;
        for (std::size_t i = 0; i < n; ++i) mx = std::max(mx, std::fabs(X(i, j)));
        if (mx == 0.0) throw RankDeficientError("column " + std::to_string(j) + " is zero");
        std::frexp(mx, &scale[j]);
    }
    Matrix Xs(n, p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) Xs(i, j) = std::ldexp(X(i, j), -scale[j]);

    DDMatrix G(p, std::vector<DD>(p));
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t k = 0; k <= j; ++k) {
            DD s;
            for (std::size_t i = 0; i < n; ++i) s += two_prod(Xs(i, j), Xs(i, k));
            G[j][k] = G[k][j] = s;
        }
    }

    DDMatrix L(p, std::vector<DD>(p));
    for (std::size_t j = 0; j < p; ++j) {
        DD d = G[j][j];
        for (std::size_t k = 0; k < j; ++k) d -= L[j][k] * L[j][k];
        if (!(d.hi > 0.0))
            throw RankDeficientError("DD Cholesky pivot " + std::to_string(j) + " is not positive");
        L[j][j] = dd_sqrt(d);
        for (std::size_t i = j + 1; i < p; ++i) {
            DD s = G[i][j];
            for (std::size_t k = 0; k < j; ++k) s -= L[i][k] * L[j][k];
            L[i][j] = s / L[j][j];
        }
    }

    auto residual = [&](const std::vector<DD>& beta) {
        std::vector<DD> r(n);
        for (std::size_t i = 0; i < n; ++i) {
            DD s(y[i]);
            for (std::size_t j = 0; j < p; ++j) s -= beta[j] * DD(Xs(i, j));
            r[i] = s;
        }
        return r;
    };
    auto xt_times = [&](const std::vector<DD>& r) {
        std::vector<DD> g(p);
        for (std::size_t j = 0; j < p; ++j) {
            DD s;
            for (std::size_t i = 0; i < n; ++i) s += r[i] * DD(Xs(i, j));
            g[j] = s;
        }
        return g;
    };

    std::vector<DD> beta(p);
    std::vector<DD> r(y.begin(), y.end());
    // Corrections shrink geometrically until they hit the noise floor of the DD
    // residual, which for cond(X) near 1e15 sits around 1e-23. Stagnation below
    // 1e-20 still leaves four digits beyond double precision.
    constexpr int kMaxRefine = 40;
    double prev = std::numeric_limits<double>::infinity();
    for (int it = 0;; ++it) {
        const std::vector<DD> delta = cholesky_solve(L, xt_times(r));
        double worst = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            beta[j] += delta[j];
            const double mag = std::fabs(beta[j].hi);
            const double rel = mag > 0.0 ? std::fabs(delta[j].hi) / mag : std::fabs(delta[j].hi);
            worst = std::max(worst, rel);
        }
        r = residual(beta);
        if (worst < 1e-31) break;
        const bool stalled = it >= 2 && worst > 0.5 * prev;
        if (stalled || it + 1 == kMaxRefine) {
            if (worst > 1e-20) throw RankDeficientError("DD refinement did not converge; design too ill-conditioned");
            break;
        }
        prev = worst;
    }

    CertifiedRegression out;
    out.beta.resize(p);
    for (std::size_t j = 0; j < p; ++j) out.beta[j] = dd_ldexp(beta[j], -scale[j]);

    std::vector<DD> r2(n);
    DD ynorm2;
    for (std::size_t i = 0; i < n; ++i) {
        r2[i] = r[i] * r[i];
        ynorm2 += two_prod(y[i], y[i]);
    }
    const DD rss = dd_pairwise_sum(r2);
    // A residual below DD resolution of y is an exact fit.
    if (rss.hi <= 1e-58 * ynorm2.hi) {
        out.rsd = DD(0.0);
    } else {
        out.rsd = dd_sqrt(rss / DD(static_cast<double>(n - p)));
    }
    return out;
}

}  // namespace lreaudit
