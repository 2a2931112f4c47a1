#include "lreaudit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "lreaudit/error.hpp"

namespace lreaudit {

double det_lu(const Matrix& M) {
    if (M.rows != M.cols) throw std::invalid_argument("det_lu needs a square matrix");
    const std::size_t n = M.rows;
    Matrix A = M;
    bool negate = false;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(A(i, k)) > std::fabs(A(piv, k))) piv = i;
        if (A(piv, k) == 0.0) return 0.0;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A(k, j), A(piv, j));
            negate = !negate;
        }
        const double r = 1.0 / A(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double l = A(i, k) * r;
            for (std::size_t j = k + 1; j < n; ++j) A(i, j) -= l * A(k, j);
        }
    }
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) det *= A(k, k);
    return negate ? -det : det;
}

LaplacianMatrix build_laplacian(const GraphSpec& g) {
    if (g.m < 1 || g.n < 1) throw std::invalid_argument("graph sizes must be positive");
    if (static_cast<long long>(g.m) + g.n > 10000) throw std::invalid_argument("Laplacian dimension exceeds 10000");
    const std::size_t m = g.m, n = g.n, N = m + n;
    LaplacianMatrix L{g.m, g.n, Matrix(N, N)};
    for (std::size_t i = 0; i < m; ++i) {
        L.entries(i, i) = static_cast<double>(n);
        for (std::size_t j = m; j < N; ++j) L.entries(i, j) = L.entries(j, i) = -1.0;
    }
    for (std::size_t j = m; j < N; ++j) L.entries(j, j) = static_cast<double>(m);
    return L;
}

std::vector<double> eig_sym(const Matrix& M) {
    if (M.rows != M.cols) throw AuditError("eig_sym needs a square matrix");
    const std::size_t N = M.rows;
    double fro = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < N; ++j) {
            if (std::fabs(M(i, j) - M(j, i)) > 1e-12) throw AuditError("eig_sym: matrix is not symmetric");
            fro += M(i, j) * M(i, j);
        }
    }
    fro = std::sqrt(fro);
    const double tol = 1e-14 * fro;

    // Only the strict upper triangle is updated; the diagonal lives in d.
    Matrix A = M;
    std::vector<double> d(N);
    for (std::size_t i = 0; i < N; ++i) d[i] = A(i, i);

    auto rotate = [](double& g_ref, double& h_ref, double s, double tau) {
        const double g = g_ref, h = h_ref;
        g_ref = g - s * (h + g * tau);
        h_ref = h + s * (g - h * tau);
    };

    for (int sweep = 0;; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t q = p + 1; q < N; ++q) off = std::max(off, std::fabs(A(p, q)));
        if (off < tol || N < 2) break;
        if (sweep == 100) throw ConvergenceError("eig_sym: no convergence after 100 sweeps");
        for (std::size_t p = 0; p + 1 < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const double apq = A(p, q);
                // Entries far below the stopping threshold are left alone.
                if (std::fabs(apq) < 1e-3 * tol) continue;
                const double theta = (d[q] - d[p]) / (2.0 * apq);
                double t;
                if (std::fabs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c, tau = s / (1.0 + c);
                d[p] -= t * apq;
                d[q] += t * apq;
                A(p, q) = 0.0;
                for (std::size_t j = 0; j < p; ++j) rotate(A(j, p), A(j, q), s, tau);
                for (std::size_t j = p + 1; j < q; ++j) rotate(A(p, j), A(j, q), s, tau);
                for (std::size_t j = q + 1; j < N; ++j) rotate(A(p, j), A(q, j), s, tau);
            }
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

bool tests_equal(double computed, double exact, EqualityPolicy policy) {
    if (policy == EqualityPolicy::exact_double) return computed == exact;
    return static_cast<float>(computed) == static_cast<float>(exact);
}

std::vector<double> bipartite_spectrum(int m, int n) {
    if (m > n) std::swap(m, n);
    std::vector<double> s;
    s.reserve(static_cast<std::size_t>(m) + n);
    s.push_back(0.0);
    s.insert(s.end(), static_cast<std::size_t>(n - 1), static_cast<double>(m));
    s.insert(s.end(), static_cast<std::size_t>(m - 1), static_cast<double>(n));
    s.push_back(static_cast<double>(m) + n);
    return s;
}

namespace {

// The worst score over eigs[first, first+count) against `exact`.
LreScore block_min(const std::vector<double>& eigs, std::size_t first, std::size_t count, double exact) {
    if (count == 0) return score_error(exact, "empty eigenvalue block");
    LreScore worst = score(eigs[first], exact);
    for (std::size_t i = first + 1; i < first + count; ++i) {
        LreScore s = score(eigs[i], exact);
        if (s.raw < worst.raw || std::isnan(s.raw)) worst = s;
    }
    return worst;
}

}  // namespace

SpectralScore score_spectrum(const std::vector<double>& eigs, int m, int n, EqualityPolicy policy) {
    if (m < 1 || n < m) throw std::invalid_argument("score_spectrum needs 1 <= m <= n");
    const std::size_t M = m, N = n;
    if (eigs.size() != M + N) throw std::invalid_argument("score_spectrum: spectrum has the wrong length");
    SpectralScore out;
    out.l1 = score(eigs.front(), 0.0);
    out.l_mn = score(eigs.back(), static_cast<double>(m) + n);
    double sum = 0.0;
    for (double e : eigs) sum += e;
    out.l_S = score(sum, 2.0 * m * n);
    out.l_m = block_min(eigs, 1, N - 1, m);
    out.l_n = block_min(eigs, N, M - 1, n);

    std::size_t eq_m = 0, eq_n = 0;
    for (double e : eigs) {
        if (tests_equal(e, m, policy)) ++eq_m;
        if (tests_equal(e, n, policy)) ++eq_n;
    }
    if (N > 1) out.pct_N = 100.0 * static_cast<double>(eq_m) / static_cast<double>(N - 1);
    if (M > 1) out.pct_M = 100.0 * static_cast<double>(eq_n) / static_cast<double>(M - 1);
    return out;
}

}  // namespace lreaudit
