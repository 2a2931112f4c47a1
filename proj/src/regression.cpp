#include "lreaudit/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "lreaudit/backend.hpp"
#include "lreaudit/error.hpp"

namespace lreaudit {

const char* ls_method_name(LsMethod m) noexcept {
    return m == LsMethod::orthogonal ? "orthogonal" : "normal";
}

namespace {

void check_shape(const Matrix& X, std::span<const double> y) {
    if (X.rows != y.size()) throw std::invalid_argument("fit_ls: X and y disagree in length");
    if (X.cols == 0 || X.rows <= X.cols) throw std::invalid_argument("fit_ls needs n > p >= 1");
}

double residual_sd(const Matrix& X, std::span<const double> y, const std::vector<double>& beta) {
    double ss = 0.0;
    for (std::size_t i = 0; i < X.rows; ++i) {
        double fitted = 0.0;
        for (std::size_t j = 0; j < X.cols; ++j) fitted += X(i, j) * beta[j];
        const double r = y[i] - fitted;
        ss += r * r;
    }
    return std::sqrt(ss / static_cast<double>(X.rows - X.cols));
}

std::vector<double> solve_normal(const Matrix& X, std::span<const double> y) {
    const std::size_t n = X.rows, p = X.cols;
    Matrix A(p, p);
    std::vector<double> b(p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t k = 0; k < p; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += X(i, j) * X(i, k);
            A(j, k) = s;
        }
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += X(i, j) * y[i];
        b[j] = s;
    }
    std::vector<double> pivots;
    for (std::size_t k = 0; k < p; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < p; ++i)
            if (std::fabs(A(i, k)) > std::fabs(A(piv, k))) piv = i;
        if (piv != k) {
            for (std::size_t j = 0; j < p; ++j) std::swap(A(k, j), A(piv, j));
            std::swap(b[k], b[piv]);
        }
        pivots.push_back(std::fabs(A(k, k)));
        // Pivots of X^T X scale like squared R diagonals, hence the square roots.
        const double largest = *std::max_element(pivots.begin(), pivots.end());
        if (!(std::sqrt(pivots.back()) > 1e-12 * std::sqrt(largest)))
            throw RankDeficientError("normal equations: pivot " + std::to_string(k) + " is negligible");
        for (std::size_t i = k + 1; i < p; ++i) {
            const double l = A(i, k) / A(k, k);
            for (std::size_t j = k; j < p; ++j) A(i, j) -= l * A(k, j);
            b[i] -= l * b[k];
        }
    }
    std::vector<double> beta(p);
    for (std::size_t k = p; k-- > 0;) {
        double s = b[k];
        for (std::size_t j = k + 1; j < p; ++j) s -= A(k, j) * beta[j];
        beta[k] = s / A(k, k);
    }
    return beta;
}

std::vector<double> solve_qr(const Matrix& X, std::span<const double> y) {
    const std::size_t n = X.rows, p = X.cols;
    Matrix R = X;
    std::vector<double> qty(y.begin(), y.end());
    double largest = 0.0;
    for (std::size_t k = 0; k < p; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < n; ++i) norm = std::hypot(norm, R(i, k));
        const double alpha = R(k, k) > 0.0 ? -norm : norm;
        // v = x - alpha e1, stored in place below the diagonal.
        std::vector<double> v(n - k);
        for (std::size_t i = k; i < n; ++i) v[i - k] = R(i, k);
        v[0] -= alpha;
        double vtv = 0.0;
        for (double e : v) vtv += e * e;
        if (vtv > 0.0) {
            for (std::size_t j = k; j < p; ++j) {
                double s = 0.0;
                for (std::size_t i = k; i < n; ++i) s += v[i - k] * R(i, j);
                const double f = 2.0 * s / vtv;
                for (std::size_t i = k; i < n; ++i) R(i, j) -= f * v[i - k];
            }
            double s = 0.0;
            for (std::size_t i = k; i < n; ++i) s += v[i - k] * qty[i];
            const double f = 2.0 * s / vtv;
            for (std::size_t i = k; i < n; ++i) qty[i] -= f * v[i - k];
        }
        largest = std::max(largest, std::fabs(R(k, k)));
        if (!(std::fabs(R(k, k)) > 1e-12 * largest))
            throw RankDeficientError("QR: diagonal " + std::to_string(k) + " is negligible");
    }
    std::vector<double> beta(p);
    for (std::size_t k = p; k-- > 0;) {
        double s = qty[k];
        for (std::size_t j = k + 1; j < p; ++j) s -= R(k, j) * beta[j];
        beta[k] = s / R(k, k);
    }
    return beta;
}

}  // namespace

LsFit fit_ls(const Matrix& X, std::span<const double> y, LsMethod method) {
    check_shape(X, y);
    LsFit fit;
    fit.beta = method == LsMethod::orthogonal ? solve_qr(X, y) : solve_normal(X, y);
    fit.rsd = residual_sd(X, y, fit.beta);
    return fit;
}

RegressionResult score_regression(const LsFit& fit, const RegressionModel& certified) {
    if (certified.certified_beta.empty() || !certified.certified_rsd)
        throw std::invalid_argument("score_regression needs certified values");
    RegressionResult out;
    out.beta = fit.beta;
    out.rsd = fit.rsd;
    const std::size_t p = certified.certified_beta.size();
    for (std::size_t i = 0; i < p; ++i) {
        const double c = certified.certified_beta[i].to_double();
        if (i >= fit.beta.size() || std::isnan(fit.beta[i])) {
            out.na_coefficients = true;
            out.beta_lre.push_back(categorize(0.0, false));
            out.beta_lre.back().certified = c;
            out.beta_lre.back().note = "coefficient missing; scored as 0";
        } else {
            out.beta_lre.push_back(score(fit.beta[i], c));
        }
    }
    out.min_beta_lre = out.beta_lre.front();
    for (const LreScore& s : out.beta_lre)
        if (s.raw < out.min_beta_lre.raw) out.min_beta_lre = s;
    out.rsd_lre = score(fit.rsd, certified.certified_rsd->to_double());
    if (out.na_coefficients) out.note = "some coefficients missing; scored as 0";
    return out;
}

RegressionResult regression_na(const RegressionModel& certified, const std::string& note) {
    RegressionResult out;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out.rsd = nan;
    for (const DD& c : certified.certified_beta) {
        out.beta.push_back(nan);
        out.beta_lre.push_back(score_error(c.to_double(), note));
    }
    out.min_beta_lre = score_error(certified.certified_beta.empty() ? nan : certified.certified_beta[0].to_double(), note);
    out.rsd_lre = score_error(certified.certified_rsd ? certified.certified_rsd->to_double() : nan, note);
    out.note = note;
    return out;
}

RegressionResult audit_regression(Dataset& ds, Backend& backend) {
    if (!ds.model) throw std::invalid_argument("audit_regression: dataset has no regression model");
    ensure_certified(ds);
    const Matrix X = design_matrix(ds.x, *ds.model);
    const Reply r = backend.regress(X, ds.data);
    if (!r.ok()) return regression_na(*ds.model, r.error);
    const std::size_t p = ds.model->parameter_count();
    if (r.values.size() != p + 1)
        return regression_na(*ds.model, "backend returned " + std::to_string(r.values.size()) +
                                            " numbers, expected " + std::to_string(p + 1));
    LsFit fit;
    fit.beta.assign(r.values.begin(), r.values.begin() + static_cast<std::ptrdiff_t>(p));
    fit.rsd = r.values.back();
    return score_regression(fit, *ds.model);
}

}  // namespace lreaudit
