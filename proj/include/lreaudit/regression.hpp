#pragma once

#include <span>
#include <string>
#include <vector>

#include "lreaudit/datasets.hpp"
#include "lreaudit/matrix.hpp"
#include "lreaudit/metric.hpp"

namespace lreaudit {

class Backend;

enum class LsMethod { normal_equations, orthogonal };

const char* ls_method_name(LsMethod m) noexcept;

struct LsFit {
    std::vector<double> beta;
    double rsd = 0.0;
};

/// Ordinary least squares in plain double. normal_equations forms X^T X and
/// eliminates with partial pivoting; orthogonal uses Householder QR. Both
/// compute rsd = sqrt(||y - X beta||^2 / (n - p)) from the explicit residual.
/// Throws RankDeficientError when a pivot (or R diagonal) falls below
/// 1e-12 times the largest one.
LsFit fit_ls(const Matrix& X, std::span<const double> y, LsMethod method);

struct RegressionResult {
    std::vector<double> beta;
    double rsd = 0.0;
    std::vector<LreScore> beta_lre;
    LreScore min_beta_lre;
    LreScore rsd_lre;
    /// Set when some coefficient came back missing or NaN; those score as 0.
    bool na_coefficients = false;
    std::string note;
};

/// Scores a fit against a certified model (certified_beta and certified_rsd set).
RegressionResult score_regression(const LsFit& fit, const RegressionModel& certified);

/// Every score NA, with the backend's message.
RegressionResult regression_na(const RegressionModel& certified, const std::string& note);

/// Certifies `ds` if needed, asks the backend for the fit and scores it.
/// Backend errors become NA scores; requires ds.model.
RegressionResult audit_regression(Dataset& ds, Backend& backend);

}  // namespace lreaudit
