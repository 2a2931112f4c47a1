#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lreaudit/dd.hpp"
#include "lreaudit/matrix.hpp"

namespace lreaudit {

/// Reference statistics computed in double-double.
struct CertifiedStats {
    DD mean;
    DD stddev;                     // sample, divisor n-1
    std::optional<DD> autocorr_r1; // absent when n < 3 or the data are constant
    std::size_t n = 0;
};

/// Pairwise summation in DD; error grows with log2(n), not n.
DD dd_pairwise_sum(std::span<const DD> v);

/// Two-pass mean, standard deviation and lag-1 autocorrelation
///   r1 = sum_{t<n} (x_t - m)(x_{t+1} - m) / sum_t (x_t - m)^2.
/// Throws AuditError when n < 2.
CertifiedStats certify_stats(std::span<const DD> data);
CertifiedStats certify_stats(std::span<const double> data);

struct CertifiedRegression {
    std::vector<DD> beta;
    DD rsd;
};

/// Least squares in DD: normal equations on power-of-two scaled columns, DD
/// Cholesky, then iterative refinement against the DD residual until the
/// relative correction drops below 1e-31 or stops shrinking. Throws
/// RankDeficientError on a non-positive Cholesky pivot, or when the
/// corrections stall above 1e-20.
CertifiedRegression certify_regression(const Matrix& X, std::span<const double> y);

}  // namespace lreaudit
