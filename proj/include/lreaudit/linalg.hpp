#pragma once

#include <optional>
#include <vector>

#include "lreaudit/datasets.hpp"
#include "lreaudit/matrix.hpp"
#include "lreaudit/metric.hpp"

namespace lreaudit {

/// Determinant by LU with partial pivoting, as LAPACK's dgetf2 computes it:
/// multipliers are formed with the reciprocal of the pivot, det = sign * prod(u_kk).
/// A zero pivot column yields 0.
double det_lu(const Matrix& M);

/// L = D - A for K(m, n); vertices 0..m-1 form the first part.
struct LaplacianMatrix {
    int m = 1;
    int n = 1;
    Matrix entries;
};

/// Throws std::invalid_argument when m + n > 10000.
LaplacianMatrix build_laplacian(const GraphSpec& g);

/// All eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi rotations.
/// Stops once every off-diagonal entry is below 1e-14 * ||M||_F; at most 100 sweeps.
/// Throws AuditError if M is not symmetric within 1e-12 and ConvergenceError
/// if the sweeps run out.
std::vector<double> eig_sym(const Matrix& M);

enum class EqualityPolicy { single_precision, exact_double };

/// Accuracy of a computed K(m, n) spectrum.
///
/// The naming follows the reference table: l_m scores the n-1 eigenvalues whose
/// exact value is m, and pct_N counts eigenvalues equal to m over n-1. l_n and
/// pct_M do the same for the value n over m-1 (NA / absent when m = 1).
struct SpectralScore {
    LreScore l1;    // smallest eigenvalue vs 0
    LreScore l_mn;  // largest vs m + n
    LreScore l_S;   // sum vs 2mn
    LreScore l_n;
    LreScore l_m;
    std::optional<double> pct_N;
    std::optional<double> pct_M;
};

/// Whether `computed` tests equal to `exact` under the policy.
bool tests_equal(double computed, double exact, EqualityPolicy policy);

/// Scores an ascending spectrum positionally against {0, m x (n-1), n x (m-1), m+n}.
/// Requires eigs.size() == m + n and m <= n.
SpectralScore score_spectrum(const std::vector<double>& eigs, int m, int n, EqualityPolicy policy);

/// The exact spectrum, ascending.
std::vector<double> bipartite_spectrum(int m, int n);

}  // namespace lreaudit
