#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lreaudit/dd.hpp"
#include "lreaudit/matrix.hpp"
#include "lreaudit/oracle.hpp"

namespace lreaudit {

enum class Difficulty { low, average, high };

const char* difficulty_name(Difficulty d) noexcept;
/// Throws std::invalid_argument for anything but "low", "average", "high".
Difficulty parse_difficulty(std::string_view s);

/// Polynomial least-squares model y = sum_k beta_k x^k, k = 0..degree.
/// Without an intercept the x^0 column is dropped.
struct RegressionModel {
    int degree = 1;
    bool intercept = true;
    std::vector<DD> certified_beta;  // empty until certified
    std::optional<DD> certified_rsd;

    std::size_t parameter_count() const { return static_cast<std::size_t>(degree) + (intercept ? 1 : 0); }
};

/// A univariate sample or an (x, y) regression set.
///
/// `data` holds the nearest doubles, `exact` the same values parsed from their
/// decimal text in DD (so NumAcc-style representation error is visible to the
/// oracle). For regression sets `data`/`exact` hold y and `x` the predictor.
struct Dataset {
    std::string name;
    Difficulty difficulty = Difficulty::low;
    std::vector<double> data;
    std::vector<DD> exact;
    std::vector<double> x;
    std::optional<CertifiedStats> certified;
    std::optional<RegressionModel> model;
    bool synthetic = false;

    bool is_regression() const { return model.has_value(); }
};

/// Parses the dataset text format. `origin` names the source in messages.
/// Throws ParseError with the offending line number.
Dataset parse_strd(std::string_view text, std::string_view origin = "<text>");
Dataset load_strd(const std::string& path);
/// Lossless inverse of parse_strd for the double data (shortest round-trip digits).
std::string serialize_strd(const Dataset& ds);

/// Fills missing certified statistics (or regression values) from the DD oracle.
void ensure_certified(Dataset& ds);

/// Columns x^0..x^degree (x^1..x^degree without intercept), built in plain double.
Matrix design_matrix(const std::vector<double>& x, const RegressionModel& model);

/// Built-in sets: "pidigits", "numacc1".."numacc4", the synthetic real-world
/// style sets "lew-synth", "lottery-synth", "mavro-synth", "michelso-synth",
/// and the regression sets "wampler-synth", "noint-synth", "filip-synth".
std::vector<std::string> builtin_stats_keys();
std::vector<std::string> builtin_regression_keys();
/// Default bootstrap sets: PiDigits plus the four real-world style sets.
std::vector<std::string> builtin_bootstrap_keys();
/// Throws std::invalid_argument for an unknown key.
Dataset builtin_dataset(const std::string& key);
/// Generated file text of a built-in set, as it would be written to disk.
std::string builtin_text(const std::string& key);

/// First `count` decimal digits of pi, starting with the leading 3.
std::string pi_digits(std::size_t count);

// --- determinant family -------------------------------------------------------

struct DetCase {
    int j = 0;
    int k = 1;
    double b = 1.0;
    double s = 1.0;
    double epsilon = 0.9;

    /// [[b, b*eps], [s/eps, s]], row-major.
    Matrix matrix() const;
    std::string id() const;
};

/// All 240 cases, lexicographic in (j, k), j = 0..15, k = 1..15.
std::vector<DetCase> det_cases();

// --- complete bipartite graphs ---------------------------------------------------

enum class GraphFamily { balanced, skewed, explicit_ };

struct GraphSpec {
    int m = 1;
    int n = 1;
    GraphFamily family = GraphFamily::explicit_;

    std::string id() const;
};

/// K(m, n) normalized so that m <= n.
GraphSpec make_graph(int m, int n);
/// K(9,10), K(99,100), K(999,1000), K(2,17), K(2,197), K(2,1997).
std::vector<GraphSpec> graph_cases();

// --- distribution test points -------------------------------------------------

enum class DistFamily {
    binomial,
    poisson_pmf,
    poisson_cdf,
    gamma_cdf,
    normal_quantile,
    chi2_quantile,
    beta_quantile,
    t_quantile,
    f_quantile,
};

const char* family_name(DistFamily f) noexcept;
/// Throws std::invalid_argument for an unknown name.
DistFamily parse_family(std::string_view s);
std::vector<DistFamily> all_families();

struct DistributionCase {
    DistFamily family = DistFamily::gamma_cdf;
    /// Named parameters in wire-protocol order, including the input (k, x or p).
    std::vector<std::pair<std::string, double>> params;
    double certified = 0.0;
    /// Best LRE any reference platform reached (+inf for a perfect match).
    double reference_best = 0.0;

    double param(std::string_view name) const;
    std::string id() const;
};

/// Every published table row, in table order.
std::vector<DistributionCase> distribution_cases();

}  // namespace lreaudit
