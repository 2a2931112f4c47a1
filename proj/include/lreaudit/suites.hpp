#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lreaudit/backend.hpp"
#include "lreaudit/datasets.hpp"
#include "lreaudit/linalg.hpp"
#include "lreaudit/report.hpp"

namespace lreaudit {

struct SuiteOptions {
    /// "builtin:<key>", "builtin:all" or a file path; empty selects the suite's defaults.
    std::vector<std::string> datasets;
    std::uint64_t seed = 42;
    std::size_t resamples = 100;
    EqualityPolicy equality = EqualityPolicy::single_precision;
    unsigned jobs = 1;
    /// Empty selects graph_cases().
    std::vector<GraphSpec> graphs;
};

/// stats, dist, regression, det, spectral, bootstrap: the order `all` runs them in.
std::vector<std::string> suite_names();

/// Loads dataset specs; "builtin:all" expands to `defaults`. Throws
/// std::invalid_argument for unknown built-ins and ParseError for bad files.
std::vector<Dataset> resolve_datasets(const std::vector<std::string>& specs,
                                      const std::vector<std::string>& defaults);

SuiteReport run_stats(Backend& backend, const SuiteOptions& opt);
SuiteReport run_dist(Backend& backend, const SuiteOptions& opt);
SuiteReport run_regression(Backend& backend, const SuiteOptions& opt);
/// Summary "correct" reads "<count> / 240"; NA cases are excluded from the count.
SuiteReport run_det(Backend& backend, const SuiteOptions& opt);
SuiteReport run_spectral(Backend& backend, const SuiteOptions& opt);
/// Base LRE with s_LRE for mean, std and autocorr of each dataset.
SuiteReport run_bootstrap(Backend& backend, const SuiteOptions& opt);

/// Dispatches by name; throws std::invalid_argument for an unknown suite.
SuiteReport run_suite(const std::string& name, Backend& backend, const SuiteOptions& opt);

}  // namespace lreaudit
