#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lreaudit/backend.hpp"
#include "lreaudit/datasets.hpp"
#include "lreaudit/stats.hpp"

namespace lreaudit {

struct BootstrapConfig {
    std::size_t resamples = 100;
    std::uint64_t seed = 42;
    Statistic statistic = Statistic::mean;
    /// Worker threads; backends that are not concurrent always run on one.
    unsigned jobs = 1;
};

struct StabilityResult {
    double base_lre = 0.0;
    /// One entry per valid resample, in index order, Inf mapped to 16.
    std::vector<double> lre_samples;
    /// Resample indices whose score was NA, with the reason.
    std::vector<std::pair<std::size_t, std::string>> na_resamples;
    /// sqrt(sum (LRE(r) - base_lre)^2 / (valid - 1)).
    double s_lre = 0.0;

    bool operator==(const StabilityResult&) const = default;
};

/// Draw i of resample `index` is element random_below(random_bits(seed, index, i), n).
std::vector<std::size_t> resample_indices(std::size_t n, std::uint64_t seed, std::uint32_t index);
std::vector<double> resample(std::span<const double> data, std::uint64_t seed, std::uint32_t index);

/// Deviation of the resample scores around `base`, summed in index order.
/// Throws AuditError with fewer than two samples.
double s_lre(std::span<const double> samples, double base);

/// Resamples ds with replacement cfg.resamples times, certifies each resample
/// with the DD oracle and scores the backend against it. The base LRE is the
/// score on the original data. Throws std::invalid_argument when
/// cfg.resamples < 2, AuditError when the base score is NA or fewer than two
/// resamples are valid.
StabilityResult stability(Dataset& ds, Backend& backend, const BootstrapConfig& cfg);

}  // namespace lreaudit
