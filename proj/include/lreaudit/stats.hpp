#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "lreaudit/backend.hpp"
#include "lreaudit/datasets.hpp"
#include "lreaudit/metric.hpp"
#include "lreaudit/oracle.hpp"

namespace lreaudit {

enum class Statistic { mean, stddev, autocorr };

/// "mean", "std", "autocorr".
const char* statistic_name(Statistic s) noexcept;
/// Accepts the names above; throws std::invalid_argument otherwise.
Statistic parse_statistic(std::string_view s);

/// The certified value as the nearest double; absent for the autocorrelation of constant data.
std::optional<double> certified_value(const CertifiedStats& c, Statistic s);

/// Asks the backend for one statistic and scores it. Backend errors and an
/// undefined certified value score NA.
LreScore score_statistic(Backend& backend, Statistic s, std::span<const double> data, const CertifiedStats& c);

struct StatsResult {
    LreScore mean;
    LreScore stddev;
    LreScore autocorr;
};

/// Certifies `ds` if needed and scores all three statistics.
StatsResult audit_stats(Dataset& ds, Backend& backend);

}  // namespace lreaudit
