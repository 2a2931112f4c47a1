#include "lreaudit/stats.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lreaudit {

const char* statistic_name(Statistic s) noexcept {
    switch (s) {
        case Statistic::mean: return "mean";
        case Statistic::stddev: return "std";
        case Statistic::autocorr: return "autocorr";
    }
    return "?";
}

Statistic parse_statistic(std::string_view s) {
    if (s == "mean") return Statistic::mean;
    if (s == "std") return Statistic::stddev;
    if (s == "autocorr") return Statistic::autocorr;
    throw std::invalid_argument("unknown statistic '" + std::string(s) + "' (mean, std, autocorr)");
}

std::optional<double> certified_value(const CertifiedStats& c, Statistic s) {
    switch (s) {
        case Statistic::mean: return c.mean.to_double();
        case Statistic::stddev: return c.stddev.to_double();
        case Statistic::autocorr:
            if (!c.autocorr_r1) return std::nullopt;
            return c.autocorr_r1->to_double();
    }
    return std::nullopt;
}

namespace {

Reply ask(Backend& backend, Statistic s, std::span<const double> data) {
    switch (s) {
        case Statistic::mean: return backend.mean(data);
        case Statistic::stddev: return backend.stdev(data);
        case Statistic::autocorr: return backend.autocorr(data);
    }
    return Reply::fail("unknown statistic");
}

}  // namespace

LreScore score_statistic(Backend& backend, Statistic s, std::span<const double> data, const CertifiedStats& c) {
    const auto cert = certified_value(c, s);
    if (!cert) return score_error(std::nan(""), "certified value undefined for constant data");
    const Reply r = ask(backend, s, data);
    if (!r.ok()) return score_error(*cert, r.error);
    if (r.values.size() != 1) return score_error(*cert, "expected one value, got " + std::to_string(r.values.size()));
    return score(r.value(), *cert);
}

StatsResult audit_stats(Dataset& ds, Backend& backend) {
    ensure_certified(ds);
    const CertifiedStats& c = *ds.certified;
    return {score_statistic(backend, Statistic::mean, ds.data, c),
            score_statistic(backend, Statistic::stddev, ds.data, c),
            score_statistic(backend, Statistic::autocorr, ds.data, c)};
}

}  // namespace lreaudit
