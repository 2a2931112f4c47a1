#include "lreaudit/bootstrap.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

#include "lreaudit/error.hpp"
#include "lreaudit/oracle.hpp"
#include "lreaudit/parallel.hpp"
#include "lreaudit/rng.hpp"

namespace lreaudit {

std::vector<std::size_t> resample_indices(std::size_t n, std::uint64_t seed, std::uint32_t index) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i)
        idx[i] = static_cast<std::size_t>(random_below(random_bits(seed, index, static_cast<std::uint32_t>(i)), n));
    return idx;
}

std::vector<double> resample(std::span<const double> data, std::uint64_t seed, std::uint32_t index) {
    std::vector<double> out;
    out.reserve(data.size());
    for (std::size_t i : resample_indices(data.size(), seed, index)) out.push_back(data[i]);
    return out;
}

double s_lre(std::span<const double> samples, double base) {
    if (samples.size() < 2) throw AuditError("s_LRE needs at least 2 valid resamples");
    double ss = 0.0;
    for (double v : samples) ss += (v - base) * (v - base);
    return std::sqrt(ss / static_cast<double>(samples.size() - 1));
}

StabilityResult stability(Dataset& ds, Backend& backend, const BootstrapConfig& cfg) {
    if (cfg.resamples < 2) throw std::invalid_argument("bootstrap needs at least 2 resamples");
    if (ds.data.size() > 0xffffffffu || cfg.resamples > 0xffffffffu)
        throw std::invalid_argument("bootstrap sizes are limited to 2^32");
    ensure_certified(ds);

    const LreScore base = score_statistic(backend, cfg.statistic, ds.data, *ds.certified);
    if (base.is_na()) throw AuditError(ds.name + ": base score is NA (" + base.note + ")");

    const std::size_t n = ds.data.size();
    std::vector<LreScore> scores(cfg.resamples);
    const unsigned jobs = backend.concurrent() ? cfg.jobs : 1;
    parallel_for(cfg.resamples, jobs, [&](std::size_t r) {
        const auto idx = resample_indices(n, cfg.seed, static_cast<std::uint32_t>(r));
        std::vector<double> data(n);
        std::vector<DD> exact(n);
        for (std::size_t i = 0; i < n; ++i) {
            data[i] = ds.data[idx[i]];
            exact[i] = ds.exact[idx[i]];
        }
        scores[r] = score_statistic(backend, cfg.statistic, data, certify_stats(exact));
    });

    StabilityResult out;
    out.base_lre = lre_for_bootstrap(base);
    for (std::size_t r = 0; r < scores.size(); ++r) {
        if (scores[r].is_na())
            out.na_resamples.emplace_back(r, scores[r].note);
        else
            out.lre_samples.push_back(lre_for_bootstrap(scores[r]));
    }
    if (out.lre_samples.size() < 2)
        throw AuditError(ds.name + ": fewer than 2 valid resamples (" + std::to_string(out.na_resamples.size()) +
                         " NA)");
    out.s_lre = s_lre(out.lre_samples, out.base_lre);
    return out;
}

}  // namespace lreaudit
