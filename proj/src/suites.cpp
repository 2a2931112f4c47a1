#include "lreaudit/suites.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lreaudit/bootstrap.hpp"
#include "lreaudit/error.hpp"
#include "lreaudit/parallel.hpp"
#include "lreaudit/regression.hpp"
#include "lreaudit/stats.hpp"

namespace lreaudit {

namespace {

std::string shortest(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

unsigned jobs_for(const Backend& b, const SuiteOptions& opt) { return b.concurrent() ? opt.jobs : 1; }

std::string count_line(std::size_t count, std::size_t total) {
    return std::to_string(count) + " / " + std::to_string(total);
}

void summarize_lre(SuiteReport& r, const std::string& column) {
    std::size_t na = 0;
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& row : r.cases) {
        const Cell& c = r.cell(row.id, column);
        if (c.kind != Cell::Kind::lre) continue;
        if (c.lre.is_na())
            ++na;
        else
            lo = std::min(lo, lre_for_bootstrap(c.lre));
    }
    r.summary.emplace_back("cases", std::to_string(r.cases.size()));
    r.summary.emplace_back("na", std::to_string(na));
    if (na < r.cases.size()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.1f", std::floor(lo * 10.0 + 1e-9) / 10.0);
        r.summary.emplace_back("worst " + column, buf);
    }
}

}  // namespace

std::vector<std::string> suite_names() { return {"stats", "dist", "regression", "det", "spectral", "bootstrap"}; }

std::vector<Dataset> resolve_datasets(const std::vector<std::string>& specs,
                                      const std::vector<std::string>& defaults) {
    std::vector<std::string> keys;
    bool any = false;
    for (const auto& s : specs) {
        any = true;
        if (s == "builtin:all") {
            for (const auto& d : defaults) keys.push_back("builtin:" + d);
        } else {
            keys.push_back(s);
        }
    }
    if (!any)
        for (const auto& d : defaults) keys.push_back("builtin:" + d);
    std::vector<Dataset> out;
    for (const auto& k : keys) {
        if (k.rfind("builtin:", 0) == 0)
            out.push_back(builtin_dataset(k.substr(8)));
        else
            out.push_back(load_strd(k));
    }
    return out;
}

SuiteReport run_stats(Backend& backend, const SuiteOptions& opt) {
    std::vector<Dataset> sets = resolve_datasets(opt.datasets, builtin_stats_keys());
    SuiteReport r;
    r.suite = "stats";
    r.backend = backend.id();
    r.columns = {"difficulty", "n", "mean", "std", "autocorr"};
    std::vector<StatsResult> res(sets.size());
    for (auto& ds : sets) ensure_certified(ds);
    parallel_for(sets.size(), jobs_for(backend, opt), [&](std::size_t i) { res[i] = audit_stats(sets[i], backend); });
    for (std::size_t i = 0; i < sets.size(); ++i) {
        r.cases.push_back({sets[i].name,
                           {Cell::of_text(difficulty_name(sets[i].difficulty)),
                            Cell::of_number(static_cast<double>(sets[i].data.size()), 0), Cell::of_lre(res[i].mean),
                            Cell::of_lre(res[i].stddev), Cell::of_lre(res[i].autocorr)}});
    }
    r.summary.emplace_back("datasets", std::to_string(sets.size()));
    return r;
}

SuiteReport run_dist(Backend& backend, const SuiteOptions& opt) {
    const std::vector<DistributionCase> cases = distribution_cases();
    SuiteReport r;
    r.suite = "dist";
    r.backend = backend.id();
    r.columns = {"certified", "computed", "lre", "reference best"};
    std::vector<LreScore> scores(cases.size());
    parallel_for(cases.size(), jobs_for(backend, opt), [&](std::size_t i) {
        const Reply rep = backend.dist(cases[i]);
        scores[i] = rep.ok() ? score(rep.value(), cases[i].certified) : score_error(cases[i].certified, rep.error);
    });
    std::size_t six = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const double best = cases[i].reference_best;
        std::string best_text = std::isinf(best) ? "Inf" : best < 0 ? "--" : shortest(best);
        r.cases.push_back({cases[i].id(),
                           {Cell::of_text(shortest(cases[i].certified)),
                            Cell::of_text(scores[i].is_na() ? "NA" : shortest(scores[i].computed)),
                            Cell::of_lre(scores[i]), Cell::of_text(best_text)}});
        if (!scores[i].is_na() && lre_for_bootstrap(scores[i]) >= 6.0) ++six;
    }
    summarize_lre(r, "lre");
    r.summary.emplace_back("lre >= 6", count_line(six, cases.size()));
    return r;
}

SuiteReport run_regression(Backend& backend, const SuiteOptions& opt) {
    std::vector<Dataset> sets = resolve_datasets(opt.datasets, builtin_regression_keys());
    SuiteReport r;
    r.suite = "regression";
    r.backend = backend.id();
    r.columns = {"difficulty", "n", "p", "min beta", "rsd"};
    for (auto& ds : sets) {
        if (!ds.is_regression()) throw std::invalid_argument(ds.name + " is not a regression dataset");
        ensure_certified(ds);
    }
    std::vector<RegressionResult> res(sets.size());
    parallel_for(sets.size(), jobs_for(backend, opt),
                 [&](std::size_t i) { res[i] = audit_regression(sets[i], backend); });
    for (std::size_t i = 0; i < sets.size(); ++i) {
        LreScore beta = res[i].min_beta_lre;
        if (res[i].na_coefficients && beta.note.empty()) beta.note = res[i].note;
        r.cases.push_back({sets[i].name,
                           {Cell::of_text(difficulty_name(sets[i].difficulty)),
                            Cell::of_number(static_cast<double>(sets[i].data.size()), 0),
                            Cell::of_number(static_cast<double>(sets[i].model->parameter_count()), 0),
                            Cell::of_lre(beta), Cell::of_lre(res[i].rsd_lre)}});
    }
    summarize_lre(r, "min beta");
    return r;
}

SuiteReport run_det(Backend& backend, const SuiteOptions& opt) {
    const std::vector<DetCase> cases = det_cases();
    SuiteReport r;
    r.suite = "det";
    r.backend = backend.id();
    r.columns = {"det", "decided zero"};
    std::vector<Reply> replies(cases.size());
    parallel_for(cases.size(), jobs_for(backend, opt),
                 [&](std::size_t i) { replies[i] = backend.det(cases[i].matrix()); });
    std::size_t correct = 0, na = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const Reply& rep = replies[i];
        if (!rep.ok() || rep.values.size() != 1 || std::isnan(rep.value())) {
            ++na;
            const std::string why = rep.ok() ? "malformed determinant" : rep.error;
            r.cases.push_back({cases[i].id(), {Cell::of_text("NA"), Cell::decision_error(why)}});
            continue;
        }
        const bool zero = rep.value() == 0.0;
        if (zero) ++correct;
        r.cases.push_back({cases[i].id(), {Cell::of_text(shortest(rep.value())), Cell::of_decision(zero)}});
    }
    r.summary.emplace_back("correct", count_line(correct, cases.size()));
    r.summary.emplace_back("na", std::to_string(na));
    return r;
}

SuiteReport run_spectral(Backend& backend, const SuiteOptions& opt) {
    const std::vector<GraphSpec> graphs = opt.graphs.empty() ? graph_cases() : opt.graphs;
    SuiteReport r;
    r.suite = "spectral";
    r.backend = backend.id();
    r.columns = {"l1", "lmn", "lS", "ln", "lm", "pctN", "pctM"};
    std::vector<SpectralScore> scores(graphs.size());
    parallel_for(graphs.size(), jobs_for(backend, opt), [&](std::size_t i) {
        const GraphSpec& g = graphs[i];
        const LaplacianMatrix L = build_laplacian(g);
        const Reply rep = backend.eig_sym(L.entries);
        std::string why;
        if (!rep.ok())
            why = rep.error;
        else if (rep.values.size() != static_cast<std::size_t>(g.m + g.n))
            why = "expected " + std::to_string(g.m + g.n) + " eigenvalues, got " + std::to_string(rep.values.size());
        if (!why.empty()) {
            SpectralScore s;
            s.l1 = s.l_mn = s.l_S = s.l_n = s.l_m = score_error(std::nan(""), why);
            scores[i] = s;
            return;
        }
        // Adapters need not sort; scoring is positional on the ascending order.
        std::vector<double> eigs = rep.values;
        std::sort(eigs.begin(), eigs.end());
        scores[i] = score_spectrum(eigs, g.m, g.n, opt.equality);
    });
    auto pct = [](const std::optional<double>& p) {
        return Cell::of_number(p ? *p : std::numeric_limits<double>::quiet_NaN(), 1);
    };
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        const SpectralScore& s = scores[i];
        r.cases.push_back({graphs[i].id(),
                           {Cell::of_lre(s.l1), Cell::of_lre(s.l_mn), Cell::of_lre(s.l_S), Cell::of_lre(s.l_n),
                            Cell::of_lre(s.l_m), pct(s.pct_N), pct(s.pct_M)}});
    }
    r.summary.emplace_back("graphs", std::to_string(graphs.size()));
    r.summary.emplace_back("equality",
                           opt.equality == EqualityPolicy::single_precision ? "single" : "exact");
    return r;
}

SuiteReport run_bootstrap(Backend& backend, const SuiteOptions& opt) {
    std::vector<Dataset> sets = resolve_datasets(opt.datasets, builtin_bootstrap_keys());
    SuiteReport r;
    r.suite = "bootstrap";
    r.backend = backend.id();
    r.columns = {"n", "mean", "std", "autocorr"};
    std::size_t na = 0;
    for (auto& ds : sets) {
        CaseRow row{ds.name, {Cell::of_number(static_cast<double>(ds.data.size()), 0)}};
        ensure_certified(ds);
        for (Statistic st : {Statistic::mean, Statistic::stddev, Statistic::autocorr}) {
            BootstrapConfig cfg;
            cfg.resamples = opt.resamples;
            cfg.seed = opt.seed;
            cfg.statistic = st;
            cfg.jobs = opt.jobs;
            LreScore base = score_statistic(backend, st, ds.data, *ds.certified);
            if (base.is_na()) {
                ++na;
                row.cells.push_back(Cell::of_lre(base));
                continue;
            }
            const StabilityResult sr = stability(ds, backend, cfg);
            if (!sr.na_resamples.empty())
                base.note = std::to_string(sr.na_resamples.size()) + " resamples NA: " + sr.na_resamples[0].second;
            row.cells.push_back(Cell::of_lre(base, sr.s_lre));
        }
        r.cases.push_back(std::move(row));
    }
    r.summary.emplace_back("resamples", std::to_string(opt.resamples));
    r.summary.emplace_back("seed", std::to_string(opt.seed));
    r.summary.emplace_back("na", std::to_string(na));
    return r;
}

SuiteReport run_suite(const std::string& name, Backend& backend, const SuiteOptions& opt) {
    if (name == "stats") return run_stats(backend, opt);
    if (name == "dist") return run_dist(backend, opt);
    if (name == "regression") return run_regression(backend, opt);
    if (name == "det") return run_det(backend, opt);
    if (name == "spectral") return run_spectral(backend, opt);
    if (name == "bootstrap") return run_bootstrap(backend, opt);
    throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace lreaudit
