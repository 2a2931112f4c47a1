// Acceptance run: one PASS/FAIL line per criterion, with every tolerance fixed here.
// Exits 0 when the failing criteria are exactly the documented unattainable ones.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <sys/wait.h>

#include <cfloat>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lreaudit/backend.hpp"
#include "lreaudit/bootstrap.hpp"
#include "lreaudit/distributions.hpp"
#include "lreaudit/linalg.hpp"
#include "lreaudit/oracle.hpp"
#include "lreaudit/special.hpp"
#include "lreaudit/stats.hpp"
#include "lreaudit/suites.hpp"

using namespace lreaudit;
using boost::multiprecision::cpp_rational;
using Big = boost::multiprecision::cpp_bin_float_100;

namespace {

// Rows whose six-digit certified value is itself off in the sixth digit, which
// caps any kernel below 6: binomial k=100 at 5.52, binomial k=410 at 5.84 and
// Poisson pmf k=0 at 5.60. The distributions criterion fails on exactly these.
const std::set<std::string> kExpectedFailures = {"distributions"};
const std::set<std::string> kUnattainableRows = {"binomial k=100 n=1030 p=0.5", "binomial k=410 n=1030 p=0.5",
                                                 "poisson_pmf k=0 lambda=200"};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Check {
    std::vector<std::string> problems;
    std::set<std::string> failed_rows;
    void fail(const std::string& s) { problems.push_back(s); }
    void need(bool ok, const std::string& s) {
        if (!ok) fail(s);
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

bool representable(double x) { return std::fabs(x) >= DBL_MIN && std::fabs(x) <= DBL_MAX; }

double rel(double got, double want) { return want == 0 ? std::fabs(got) : std::fabs(got - want) / std::fabs(want); }

// --- distributions ------------------------------------------------------------

void check_distributions(Check& c) {
    const auto t0 = std::chrono::steady_clock::now();
    HostBackend host;
    for (const auto& d : distribution_cases()) {
        const Reply r = host.dist(d);
        if (!r.ok()) {
            c.fail(d.id() + " NA: " + r.error);
            continue;
        }
        const double l = lre_for_bootstrap(score(r.value(), d.certified));
        double need = 0.0;
        switch (d.family) {
            case DistFamily::gamma_cdf:
            case DistFamily::poisson_pmf:
            case DistFamily::t_quantile:
            case DistFamily::f_quantile: need = 6.0; break;
            case DistFamily::beta_quantile: need = 5.0; break;
            case DistFamily::normal_quantile:
                if (d.certified == -30.0529 || d.certified == -37.0471) need = 6.0;
                break;
            case DistFamily::binomial:
                if (d.certified == 8.96114e-308 || d.certified == 4.61499e-305) need = 6.0;
                break;
            default: break;
        }
        if (d.reference_best >= 6.0 && d.family != DistFamily::beta_quantile) need = std::max(need, 6.0);
        if (l < need) {
            c.fail(d.id() + " lre " + fmt(l) + " < " + fmt(need));
            c.failed_rows.insert(d.id());
        }
    }
    const double t = seconds_since(t0);
    c.need(t < 5.0, "runtime " + fmt(t) + " s >= 5 s");
}

// --- determinants -------------------------------------------------------------

void check_determinants(Check& c) {
    HostBackend host;
    const SuiteReport r = run_det(host, {});
    c.need(r.cases.size() == 240, std::to_string(r.cases.size()) + " cases, expected 240");
    c.need(r.summary_value("correct") == "146 / 240", "correct " + r.summary_value("correct") + ", expected 146 / 240");
}

// --- spectral -----------------------------------------------------------------

struct SpectralRun {
    GraphSpec g;
    std::vector<double> eigs;
    double seconds = 0.0;
};

std::vector<SpectralRun> run_graphs() {
    std::vector<SpectralRun> out;
    for (const auto& g : graph_cases()) {
        const auto t0 = std::chrono::steady_clock::now();
        SpectralRun run{g, eig_sym(build_laplacian(g).entries), 0.0};
        run.seconds = seconds_since(t0);
        out.push_back(std::move(run));
    }
    return out;
}

void check_spectral(Check& c, const std::vector<SpectralRun>& runs) {
    for (const auto& run : runs) {
        const int m = run.g.m, n = run.g.n;
        const bool small = (m == 9 && n == 10) || (m == 2 && n == 17);
        const double need = small ? 13.0 : 10.0;
        const SpectralScore s = score_spectrum(run.eigs, m, n, EqualityPolicy::single_precision);
        const std::pair<const char*, const LreScore*> cols[] = {
            {"l1", &s.l1}, {"lmn", &s.l_mn}, {"lS", &s.l_S}, {"ln", &s.l_n}, {"lm", &s.l_m}};
        for (const auto& [name, sc] : cols) {
            if (sc->is_na()) {
                c.fail(run.g.id() + " " + name + " NA");
                continue;
            }
            const double l = lre_for_bootstrap(*sc);
            if (l < need) c.fail(run.g.id() + " " + name + " " + fmt(l) + " < " + fmt(need));
        }
        if (m == 9 && n == 10)
            c.need(s.pct_N == 100.0 && s.pct_M == 100.0, "K(9,10) pct below 100 under single-precision equality");
        if (m == 999) c.need(run.seconds < 60.0, run.g.id() + " took " + fmt(run.seconds) + " s");
    }
}

// --- oracle validation and properties -----------------------------------------

double digits(DD got, const Big& want) {
    const Big diff = abs((Big(got.hi) + Big(got.lo)) - want);
    if (diff == 0) return 40.0;
    if (want == 0) return static_cast<double>(-log10(diff));
    return static_cast<double>(-log10(diff / abs(want)));
}

bool integer_valued(const Dataset& ds) {
    for (double v : ds.data)
        if (v != std::floor(v) || std::fabs(v) > 1e15) return false;
    return true;
}

void check_oracle(Check& c, const std::vector<SpectralRun>& runs) {
    int integer_sets = 0;
    for (const auto& key : builtin_stats_keys()) {
        const Dataset ds = builtin_dataset(key);
        if (!integer_valued(ds)) continue;
        ++integer_sets;
        std::vector<cpp_rational> x;
        for (double v : ds.data) x.emplace_back(static_cast<long long>(v));
        const long long n = static_cast<long long>(x.size());
        cpp_rational sum = 0;
        for (const auto& v : x) sum += v;
        const cpp_rational mean = sum / n;
        cpp_rational ss = 0, lag = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            ss += (x[i] - mean) * (x[i] - mean);
            if (i + 1 < x.size()) lag += (x[i] - mean) * (x[i + 1] - mean);
        }
        const CertifiedStats cs = certify_stats(std::span<const DD>(ds.exact));
        const double dm = digits(cs.mean, Big(mean));
        const double ds_ = digits(cs.stddev, sqrt(Big(cpp_rational(ss / (n - 1)))));
        c.need(dm >= 30.0, key + " mean " + fmt(dm) + " digits");
        c.need(ds_ >= 30.0, key + " std " + fmt(ds_) + " digits");
        if (ss != 0) {
            c.need(cs.autocorr_r1.has_value(), key + " autocorr missing");
            if (cs.autocorr_r1) {
                const double da = digits(*cs.autocorr_r1, Big(cpp_rational(lag / ss)));
                c.need(da >= 30.0, key + " autocorr " + fmt(da) + " digits");
            }
        }
    }
    c.need(integer_sets >= 3, "only " + std::to_string(integer_sets) + " integer-valued sets");

    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> la(-3.0, 3.0), lx(-3.0, 3.5), lab(-1.5, 3.0), u(0.0, 1.0);
    int bad = 0;
    for (int i = 0; i < 5000; ++i) {
        const double a = std::pow(10.0, la(gen)), x = std::pow(10.0, lx(gen));
        if (std::fabs(gamma_p(a, x) + gamma_q(a, x) - 1.0) > 1e-14) ++bad;
        const double ba = std::pow(10.0, lab(gen)), bb = std::pow(10.0, lab(gen)), bx = u(gen);
        if (std::fabs(beta_inc(bx, ba, bb) + beta_inc_upper(bx, ba, bb) - 1.0) > 1e-14) ++bad;
    }
    for (double z = -8.0; z <= 8.0; z += 0.01)
        if (std::fabs(normal_cdf(z) + normal_cdf(-z) - 1.0) > 1e-14) ++bad;
    c.need(bad == 0, std::to_string(bad) + " P+Q violations beyond 1e-14");

    const double ps[] = {0.9, 0.5, 0.1, 1e-2, 1e-5, 1e-10, 1e-20, 1e-50, 1e-100, 1e-200, 1e-300};
    bad = 0;
    // Quantiles that under- or overflow the normal double range have nothing to invert.
    auto round_trip = [&](double q, double back, double p) {
        if (representable(q) && rel(back, p) > 1e-12) ++bad;
    };
    for (double p : ps) {
        const double z = normal_quantile(p);
        round_trip(z, normal_cdf(z), p);
        for (double n : {1.0, 2.0, 5.0, 30.0, 100.0, 1000.0}) {
            const double x = chi2_quantile(p, n);
            round_trip(x, chi2_upper(x, n), p);
        }
        for (auto [a, b] : {std::pair{5.0, 2.0}, {0.5, 0.5}, {2.0, 8.0}, {30.0, 40.0}}) {
            const double x = beta_quantile(p, a, b);
            round_trip(x, beta_cdf(x, a, b), p);
        }
        for (double n : {1.0, 2.0, 10.0, 100.0}) {
            const double t = t_quantile(p, n);
            round_trip(t, t_upper(t, n), p);
        }
        for (auto [n1, n2] : {std::pair{1.0, 1.0}, {2.0, 5.0}, {10.0, 10.0}}) {
            const double f = f_quantile(p, n1, n2);
            round_trip(f, f_upper(f, n1, n2), p);
        }
    }
    c.need(bad == 0, std::to_string(bad) + " quantile round trips beyond 1e-12");

    for (const auto& run : runs) {
        const int m = run.g.m, n = run.g.n;
        double sum = 0.0;
        for (double v : run.eigs) sum += v;
        c.need(rel(sum, 2.0 * m * n) <= 1e-12, run.g.id() + " trace identity");
        const auto want = bipartite_spectrum(m, n);
        bool ok = want.size() == run.eigs.size();
        for (std::size_t i = 0; ok && i < want.size(); ++i) ok = std::fabs(run.eigs[i] - want[i]) <= 1e-9 * (m + n);
        c.need(ok, run.g.id() + " multiset match");
    }
}

// --- bootstrap ----------------------------------------------------------------

void check_bootstrap(Check& c) {
    HostBackend host;
    Dataset k;
    k.name = "constant";
    k.data.assign(40, 3.5);
    k.exact.assign(40, DD(3.5));
    for (Statistic st : {Statistic::mean, Statistic::stddev}) {
        BootstrapConfig cfg;
        cfg.statistic = st;
        const StabilityResult r = stability(k, host, cfg);
        c.need(r.s_lre == 0.0, std::string("constant data ") + statistic_name(st) + " s_lre " + fmt(r.s_lre));
    }
    for (const auto& key : builtin_bootstrap_keys())
        for (Statistic st : {Statistic::mean, Statistic::stddev, Statistic::autocorr}) {
            Dataset a = builtin_dataset(key), b = builtin_dataset(key);
            BootstrapConfig c1, c8;
            c1.statistic = c8.statistic = st;
            c1.jobs = 1;
            c8.jobs = 8;
            const StabilityResult r1 = stability(a, host, c1), r8 = stability(b, host, c8);
            const bool same = r1 == r8 && std::memcmp(&r1.s_lre, &r8.s_lre, sizeof(double)) == 0;
            c.need(same, key + " " + statistic_name(st) + " differs between 1 and 8 jobs");
        }
}

// --- basic statistics ---------------------------------------------------------

void check_stats(Check& c) {
    HostBackend host;
    for (const char* key : {"lew-synth", "lottery-synth", "mavro-synth", "michelso-synth"}) {
        Dataset ds = builtin_dataset(key);
        const StatsResult r = audit_stats(ds, host);
        if (r.mean.is_na() || r.stddev.is_na() || r.autocorr.is_na()) {
            c.fail(std::string(key) + " has NA scores");
            continue;
        }
        const double m = lre_for_bootstrap(r.mean), s = lre_for_bootstrap(r.stddev), a = lre_for_bootstrap(r.autocorr);
        c.need(a < s && s <= m,
               std::string(key) + " ordering mean " + fmt(m) + " std " + fmt(s) + " autocorr " + fmt(a));
    }
    for (const char* key : {"numacc3", "numacc4"}) {
        Dataset ds = builtin_dataset(key);
        const StatsResult r = audit_stats(ds, host);
        const double s = r.stddev.is_na() ? 99.0 : lre_for_bootstrap(r.stddev);
        c.need(s <= 10.0, std::string(key) + " std " + fmt(s) + " > 10");
    }
}

// --- determinism --------------------------------------------------------------

bool capture(const std::string& cmd, std::string& out) {
    out.clear();
    FILE* p = ::popen(cmd.c_str(), "r");
    if (!p) return false;
    char buf[65536];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    const int st = ::pclose(p);
    return WIFEXITED(st) && WEXITSTATUS(st) == 0;
}

void check_determinism(Check& c) {
    const std::string cmd = std::string(AUDIT_BIN) + " all --backend host --deterministic --seed 42 2>/dev/null";
    std::string a, b;
    c.need(capture(cmd, a), "first run failed");
    c.need(capture(cmd, b), "second run failed");
    c.need(!a.empty(), "empty output");
    c.need(a == b, "outputs differ");
}

}  // namespace

int main() {
    std::set<std::string> failed;
    std::set<std::string> failed_rows;
    auto report = [&](const std::string& name, Check& c) {
        std::cout << (c.problems.empty() ? "PASS " : "FAIL ") << name;
        if (!c.problems.empty()) {
            std::cout << ":";
            for (const auto& p : c.problems) std::cout << " [" << p << "]";
            failed.insert(name);
            failed_rows.insert(c.failed_rows.begin(), c.failed_rows.end());
            // Anything beyond the row failures (runtime, NA, exceptions) is unexpected.
            if (c.problems.size() != c.failed_rows.size()) failed.insert(name + ":other");
        }
        std::cout << std::endl;
    };
    auto run = [&](const std::string& name, auto&& fn) {
        Check c;
        try {
            fn(c);
        } catch (const std::exception& e) {
            c.fail(std::string("exception: ") + e.what());
        }
        report(name, c);
    };

    std::vector<SpectralRun> graphs;
    run("distributions", check_distributions);
    run("determinants", check_determinants);
    run("spectral", [&](Check& c) {
        graphs = run_graphs();
        check_spectral(c, graphs);
    });
    run("oracle-validation", [&](Check& c) { check_oracle(c, graphs); });
    run("bootstrap", check_bootstrap);
    run("stats-trend", check_stats);
    run("determinism", check_determinism);

    if (failed == kExpectedFailures && failed_rows == kUnattainableRows) {
        std::cout << "acceptance: failures match the documented unattainable criteria" << std::endl;
        return 0;
    }
    std::cout << "acceptance: unexpected outcome" << std::endl;
    return 1;
}
