#include "lreaudit/datasets.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "lreaudit/error.hpp"
#include "lreaudit/rng.hpp"

namespace lreaudit {

const char* difficulty_name(Difficulty d) noexcept {
    switch (d) {
        case Difficulty::low: return "low";
        case Difficulty::average: return "average";
        case Difficulty::high: return "high";
    }
    return "low";
}

Difficulty parse_difficulty(std::string_view s) {
    if (s == "low") return Difficulty::low;
    if (s == "average") return Difficulty::average;
    if (s == "high") return Difficulty::high;
    throw std::invalid_argument("unknown difficulty '" + std::string(s) + "'");
}

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        const std::size_t b = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        if (i > b) out.push_back(s.substr(b, i - b));
    }
    return out;
}

double parse_double(std::string_view tok, std::size_t line) {
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v))
        throw ParseError("not a finite number: '" + std::string(tok) + "'", line);
    return v;
}

DD parse_exact(std::string_view tok, std::size_t line) {
    try {
        return parse_dd(tok);
    } catch (const std::invalid_argument&) {
        throw ParseError("not a decimal number: '" + std::string(tok) + "'", line);
    }
}

std::string shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

Dataset parse_strd(std::string_view text, std::string_view origin) {
    Dataset ds;
    ds.name = std::string(origin);
    std::optional<double> mean, sd, autocorr, rsd;
    std::vector<std::optional<double>> beta;
    bool in_data = false, seen_header = false;
    int columns = 0;
    std::size_t lineno = 0;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++lineno;
        bool comment = false;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
            comment = true;
        }
        line = trim(line);
        if (comment && line.empty()) continue;

        if (!in_data) {
            if (line.empty()) {
                // A blank line ends the header, but leading blank lines are ignored.
                if (seen_header) in_data = true;
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) {
                if (!seen_header) throw ParseError("expected a 'key = value' header line", lineno);
                throw ParseError("expected a blank line between header and data", lineno);
            }
            seen_header = true;
            const std::string key(trim(line.substr(0, eq)));
            const std::string_view value = trim(line.substr(eq + 1));
            if (value.empty()) throw ParseError("empty value for '" + key + "'", lineno);
            if (key == "name") {
                ds.name = std::string(value);
            } else if (key == "difficulty") {
                try {
                    ds.difficulty = parse_difficulty(value);
                } catch (const std::invalid_argument& e) {
                    throw ParseError(e.what(), lineno);
                }
            } else if (key == "synthetic") {
                if (value != "yes" && value != "no") throw ParseError("synthetic must be yes or no", lineno);
                ds.synthetic = value == "yes";
            } else if (key == "certified_mean") {
                mean = parse_double(value, lineno);
            } else if (key == "certified_sd") {
                sd = parse_double(value, lineno);
            } else if (key == "certified_autocorr") {
                autocorr = parse_double(value, lineno);
            } else if (key == "certified_rsd") {
                rsd = parse_double(value, lineno);
            } else if (key.rfind("certified_beta_", 0) == 0) {
                const std::string idx = key.substr(15);
                std::size_t i = 0;
                const auto [p, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), i);
                if (ec != std::errc() || p != idx.data() + idx.size() || i > 1000)
                    throw ParseError("bad coefficient index in '" + key + "'", lineno);
                if (beta.size() <= i) beta.resize(i + 1);
                beta[i] = parse_double(value, lineno);
            } else if (key == "model") {
                const auto tok = split_ws(value);
                if (tok.size() != 4 || tok[0] != "polynomial" || tok[2] != "intercept" ||
                    (tok[3] != "yes" && tok[3] != "no"))
                    throw ParseError("model must read 'polynomial <d> intercept <yes|no>'", lineno);
                RegressionModel m;
                const auto [p, ec] = std::from_chars(tok[1].data(), tok[1].data() + tok[1].size(), m.degree);
                if (ec != std::errc() || p != tok[1].data() + tok[1].size() || m.degree < 1 || m.degree > 30)
                    throw ParseError("polynomial degree must be an integer in 1..30", lineno);
                m.intercept = tok[3] == "yes";
                ds.model = m;
            } else {
                throw ParseError("unknown header key '" + key + "'", lineno);
            }
            continue;
        }

        if (line.empty()) continue;
        const auto tok = split_ws(line);
        if (tok.size() > 2) throw ParseError("expected one value or an 'x y' pair", lineno);
        const int cols = static_cast<int>(tok.size());
        if (columns == 0) columns = cols;
        if (cols != columns) throw ParseError("inconsistent number of columns", lineno);
        if (cols == 2) ds.x.push_back(parse_double(tok[0], lineno));
        ds.data.push_back(parse_double(tok.back(), lineno));
        ds.exact.push_back(parse_exact(tok.back(), lineno));
    }

    if (ds.data.empty()) throw ParseError("empty data section in " + std::string(origin));
    if (ds.model && columns != 2) throw ParseError("a regression model needs 'x y' data lines");
    if (!ds.model && columns == 2) throw ParseError("'x y' data lines need a model header");
    if (mean || sd || autocorr) {
        if (ds.model) throw ParseError("certified statistics do not apply to a regression set");
        // Values the header leaves out come from the oracle.
        CertifiedStats c;
        if (ds.exact.size() >= 2) {
            c = certify_stats(std::span<const DD>(ds.exact));
        } else {
            c.mean = c.stddev = DD(std::numeric_limits<double>::quiet_NaN());
            c.n = ds.data.size();
        }
        if (mean) c.mean = DD(*mean);
        if (sd) c.stddev = DD(*sd);
        if (autocorr) c.autocorr_r1 = DD(*autocorr);
        ds.certified = c;
    }
    if (!beta.empty() || rsd) {
        if (!ds.model) throw ParseError("certified regression values need a model header");
        if (!beta.empty()) {
            if (beta.size() != ds.model->parameter_count())
                throw ParseError("certified_beta_* count does not match the model");
            for (std::size_t i = 0; i < beta.size(); ++i) {
                if (!beta[i]) throw ParseError("missing certified_beta_" + std::to_string(i));
                ds.model->certified_beta.push_back(DD(*beta[i]));
            }
        }
        if (rsd) ds.model->certified_rsd = DD(*rsd);
    }
    if (ds.model && ds.data.size() <= ds.model->parameter_count())
        throw ParseError("regression set needs more observations than parameters");
    return ds;
}

Dataset load_strd(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw AuditError("cannot open dataset file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_strd(ss.str(), path);
}

std::string serialize_strd(const Dataset& ds) {
    std::string out;
    out += "name = " + ds.name + "\n";
    out += "difficulty = " + std::string(difficulty_name(ds.difficulty)) + "\n";
    if (ds.synthetic) out += "synthetic = yes\n";
    if (ds.certified) {
        out += "certified_mean = " + shortest(ds.certified->mean.to_double()) + "\n";
        out += "certified_sd = " + shortest(ds.certified->stddev.to_double()) + "\n";
        if (ds.certified->autocorr_r1)
            out += "certified_autocorr = " + shortest(ds.certified->autocorr_r1->to_double()) + "\n";
    }
    if (ds.model) {
        out += "model = polynomial " + std::to_string(ds.model->degree) + " intercept " +
               (ds.model->intercept ? "yes" : "no") + "\n";
        for (std::size_t i = 0; i < ds.model->certified_beta.size(); ++i)
            out += "certified_beta_" + std::to_string(i) + " = " +
                   shortest(ds.model->certified_beta[i].to_double()) + "\n";
        if (ds.model->certified_rsd) out += "certified_rsd = " + shortest(ds.model->certified_rsd->to_double()) + "\n";
    }
    out += "\n";
    for (std::size_t i = 0; i < ds.data.size(); ++i) {
        if (ds.model) out += shortest(ds.x[i]) + " ";
        out += shortest(ds.data[i]) + "\n";
    }
    return out;
}

Matrix design_matrix(const std::vector<double>& x, const RegressionModel& model) {
    const std::size_t p = model.parameter_count();
    Matrix X(x.size(), p);
    for (std::size_t i = 0; i < x.size(); ++i) {
        double v = 1.0;
        std::size_t col = 0;
        for (int k = 0; k <= model.degree; ++k) {
            if (k > 0 || model.intercept) X(i, col++) = v;
            v *= x[i];
        }
    }
    return X;
}

void ensure_certified(Dataset& ds) {
    if (!ds.model) {
        if (!ds.certified) ds.certified = certify_stats(std::span<const DD>(ds.exact));
        return;
    }
    RegressionModel& m = *ds.model;
    if (!m.certified_beta.empty() && m.certified_rsd) return;
    const CertifiedRegression c = certify_regression(design_matrix(ds.x, m), ds.data);
    if (m.certified_beta.empty()) m.certified_beta = c.beta;
    if (!m.certified_rsd) m.certified_rsd = c.rsd;
}

// --- pi ------------------------------------------------------------------------

namespace {

// Fixed-point numbers in base 1e9: limb 0 is the integer part.
using Fixed = std::vector<std::uint32_t>;
constexpr std::uint32_t kBase = 1000000000u;

void fixed_div(Fixed& a, std::uint32_t d) {
    std::uint64_t rem = 0;
    for (auto& limb : a) {
        const std::uint64_t cur = rem * kBase + limb;
        limb = static_cast<std::uint32_t>(cur / d);
        rem = cur % d;
    }
}

void fixed_add(Fixed& a, const Fixed& b) {
    std::uint32_t carry = 0;
    for (std::size_t i = a.size(); i-- > 0;) {
        std::uint32_t s = a[i] + b[i] + carry;
        carry = s >= kBase;
        if (carry) s -= kBase;
        a[i] = s;
    }
}

void fixed_sub(Fixed& a, const Fixed& b) {
    std::int64_t borrow = 0;
    for (std::size_t i = a.size(); i-- > 0;) {
        std::int64_t s = static_cast<std::int64_t>(a[i]) - b[i] - borrow;
        borrow = s < 0;
        if (borrow) s += kBase;
        a[i] = static_cast<std::uint32_t>(s);
    }
}

bool fixed_zero(const Fixed& a) {
    for (auto limb : a)
        if (limb) return false;
    return true;
}

// acc += sign * mult * arctan(1/x)
void add_arctan_inv(Fixed& acc, std::uint32_t x, std::uint32_t mult, std::size_t limbs) {
    Fixed power(limbs, 0);
    power[0] = mult;
    fixed_div(power, x);
    const std::uint32_t x2 = x * x;
    for (std::uint32_t k = 0;; ++k) {
        Fixed term = power;
        fixed_div(term, 2 * k + 1);
        if (fixed_zero(term)) break;
        if (k % 2 == 0) fixed_add(acc, term); else fixed_sub(acc, term);
        fixed_div(power, x2);
    }
}

}  // namespace

std::string pi_digits(std::size_t count) {
    if (count == 0) return {};
    const std::size_t limbs = count / 9 + 4;
    Fixed pi(limbs, 0);
    // Machin: pi = 16 arctan(1/5) - 4 arctan(1/239).
    add_arctan_inv(pi, 5, 16, limbs);
    Fixed neg(limbs, 0);
    add_arctan_inv(neg, 239, 4, limbs);
    fixed_sub(pi, neg);
    std::string out = std::to_string(pi[0]);
    char buf[16];
    for (std::size_t i = 1; i < limbs && out.size() < count; ++i) {
        std::snprintf(buf, sizeof buf, "%09u", pi[i]);
        out += buf;
    }
    out.resize(count);
    return out;
}

// --- built-in sets ---------------------------------------------------------------

namespace {

constexpr std::uint64_t kFixtureSeed = 0x4c52455f46495854ull;

// Standard normal deviate for draw `i` of `stream` (Box-Muller).
double fixture_normal(std::uint32_t stream, std::uint32_t i) {
    const double u1 = 1.0 - random_unit(random_bits(kFixtureSeed, stream, 2 * i));
    const double u2 = random_unit(random_bits(kFixtureSeed, stream, 2 * i + 1));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

std::string header(const std::string& name, Difficulty d, bool synthetic) {
    std::string h = "# Built-in dataset '" + name + "'.\nname = " + name +
                    "\ndifficulty = " + difficulty_name(d) + "\n";
    if (synthetic) h += "synthetic = yes\n";
    return h;
}

// Same-centre alternating pattern: c, c-0.1, c+0.1, c-0.1, ... (1001 values).
std::string numacc_text(const std::string& name, Difficulty d, const std::string& whole) {
    std::string t = header(name, d, false) + "\n" + whole + ".2\n";
    for (int i = 0; i < 500; ++i) t += whole + ".1\n" + whole + ".3\n";
    return t;
}

std::string fixed_decimal(long long units, int decimals) {
    long long scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;
    const bool neg = units < 0;
    const long long a = neg ? -units : units;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%lld.%0*lld", neg ? "-" : "", a / scale, decimals, a % scale);
    return buf;
}

std::string lew_text() {
    std::string t = header("lew-synth", Difficulty::low, true) +
                    "# 200 oscillating integer deflections.\n\n";
    for (std::uint32_t i = 0; i < 200; ++i) {
        const double v = 250.0 * std::cos(2.9 * i) + 60.0 * fixture_normal(1, i);
        t += std::to_string(std::llround(v)) + "\n";
    }
    return t;
}

std::string lottery_text() {
    std::string t = header("lottery-synth", Difficulty::low, true) + "# 218 integers in 4..999.\n\n";
    for (std::uint32_t i = 0; i < 218; ++i) t += std::to_string(4 + random_below(random_bits(kFixtureSeed, 2, i), 996)) + "\n";
    return t;
}

std::string mavro_text() {
    std::string t = header("mavro-synth", Difficulty::low, true) +
                    "# 50 readings near 2.0018 with five decimals.\n\n";
    long long level = 200180;
    for (std::uint32_t i = 0; i < 50; ++i) {
        t += fixed_decimal(level, 5) + "\n";
        level += 10 * (static_cast<long long>(random_below(random_bits(kFixtureSeed, 3, i), 3)) - 1);
        level = std::min(200260LL, std::max(200130LL, level));
    }
    return t;
}

std::string michelso_text() {
    std::string t = header("michelso-synth", Difficulty::low, true) +
                    "# 100 measurements of the form 299.xx.\n\n";
    for (std::uint32_t i = 0; i < 100; ++i) {
        long long v = 29985 + std::llround(8.0 * fixture_normal(4, i));
        v = std::min(29999LL, std::max(29950LL, v));
        t += fixed_decimal(v, 2) + "\n";
    }
    return t;
}

std::string wampler_text() {
    std::string t = header("wampler-synth", Difficulty::average, true) +
                    "# y = 1 + x + x^2 + x^3 + x^4 + x^5, x = 0..20.\nmodel = polynomial 5 intercept yes\n";
    for (int i = 0; i <= 5; ++i) t += "certified_beta_" + std::to_string(i) + " = 1\n";
    t += "certified_rsd = 0\n\n";
    for (long long x = 0; x <= 20; ++x) {
        long long y = 0, p = 1;
        for (int k = 0; k <= 5; ++k, p *= x) y += p;
        t += std::to_string(x) + " " + std::to_string(y) + "\n";
    }
    return t;
}

std::string noint_text() {
    std::string t = header("noint-synth", Difficulty::average, true) +
                    "# Line through the origin fitted to x = 60..70, y = 130..140.\n"
                    "model = polynomial 1 intercept no\n\n";
    for (int i = 0; i <= 10; ++i) t += std::to_string(60 + i) + " " + std::to_string(130 + i) + "\n";
    return t;
}

std::string filip_text() {
    std::string t = header("filip-synth", Difficulty::high, true) +
                    "# Degree-10 polynomial on x in [-8.8, -3.1]; condition number near 1e15.\n"
                    "model = polynomial 10 intercept yes\n\n";
    for (std::uint32_t i = 0; i < 82; ++i) {
        const long long xu = -88000000LL + static_cast<long long>(random_below(random_bits(kFixtureSeed, 5, i), 57000001));
        const std::string xs = fixed_decimal(xu, 7);
        const double x = std::strtod(xs.c_str(), nullptr);
        const double y = 0.85 + 0.03 * std::sin(x) + 0.002 * fixture_normal(6, i);
        t += xs + " " + fixed_decimal(std::llround(y * 1e6), 6) + "\n";
    }
    return t;
}

}  // namespace

std::vector<std::string> builtin_stats_keys() {
    return {"lew-synth", "lottery-synth", "mavro-synth", "michelso-synth", "pidigits",
            "numacc1",   "numacc2",       "numacc3",     "numacc4"};
}

std::vector<std::string> builtin_regression_keys() { return {"noint-synth", "wampler-synth", "filip-synth"}; }

std::vector<std::string> builtin_bootstrap_keys() {
    return {"lew-synth", "lottery-synth", "mavro-synth", "michelso-synth", "pidigits"};
}

std::string builtin_text(const std::string& key) {
    if (key == "pidigits") {
        std::string t = header("pidigits", Difficulty::low, false) + "# First 5000 digits of pi.\n\n";
        for (char c : pi_digits(5000)) {
            t.push_back(c);
            t.push_back('\n');
        }
        return t;
    }
    if (key == "numacc1") return header("numacc1", Difficulty::low, false) + "\n10000001\n10000003\n10000002\n";
    if (key == "numacc2") return numacc_text("numacc2", Difficulty::average, "1");
    if (key == "numacc3") return numacc_text("numacc3", Difficulty::average, "1000000");
    if (key == "numacc4") return numacc_text("numacc4", Difficulty::high, "10000000");
    if (key == "lew-synth") return lew_text();
    if (key == "lottery-synth") return lottery_text();
    if (key == "mavro-synth") return mavro_text();
    if (key == "michelso-synth") return michelso_text();
    if (key == "wampler-synth") return wampler_text();
    if (key == "noint-synth") return noint_text();
    if (key == "filip-synth") return filip_text();
    throw std::invalid_argument("unknown built-in dataset '" + key + "'");
}

Dataset builtin_dataset(const std::string& key) {
    return parse_strd(builtin_text(key), "builtin:" + key);
}

// --- determinant family -------------------------------------------------------

Matrix DetCase::matrix() const {
    Matrix M(2, 2);
    M(0, 0) = b;
    M(0, 1) = b * epsilon;
    M(1, 0) = s / epsilon;
    M(1, 1) = s;
    return M;
}

std::string DetCase::id() const { return "j=" + std::to_string(j) + ",k=" + std::to_string(k); }

std::vector<DetCase> det_cases() {
    std::vector<DetCase> out;
    out.reserve(240);
    double b = 1.0;  // 10^j is exact in double for j <= 22
    for (int j = 0; j <= 15; ++j, b *= 10.0) {
        double tenk = 10.0;
        for (int k = 1; k <= 15; ++k, tenk *= 10.0) {
            DetCase c;
            c.j = j;
            c.k = k;
            c.b = b;
            c.s = 1.0 / b;  // correctly rounded 10^-j
            c.epsilon = 1.0 - 1.0 / tenk;
            out.push_back(c);
        }
    }
    return out;
}

// --- graphs ----------------------------------------------------------------------

std::string GraphSpec::id() const { return "K(" + std::to_string(m) + "," + std::to_string(n) + ")"; }

GraphSpec make_graph(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("graph sizes must be positive");
    GraphSpec g;
    g.m = std::min(m, n);
    g.n = std::max(m, n);
    if (g.n == g.m + 1) {
        g.family = GraphFamily::balanced;
    } else if (g.m == 2 && g.n % 2 == 1) {
        g.family = GraphFamily::skewed;
    } else {
        g.family = GraphFamily::explicit_;
    }
    return g;
}

std::vector<GraphSpec> graph_cases() {
    std::vector<GraphSpec> out;
    for (int m : {9, 99, 999}) out.push_back(make_graph(m, m + 1));
    for (int m : {9, 99, 999}) out.push_back(make_graph(2, 2 * m - 1));
    return out;
}

// --- distributions -------------------------------------------------------------

const char* family_name(DistFamily f) noexcept {
    switch (f) {
        case DistFamily::binomial: return "binomial";
        case DistFamily::poisson_pmf: return "poisson_pmf";
        case DistFamily::poisson_cdf: return "poisson_cdf";
        case DistFamily::gamma_cdf: return "gamma_cdf";
        case DistFamily::normal_quantile: return "normal_quantile";
        case DistFamily::chi2_quantile: return "chi2_quantile";
        case DistFamily::beta_quantile: return "beta_quantile";
        case DistFamily::t_quantile: return "t_quantile";
        case DistFamily::f_quantile: return "f_quantile";
    }
    return "?";
}

std::vector<DistFamily> all_families() {
    return {DistFamily::binomial,      DistFamily::poisson_pmf,   DistFamily::poisson_cdf,
            DistFamily::gamma_cdf,     DistFamily::normal_quantile, DistFamily::chi2_quantile,
            DistFamily::beta_quantile, DistFamily::t_quantile,    DistFamily::f_quantile};
}

DistFamily parse_family(std::string_view s) {
    for (DistFamily f : all_families())
        if (s == family_name(f)) return f;
    throw std::invalid_argument("unknown distribution family '" + std::string(s) + "'");
}

double DistributionCase::param(std::string_view name) const {
    for (const auto& [k, v] : params)
        if (k == name) return v;
    throw std::invalid_argument("distribution case has no parameter '" + std::string(name) + "'");
}

std::string DistributionCase::id() const {
    std::string out = family_name(family);
    char buf[48];
    for (const auto& [k, v] : params) {
        std::snprintf(buf, sizeof buf, " %s=%.6g", k.c_str(), v);
        out += buf;
    }
    return out;
}

std::vector<DistributionCase> distribution_cases() {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<DistributionCase> out;
    auto add = [&](DistFamily f, std::vector<std::pair<std::string, double>> params, double certified, double best) {
        out.push_back({f, std::move(params), certified, best});
    };
    using F = DistFamily;

    struct Row { double in; double cert; double best; };
    for (const Row& r : {Row{1, 8.96114E-308, kInf}, Row{2, 4.61499E-305, 8.0}, Row{100, 1.39413E-169, 7.0},
                         Row{300, 2.91621E-42, 7.0}, Row{400, 3.89735E-13, 6.0}, Row{410, 3.19438E-11, 6.0}})
        add(F::binomial, {{"k", r.in}, {"n", 1030}, {"p", 0.5}}, r.cert, r.best);

    for (const Row& r : {Row{0, 1.38390E-87, 7.0}, Row{103, 1.41720E-14, 2.0}, Row{315, 1.41948E-14, 0.0},
                         Row{400, 5.58069E-36, 6.4}, Row{900, 1.73230E-286, 6.0}})
        add(F::poisson_pmf, {{"k", r.in}, {"lambda", 200}}, r.cert, r.best);

    for (const Row& r : {Row{1E+05, 0.500841, 7.0}, Row{1E+07, 0.500084, 7.0}, Row{1E+09, 0.500008, 7.0}})
        add(F::poisson_cdf, {{"k", r.in}, {"lambda", r.in}}, r.cert, r.best);

    struct Row2 { double a; double b; double cert; double best; };
    for (const Row2& r : {Row2{0.1, 0.1, 0.827552, 7.0}, Row2{0.2, 0.1, 0.879420, 6.0}, Row2{0.2, 0.2, 0.764435, 6.0},
                          Row2{0.4, 0.3, 0.776381, 6.0}, Row2{0.5, 0.4, 0.748019, 6.0}})
        add(F::gamma_cdf, {{"x", r.a}, {"alpha", r.b}, {"beta", 1}}, r.cert, r.best);

    for (const Row& r : {Row{5E-1, 0.0, kInf}, Row{1E-198, -30.0529, 7.0}, Row{1E-300, -37.0471, 7.0}})
        add(F::normal_quantile, {{"p", r.in}, {"mu", 0}, {"sigma", 1}}, r.cert, r.best);

    for (const Row2& r : {Row2{2E-1, 1, 1.64237, 5.6}, Row2{1E-7, 1, 28.3740, 6.4}, Row2{1E-7, 5, 40.8630, 6.3},
                          Row2{1E-12, 1, 50.8441, 7.1}, Row2{0.48, 778, 779.312, 6.3}, Row2{0.52, 782, 779.353, 6.3}})
        add(F::chi2_quantile, {{"p", r.a}, {"n", r.b}}, r.cert, r.best);

    for (const Row& r : {Row{1E-2, 2.94314E-01, 6.0}, Row{1E-3, 1.81386E-01, 6.1}, Row{1E-4, 1.12969E-01, 5.4},
                         Row{1E-5, 7.07371E-02, 6.2}, Row{1E-6, 4.44270E-02, 6.0}, Row{1E-7, 2.79523E-02, 6.0},
                         Row{1E-8, 1.76057E-02, 6.3}, Row{1E-9, 1.10963E-02, 5.5}, Row{1E-10, 6.99645E-03, 7.0},
                         Row{1E-11, 4.41255E-03, 7.0}, Row{1E-12, 2.78337E-03, 6.0}, Row{1E-13, 1.75589E-03, 6.1},
                         Row{1E-100, 6.98827E-21, 7.0}})
        add(F::beta_quantile, {{"p", r.in}, {"alpha", 5}, {"beta", 2}}, r.cert, r.best);

    for (const Row& r : {Row{1E-8, 3.18310E+07, 6.0}, Row{1E-11, 3.18310E+10, 6.0}, Row{1E-12, 3.18310E+11, 6.0},
                         Row{1E-13, 3.18310E+12, 6.0}, Row{1E-100, 3.18310E+99, 8.0}})
        add(F::t_quantile, {{"p", r.in}, {"n", 1}}, r.cert, r.best);

    for (const Row& r : {Row{1E-5, 4.05285E+09, 6.0}, Row{1E-6, 4.05285E+11, 6.0}, Row{1E-12, 4.05285E+23, 6.0},
                         Row{1E-13, 4.05285E+25, 3.0}, Row{1E-100, 4.05285E+199, kInf}})
        add(F::f_quantile, {{"p", r.in}, {"n1", 1}, {"n2", 1}}, r.cert, r.best);

    return out;
}

}  // namespace lreaudit
