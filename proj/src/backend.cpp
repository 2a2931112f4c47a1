#include "lreaudit/backend.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "lreaudit/distributions.hpp"
#include "lreaudit/error.hpp"
#include "lreaudit/linalg.hpp"

namespace lreaudit {

std::string Request::capability() const { return op == "dist" ? "dist:" + family : op; }

double Reply::value() const { return values.empty() ? std::numeric_limits<double>::quiet_NaN() : values.front(); }

std::set<std::string> all_capabilities() {
    std::set<std::string> caps = {"mean", "std", "autocorr_pearson_shifted", "regress", "det", "eig_sym"};
    for (DistFamily f : all_families()) caps.insert(std::string("dist:") + family_name(f));
    return caps;
}

Reply Backend::call(const Request& req) {
    if (!capabilities().count(req.capability())) return Reply::fail("unsupported");
    if (req.payload_size() > kMaxPayload) return Reply::fail("payload exceeds 1e7 numbers");
    try {
        return do_call(req);
    } catch (const ProtocolError&) {
        throw;
    } catch (const std::exception& e) {
        return Reply::fail(e.what());
    }
}

namespace {

Request sample_request(const char* op, std::span<const double> data) {
    Request r;
    r.op = op;
    r.data.assign(data.begin(), data.end());
    return r;
}

}  // namespace

Reply Backend::mean(std::span<const double> data) { return call(sample_request("mean", data)); }
Reply Backend::stdev(std::span<const double> data) { return call(sample_request("std", data)); }
Reply Backend::autocorr(std::span<const double> data) {
    return call(sample_request("autocorr_pearson_shifted", data));
}

Reply Backend::regress(const Matrix& X, std::span<const double> y) {
    Request r = sample_request("regress", y);
    r.matrix = X;
    return call(r);
}

Reply Backend::det(const Matrix& M) {
    Request r;
    r.op = "det";
    r.matrix = M;
    return call(r);
}

Reply Backend::eig_sym(const Matrix& M) {
    Request r;
    r.op = "eig_sym";
    r.matrix = M;
    return call(r);
}

Reply Backend::dist(const DistributionCase& c) {
    Request r;
    r.op = "dist";
    r.family = family_name(c.family);
    r.params = c.params;
    return call(r);
}

double host_mean(std::span<const double> data) {
    if (data.size() < 2) throw std::invalid_argument("mean needs at least 2 values");
    double s = 0.0;
    for (double v : data) s += v;
    return s / static_cast<double>(data.size());
}

double host_std(std::span<const double> data) {
    const double m = host_mean(data);
    double ss = 0.0;
    for (double v : data) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(data.size() - 1));
}

double host_autocorr(std::span<const double> data) {
    const std::size_t n = data.size();
    if (n < 3) throw std::invalid_argument("autocorrelation needs at least 3 values");
    const auto a = data.first(n - 1), b = data.subspan(1);
    double ma = 0.0, mb = 0.0;
    for (double v : a) ma += v;
    for (double v : b) mb += v;
    ma /= static_cast<double>(n - 1);
    mb /= static_cast<double>(n - 1);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double da = a[i] - ma, db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    return sab / std::sqrt(saa * sbb);
}

HostBackend::HostBackend(LsMethod method, SpecialFunState st)
    : method_(method), st_(st), caps_(all_capabilities()) {}

Reply HostBackend::do_call(const Request& req) {
    if (req.op == "mean") return Reply::of(host_mean(req.data));
    if (req.op == "std") return Reply::of(host_std(req.data));
    if (req.op == "autocorr_pearson_shifted") return Reply::of(host_autocorr(req.data));
    if (req.op == "det") return Reply::of(lreaudit::det_lu(req.matrix));
    if (req.op == "eig_sym") return Reply::of(lreaudit::eig_sym(req.matrix));
    if (req.op == "regress") {
        LsFit fit = fit_ls(req.matrix, req.data, method_);
        fit.beta.push_back(fit.rsd);
        return Reply::of(std::move(fit.beta));
    }
    if (req.op == "dist") {
        DistributionCase c;
        c.family = parse_family(req.family);
        c.params = req.params;
        return Reply::of(evaluate_distribution(c, st_));
    }
    return Reply::fail("unsupported");
}

std::unique_ptr<Backend> make_backend(const std::string& spec, LsMethod method, double timeout_seconds) {
    if (spec == "host") return std::make_unique<HostBackend>(method);
    if (spec.rfind("exec:", 0) == 0) {
        std::string cmd = spec.substr(5);
        if (cmd.size() >= 2 && cmd.front() == '"' && cmd.back() == '"') cmd = cmd.substr(1, cmd.size() - 2);
        if (cmd.empty()) throw std::invalid_argument("exec backend needs a command line");
        return std::make_unique<ExternalBackend>(cmd, timeout_seconds);
    }
    throw std::invalid_argument("backend must be 'host' or 'exec:<command>', got '" + spec + "'");
}

}  // namespace lreaudit
