#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lreaudit/datasets.hpp"
#include "lreaudit/matrix.hpp"
#include "lreaudit/regression.hpp"
#include "lreaudit/special.hpp"

namespace lreaudit {

/// One operation for a backend. `op` is one of mean, std, autocorr_pearson_shifted,
/// regress, det, eig_sym, dist.
struct Request {
    std::string op;
    std::vector<double> data;  // sample, or y for regress
    Matrix matrix;             // det, eig_sym, and the design of regress
    std::string family;        // dist only
    std::vector<std::pair<std::string, double>> params;  // dist only

    /// The capability tag this request needs: op, or "dist:<family>".
    std::string capability() const;
    std::size_t payload_size() const { return data.size() + matrix.a.size() + params.size(); }
};

/// A backend answer: numbers, or an error message that scores as NA.
struct Reply {
    std::vector<double> values;
    std::string error;

    bool ok() const { return error.empty(); }
    /// The first value; NaN when absent.
    double value() const;

    static Reply of(double v) { return Reply{{v}, {}}; }
    static Reply of(std::vector<double> v) { return Reply{std::move(v), {}}; }
    static Reply fail(std::string msg) { return Reply{{}, std::move(msg)}; }
};

inline constexpr std::size_t kMaxPayload = 10'000'000;

/// A system under audit.
class Backend {
public:
    virtual ~Backend() = default;

    virtual std::string id() const = 0;
    virtual const std::set<std::string>& capabilities() const = 0;
    /// True when call() may run from several threads at once.
    virtual bool concurrent() const { return false; }
    /// Number of crashes, timeouts and malformed responses seen so far.
    virtual std::size_t protocol_errors() const { return 0; }

    /// Never throws for per-case failures: undeclared capabilities give
    /// "unsupported", and kernel exceptions become error replies.
    Reply call(const Request& req);

    Reply mean(std::span<const double> data);
    Reply stdev(std::span<const double> data);
    Reply autocorr(std::span<const double> data);
    /// values = beta followed by rsd.
    Reply regress(const Matrix& X, std::span<const double> y);
    Reply det(const Matrix& M);
    /// values = eigenvalues, ascending.
    Reply eig_sym(const Matrix& M);
    Reply dist(const DistributionCase& c);

protected:
    virtual Reply do_call(const Request& req) = 0;
};

std::set<std::string> all_capabilities();

// Host kernels: what a typical platform does in plain double.

/// Naive left-to-right sum divided by n. Throws std::invalid_argument when n < 2.
double host_mean(std::span<const double> data);
/// Two-pass sample standard deviation (divisor n - 1). Throws when n < 2.
double host_std(std::span<const double> data);
/// Pearson correlation of (v_1..v_{n-1}) with (v_2..v_n). Throws when n < 3.
double host_autocorr(std::span<const double> data);

/// In-process backend built from the host kernels; supports every capability.
class HostBackend : public Backend {
public:
    explicit HostBackend(LsMethod method = LsMethod::orthogonal, SpecialFunState st = {});

    std::string id() const override { return "host"; }
    const std::set<std::string>& capabilities() const override { return caps_; }
    bool concurrent() const override { return true; }

protected:
    Reply do_call(const Request& req) override;

private:
    LsMethod method_;
    SpecialFunState st_;
    std::set<std::string> caps_;
};

/// A child process speaking the line-delimited JSON protocol, launched through
/// /bin/sh -c. A crash, timeout or malformed response scores that case NA and
/// the process is restarted on the next request.
class ExternalBackend : public Backend {
public:
    /// Spawns the adapter and completes the handshake. Throws ProtocolError on
    /// a version mismatch or when no valid handshake arrives in time.
    explicit ExternalBackend(std::string command, double timeout_seconds = 60.0);
    ~ExternalBackend() override;
    ExternalBackend(const ExternalBackend&) = delete;
    ExternalBackend& operator=(const ExternalBackend&) = delete;

    std::string id() const override { return "exec"; }
    const std::set<std::string>& capabilities() const override { return caps_; }
    std::size_t protocol_errors() const override { return protocol_errors_; }

protected:
    Reply do_call(const Request& req) override;

private:
    /// False when the handshake never arrives; throws ProtocolError when it is invalid.
    bool start();
    void stop(bool force);
    bool write_all(const std::string& s);
    /// Returns false on EOF, timeout or an oversized line.
    bool read_line(std::string& line);
    Reply protocol_failure(const std::string& what);

    std::string command_;
    double timeout_;
    std::set<std::string> caps_;
    int pid_ = -1;
    int to_child_ = -1;
    int from_child_ = -1;
    std::string buffer_;
    std::uint64_t next_id_ = 1;
    std::size_t protocol_errors_ = 0;
};

/// "host" or "exec:<command line>". Throws std::invalid_argument for anything else.
std::unique_ptr<Backend> make_backend(const std::string& spec, LsMethod method = LsMethod::orthogonal,
                                      double timeout_seconds = 60.0);

}  // namespace lreaudit
