#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lreaudit {

/// Base class of every error the harness raises on purpose.
class AuditError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed dataset file or wire message. `line` is 1-based, 0 when unknown.
class ParseError : public AuditError {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : AuditError(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// An iterative kernel exhausted its iteration budget.
class ConvergenceError : public AuditError {
public:
    using AuditError::AuditError;
};

/// Least-squares design (or its normal matrix) is numerically rank deficient.
class RankDeficientError : public AuditError {
public:
    using AuditError::AuditError;
};

/// The external adapter violated the wire protocol, died, or timed out.
class ProtocolError : public AuditError {
public:
    using AuditError::AuditError;
};

}  // namespace lreaudit
