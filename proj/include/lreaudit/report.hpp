#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lreaudit/metric.hpp"

namespace lreaudit {

/// One table cell.
struct Cell {
    enum class Kind { lre, decision, number, text };

    Kind kind = Kind::text;
    LreScore lre;                // Kind::lre
    std::optional<double> s_lre; // Kind::lre, printed in parentheses
    bool decision = false;       // Kind::decision
    bool decision_na = false;
    double number = 0.0;         // Kind::number
    int decimals = 0;
    std::string text;            // Kind::text, or the NA note of a decision

    static Cell of_lre(LreScore s, std::optional<double> s_lre = std::nullopt);
    static Cell of_decision(bool yes);
    static Cell decision_error(std::string note);
    static Cell of_number(double v, int decimals);
    static Cell of_text(std::string t);

    /// What markdown and CSV show: "13.4", "Inf(0.99)", "yes", "100.0", ...
    std::string display() const;
    bool operator==(const Cell&) const;
};

struct CaseRow {
    std::string id;
    std::vector<Cell> cells;  // parallel to SuiteReport::columns
};

struct SuiteReport {
    std::string suite;  // stats, dist, regression, det, spectral, bootstrap
    std::string backend;
    std::vector<std::string> columns;
    std::vector<CaseRow> cases;
    /// Rendered as "key value" lines, e.g. {"correct", "146 / 240"}.
    std::vector<std::pair<std::string, std::string>> summary;

    const CaseRow* find(std::string_view id) const;
    /// The cell of `column` in case `id`; throws std::out_of_range when absent.
    const Cell& cell(std::string_view id, std::string_view column) const;
    std::string summary_value(std::string_view key) const;
};

enum class Format { markdown, csv, jsonl };

/// "md"/"markdown", "csv", "jsonl"/"json-lines"; throws std::invalid_argument otherwise.
Format parse_format(std::string_view s);
const char* format_extension(Format f) noexcept;

/// Pure: the same report always renders to the same bytes. json-lines carries
/// raw scores at full precision; markdown and CSV carry display values.
std::string render(const SuiteReport& r, Format f);

/// Reads back a json-lines rendering (one or more reports, concatenated).
/// Throws ParseError on malformed input.
std::vector<SuiteReport> parse_jsonl(std::string_view text);

/// RFC 4180 style: fields separated by commas, quoted when needed.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

/// Per-case display changes and decision flips, one line each; empty when the
/// reports agree. Throws AuditError when suites or case sets differ.
std::string diff(const SuiteReport& a, const SuiteReport& b);

}  // namespace lreaudit
