#include "lreaudit/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "lreaudit/error.hpp"

namespace lreaudit {

using nlohmann::json;

Cell Cell::of_lre(LreScore s, std::optional<double> s_lre) {
    Cell c;
    c.kind = Kind::lre;
    c.lre = std::move(s);
    c.s_lre = s_lre;
    return c;
}

Cell Cell::of_decision(bool yes) {
    Cell c;
    c.kind = Kind::decision;
    c.decision = yes;
    return c;
}

Cell Cell::decision_error(std::string note) {
    Cell c;
    c.kind = Kind::decision;
    c.decision_na = true;
    c.text = std::move(note);
    return c;
}

Cell Cell::of_number(double v, int decimals) {
    Cell c;
    c.kind = Kind::number;
    c.number = v;
    c.decimals = decimals;
    return c;
}

Cell Cell::of_text(std::string t) {
    Cell c;
    c.kind = Kind::text;
    c.text = std::move(t);
    return c;
}

namespace {

std::string fixed(double v, int decimals) {
    if (std::isnan(v)) return "NA";
    if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

bool same_double(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

}  // namespace

std::string Cell::display() const {
    switch (kind) {
        case Kind::lre: {
            std::string s = format_lre(lre);
            if (s_lre) s += "(" + fixed(*s_lre, 2) + ")";
            return s;
        }
        case Kind::decision: return decision_na ? "NA" : (decision ? "yes" : "no");
        case Kind::number: return fixed(number, decimals);
        case Kind::text: return text;
    }
    return {};
}

bool Cell::operator==(const Cell& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::lre:
            return lre.display == o.lre.display && same_double(lre.raw, o.lre.raw) &&
                   same_double(lre.computed, o.lre.computed) && same_double(lre.certified, o.lre.certified) &&
                   lre.note == o.lre.note && s_lre.has_value() == o.s_lre.has_value() &&
                   (!s_lre || same_double(*s_lre, *o.s_lre));
        case Kind::decision: return decision == o.decision && decision_na == o.decision_na && text == o.text;
        case Kind::number: return same_double(number, o.number) && decimals == o.decimals;
        case Kind::text: return text == o.text;
    }
    return false;
}

const CaseRow* SuiteReport::find(std::string_view id) const {
    for (const auto& c : cases)
        if (c.id == id) return &c;
    return nullptr;
}

const Cell& SuiteReport::cell(std::string_view id, std::string_view column) const {
    const CaseRow* row = find(id);
    if (!row) throw std::out_of_range("no case '" + std::string(id) + "' in " + suite);
    for (std::size_t i = 0; i < columns.size() && i < row->cells.size(); ++i)
        if (columns[i] == column) return row->cells[i];
    throw std::out_of_range("no column '" + std::string(column) + "' in " + suite);
}

std::string SuiteReport::summary_value(std::string_view key) const {
    for (const auto& [k, v] : summary)
        if (k == key) return v;
    return {};
}

Format parse_format(std::string_view s) {
    if (s == "md" || s == "markdown") return Format::markdown;
    if (s == "csv") return Format::csv;
    if (s == "jsonl" || s == "json-lines") return Format::jsonl;
    throw std::invalid_argument("unknown format '" + std::string(s) + "' (md, csv, jsonl)");
}

const char* format_extension(Format f) noexcept {
    switch (f) {
        case Format::markdown: return "md";
        case Format::csv: return "csv";
        case Format::jsonl: return "jsonl";
    }
    return "txt";
}

namespace {

// --- markdown -----------------------------------------------------------------

std::string md_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '|') out += '\\';
        out += c == '\n' ? ' ' : c;
    }
    return out;
}

std::string render_markdown(const SuiteReport& r) {
    std::ostringstream os;
    os << "## " << r.suite << " (backend " << r.backend << ")\n\n";
    os << "| case |";
    for (const auto& c : r.columns) os << ' ' << md_escape(c) << " |";
    os << "\n|---|";
    for (std::size_t i = 0; i < r.columns.size(); ++i) os << "---|";
    os << '\n';
    std::vector<std::string> notes;
    for (const auto& row : r.cases) {
        os << "| " << md_escape(row.id) << " |";
        for (std::size_t i = 0; i < row.cells.size(); ++i) {
            const Cell& c = row.cells[i];
            os << ' ' << md_escape(c.display()) << " |";
            const std::string& note = c.kind == Cell::Kind::lre ? c.lre.note : (c.decision_na ? c.text : "");
            if (!note.empty() && i < r.columns.size())
                notes.push_back(row.id + " " + r.columns[i] + ": " + note);
        }
        os << '\n';
    }
    if (!r.summary.empty()) {
        os << '\n';
        for (const auto& [k, v] : r.summary) os << k << ' ' << v << "  \n";
    }
    if (!notes.empty()) {
        os << "\nNA cases:\n\n";
        for (const auto& n : notes) os << "- " << md_escape(n) << '\n';
    }
    os << '\n';
    return os.str();
}

// --- csv ----------------------------------------------------------------------

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string render_csv(const SuiteReport& r) {
    std::ostringstream os;
    os << "case";
    for (const auto& c : r.columns) os << ',' << csv_field(c);
    os << '\n';
    for (const auto& row : r.cases) {
        os << csv_field(row.id);
        for (const auto& c : row.cells) os << ',' << csv_field(c.display());
        os << '\n';
    }
    for (const auto& [k, v] : r.summary) os << csv_field("summary:" + k) << ',' << csv_field(v) << '\n';
    return os.str();
}

// --- json-lines ---------------------------------------------------------------

json num(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

double unnum(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    throw ParseError("expected a number, got " + j.dump());
}

json cell_json(const Cell& c) {
    json j;
    switch (c.kind) {
        case Cell::Kind::lre:
            j["kind"] = "lre";
            j["display"] = display_name(c.lre.display);
            j["raw"] = num(c.lre.raw);
            j["computed"] = num(c.lre.computed);
            j["certified"] = num(c.lre.certified);
            if (!c.lre.note.empty()) j["note"] = c.lre.note;
            if (c.s_lre) j["s_lre"] = num(*c.s_lre);
            break;
        case Cell::Kind::decision:
            j["kind"] = "decision";
            if (c.decision_na) {
                j["na"] = true;
                j["note"] = c.text;
            } else {
                j["value"] = c.decision;
            }
            break;
        case Cell::Kind::number:
            j["kind"] = "number";
            j["value"] = num(c.number);
            j["decimals"] = c.decimals;
            break;
        case Cell::Kind::text:
            j["kind"] = "text";
            j["value"] = c.text;
            break;
    }
    return j;
}

Cell cell_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "lre") {
        const bool na = j.at("display").get<std::string>() == display_name(Display::NA);
        LreScore s = categorize(unnum(j.at("raw")), na);
        s.computed = unnum(j.at("computed"));
        s.certified = unnum(j.at("certified"));
        if (j.contains("note")) s.note = j["note"].get<std::string>();
        std::optional<double> s_lre;
        if (j.contains("s_lre")) s_lre = unnum(j["s_lre"]);
        return Cell::of_lre(std::move(s), s_lre);
    }
    if (kind == "decision") {
        if (j.value("na", false)) return Cell::decision_error(j.value("note", std::string()));
        return Cell::of_decision(j.at("value").get<bool>());
    }
    if (kind == "number") return Cell::of_number(unnum(j.at("value")), j.at("decimals").get<int>());
    if (kind == "text") return Cell::of_text(j.at("value").get<std::string>());
    throw ParseError("unknown cell kind '" + kind + "'");
}

std::string render_jsonl(const SuiteReport& r) {
    std::string out;
    json head;
    head["record"] = "suite";
    head["suite"] = r.suite;
    head["backend"] = r.backend;
    head["columns"] = r.columns;
    out += head.dump() + '\n';
    for (const auto& row : r.cases) {
        json j;
        j["record"] = "case";
        j["case"] = row.id;
        j["cells"] = json::array();
        for (const auto& c : row.cells) j["cells"].push_back(cell_json(c));
        out += j.dump() + '\n';
    }
    json tail;
    tail["record"] = "summary";
    tail["summary"] = json::array();
    for (const auto& [k, v] : r.summary) tail["summary"].push_back(json::array({k, v}));
    out += tail.dump() + '\n';
    return out;
}

}  // namespace

std::string render(const SuiteReport& r, Format f) {
    switch (f) {
        case Format::markdown: return render_markdown(r);
        case Format::csv: return render_csv(r);
        case Format::jsonl: return render_jsonl(r);
    }
    throw std::invalid_argument("unknown format");
}

std::vector<SuiteReport> parse_jsonl(std::string_view text) {
    std::vector<SuiteReport> out;
    std::size_t line_no = 0, pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (line.empty()) continue;
        const json j = json::parse(line.begin(), line.end(), nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("record"))
            throw ParseError("not a report record", line_no);
        try {
            const std::string rec = j["record"].get<std::string>();
            if (rec == "suite") {
                SuiteReport r;
                r.suite = j.at("suite").get<std::string>();
                r.backend = j.at("backend").get<std::string>();
                r.columns = j.at("columns").get<std::vector<std::string>>();
                out.push_back(std::move(r));
                continue;
            }
            if (out.empty()) throw ParseError("record before any suite header", line_no);
            if (rec == "case") {
                CaseRow row;
                row.id = j.at("case").get<std::string>();
                for (const auto& c : j.at("cells")) row.cells.push_back(cell_from_json(c));
                out.back().cases.push_back(std::move(row));
            } else if (rec == "summary") {
                for (const auto& kv : j.at("summary"))
                    out.back().summary.emplace_back(kv.at(0).get<std::string>(), kv.at(1).get<std::string>());
            } else {
                throw ParseError("unknown record '" + rec + "'", line_no);
            }
        } catch (const json::exception& e) {
            throw ParseError(e.what(), line_no);
        }
    }
    return out;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false, any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        any = true;
        if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
        } else if (c == '\n') {
            row.push_back(std::move(field));
            field.clear();
            rows.push_back(std::move(row));
            row.clear();
            any = false;
        } else if (c != '\r') {
            field += c;
        }
    }
    if (quoted) throw ParseError("unterminated quoted CSV field");
    if (any) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string diff(const SuiteReport& a, const SuiteReport& b) {
    if (a.suite != b.suite) throw AuditError("cannot diff suite '" + a.suite + "' against '" + b.suite + "'");
    if (a.columns != b.columns) throw AuditError("reports have different columns");
    std::set<std::string> ids_a, ids_b;
    for (const auto& c : a.cases) ids_a.insert(c.id);
    for (const auto& c : b.cases) ids_b.insert(c.id);
    if (ids_a != ids_b || ids_a.size() != a.cases.size() || ids_b.size() != b.cases.size())
        throw AuditError("reports cover different case sets");

    std::ostringstream os;
    for (const auto& ra : a.cases) {
        const CaseRow& rb = *b.find(ra.id);
        for (std::size_t i = 0; i < a.columns.size() && i < ra.cells.size() && i < rb.cells.size(); ++i) {
            const Cell& ca = ra.cells[i];
            const Cell& cb = rb.cells[i];
            const std::string da = ca.display(), db = cb.display();
            if (da == db) continue;
            os << ra.id << ' ' << a.columns[i] << ": " << da << " -> " << db;
            if (ca.kind == Cell::Kind::decision && cb.kind == Cell::Kind::decision && !ca.decision_na &&
                !cb.decision_na)
                os << " (decision flip)";
            if (ca.kind == Cell::Kind::lre && cb.kind == Cell::Kind::lre && std::isfinite(ca.lre.raw) &&
                std::isfinite(cb.lre.raw)) {
                char buf[32];
                std::snprintf(buf, sizeof buf, " (delta %+.2f)", cb.lre.raw - ca.lre.raw);
                os << buf;
            }
            os << '\n';
        }
    }
    for (const auto& [k, v] : a.summary) {
        const std::string w = b.summary_value(k);
        if (v != w) os << "summary " << k << ": " << v << " -> " << w << '\n';
    }
    return os.str();
}

}  // namespace lreaudit
