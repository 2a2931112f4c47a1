#include "lreaudit/metric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace lreaudit {

double lre(double computed, double certified) {
    const double arg = certified != 0.0 ? std::fabs(computed - certified) / std::fabs(certified)
                                        : std::fabs(computed);
    if (arg == 0.0) return std::numeric_limits<double>::infinity();
    return -std::log10(arg);
}

double truncate_one_decimal(double v) {
    return std::floor(v * 10.0 + 1e-9) / 10.0;
}

LreScore categorize(double raw, bool backend_error) {
    LreScore s;
    s.raw = raw;
    if (backend_error || std::isnan(raw)) {
        s.display = Display::NA;
    } else if (raw > kLreCap) {  // covers +inf
        s.display = Display::Inf;
    } else if (raw < 0.0) {
        s.display = Display::Dash;
    } else if (raw < 1.0) {
        s.display = Display::Zero;
    } else {
        s.display = Display::Value;
        s.shown = truncate_one_decimal(raw);
    }
    return s;
}

LreScore score(double computed, double certified) {
    if (std::isnan(computed)) return score_error(certified, "backend returned NaN");
    // An overflowed result is infinitely far from any finite certified value.
    const double raw = std::isinf(computed) ? -std::numeric_limits<double>::infinity()
                                            : lre(computed, certified);
    LreScore s = categorize(raw, false);
    s.computed = computed;
    s.certified = certified;
    return s;
}

LreScore score_error(double certified, std::string note) {
    LreScore s = categorize(std::nan(""), true);
    s.computed = std::nan("");
    s.certified = certified;
    s.note = std::move(note);
    return s;
}

double lre_for_bootstrap(const LreScore& s) {
    switch (s.display) {
        case Display::NA:
            throw std::invalid_argument("NA score cannot enter a stability estimate");
        case Display::Inf:
            return kLreCap;
        case Display::Value:
            return s.raw;
        case Display::Zero:
        case Display::Dash:
            return std::max(s.raw, 0.0);
    }
    return 0.0;
}

std::string format_lre(const LreScore& s) {
    switch (s.display) {
        case Display::NA: return "NA";
        case Display::Inf: return "Inf";
        case Display::Dash: return "--";
        case Display::Zero: return "0";
        case Display::Value: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.1f", s.shown);
            return buf;
        }
    }
    return "NA";
}

const char* display_name(Display d) noexcept {
    switch (d) {
        case Display::Value: return "value";
        case Display::Zero: return "zero";
        case Display::Dash: return "dash";
        case Display::Inf: return "inf";
        case Display::NA: return "na";
    }
    return "na";
}

}  // namespace lreaudit
