#pragma once

#include <string>

namespace lreaudit {

/// Highest LRE a double can honestly carry; larger or infinite scores display as Inf.
inline constexpr double kLreCap = 16.0;

enum class Display { Value, Zero, Dash, Inf, NA };

/// A computed value scored against its certified value.
///
/// `raw` is the unbounded log relative error (may be +inf, NaN when NA).
/// `shown` holds the one-decimal truncated value and is only meaningful
/// when `display == Display::Value`.
struct LreScore {
    double raw = 0.0;
    Display display = Display::NA;
    double shown = 0.0;
    double computed = 0.0;
    double certified = 0.0;
    std::string note;  // why a case is NA, empty otherwise

    bool is_na() const noexcept { return display == Display::NA; }
};

/// Log relative error: -log10(|x-c|/|c|) for c != 0, -log10(|x|) otherwise.
/// Returns +inf when the argument of log10 is zero.
double lre(double computed, double certified);

/// Floor to one decimal place. A few ulps of slack keep 1.3 from becoming 1.2.
double truncate_one_decimal(double v);

/// Display category for a raw score. `backend_error` forces NA.
LreScore categorize(double raw, bool backend_error);

/// lre() followed by categorize(), with the operands recorded.
LreScore score(double computed, double certified);

/// NA score carrying the backend's error message.
LreScore score_error(double certified, std::string note);

/// The value fed to stability estimates: Inf counts as 16, negatives clamp to 0.
/// Throws std::invalid_argument for NA scores.
double lre_for_bootstrap(const LreScore& s);

/// "13.4", "0", "--", "Inf" or "NA".
std::string format_lre(const LreScore& s);

const char* display_name(Display d) noexcept;

}  // namespace lreaudit
