#pragma once

#include <cmath>
#include <string>
#include <string_view>

#ifdef __FAST_MATH__
#error "double-double arithmetic requires strict IEEE semantics; do not build with -ffast-math"
#endif

namespace lreaudit {

/// Double-double number: the unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
/// About 32 significant decimal digits, the exponent range of double.
struct DD {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DD() = default;
    constexpr DD(double h) : hi(h) {}  // NOLINT: implicit widening is exact
    constexpr DD(double h, double l) : hi(h), lo(l) {}

    constexpr double to_double() const { return hi + lo; }
};

// Error-free transformations.
inline DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

/// Requires |a| >= |b| (or a == 0).
inline DD fast_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

DD dd_add(DD a, DD b);
DD dd_sub(DD a, DD b);
DD dd_mul(DD a, DD b);
/// Throws std::domain_error when b == 0.
DD dd_div(DD a, DD b);
/// Throws std::domain_error when a < 0.
DD dd_sqrt(DD a);
DD dd_abs(DD a);
DD dd_neg(DD a);
/// Exact multiplication by a power of two.
DD dd_ldexp(DD a, int e);

inline DD operator+(DD a, DD b) { return dd_add(a, b); }
inline DD operator-(DD a, DD b) { return dd_sub(a, b); }
inline DD operator*(DD a, DD b) { return dd_mul(a, b); }
inline DD operator/(DD a, DD b) { return dd_div(a, b); }
inline DD operator-(DD a) { return dd_neg(a); }
inline DD& operator+=(DD& a, DD b) { return a = dd_add(a, b); }
inline DD& operator-=(DD& a, DD b) { return a = dd_sub(a, b); }
inline DD& operator*=(DD& a, DD b) { return a = dd_mul(a, b); }
inline DD& operator/=(DD& a, DD b) { return a = dd_div(a, b); }

inline bool operator==(DD a, DD b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator<(DD a, DD b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(DD a, DD b) { return b < a; }
inline bool operator<=(DD a, DD b) { return !(b < a); }
inline bool operator>=(DD a, DD b) { return !(a < b); }

/// Decimal text (e.g. "1000000.1", "-3.5e-7") to DD, accurate to ~1e-32 relative
/// for inputs with up to 34 significant digits. Throws std::invalid_argument.
DD parse_dd(std::string_view text);

/// Scientific notation with `digits` significant digits (at most 32).
std::string to_string(DD v, int digits = 32);

}  // namespace lreaudit
