// Double-double kernels. Addition, multiplication and division follow the
// accurate variants analysed by Joldes, Muller and Popescu (relative error a
// small multiple of 2^-106); square root uses one Newton correction in DD.
#include "lreaudit/dd.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace lreaudit {

DD dd_add(DD a, DD b) {
    const DD s = two_sum(a.hi, b.hi);
    const DD t = two_sum(a.lo, b.lo);
    const DD v = fast_two_sum(s.hi, s.lo + t.hi);
    return fast_two_sum(v.hi, t.lo + v.lo);
}

DD dd_neg(DD a) { return {-a.hi, -a.lo}; }

DD dd_sub(DD a, DD b) { return dd_add(a, dd_neg(b)); }

DD dd_abs(DD a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? dd_neg(a) : a; }

DD dd_ldexp(DD a, int e) { return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)}; }

DD dd_mul(DD a, DD b) {
    const DD c = two_prod(a.hi, b.hi);
    const double tl0 = a.lo * b.lo;
    const double tl1 = std::fma(a.hi, b.lo, tl0);
    const double cl2 = std::fma(a.lo, b.hi, tl1);
    return fast_two_sum(c.hi, c.lo + cl2);
}

DD dd_div(DD a, DD b) {
    if (b.hi == 0.0) throw std::domain_error("double-double division by zero");
    const double q1 = a.hi / b.hi;
    DD r = dd_sub(a, dd_mul(b, DD(q1)));
    const double q2 = r.hi / b.hi;
    r = dd_sub(r, dd_mul(b, DD(q2)));
    const double q3 = r.hi / b.hi;
    return dd_add(fast_two_sum(q1, q2), DD(q3));
}

DD dd_sqrt(DD a) {
    if (a.hi < 0.0) throw std::domain_error("double-double square root of a negative number");
    if (a.hi == 0.0) return {};
    const double s = std::sqrt(a.hi);
    const DD p = two_prod(s, s);
    const double e = (((a.hi - p.hi) - p.lo) + a.lo) / (2.0 * s);
    return fast_two_sum(s, e);
}

namespace {

DD pow10_dd(int e) {
    // 10^k is exact in double for k <= 22.
    DD r(1.0);
    while (e > 0) {
        const int step = e > 22 ? 22 : e;
        r = dd_mul(r, DD(std::pow(10.0, step)));
        e -= step;
    }
    return r;
}

}  // namespace

DD parse_dd(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';

    constexpr int kMaxDigits = 36;
    std::string digits;
    int exp10 = 0;
    bool seen_point = false, seen_digit = false;
    for (; i < text.size(); ++i) {
        const char ch = text[i];
        if (ch == '.') {
            if (seen_point) throw std::invalid_argument("bad decimal: " + std::string(text));
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            seen_digit = true;
            if (digits.empty() && ch == '0') {
                if (seen_point) --exp10;
                continue;
            }
            if (static_cast<int>(digits.size()) < kMaxDigits) {
                digits.push_back(ch);
                if (seen_point) --exp10;
            } else if (!seen_point) {
                ++exp10;
            }
        } else {
            break;
        }
    }
    if (!seen_digit) throw std::invalid_argument("bad decimal: " + std::string(text));
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) eneg = text[i++] == '-';
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
            throw std::invalid_argument("bad exponent: " + std::string(text));
        int e = 0;
        for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
            if (e < 100000) e = e * 10 + (text[i] - '0');
        }
        exp10 += eneg ? -e : e;
    }
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i != text.size()) throw std::invalid_argument("trailing characters in: " + std::string(text));
    if (digits.empty()) return DD(negative ? -0.0 : 0.0);

    // Horner over 15-digit chunks; every chunk and 10^len is an exact double.
    DD acc;
    for (std::size_t pos = 0; pos < digits.size(); pos += 15) {
        const std::string chunk = digits.substr(pos, 15);
        acc = dd_add(dd_mul(acc, DD(std::pow(10.0, static_cast<double>(chunk.size())))),
                     DD(std::stod(chunk)));
    }
    if (exp10 > 0) acc = dd_mul(acc, pow10_dd(exp10));
    if (exp10 < 0) {
        // Split very small exponents so 10^-e does not overflow.
        int e = -exp10;
        while (e > 300) {
            acc = dd_div(acc, pow10_dd(300));
            e -= 300;
        }
        acc = dd_div(acc, pow10_dd(e));
    }
    return negative ? dd_neg(acc) : acc;
}

std::string to_string(DD v, int digits) {
    if (digits < 1) digits = 1;
    if (digits > 32) digits = 32;
    if (!std::isfinite(v.hi)) return v.hi != v.hi ? "nan" : (v.hi > 0 ? "inf" : "-inf");
    if (v.hi == 0.0) return "0";
    std::string out;
    if (v.hi < 0.0) {
        out.push_back('-');
        v = dd_neg(v);
    }
    int e10 = static_cast<int>(std::floor(std::log10(v.hi)));
    DD r = e10 >= 0 ? dd_div(v, pow10_dd(e10)) : dd_mul(v, pow10_dd(-e10));
    if (r.hi >= 10.0) {
        r = dd_div(r, DD(10.0));
        ++e10;
    } else if (r.hi < 1.0) {
        r = dd_mul(r, DD(10.0));
        --e10;
    }
    std::string ds;
    for (int k = 0; k <= digits; ++k) {
        int d = static_cast<int>(std::floor(r.hi));
        DD rest = dd_sub(r, DD(static_cast<double>(d)));
        if (rest.hi < 0.0) {
            --d;
            rest = dd_add(rest, DD(1.0));
        }
        if (d < 0) d = 0;
        if (d > 9) d = 9;
        ds.push_back(static_cast<char>('0' + d));
        r = dd_mul(rest, DD(10.0));
    }
    // Round half up on the guard digit.
    const bool up = ds.back() >= '5';
    ds.pop_back();
    if (up) {
        int k = static_cast<int>(ds.size()) - 1;
        while (k >= 0 && ds[k] == '9') ds[k--] = '0';
        if (k >= 0) {
            ++ds[k];
        } else {
            ds.insert(ds.begin(), '1');
            ds.pop_back();
            ++e10;
        }
    }
    out.push_back(ds[0]);
    if (ds.size() > 1) {
        out.push_back('.');
        out.append(ds, 1, std::string::npos);
    }
    char buf[16];
    std::snprintf(buf, sizeof buf, "e%+d", e10);
    return out + buf;
}

}  // namespace lreaudit
