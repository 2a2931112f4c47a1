#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <random>
#include <string>

#include "lreaudit/dd.hpp"

using namespace lreaudit;
using Big = boost::multiprecision::cpp_bin_float_100;

namespace {

Big big(DD v) { return Big(v.hi) + Big(v.lo); }

double rel_err(DD got, const Big& want) {
    if (want == 0) return std::fabs(got.hi);
    return static_cast<double>(abs(big(got) - want) / abs(want));
}

struct Sampler {
    std::mt19937_64 gen{20240611};
    std::uniform_real_distribution<double> mant{0.5, 1.0};
    std::uniform_int_distribution<int> expo{-60, 60};
    std::uniform_real_distribution<double> frac{-0.5, 0.5};
    std::bernoulli_distribution sign{0.5};

    DD next() {
        const double hi = std::ldexp(mant(gen), expo(gen)) * (sign(gen) ? -1.0 : 1.0);
        const double lo = frac(gen) * std::ldexp(std::nextafter(std::fabs(hi), INFINITY) - std::fabs(hi), 0);
        const DD r = fast_two_sum(hi, lo);
        return r;
    }
};

constexpr int kSamples = 20000;
constexpr double kTol = 1e-30;

}  // namespace

TEST(DD, ErrorFreeTransforms) {
    Sampler s;
    for (int i = 0; i < kSamples; ++i) {
        const double a = s.next().hi, b = s.next().hi;
        const DD sum = two_sum(a, b), prod = two_prod(a, b);
        EXPECT_EQ(Big(sum.hi) + Big(sum.lo), Big(a) + Big(b));
        EXPECT_EQ(Big(prod.hi) + Big(prod.lo), Big(a) * Big(b));
    }
}

TEST(DD, AdditionAgainstBinFloat100) {
    Sampler s;
    double worst = 0.0;
    for (int i = 0; i < kSamples; ++i) {
        const DD a = s.next(), b = s.next();
        worst = std::max(worst, rel_err(a + b, big(a) + big(b)));
        worst = std::max(worst, rel_err(a - b, big(a) - big(b)));
    }
    EXPECT_LE(worst, kTol);
}

TEST(DD, MultiplicationAgainstBinFloat100) {
    Sampler s;
    double worst = 0.0;
    for (int i = 0; i < kSamples; ++i) {
        const DD a = s.next(), b = s.next();
        worst = std::max(worst, rel_err(a * b, big(a) * big(b)));
    }
    EXPECT_LE(worst, kTol);
}

TEST(DD, DivisionAgainstBinFloat100) {
    Sampler s;
    double worst = 0.0;
    for (int i = 0; i < kSamples; ++i) {
        const DD a = s.next(), b = s.next();
        worst = std::max(worst, rel_err(a / b, big(a) / big(b)));
    }
    EXPECT_LE(worst, kTol);
    EXPECT_THROW(DD(1.0) / DD(0.0), std::domain_error);
}

TEST(DD, SqrtAgainstBinFloat100) {
    Sampler s;
    double worst = 0.0;
    for (int i = 0; i < kSamples; ++i) {
        const DD a = dd_abs(s.next());
        worst = std::max(worst, rel_err(dd_sqrt(a), sqrt(big(a))));
    }
    EXPECT_LE(worst, kTol);
    EXPECT_EQ(dd_sqrt(DD(0.0)).hi, 0.0);
}

TEST(DD, ParseDecimalAgainstBinFloat100) {
    std::mt19937_64 gen(5);
    std::uniform_int_distribution<int> digit(0, 9), point(0, 30), ex(-250, 250);
    double worst = 0.0;
    for (int i = 0; i < 5000; ++i) {
        std::string s;
        for (int d = 0; d < 30; ++d) s += static_cast<char>('0' + digit(gen));
        if (s[0] == '0') s[0] = '1';
        s.insert(static_cast<std::size_t>(point(gen)), ".");
        s += "e" + std::to_string(ex(gen));
        worst = std::max(worst, rel_err(parse_dd(s), Big(s)));
    }
    EXPECT_LE(worst, kTol);
    EXPECT_EQ(parse_dd("1000000.1").hi, 1000000.1);
    EXPECT_THROW(parse_dd("abc"), std::invalid_argument);
    EXPECT_THROW(parse_dd(""), std::invalid_argument);
}

TEST(DD, ToStringRoundTrips) {
    Sampler s;
    for (int i = 0; i < 2000; ++i) {
        const DD a = s.next();
        const DD back = parse_dd(to_string(a, 32));
        EXPECT_LE(rel_err(back, big(a)), 1e-30);
    }
    EXPECT_EQ(to_string(DD(1.5), 5), "1.5000e+0");
}
