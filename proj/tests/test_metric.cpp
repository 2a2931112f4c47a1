#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "lreaudit/metric.hpp"

using namespace lreaudit;

TEST(Lre, ExactMatchIsInfinite) { EXPECT_TRUE(std::isinf(lre(5.0, 5.0))); }

TEST(Lre, ZeroCertifiedUsesAbsoluteError) { EXPECT_DOUBLE_EQ(lre(0.001, 0.0), 3.0); }

TEST(Lre, RelativeErrorBranch) {
    // -log10(0.05) evaluated independently; 1.05 - 1.0 is not exactly 0.05 in double.
    EXPECT_NEAR(lre(1.05, 1.0), 1.3010299956639813, 1e-13);
}

TEST(Categorize, TruncatesToOneDecimal) {
    const LreScore s = categorize(13.47, false);
    EXPECT_EQ(s.display, Display::Value);
    EXPECT_DOUBLE_EQ(s.shown, 13.4);
    EXPECT_EQ(format_lre(s), "13.4");
    EXPECT_EQ(format_lre(categorize(1.99, false)), "1.9");
    EXPECT_EQ(format_lre(categorize(1.3, false)), "1.3");
}

TEST(Categorize, Categories) {
    EXPECT_EQ(categorize(0.7, false).display, Display::Zero);
    EXPECT_EQ(format_lre(categorize(0.7, false)), "0");
    EXPECT_EQ(categorize(-2.3, false).display, Display::Dash);
    EXPECT_EQ(format_lre(categorize(-2.3, false)), "--");
    EXPECT_EQ(categorize(std::numeric_limits<double>::infinity(), false).display, Display::Inf);
    EXPECT_EQ(categorize(16.5, false).display, Display::Inf);
    EXPECT_EQ(categorize(16.0, false).display, Display::Value);
    EXPECT_EQ(categorize(3.0, true).display, Display::NA);
    EXPECT_EQ(format_lre(categorize(3.0, true)), "NA");
    EXPECT_EQ(categorize(1.0, false).display, Display::Value);
}

TEST(Categorize, TotalOverSpecialValues) {
    const double inf = std::numeric_limits<double>::infinity();
    for (double raw : {-inf, -1e300, -0.0, 0.0, 0.999999, 1.0, 15.99, 16.0, 16.0000001, inf,
                       std::numeric_limits<double>::quiet_NaN()}) {
        for (bool err : {false, true}) {
            const LreScore a = categorize(raw, err), b = categorize(raw, err);
            EXPECT_EQ(a.display, b.display);
            if (a.display == Display::Value) {
                EXPECT_GE(a.shown, 1.0);
                EXPECT_LE(a.shown, 16.0);
            }
        }
    }
}

TEST(Categorize, ValueHasOneDecimalProperty) {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(1.0, 16.0);
    for (int i = 0; i < 10000; ++i) {
        const double raw = u(gen);
        const LreScore s = categorize(raw, false);
        ASSERT_EQ(s.display, Display::Value);
        EXPECT_LE(s.shown, raw + 1e-9);
        EXPECT_GT(s.shown, raw - 0.1);
        EXPECT_NEAR(s.shown * 10.0, std::round(s.shown * 10.0), 1e-9);
    }
}

TEST(Lre, MonotoneInError) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-1e3, 1e3), e(1e-12, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const double c = u(gen);
        if (c == 0.0) continue;
        const double d1 = e(gen) * std::fabs(c), d2 = e(gen) * std::fabs(c);
        const double x1 = c + std::min(d1, d2), x2 = c + std::max(d1, d2);
        if (std::fabs(x1 - c) < std::fabs(x2 - c)) {
            EXPECT_GE(lre(x1, c), lre(x2, c));
        }
        if (std::fabs(x1 - c) * (1 + 1e-9) < std::fabs(x2 - c)) {
            EXPECT_GT(lre(x1, c), lre(x2, c));
        }
    }
}

TEST(Lre, ScaleInvariantUnderPowersOfTwo) {
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 10000; ++i) {
        const double c = u(gen), x = u(gen);
        if (c == 0.0) continue;
        for (int k : {-40, -3, 1, 17, 200}) {
            EXPECT_EQ(lre(std::ldexp(x, k), std::ldexp(c, k)), lre(x, c));
        }
    }
}

TEST(Bootstrap, LreMapping) {
    EXPECT_EQ(lre_for_bootstrap(categorize(std::numeric_limits<double>::infinity(), false)), 16.0);
    EXPECT_EQ(lre_for_bootstrap(categorize(8.23, false)), 8.23);
    EXPECT_EQ(lre_for_bootstrap(categorize(-1.5, false)), 0.0);
    EXPECT_EQ(lre_for_bootstrap(categorize(0.4, false)), 0.4);
    EXPECT_THROW(lre_for_bootstrap(categorize(2.0, true)), std::invalid_argument);
}

TEST(Score, RecordsOperandsAndNaN) {
    const LreScore s = score(2.0, 2.0);
    EXPECT_EQ(s.display, Display::Inf);
    EXPECT_EQ(s.computed, 2.0);
    EXPECT_EQ(s.certified, 2.0);
    EXPECT_EQ(score(std::nan(""), 1.0).display, Display::NA);
    EXPECT_EQ(score(std::numeric_limits<double>::infinity(), 1.0).display, Display::Dash);
    const LreScore e = score_error(1.0, "boom");
    EXPECT_TRUE(e.is_na());
    EXPECT_EQ(e.note, "boom");
}
