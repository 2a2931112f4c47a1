#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <string>
#include <vector>

#include "lreaudit/datasets.hpp"
#include "lreaudit/error.hpp"
#include "lreaudit/oracle.hpp"

using namespace lreaudit;
using boost::multiprecision::cpp_rational;
using Big = boost::multiprecision::cpp_bin_float_100;

namespace {

// Exact value of a decimal literal such as "-12.5e3".
cpp_rational decimal_rational(const std::string& s) {
    std::string digits;
    int shift = 0;
    bool neg = false, frac = false;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
    for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
        if (s[i] == '.') {
            frac = true;
            continue;
        }
        digits += s[i];
        if (frac) --shift;
    }
    if (i < s.size()) shift += std::stoi(s.substr(i + 1));
    cpp_rational v{boost::multiprecision::cpp_int(digits)};
    cpp_rational ten{10};
    for (int k = 0; k < std::abs(shift); ++k) v = shift > 0 ? cpp_rational(v * ten) : cpp_rational(v / ten);
    return neg ? -v : v;
}

// Data lines of a built-in set, in file order.
std::vector<std::string> data_tokens(const std::string& key) {
    const std::string text = builtin_text(key);
    std::vector<std::string> out;
    bool in_data = false, seen = false;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(pos, end - pos);
        pos = end + 1;
        if (!line.empty() && line[0] == '#') continue;
        if (!in_data) {
            if (line.empty() && seen) in_data = true;
            if (!line.empty()) seen = true;
            continue;
        }
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

struct Exact {
    cpp_rational mean, var, r1;
    bool has_r1;
};

Exact brute_force(const std::vector<cpp_rational>& x) {
    const std::size_t n = x.size();
    cpp_rational sum = 0;
    for (const auto& v : x) sum += v;
    Exact e;
    e.mean = sum / static_cast<long long>(n);
    cpp_rational ss = 0, lag = 0;
    for (std::size_t i = 0; i < n; ++i) {
        ss += (x[i] - e.mean) * (x[i] - e.mean);
        if (i + 1 < n) lag += (x[i] - e.mean) * (x[i + 1] - e.mean);
    }
    e.var = ss / static_cast<long long>(n - 1);
    e.has_r1 = ss != 0;
    if (e.has_r1) e.r1 = lag / ss;
    return e;
}

double digits(DD got, const Big& want) {
    if (want == 0) return got.hi == 0.0 && got.lo == 0.0 ? 40.0 : -std::log10(std::fabs(got.hi));
    const Big diff = abs((Big(got.hi) + Big(got.lo)) - want);
    if (diff == 0) return 40.0;
    return static_cast<double>(-log10(diff / abs(want)));
}

void check_dataset(const std::string& key, double min_digits) {
    std::vector<cpp_rational> x;
    for (const auto& t : data_tokens(key)) x.push_back(decimal_rational(t));
    const Dataset ds = builtin_dataset(key);
    ASSERT_EQ(x.size(), ds.exact.size()) << key;
    const CertifiedStats c = certify_stats(std::span<const DD>(ds.exact));
    const Exact e = brute_force(x);
    EXPECT_GE(digits(c.mean, Big(e.mean)), min_digits) << key << " mean";
    EXPECT_GE(digits(c.stddev, sqrt(Big(e.var))), min_digits) << key << " std";
    ASSERT_EQ(c.autocorr_r1.has_value(), e.has_r1) << key;
    if (e.has_r1) {
        EXPECT_GE(digits(*c.autocorr_r1, Big(e.r1)), min_digits) << key << " autocorr";
    }
}

}  // namespace

// Integer-valued bundled sets: the DD oracle must match exact rationals to 30 digits.
TEST(OracleStats, IntegerDatasetsMatchRationalsTo30Digits) {
    for (const char* key : {"pidigits", "lew-synth", "lottery-synth", "numacc1"}) check_dataset(key, 30.0);
}

// Decimal-valued sets lose digits parsing offsets like 10000000.1 into DD;
// 20 digits still leaves a wide margin over any double-precision score.
TEST(OracleStats, DecimalDatasetsMatchRationalsTo20Digits) {
    for (const char* key : {"mavro-synth", "michelso-synth", "numacc2", "numacc3", "numacc4"})
        check_dataset(key, 20.0);
}

TEST(OracleStats, SmallExamples) {
    const std::vector<double> v = {2.0, 3.0, 4.0};
    const CertifiedStats c = certify_stats(std::span<const double>(v));
    EXPECT_EQ(c.mean.hi, 3.0);
    EXPECT_EQ(c.stddev.hi, 1.0);
    ASSERT_TRUE(c.autocorr_r1.has_value());
    EXPECT_EQ(c.autocorr_r1->hi, 0.0);
    const std::vector<double> k = {5.0, 5.0, 5.0, 5.0};
    const CertifiedStats kc = certify_stats(std::span<const double>(k));
    EXPECT_EQ(kc.stddev.hi, 0.0);
    EXPECT_FALSE(kc.autocorr_r1.has_value());
    const std::vector<double> one = {1.0};
    EXPECT_THROW(certify_stats(std::span<const double>(one)), AuditError);
}

TEST(OracleStats, PairwiseSumIsExactOnRepresentableTerms) {
    std::vector<DD> v;
    // -1e16 + 1 needs the low word: it is not a double.
    for (int i = 0; i < 1000; ++i) v.push_back(i % 2 ? DD(1e16) : DD(-1e16, 1.0));
    const DD s = dd_pairwise_sum(v);
    EXPECT_EQ(s.hi + s.lo, 500.0);
}

namespace {

// Least squares by Gaussian elimination on the normal equations in 100-digit
// binary floating point; the squared condition number of these designs stays
// below 1e32, leaving dozens of digits.
std::vector<Big> big_lsq(const Matrix& X, std::span<const double> y) {
    const std::size_t n = X.rows, p = X.cols;
    std::vector<std::vector<Big>> A(p, std::vector<Big>(p + 1));
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t k = 0; k < p; ++k) {
            Big s = 0;
            for (std::size_t i = 0; i < n; ++i) s += Big(X(i, j)) * Big(X(i, k));
            A[j][k] = s;
        }
        Big s = 0;
        for (std::size_t i = 0; i < n; ++i) s += Big(X(i, j)) * Big(y[i]);
        A[j][p] = s;
    }
    for (std::size_t c = 0; c < p; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < p; ++r)
            if (abs(A[r][c]) > abs(A[piv][c])) piv = r;
        std::swap(A[c], A[piv]);
        for (std::size_t r = c + 1; r < p; ++r) {
            const Big f = A[r][c] / A[c][c];
            for (std::size_t k = c; k <= p; ++k) A[r][k] -= f * A[c][k];
        }
    }
    std::vector<Big> beta(p);
    for (std::size_t c = p; c-- > 0;) {
        Big s = A[c][p];
        for (std::size_t k = c + 1; k < p; ++k) s -= A[c][k] * beta[k];
        beta[c] = s / A[c][c];
    }
    return beta;
}

}  // namespace

TEST(OracleRegression, AgreesWithBinFloat100OnBuiltins) {
    for (const std::string& key : builtin_regression_keys()) {
        Dataset ds = builtin_dataset(key);
        const Matrix X = design_matrix(ds.x, *ds.model);
        const CertifiedRegression c = certify_regression(X, ds.data);
        const std::vector<Big> want = big_lsq(X, ds.data);
        for (std::size_t j = 0; j < want.size(); ++j)
            EXPECT_GE(digits(c.beta[j], want[j]), 20.0) << key << " beta " << j;
        Big rss = 0;
        for (std::size_t i = 0; i < X.rows; ++i) {
            Big r = Big(ds.data[i]);
            for (std::size_t j = 0; j < X.cols; ++j) r -= want[j] * Big(X(i, j));
            rss += r * r;
        }
        const Big rsd = sqrt(rss / static_cast<long long>(X.rows - X.cols));
        if (c.rsd.hi == 0.0)
            EXPECT_LT(static_cast<double>(rsd), 1e-20) << key;
        else
            EXPECT_GE(digits(c.rsd, rsd), 20.0) << key << " rsd";
    }
}

TEST(OracleRegression, ExactLineHasZeroRsd) {
    Matrix X(4, 2);
    std::vector<double> y;
    for (int i = 0; i < 4; ++i) {
        X(i, 0) = 1.0;
        X(i, 1) = i;
        y.push_back(3.0 + 2.0 * i);
    }
    const CertifiedRegression c = certify_regression(X, y);
    EXPECT_EQ(c.beta[0].to_double(), 3.0);
    EXPECT_EQ(c.beta[1].to_double(), 2.0);
    EXPECT_EQ(c.rsd.hi, 0.0);
}

TEST(OracleRegression, RankDeficientThrows) {
    Matrix X(4, 2);
    std::vector<double> y = {1, 2, 3, 4};
    for (int i = 0; i < 4; ++i) {
        X(i, 0) = 1.0;
        X(i, 1) = 2.0;
    }
    EXPECT_THROW(certify_regression(X, y), RankDeficientError);
    Matrix Z(4, 1);
    EXPECT_THROW(certify_regression(Z, y), RankDeficientError);
}
