#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "lreaudit/datasets.hpp"
#include "lreaudit/error.hpp"

using namespace lreaudit;

TEST(Strd, HeaderCertifiedMeanIsEchoed) {
    const Dataset ds = parse_strd("name = tiny\ndifficulty = low\ncertified_mean = 3.0\n\n2\n3\n4\n");
    EXPECT_EQ(ds.name, "tiny");
    ASSERT_TRUE(ds.certified.has_value());
    EXPECT_EQ(ds.certified->mean.to_double(), 3.0);
    EXPECT_EQ(ds.certified->stddev.to_double(), 1.0);  // filled by the oracle
    EXPECT_EQ(ds.data, (std::vector<double>{2, 3, 4}));
}

TEST(Strd, BadDataLineNamesTheLine) {
    try {
        parse_strd("name = bad\ndifficulty = low\n\n1\nabc\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 5u);
        EXPECT_NE(std::string(e.what()).find("line 5"), std::string::npos);
    }
}

TEST(Strd, MalformedInputs) {
    EXPECT_THROW(parse_strd("name = x\n\n"), ParseError);                         // empty data
    EXPECT_THROW(parse_strd("name = x\nbogus = 1\n\n1\n2\n"), ParseError);        // unknown key
    EXPECT_THROW(parse_strd("name = x\ndifficulty = extreme\n\n1\n"), ParseError);
    EXPECT_THROW(parse_strd("1\n2\n"), ParseError);                                // no header
    EXPECT_THROW(parse_strd("name = x\n\n1 2\n3\n"), ParseError);                  // ragged
    EXPECT_THROW(parse_strd("name = x\nmodel = polynomial 1 intercept maybe\n\n1 2\n"), ParseError);
    EXPECT_THROW(load_strd("/nonexistent/file.strd"), AuditError);
}

TEST(Strd, CommentsAndScientificNotation) {
    const Dataset ds = parse_strd("# leading comment\nname = s\n# inside header\ndifficulty = high\n\n1e3\n-2.5E-1 # trailing\n");
    EXPECT_EQ(ds.difficulty, Difficulty::high);
    EXPECT_EQ(ds.data, (std::vector<double>{1000.0, -0.25}));
}

TEST(Strd, RoundTripIsBitExact) {
    for (const auto& key : builtin_stats_keys()) {
        Dataset ds = builtin_dataset(key);
        ensure_certified(ds);
        const Dataset back = parse_strd(serialize_strd(ds));
        EXPECT_EQ(back.data, ds.data) << key;
        EXPECT_EQ(back.name, ds.name);
        EXPECT_EQ(back.difficulty, ds.difficulty);
        EXPECT_EQ(back.certified->mean.to_double(), ds.certified->mean.to_double());
    }
    for (const auto& key : builtin_regression_keys()) {
        Dataset ds = builtin_dataset(key);
        ensure_certified(ds);
        const Dataset back = parse_strd(serialize_strd(ds));
        EXPECT_EQ(back.data, ds.data) << key;
        EXPECT_EQ(back.x, ds.x) << key;
        EXPECT_EQ(back.model->degree, ds.model->degree);
        EXPECT_EQ(back.model->intercept, ds.model->intercept);
        ASSERT_EQ(back.model->certified_beta.size(), ds.model->certified_beta.size());
    }
}

TEST(Strd, LoadFromFile) {
    const auto path = std::filesystem::temp_directory_path() / "lreaudit_test_load.strd";
    {
        std::ofstream out(path);
        out << builtin_text("pidigits");
    }
    const Dataset ds = load_strd(path.string());
    EXPECT_EQ(ds.data.size(), 5000u);
    EXPECT_EQ(ds.difficulty, Difficulty::low);
    std::filesystem::remove(path);
}

TEST(Builtins, PiDigits) {
    EXPECT_EQ(pi_digits(20), "31415926535897932384");
    // Six nines starting at decimal place 762.
    EXPECT_EQ(pi_digits(800).substr(762, 6), "999999");
    // Last ten of the first 5000 digits, from an independent 6000-digit evaluation.
    EXPECT_EQ(pi_digits(5000).substr(4990, 10), "7413260472");
    const Dataset ds = builtin_dataset("pidigits");
    EXPECT_EQ(ds.data.size(), 5000u);
    EXPECT_EQ(ds.data[0], 3.0);
    EXPECT_EQ(ds.data[1], 1.0);
    for (double d : ds.data) EXPECT_TRUE(d >= 0 && d <= 9 && d == std::floor(d));
    EXPECT_FALSE(ds.synthetic);
}

TEST(Builtins, NumAccShapes) {
    const Dataset n1 = builtin_dataset("numacc1");
    EXPECT_EQ(n1.data, (std::vector<double>{10000001, 10000003, 10000002}));
    for (const char* k : {"numacc2", "numacc3", "numacc4"}) {
        const Dataset d = builtin_dataset(k);
        EXPECT_EQ(d.data.size(), 1001u) << k;
        EXPECT_FALSE(d.synthetic) << k;
    }
    EXPECT_EQ(builtin_dataset("numacc4").difficulty, Difficulty::high);
    EXPECT_THROW(builtin_dataset("nope"), std::invalid_argument);
}

TEST(Builtins, AllParseAndAreDeterministic) {
    for (const auto& k : builtin_stats_keys()) EXPECT_EQ(builtin_text(k), builtin_text(k));
    for (const auto& k : builtin_regression_keys()) EXPECT_TRUE(builtin_dataset(k).is_regression());
    EXPECT_EQ(builtin_bootstrap_keys().size(), 5u);
}

TEST(DetCases, Grid) {
    const auto cases = det_cases();
    ASSERT_EQ(cases.size(), 240u);
    EXPECT_EQ(cases.front().j, 0);
    EXPECT_EQ(cases.front().k, 1);
    EXPECT_EQ(cases.front().b, 1.0);
    EXPECT_EQ(cases.front().s, 1.0);
    EXPECT_EQ(cases.front().epsilon, 0.9);
    EXPECT_EQ(cases.back().j, 15);
    EXPECT_EQ(cases.back().k, 15);
    EXPECT_EQ(cases.back().b, 1e15);
    EXPECT_EQ(cases.back().s, 1e-15);
    EXPECT_EQ(cases.back().epsilon, 1.0 - 1e-15);
    for (std::size_t i = 1; i < cases.size(); ++i)
        EXPECT_LT(std::make_pair(cases[i - 1].j, cases[i - 1].k), std::make_pair(cases[i].j, cases[i].k));
    EXPECT_EQ(det_cases().size(), cases.size());
    EXPECT_EQ(cases.front().id(), "j=0,k=1");
}

// b * s == 1 holds in double for every j except j = 11, where the correctly
// rounded 1e-11 times 1e11 lands one ulp below 1.
TEST(DetCases, ProductOfScalesIsOne) {
    for (const auto& c : det_cases()) {
        if (c.j == 11)
            EXPECT_EQ(c.b * c.s, std::nextafter(1.0, 0.0));
        else
            EXPECT_EQ(c.b * c.s, 1.0) << c.id();
    }
}

TEST(DetCases, MatrixLayout) {
    const DetCase c = det_cases()[17];
    const Matrix M = c.matrix();
    EXPECT_EQ(M(0, 0), c.b);
    EXPECT_EQ(M(0, 1), c.b * c.epsilon);
    EXPECT_EQ(M(1, 0), c.s / c.epsilon);
    EXPECT_EQ(M(1, 1), c.s);
}

TEST(Graphs, Cases) {
    const auto g = graph_cases();
    ASSERT_EQ(g.size(), 6u);
    EXPECT_EQ(g[0].id(), "K(9,10)");
    EXPECT_EQ(g[1].id(), "K(99,100)");
    EXPECT_EQ(g[2].id(), "K(999,1000)");
    EXPECT_EQ(g[3].id(), "K(2,17)");
    EXPECT_EQ(g[4].id(), "K(2,197)");
    EXPECT_EQ(g[5].id(), "K(2,1997)");
    EXPECT_EQ(make_graph(10, 9).m, 9);
    EXPECT_EQ(make_graph(10, 9).n, 10);
}

TEST(DistCases, TableRows) {
    const auto cases = distribution_cases();
    bool binom = false, gamma = false, normal = false;
    for (const auto& c : cases) {
        if (c.family == DistFamily::binomial && c.param("k") == 1.0) {
            EXPECT_EQ(c.param("n"), 1030.0);
            EXPECT_EQ(c.param("p"), 0.5);
            EXPECT_EQ(c.certified, 8.96114e-308);
            binom = true;
        }
        if (c.family == DistFamily::gamma_cdf && c.param("x") == 0.1 && c.param("alpha") == 0.1) {
            EXPECT_EQ(c.param("beta"), 1.0);
            EXPECT_EQ(c.certified, 0.827552);
            gamma = true;
        }
        if (c.family == DistFamily::normal_quantile && c.param("p") == 1e-300) {
            EXPECT_EQ(c.certified, -37.0471);
            normal = true;
        }
    }
    EXPECT_TRUE(binom && gamma && normal);
    for (DistFamily f : all_families()) EXPECT_EQ(parse_family(family_name(f)), f);
    EXPECT_THROW(parse_family("cauchy"), std::invalid_argument);
}
