#include "cvxpoly/verify.hpp"

#include <gtest/gtest.h>

using namespace cvx;

// Every catalog entry that is not a literal display reproduces its DP reference.
TEST(Verify, CatalogMatchesDp)
{
    int compared = 0;
    for (auto& e : gf_catalog()) {
        Box b = default_oracle_box(e.name);
        auto ref = dp_reference(e.name, b);
        if (!ref) continue;
        ++compared;
        auto diff = series_diff(*ref, build(e.name, b));
        if (e.printed_of.empty()) {
            EXPECT_TRUE(diff.empty()) << e.name << ": " << diff.front();
        } else {
            EXPECT_FALSE(diff.empty()) << e.name << " was expected to differ from its corrected form";
        }
    }
    EXPECT_EQ(compared, int(gf_catalog().size()));
}

TEST(Verify, SeriesDiffReports)
{
    Series a = Series::variable("x", {3}, 'x'), b = Series::constant("x", {3}, 1);
    auto d = series_diff(a, b);
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d[0], "at (0): expected 0, got 1");
    EXPECT_TRUE(series_diff(a, a).empty());
    EXPECT_FALSE(series_diff(a, Series::variable("y", {3}, 'y')).empty());
}

TEST(Verify, Suites)
{
    EXPECT_EQ(suite_criteria("all").size(), size_t(criterion_count));
    EXPECT_EQ(suite_criteria("perimeter"), (std::vector<int>{1, 2}));
    EXPECT_THROW(suite_criteria("nope"), std::invalid_argument);
    EXPECT_THROW(run_criterion(11, {}), std::invalid_argument);
}

TEST(Verify, FigureCriterion)
{
    VerifyOptions o;
    o.figure_path = std::string(CVXPOLY_DATA_DIR) + "/figure1.json";
    CheckResult r = run_criterion(10, o);
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(r.lines.size(), 7u);
}

TEST(Verify, SmallCensusCriteria)
{
    VerifyOptions o;
    o.max_n = 9;
    EXPECT_TRUE(run_criterion(2, o).passed);
    EXPECT_TRUE(run_criterion(3, o).passed);
    EXPECT_TRUE(run_criterion(4, o).passed);
}
