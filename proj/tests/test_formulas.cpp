#include "cvxpoly/enumerator.hpp"
#include "cvxpoly/formulas.hpp"
#include "cvxpoly/gfs.hpp"

#include <gtest/gtest.h>

using namespace cvx;

namespace {

// Census oracle shared by the tests in this file.
const CensusTable& cp_census()
{
    static const CensusTable t = census(11, PolyClass::CP, {"int", "d2", "o"}, 2);
    return t;
}

} // namespace

TEST(Formulas, SpecValues)
{
    EXPECT_EQ(exact("count_perimeter", 4).value, 7);
    EXPECT_EQ(exact("count_perimeter", 6).value, 120);
    EXPECT_EQ(exact("count_perimeter_shifted", 0).value, 7);
    EXPECT_EQ(exact("total_interior", 5).value, 12);
    EXPECT_EQ(exact("count_cpbu", 4).value, 5);
    EXPECT_EQ(fibonacci(5), 5);
    EXPECT_EQ(binomial(8, 4), 70);
}

TEST(Formulas, ShiftedAliasMatches)
{
    for (int m = 0; m <= 20; ++m) EXPECT_EQ(exact("count_perimeter_shifted", m).value, exact("count_perimeter", m + 4).value);
}

TEST(Formulas, AgreeWithCensus)
{
    const auto& t = cp_census();
    for (int n = 2; n <= 11; ++n) EXPECT_EQ(exact("count_perimeter", n).value, t.rows.at(n).count) << n;
    for (int n = 5; n <= 11; ++n) {
        EXPECT_EQ(exact("total_interior", n).value, t.rows.at(n).totals.at("int")) << n;
        EXPECT_EQ(exact("total_deg2", n).value, t.rows.at(n).totals.at("d2")) << n;
        EXPECT_EQ(exact("total_outer", n).value, t.rows.at(n).totals.at("o")) << n;
        EXPECT_EQ(exact("total_outer_observed", n).value, t.rows.at(n).totals.at("o")) << n;
    }
}

TEST(Formulas, SubclassCountsAgreeWithCensus)
{
    auto bu = census(11, PolyClass::CPbu, {}), u = census(11, PolyClass::CPu, {});
    for (int n = 2; n <= 11; ++n) {
        EXPECT_EQ(exact("count_cpbu", n).value, bu.rows.at(n).count);
        EXPECT_EQ(exact("count_cpu", n).value, u.rows.at(n).count);
    }
}

TEST(Formulas, BoundaryOfDomain)
{
    EXPECT_THROW(exact("total_interior", 4), FormulaError);
    EXPECT_THROW(exact("count_perimeter", 1), FormulaError);
    EXPECT_THROW(exact("nope", 5), FormulaError);
    // the census gives 1 at n = 4, which the formula does not claim
    EXPECT_EQ(cp_census().rows.at(4).totals.at("int"), 1);
}

TEST(Formulas, IntegralInDomain)
{
    for (auto& f : exact_formulas())
        for (int n = std::max(f.min_n, 0); n <= (f.quarantined ? 14 : 60); ++n) {
            ExactValue v = exact(f.name, n);
            if (!f.quarantined) EXPECT_EQ(v.printed.get_den(), 1) << f.name << " " << n;
        }
}

TEST(Formulas, QuarantinedTotalOuter)
{
    ExactValue v = exact("total_outer", 5);
    EXPECT_TRUE(v.quarantined);
    EXPECT_EQ(v.printed, Rational(1220, 3));
    EXPECT_EQ(v.value, 248);
    EXPECT_NE(v.note.find("non-integral"), std::string::npos);
}

TEST(Formulas, AsymptoticConstants)
{
    // ratio of consecutive leading terms tends to the base (3+sqrt5)/2
    Real r = asymptotic("count_deg23", 1000001) / asymptotic("count_deg23", 1000000);
    EXPECT_LT(abs(r - Real("2.6180339887498948482")), Real("1e-5"));
    Real p = asymptotic("avg_perimeter_given_outer", 1000000) / 1000000;
    EXPECT_LT(abs(p - Real("1.4953487812212205419")), Real("1e-5"));
    Real d = asymptotic("avg_deg2", 100);
    EXPECT_GT(d, 52);
    EXPECT_LT(d, 54);
    EXPECT_THROW(asymptotic("nope", 5), FormulaError);
}

TEST(Formulas, ConvergenceReports)
{
    auto rows = convergence_report("avg_deg2", 5, 2000, Source::Formula);
    auto s = summarize(rows);
    EXPECT_LT(s.err_top, Real("1e-3"));
    EXPECT_TRUE(s.tail_non_increasing);
    auto ri = summarize(convergence_report("avg_interior", 5, 2000, Source::Formula));
    EXPECT_TRUE(ri.tail_non_increasing);
    EXPECT_THROW(convergence_report("count_deg23", 4, 20, Source::Formula), FormulaError);
    auto census_rows = convergence_report("avg_interior", 5, 9, Source::Census);
    auto formula_rows = convergence_report("avg_interior", 5, 9, Source::Formula);
    ASSERT_EQ(census_rows.size(), formula_rows.size());
    for (size_t i = 0; i < census_rows.size(); ++i) EXPECT_EQ(census_rows[i].exact, formula_rows[i].exact);
}

TEST(Formulas, DecimalOutput)
{
    EXPECT_EQ(to_decimal(Real(1) / 3, 5), "0.33333");
    EXPECT_EQ(rational_decimal(Rational(7, 2)), "7/2");
}
