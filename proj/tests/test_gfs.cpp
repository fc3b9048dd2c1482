#include "cvxpoly/gfs.hpp"

#include <gtest/gtest.h>

using namespace cvx;

namespace {

std::vector<Rational> ints(std::vector<long> v) { return std::vector<Rational>(v.begin(), v.end()); }

std::vector<Rational> slice(const std::vector<Rational>& c, size_t lo, size_t hi)
{
    return std::vector<Rational>(c.begin() + long(lo), c.begin() + long(hi) + 1);
}

} // namespace

TEST(Gfs, HalfPerimeterCounts)
{
    auto c = coefficients(build("cp_halfperimeter", {9}));
    EXPECT_EQ(slice(c, 2, 9), ints({1, 2, 7, 28, 120, 528, 2344, 10416}));
}

TEST(Gfs, PrintedHalfPerimeterDisplayDiverges)
{
    auto c = coefficients(build("cp_halfperimeter_printed", {6}));
    EXPECT_EQ(slice(c, 2, 4), ints({1, 2, 7}));
    EXPECT_EQ(c[5], 27);
}

TEST(Gfs, OuterSeriesAsDisplayed)
{
    auto c = coefficients(build("j_outer_uni", {13}));
    EXPECT_EQ(slice(c, 4, 13), ints({1, 0, 2, 4, 10, 28, 77, 208, 586, 1572}));
    auto t = coefficients(build("j_outer_uni_true", {13}));
    EXPECT_EQ(slice(t, 4, 13), ints({1, 0, 2, 4, 12, 32, 102, 276, 849, 2364}));
    EXPECT_EQ(t, coefficients(build("d_deg23", {13})));
}

TEST(Gfs, FibonacciFromStaircaseSeries)
{
    Series s = build("cpbu_z", {10, 10, 9});
    s = substitute_value(s, 'z', 1, DegreeBound::linear(-1, {{'y', 1}}));
    auto c = coefficients(substitute_var(s, 'y', 'x').truncated({10}));
    EXPECT_EQ(slice(c, 2, 10), ints({1, 2, 5, 13, 34, 89, 233, 610, 1597}));
}

TEST(Gfs, UnivariateTotals)
{
    EXPECT_EQ(coefficients(build("f_dq_uni", {10}))[5], 12);
    EXPECT_EQ(slice(coefficients(build("e_dq_uni", {7})), 5, 7), ints({144, 688, 3328}));
    EXPECT_EQ(slice(coefficients(build("j_dq_uni", {7})), 2, 7), ints({4, 12, 52, 248, 1232, 6176}));
}

TEST(Gfs, CatalanRoot)
{
    AlgebraicPoint p = algebraic_point("z0", {6, 6});
    EXPECT_TRUE(p.residual.is_zero());
    Series diag = substitute_var(p.value, 'y', 'x');
    EXPECT_EQ(coefficients(diag), ints({1, 1, 2, 5, 14, 42, 132}));
}

TEST(Gfs, AlgebraicPointsSolveTheirKernels)
{
    for (auto& name : algebraic_point_names()) {
        Box b = name == "z0" ? Box{5, 5} : name == "z0_outer" ? Box{4, 4, 6} : (name == "z_plus" || name == "z_minus") ? Box{8, 5} : Box{8, 8};
        AlgebraicPoint p = algebraic_point(name, b);
        EXPECT_TRUE(p.residual.is_zero()) << name;
        EXPECT_EQ(p.value.constant_term(), 1) << name;
    }
}

TEST(Gfs, KernelResiduals)
{
    for (auto& name : kernel_equation_names()) {
        VarSet v = kernel_equation_vars(name);
        Box b = v.size() == 3 ? Box{4, 4, 4} : Box{3, 3, 3, 6};
        EXPECT_TRUE(kernel_residual(name, b).is_zero()) << name;
        EXPECT_FALSE(kernel_residual(name, b, true).is_zero()) << name;
    }
    for (auto& name : printed_kernel_equation_names())
        EXPECT_FALSE(kernel_residual(name, {4, 4, 4, 8}).is_zero()) << name;
}

TEST(Gfs, SeriesIdentities)
{
    Series xy = build("cp_xy", {8, 8});
    EXPECT_EQ(substitute_var(xy, 'y', 'x').truncated({8}), build("cp_halfperimeter", {8}));
    EXPECT_EQ(build("f_at_11", {6, 6}), build("cp_xy", {6, 6}));
}

TEST(Gfs, BoxesAndNames)
{
    EXPECT_THROW(build("nope", {3}), GfError);
    EXPECT_THROW(build("cp_xy", {3}), GfError);
    EXPECT_THROW(parse_box("xy", "x=3"), GfError);
    EXPECT_THROW(parse_box("xy", "x=3,y=a"), GfError);
    EXPECT_EQ(parse_box("xyq", "q=13,x=2,y=4"), (Box{2, 4, 13}));
    EXPECT_EQ(build_spec("cp_halfperimeter", "x=5"), build("cp_halfperimeter", {5}));
    for (auto& e : gf_catalog()) {
        EXPECT_FALSE(e.name.empty());
        if (!e.printed_of.empty()) EXPECT_NO_THROW(gf_entry(e.printed_of)) << e.name;
    }
}
