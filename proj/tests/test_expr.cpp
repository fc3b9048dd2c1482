#include "cvxpoly/expr.hpp"

#include <gtest/gtest.h>

using namespace cvx;

namespace {

std::vector<Rational> ints(std::vector<long> v) { return std::vector<Rational>(v.begin(), v.end()); }

} // namespace

TEST(Expr, CatalanTree)
{
    Ex x = Ex::var('x');
    Series c = eval_to_box((1 - sqrt(1 - 4 * x)) / (2 * x), "x", {6});
    EXPECT_EQ(coefficients(c), ints({1, 1, 2, 5, 14, 42, 132}));
}

TEST(Expr, LemmaStyleRational)
{
    // x y (1 - y z) / ((1 - y z)^2 - x): constant-free denominator, unit after the leading 1
    Ex x = Ex::var('x'), y = Ex::var('y'), z = Ex::var('z');
    Ex e = x * y * (1 - y * z) / (pow(1 - y * z, 2) - x);
    Series s = eval_to_box(e, "xyz", {3, 3, 3});
    // z = 0 slice: x y / (1 - x) = sum x^k y
    for (int k = 1; k <= 3; ++k) EXPECT_EQ(s.coeff({k, 1, 0}), 1);
    // direct check of the identity (denominator) * result = numerator
    Series den = eval_expr(pow(1 - y * z, 2) - x, "xyz", {3, 3, 3});
    Series num = eval_expr(x * y * (1 - y * z), "xyz", {3, 3, 3});
    EXPECT_EQ(den * s, num);
}

TEST(Expr, DerivativeAndBindings)
{
    Ex x = Ex::var('x'), q = Ex::var('q');
    Series d = eval_to_box(diff(pow(q, 4) * x, 'q'), "xq", {2, 4});
    EXPECT_EQ(d.coeff({1, 3}), 4);
    EXPECT_EQ(d.nterms(), 1u);
    // x bound to s^2: 1/(1-x) becomes 1/(1-s^2)
    Bindings b{{'x', Ex::var('s') * Ex::var('s')}};
    Series g = eval_to_box(1 / (1 - x), "s", {6}, b);
    EXPECT_EQ(coefficients(g), ints({1, 0, 1, 0, 1, 0, 1}));
}

TEST(Expr, LeafAndNamedNodes)
{
    Series one_minus = Series::constant("x", {4}, 1) - Series::variable("x", {4}, 'x');
    Ex inv = 1 / Ex::leaf(one_minus, "L");
    EXPECT_EQ(coefficients(eval_to_box(inv, "x", {4})), ints({1, 1, 1, 1, 1}));
}

TEST(Expr, ErrorCarriesPath)
{
    Ex x = Ex::var('x'), y = Ex::var('y');
    Ex bad = (1 / (x + y).named("denominator")).named("ratio");
    try {
        eval_expr(bad, "xy", {3, 3});
        FAIL() << "expected NotAUnit";
    } catch (const SeriesError& e) {
        EXPECT_EQ(e.code(), SeriesErrc::NotAUnit);
        ASSERT_FALSE(e.path().empty());
        EXPECT_EQ(e.path().front(), "ratio");
    }
}

TEST(Expr, PaddingAbsorbsDivisionLoss)
{
    Ex x = Ex::var('x');
    // (x + x^2) / x loses one degree of box; eval_to_box pads it back
    Series s = eval_to_box((x + x * x) / x, "x", {5});
    EXPECT_EQ(s.box(), Box{5});
    EXPECT_EQ(coefficients(s), ints({1, 1, 0, 0, 0, 0}));
}
