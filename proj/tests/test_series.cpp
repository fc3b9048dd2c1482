#include "cvxpoly/series.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cvx;

namespace {

Series poly(const VarSet& v, const Box& b, std::vector<std::pair<Exps, int>> terms)
{
    Series s(v, b);
    for (auto& [e, c] : terms) s.add_to(e, c);
    return s;
}

std::vector<Rational> ints(std::vector<long> v)
{
    std::vector<Rational> r;
    for (long x : v) r.push_back(x);
    return r;
}

struct Gen {
    std::mt19937 rng{12345};
    int pick(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }
    Series sparse(const VarSet& v, const Box& b, int pct = 35)
    {
        Series s(v, b);
        Exps e(v.size());
        std::function<void(size_t)> go = [&](size_t i) {
            if (i == v.size()) {
                if (pick(1, 100) <= pct) {
                    Rational c(pick(-7, 7), pick(1, 3));
                    c.canonicalize();
                    s.add_to(e, c);
                }
                return;
            }
            for (e[i] = 0; e[i] <= b[i]; ++e[i]) go(i + 1);
            e[i] = 0;
        };
        go(0);
        return s;
    }
    Series unit(const VarSet& v, const Box& b, Rational c0 = 1)
    {
        Series s = sparse(v, b);
        s.set(Exps(v.size(), 0), c0);
        return s;
    }
};

// Dense product, computed coefficient by coefficient.
Series schoolbook(const Series& a, const Series& b)
{
    Series out(a.vars(), box_min(a.box(), b.box()));
    for (auto& [ea, ca] : a.terms())
        for (auto& [eb, cb] : b.terms()) {
            Exps e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            if (out.in_box(e)) out.add_to(e, ca * cb);
        }
    return out;
}

} // namespace

TEST(Series, Basics)
{
    VarSet x("x");
    Series a = poly(x, {4}, {{{0}, 1}, {{1}, 1}}), b = poly(x, {4}, {{{0}, 1}, {{1}, -1}});
    EXPECT_EQ(a * b, poly(x, {4}, {{{0}, 1}, {{2}, -1}}));
    EXPECT_EQ(coefficients(invert_unit(poly(x, {6}, {{{0}, 1}, {{1}, -4}})))[5], 1024);
    EXPECT_THROW(a.coeff({5}), SeriesError);
}

TEST(Series, GeometricInTwoVariables)
{
    VarSet v("xyz");
    Box b{1, 3, 2};
    Series xy = poly(v, b, {{{1, 1, 0}, 1}});
    Series g = invert_unit(poly(v, b, {{{0, 0, 0}, 1}, {{0, 1, 1}, -1}}));
    EXPECT_EQ(xy * g, poly(v, b, {{{1, 1, 0}, 1}, {{1, 2, 1}, 1}, {{1, 3, 2}, 1}}));
}

TEST(Series, SqrtAndCatalan)
{
    VarSet x("x");
    Box b{8};
    Series r = sqrt_unit(poly(x, b, {{{0}, 1}, {{1}, -4}}));
    EXPECT_EQ(coefficients(r), ints({1, -2, -2, -4, -10, -28, -84, -264, -858}));
    Series one = Series::constant(x, b, 1);
    Series cat = exact_div(one - r, 2 * Series::variable(x, b, 'x'));
    EXPECT_EQ(coefficients(cat), ints({1, 1, 2, 5, 14, 42, 132, 429}));
    EXPECT_EQ(sqrt_unit(one), one);
}

TEST(Series, SqrtPerfectSquare)
{
    // (1+y-x)^2 - 4y at x = 0 is (1-y)^2
    VarSet y("y");
    Series rad = poly(y, {6}, {{{0}, 1}, {{1}, -2}, {{2}, 1}});
    EXPECT_EQ(sqrt_unit(rad), poly(y, {6}, {{{0}, 1}, {{1}, -1}}));
}

TEST(Series, ExactDivision)
{
    VarSet x("x");
    Series num = poly(x, {5}, {{{2}, 1}, {{3}, 1}});
    Series q = exact_div(num, Series::variable(x, {5}, 'x'));
    EXPECT_EQ(q, poly(x, {4}, {{{1}, 1}, {{2}, 1}}));
    EXPECT_THROW(invert_unit(Series::variable(x, {5}, 'x')), SeriesError);
    EXPECT_THROW(sqrt_unit(poly(x, {3}, {{{0}, 4}})), SeriesError);
}

TEST(Series, Derivatives)
{
    VarSet v("xq");
    Box b{3, 6};
    EXPECT_EQ(derive(poly(v, b, {{{2, 0}, 1}}), 'x'), poly(v, {2, 6}, {{{1, 0}, 2}}));
    Series f = poly(v, b, {{{0, 4}, 1}, {{1, 4}, 3}});
    EXPECT_EQ(derive(f, 'q'), poly(v, {3, 5}, {{{0, 3}, 4}, {{1, 3}, 12}}));
    // d/dq then q := 1 gives sum n c_n(x)
    Series g = poly(v, b, {{{1, 2}, 1}, {{1, 5}, 2}, {{2, 0}, 7}});
    Series h = substitute_value(derive(g, 'q'), 'q', 1, DegreeBound::constant(5));
    EXPECT_EQ(h, poly("x", {3}, {{{1}, 12}}));
}

TEST(Series, Substitutions)
{
    VarSet v("xyz");
    Box b{4, 4, 4};
    Series f = exact_div(poly(v, b, {{{1, 1, 0}, 1}}), poly(v, b, {{{0, 0, 0}, 1}, {{0, 1, 1}, -1}}));
    Series g = substitute_var(f, 'y', 'x');
    VarSet xz("xz");
    Series want = exact_div(poly(xz, {4, 4}, {{{2, 0}, 1}}), poly(xz, {4, 4}, {{{0, 0}, 1}, {{1, 1}, -1}}));
    EXPECT_EQ(g, want);

    Series q4 = poly("xyq", {2, 2, 6}, {{{1, 1, 4}, 1}});
    EXPECT_EQ(substitute_value(q4, 'q', 1, DegreeBound::constant(6)), poly("xy", {2, 2}, {{{1, 1}, 1}}));
    EXPECT_THROW(substitute_value(q4, 'q', 1, DegreeBound::constant(7)), SeriesError);
    EXPECT_EQ(substitute(f, 'x', Series::variable(v, b, 'x')), f);
    EXPECT_THROW(substitute(f, 'x', Series::constant(v, b, 1)), SeriesError);
}

TEST(Series, SproxyRoundTrip)
{
    // x := s^2, then the even part read back
    Series s = poly("s", {8}, {{{0}, 1}, {{2}, 3}, {{6}, -1}});
    EXPECT_EQ(from_sproxy(s), poly("x", {4}, {{{0}, 1}, {{1}, 3}, {{3}, -1}}));
    EXPECT_THROW(from_sproxy(poly("s", {8}, {{{3}, 1}})), SeriesError);
}

TEST(Series, DumpRoundTrip)
{
    Gen g;
    Series a = g.sparse("xyz", {3, 2, 2});
    EXPECT_EQ(parse_dump(dump(a)), a);
}

TEST(Series, VarMismatch)
{
    EXPECT_THROW(Series::variable("x", {2}, 'x') + Series::variable("y", {2}, 'y'), SeriesError);
}

class SeriesProperty : public ::testing::TestWithParam<int> {};

TEST_P(SeriesProperty, RingLaws)
{
    Gen g;
    g.rng.seed(unsigned(GetParam()));
    VarSet v("xyz");
    Box b{g.pick(0, 4), g.pick(0, 3), g.pick(0, 3)};
    Series a = g.sparse(v, b), c = g.sparse(v, b), d = g.sparse(v, b);
    EXPECT_EQ((a * c) * d, a * (c * d));
    EXPECT_EQ(a * c, c * a);
    EXPECT_EQ(a * (c + d), a * c + a * d);
    EXPECT_EQ(a * c, schoolbook(a, c));
    EXPECT_EQ(a + (c - a), c);
}

TEST_P(SeriesProperty, InversesAndRoots)
{
    Gen g;
    g.rng.seed(unsigned(GetParam()) + 1000);
    VarSet v("xy");
    Box b{g.pick(0, 5), g.pick(0, 4)};
    Rational c0(g.pick(1, 5), g.pick(1, 3));
    c0.canonicalize();
    Series u = g.unit(v, b, c0);
    EXPECT_EQ(u * invert_unit(u), Series::constant(v, b, 1));
    Series w = g.unit(v, b);
    Series r = sqrt_unit(w);
    EXPECT_EQ(r * r, w);
    Series a = g.sparse(v, b);
    Exps m{g.pick(0, 1), 0};
    Series mu = u * Series::monomial(v, b, m, 1);
    if (mu.is_zero()) return; // monomial outside the box
    Series q = exact_div(a * mu, mu);
    EXPECT_EQ(q, a.truncated(q.box()));
}

TEST_P(SeriesProperty, SubstitutionAndTruncation)
{
    Gen g;
    g.rng.seed(unsigned(GetParam()) + 2000);
    VarSet v("xyz");
    Box big{4, 4, 3}, small{g.pick(0, 4), g.pick(0, 4), g.pick(0, 3)};
    Series a = g.sparse(v, big), c = g.sparse(v, big), u = g.unit(v, big);
    EXPECT_EQ((a * c).truncated(small), a.truncated(small) * c.truncated(small));
    EXPECT_EQ(invert_unit(u).truncated(small), invert_unit(u.truncated(small)));
    // x-replacement free of y and y-replacement free of x commute
    Series gx_no_y = Series::variable(v, big, 'x') * g.sparse("xz", {4, 3}).embedded(v, big);
    Series gy_no_x = Series::variable(v, big, 'y') * g.sparse("yz", {4, 3}).embedded(v, big);
    EXPECT_EQ(substitute(substitute(a, 'x', gx_no_y), 'y', gy_no_x), substitute(substitute(a, 'y', gy_no_x), 'x', gx_no_y));
    EXPECT_EQ(derive(a * c, 'y'), (derive(a, 'y') * c + a * derive(c, 'y')).truncated({4, 3, 3}));
}

INSTANTIATE_TEST_SUITE_P(Random, SeriesProperty, ::testing::Range(0, 40));
