#include "cvxpoly/recurrences.hpp"

#include <gtest/gtest.h>

using namespace cvx;

namespace {

DpOptions opts(bool sep = false, bool area = true, bool paper = false)
{
    DpOptions o;
    o.separate_degree_marks = sep;
    o.mark_area = area;
    o.paper_weights = paper;
    return o;
}

// Half-perimeter counts from the area-free perimeter DP, z := 1 then y := x.
std::vector<Rational> halfperimeter(PolyClass cls, int N)
{
    Series s = dp_series(Family::PerimeterArea, cls, Box{N, N, N - 1}, opts(false, false));
    s = substitute_value(s, 'z', 1, DegreeBound::linear(-1, {{'y', 1}}));
    return coefficients(substitute_var(s, 'y', 'x').truncated({N}));
}

Rational fib(int n)
{
    long a = 0, b = 1;
    for (int i = 0; i < n; ++i) {
        long t = a + b;
        a = b;
        b = t;
    }
    return a;
}

Rational choose(int n, int k)
{
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace

TEST(Recurrences, FibonacciAndBinomialCounts)
{
    auto bu = halfperimeter(PolyClass::CPbu, 12), u = halfperimeter(PolyClass::CPu, 12);
    for (int n = 2; n <= 12; ++n) {
        EXPECT_EQ(bu[size_t(n)], fib(2 * n - 3)) << n;
        EXPECT_EQ(u[size_t(n)], choose(2 * n - 4, n - 2)) << n;
    }
    auto cp = halfperimeter(PolyClass::CP, 9);
    std::vector<long> want = {0, 0, 1, 2, 7, 28, 120, 528, 2344, 10416};
    for (int n = 0; n <= 9; ++n) EXPECT_EQ(cp[size_t(n)], want[size_t(n)]);
}

TEST(Recurrences, InteriorTotalAtFive)
{
    Series s = dp_series(Family::Interior, PolyClass::CP, Box{5, 5, 4, 16});
    s = substitute_value(derive(s, 'q'), 'q', 1, DegreeBound::constant(15));
    s = substitute_value(s, 'z', 1, DegreeBound::linear(-1, {{'y', 1}}));
    auto c = coefficients(substitute_var(s, 'y', 'x').truncated({5}));
    EXPECT_EQ(c[5], 12);
}

TEST(Recurrences, OuterUnivariateSeries)
{
    // o <= 13 needs h+v <= 11, i.e. at most 10 columns and 10 rows
    Series s = dp_series(Family::Outer, PolyClass::CP, Box{10, 10, 9, 13});
    std::map<int, Rational> by_o;
    for (auto& [e, c] : s.terms())
        if (e[0] + e[1] <= 11) by_o[e[3]] += c;
    std::map<int, long> want = {{4, 1}, {5, 0}, {6, 2}, {7, 4}, {8, 12}, {9, 32}, {10, 102}, {11, 276}, {12, 849}, {13, 2364}};
    for (auto [o, c] : want) EXPECT_EQ(by_o[o], c) << "o=" << o;
}

TEST(Recurrences, PrintedContainmentWeightChangesCounts)
{
    Series s = dp_series(Family::Outer, PolyClass::CP, Box{10, 10, 9, 13}, opts(false, true, true));
    std::map<int, Rational> by_o;
    for (auto& [e, c] : s.terms())
        if (e[0] + e[1] <= 11) by_o[e[3]] += c;
    std::map<int, long> printed = {{4, 1}, {6, 2}, {7, 4}, {8, 10}, {9, 28}, {10, 77}, {11, 208}, {12, 586}, {13, 1572}};
    for (auto [o, c] : printed) EXPECT_EQ(by_o[o], c) << "o=" << o;
}

TEST(Recurrences, AgreesWithBruteForce)
{
    struct Case {
        Family f;
        DpOptions o;
        int n;
    };
    for (Case c : {Case{Family::PerimeterArea, opts(), 10}, Case{Family::PerimeterArea, opts(false, false), 10},
                   Case{Family::Interior, opts(), 9}, Case{Family::Degrees, opts(), 9}, Case{Family::Degrees, opts(true), 9},
                   Case{Family::Outer, opts(), 9}})
        for (PolyClass cls : {PolyClass::CP, PolyClass::CPu, PolyClass::CPb, PolyClass::CPbu}) {
            DpReport r = dp_vs_bruteforce(c.f, cls, c.n, c.o);
            EXPECT_TRUE(r.mismatches.empty()) << family_name(c.f) << " " << class_name(cls) << ": "
                                              << r.mismatches.size() << " mismatches";
            EXPECT_GT(r.terms, 0u);
        }
}

TEST(Recurrences, ClassLatticeAndMirror)
{
    Box b{6, 6, 5, 12};
    Series cp = dp_series(Family::Interior, PolyClass::CP, b), u = dp_series(Family::Interior, PolyClass::CPu, b),
           bb = dp_series(Family::Interior, PolyClass::CPb, b), bu = dp_series(Family::Interior, PolyClass::CPbu, b);
    EXPECT_EQ(u, bb);
    for (auto& [e, c] : bu.terms()) EXPECT_LE(c, u.coeff(e));
    for (auto& [e, c] : u.terms()) EXPECT_LE(c, cp.coeff(e));
}

TEST(Recurrences, DegreeFourIsDegreeTwoMinusFour)
{
    Series s = dp_series(Family::Degrees, PolyClass::CP, Box{5, 5, 4, 14, 20, 10}, opts(true));
    ASSERT_GT(s.nterms(), 0u);
    for (auto& [e, c] : s.terms()) {
        EXPECT_EQ(e[5], e[3] - 4);
        EXPECT_EQ(e[3] + e[4] + e[5], 2 * (e[0] + e[1]));
    }
}

TEST(Recurrences, TransitionTableCarriesPlacements)
{
    EXPECT_EQ(classify(3, 0, 2), Placement::Equal);
    EXPECT_EQ(classify(3, 1, 1), Placement::Inside);
    EXPECT_EQ(classify(3, -1, 3), Placement::Contains);
    EXPECT_EQ(classify(3, -1, 1), Placement::DropBelow);
    EXPECT_FALSE(transition_table().empty());
    EXPECT_THROW(parse_family("nope"), std::invalid_argument);
}
