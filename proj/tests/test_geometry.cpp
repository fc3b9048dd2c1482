#include "cvxpoly/enumerator.hpp"
#include "cvxpoly/geometry.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace cvx;

namespace {

ConvexPolyomino figure1() { return ConvexPolyomino::from_pairs({{0, 1}, {-2, 2}, {-1, 4}, {-1, 4}, {1, 3}}); }

// Statistics recomputed from the raw cell set, sharing nothing with compute_stats.
StatVector naive_stats(const ConvexPolyomino& p)
{
    std::set<Cell> cells;
    for (auto& c : p.cells()) cells.insert(c);
    auto has = [&](int x, int y) { return cells.count({x, y}) > 0; };
    StatVector s;
    std::set<int> xs, ys;
    std::set<Cell> outer, verts;
    int edges = 0;
    for (auto [x, y] : cells) {
        xs.insert(x);
        ys.insert(y);
        const int dx[] = {1, -1, 0, 0}, dy[] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k)
            if (!has(x + dx[k], y + dy[k])) {
                ++edges;
                outer.insert({x + dx[k], y + dy[k]});
            }
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) verts.insert({x + a, y + b});
    }
    s.a = int(cells.size());
    s.v = int(xs.size());
    s.h = int(ys.size());
    s.perimeter = edges;
    s.semiperimeter = edges / 2;
    s.o = int(outer.size());
    for (auto [vx, vy] : verts) {
        // cells around vertex (vx,vy): (vx-1,vy-1) (vx,vy-1) (vx-1,vy) (vx,vy)
        bool sw = has(vx - 1, vy - 1), se = has(vx, vy - 1), nw = has(vx - 1, vy), ne = has(vx, vy);
        int n = sw + se + nw + ne;
        if (n == 4) {
            ++s.interior;
            continue;
        }
        // polyomino edges touching the vertex: each of the 4 unit edges is an edge of some cell
        int deg = 0;
        deg += (nw || ne);  // up
        deg += (sw || se);  // down
        deg += (sw || nw);  // left
        deg += (se || ne);  // right
        if (deg == 2) ++s.d2;
        if (deg == 3) ++s.d3;
        if (deg == 4) ++s.d4;
    }
    s.c = -1;
    for (auto [x, y] : cells)
        if (x == *xs.begin()) ++s.c;
    return s;
}

} // namespace

TEST(Geometry, SingleCell)
{
    auto p = ConvexPolyomino::from_pairs({{0, 0}});
    StatVector s = compute_stats(p);
    EXPECT_EQ(s.v, 1);
    EXPECT_EQ(s.h, 1);
    EXPECT_EQ(s.a, 1);
    EXPECT_EQ(s.c, 0);
    EXPECT_EQ(s.perimeter, 4);
    EXPECT_EQ(s.interior, 0);
    EXPECT_EQ(s.d2, 4);
    EXPECT_EQ(s.d3, 0);
    EXPECT_EQ(s.d4, 0);
    EXPECT_EQ(s.o, 4);
    EXPECT_EQ(class_flags(p), (ClassFlags{true, true, true}));
    EXPECT_EQ(p.cells(), (std::vector<Cell>{{0, 0}}));
}

TEST(Geometry, FigureOne)
{
    auto p = figure1();
    StatVector s = compute_stats(p);
    EXPECT_EQ(s.a, 22);
    EXPECT_EQ(s.v, 5);
    EXPECT_EQ(s.h, 7);
    EXPECT_EQ(s.perimeter, 24);
    EXPECT_EQ(s.o, 18);
    EXPECT_EQ(s.interior, 11);
    EXPECT_EQ(s.d2, 10);
    EXPECT_EQ(s.d3, 8);
    EXPECT_EQ(s.d4, 6);
    EXPECT_EQ(s.horizontal_perimeter(), 10);
    EXPECT_EQ(s.vertical_perimeter(), 14);
    EXPECT_EQ(class_flags(p), (ClassFlags{false, false, false}));
    EXPECT_EQ(p.cells().size(), 22u);
    EXPECT_EQ(naive_stats(p), s);
}

TEST(Geometry, TwoByTwo)
{
    StatVector s = compute_stats(ConvexPolyomino::from_pairs({{0, 1}, {0, 1}}));
    EXPECT_EQ(s.interior, 1);
    EXPECT_EQ(s.d2, 4);
    EXPECT_EQ(s.d3, 4);
    EXPECT_EQ(s.d4, 0);
    EXPECT_EQ(s.o, 8);
}

TEST(Geometry, LTrominoFlags)
{
    auto f = class_flags(ConvexPolyomino::from_pairs({{0, 1}, {0, 0}}));
    EXPECT_TRUE(f.is_u);
    EXPECT_TRUE(f.is_b);
}

TEST(Geometry, Rejections)
{
    auto code = [](std::vector<std::pair<int, int>> s) {
        try {
            ConvexPolyomino::from_pairs(s);
        } catch (const GeometryError& e) {
            return e.code();
        }
        ADD_FAILURE() << "accepted an invalid polyomino";
        return GeomErrc::EmptyInput;
    };
    EXPECT_EQ(code({{0, 0}, {2, 3}}), GeomErrc::BrokenAdjacency);
    EXPECT_EQ(code({{0, 0}, {1, 2}, {0, 0}}), GeomErrc::NotRowConvex);
    EXPECT_EQ(code({}), GeomErrc::EmptyInput);
    EXPECT_EQ(code({{2, 1}}), GeomErrc::BadSpan);
}

TEST(Geometry, FromCellsNormalizes)
{
    std::vector<Cell> cells;
    for (auto [x, y] : figure1().cells()) cells.push_back({x + 7, y - 3});
    EXPECT_EQ(ConvexPolyomino::from_cells(cells), figure1());
    EXPECT_THROW(ConvexPolyomino::from_cells({{0, 0}, {1, 1}}), GeometryError);
    EXPECT_THROW(ConvexPolyomino::from_cells({{0, 0}, {0, 2}}), GeometryError);
}

// Invariants over every convex polyomino up to semiperimeter 9.
TEST(GeometryProperty, InvariantsOnEveryInstance)
{
    long n = 0;
    enumerate(9, PolyClass::CP, [&](const std::vector<ColumnSpan>& cols) {
        auto p = ConvexPolyomino::from_columns(cols);
        StatVector s = compute_stats(p);
        ++n;
        ASSERT_EQ(s, naive_stats(p));
        ASSERT_EQ(s.perimeter, 2 * (s.h + s.v));
        ASSERT_EQ(s.d4, s.d2 - 4);
        ASSERT_EQ(s.d2 + s.d3 + s.d4, 2 * (s.h + s.v));
        ASSERT_EQ(s.interior + s.d2 + s.d3 + s.d4, lattice_vertices_touched(p));
        ASSERT_EQ(unimodal_spans(cols), rows_convex(cols));
        ASSERT_GE(s.o, s.h + s.v + 2);
        ASSERT_EQ(s.o, s.d2 + s.d3);
        auto m = p.mirrored();
        ASSERT_EQ(compute_stats(m), s);
        ClassFlags f = class_flags(p), g = class_flags(m);
        ASSERT_EQ(f.is_u, g.is_b);
        ASSERT_EQ(f.is_b, g.is_u);
    });
    EXPECT_EQ(n, 1 + 2 + 7 + 28 + 120 + 528 + 2344 + 10416);
}

// Non-convex span lists: the unimodal test and the row scan must agree there too.
TEST(GeometryProperty, ConvexityCharacterizationOnArbitrarySpans)
{
    int checked = 0;
    std::vector<ColumnSpan> s(3);
    for (int b0 = 0; b0 < 3; ++b0)
        for (int u0 = b0; u0 < 3; ++u0)
            for (int b1 = 0; b1 < 3; ++b1)
                for (int u1 = b1; u1 < 3; ++u1)
                    for (int b2 = 0; b2 < 3; ++b2)
                        for (int u2 = b2; u2 < 3; ++u2) {
                            s = {{b0, u0}, {b1, u1}, {b2, u2}};
                            if (std::max(b0, b1) > std::min(u0, u1) || std::max(b1, b2) > std::min(u1, u2)) continue;
                            EXPECT_EQ(unimodal_spans(s), rows_convex(s));
                            ++checked;
                        }
    EXPECT_GT(checked, 50);
}
