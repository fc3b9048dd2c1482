#include "cvxpoly/io.hpp"

#include <gtest/gtest.h>

using namespace cvx;

namespace {

const std::string data = CVXPOLY_DATA_DIR;

} // namespace

TEST(Io, FigureFilesAgree)
{
    auto a = read_polyomino_file(data + "/figure1.txt");
    auto b = read_polyomino_file(data + "/figure1.json");
    EXPECT_EQ(a, b);
    StatVector s = compute_stats(a);
    EXPECT_EQ(s.o, 18);
    EXPECT_EQ(s.interior, 11);
    EXPECT_EQ(s.d2, 10);
    EXPECT_EQ(s.d4, 6);
}

TEST(Io, TextRoundTrip)
{
    auto p = read_polyomino("# two columns\n0 0 2\n1 1 1\n");
    EXPECT_EQ(p.width(), 2u);
    EXPECT_EQ(read_polyomino(spans_text(p)), p);
    EXPECT_EQ(read_polyomino(cells_json(p).dump()), p);
}

TEST(Io, ColumnOrderIsByIndex)
{
    EXPECT_EQ(read_polyomino("1 1 1\n0 0 2\n"), read_polyomino("0 0 2\n1 1 1\n"));
}

TEST(Io, Rejections)
{
    EXPECT_THROW(read_polyomino("0 0 1\n2 0 1\n"), GeometryError);
    EXPECT_THROW(read_polyomino("0 0\n"), std::runtime_error);
    EXPECT_THROW(read_polyomino(R"({"cells": [[0,0],[2,0]]})"), GeometryError);
    EXPECT_THROW(read_polyomino_file(data + "/missing.txt"), std::runtime_error);
}

TEST(Io, StatsJsonFields)
{
    auto j = stats_json(compute_stats(read_polyomino("0 0 0\n")));
    EXPECT_EQ(j["a"], 1);
    EXPECT_EQ(j["o"], 4);
    EXPECT_EQ(j["horizontal_perimeter"], 2);
    EXPECT_EQ(j["vertical_perimeter"], 2);
}

TEST(Io, CensusCsv)
{
    auto t = census(4, PolyClass::CP, {"int"});
    EXPECT_EQ(census_csv(t), "semiperimeter,count,total_int\n2,1,0\n3,2,0\n4,7,1\n");
    auto j = census_json(t);
    EXPECT_EQ(j["rows"][2]["count"], "7");
}
