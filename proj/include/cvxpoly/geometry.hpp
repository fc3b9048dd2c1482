#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cvx {

struct ColumnSpan {
    int b = 0;
    int u = 0;
    int height() const { return u - b + 1; }
    bool operator==(const ColumnSpan& o) const { return b == o.b && u == o.u; }
    bool operator<(const ColumnSpan& o) const { return b != o.b ? b < o.b : u < o.u; }
};

enum class GeomErrc { EmptyInput, BrokenAdjacency, NotRowConvex, BadSpan };

class GeometryError : public std::runtime_error {
public:
    GeometryError(GeomErrc c, const std::string& m) : std::runtime_error(m), code_(c) {}
    GeomErrc code() const { return code_; }

private:
    GeomErrc code_;
};

using Cell = std::pair<int, int>;

struct StatVector {
    int v = 0, h = 0, a = 0, c = 0;
    int perimeter = 0, semiperimeter = 0;
    int interior = 0;
    int d2 = 0, d3 = 0, d4 = 0;
    int o = 0;

    int horizontal_perimeter() const { return 2 * v; }
    int vertical_perimeter() const { return 2 * h; }

    int get(const std::string& name) const
    {
        if (name == "v") return v;
        if (name == "h") return h;
        if (name == "a") return a;
        if (name == "c") return c;
        if (name == "perimeter") return perimeter;
        if (name == "semiperimeter" || name == "sp") return semiperimeter;
        if (name == "int") return interior;
        if (name == "d2") return d2;
        if (name == "d3") return d3;
        if (name == "d4") return d4;
        if (name == "o") return o;
        if (name == "d2+d3") return d2 + d3;
        if (name == "d3+d4") return d3 + d4;
        throw std::invalid_argument("unknown statistic " + name);
    }

    bool operator==(const StatVector& s) const
    {
        return v == s.v && h == s.h && a == s.a && c == s.c && perimeter == s.perimeter &&
               semiperimeter == s.semiperimeter && interior == s.interior && d2 == s.d2 && d3 == s.d3 &&
               d4 == s.d4 && o == s.o;
    }
};

struct ClassFlags {
    bool is_u = false, is_b = false, is_bu = false;
    bool operator==(const ClassFlags& o) const { return is_u == o.is_u && is_b == o.is_b && is_bu == o.is_bu; }
};

// b valley-unimodal and u mountain-unimodal.
inline bool unimodal_spans(const std::vector<ColumnSpan>& s)
{
    bool rising = false;
    for (size_t i = 1; i < s.size(); ++i) {
        if (s[i].b > s[i - 1].b) rising = true;
        else if (s[i].b < s[i - 1].b && rising) return false;
    }
    bool falling = false;
    for (size_t i = 1; i < s.size(); ++i) {
        if (s[i].u < s[i - 1].u) falling = true;
        else if (s[i].u > s[i - 1].u && falling) return false;
    }
    return true;
}

inline std::vector<Cell> cells_of_spans(const std::vector<ColumnSpan>& s)
{
    std::vector<Cell> cells;
    for (size_t i = 0; i < s.size(); ++i)
        for (int j = s[i].b; j <= s[i].u; ++j) cells.emplace_back(int(i), j);
    return cells;
}

// Every row's occupied columns form an interval.
inline bool rows_convex(const std::vector<ColumnSpan>& s)
{
    int lo = s[0].b, hi = s[0].u;
    for (auto& c : s) {
        lo = std::min(lo, c.b);
        hi = std::max(hi, c.u);
    }
    for (int r = lo; r <= hi; ++r) {
        int state = 0;
        for (auto& c : s) {
            bool in = c.b <= r && r <= c.u;
            if (state == 0 && in) state = 1;
            else if (state == 1 && !in) state = 2;
            else if (state == 2 && in) return false;
        }
    }
    return true;
}

class ConvexPolyomino {
public:
    static ConvexPolyomino from_columns(std::vector<ColumnSpan> spans)
    {
        if (spans.empty()) throw GeometryError(GeomErrc::EmptyInput, "no columns");
        for (auto& c : spans)
            if (c.b > c.u) throw GeometryError(GeomErrc::BadSpan, "column with b > u");
        int shift = spans[0].b;
        for (auto& c : spans) {
            c.b -= shift;
            c.u -= shift;
        }
        // a row split by a gap is reported before a missing shared row
        bool direct = rows_convex(spans);
        if (!direct) throw GeometryError(GeomErrc::NotRowConvex, "a row is not contiguous");
        for (size_t i = 1; i < spans.size(); ++i)
            if (std::max(spans[i - 1].b, spans[i].b) > std::min(spans[i - 1].u, spans[i].u))
                throw GeometryError(GeomErrc::BrokenAdjacency, "columns " + std::to_string(i - 1) + " and " + std::to_string(i) + " share no row");
        if (!unimodal_spans(spans)) throw std::logic_error("unimodality and row-convexity disagree");
        ConvexPolyomino p;
        p.cols_ = std::move(spans);
        return p;
    }

    static ConvexPolyomino from_pairs(const std::vector<std::pair<int, int>>& pairs)
    {
        std::vector<ColumnSpan> s;
        for (auto& [b, u] : pairs) s.push_back({b, u});
        return from_columns(std::move(s));
    }

    // Trusted constructor for the enumerator (already normalized and convex).
    static ConvexPolyomino unchecked(std::vector<ColumnSpan> spans)
    {
        ConvexPolyomino p;
        p.cols_ = std::move(spans);
        return p;
    }

    static ConvexPolyomino from_cells(const std::vector<Cell>& cells)
    {
        if (cells.empty()) throw GeometryError(GeomErrc::EmptyInput, "no cells");
        std::set<Cell> set(cells.begin(), cells.end());
        int x0 = set.begin()->first, x1 = set.rbegin()->first;
        std::vector<ColumnSpan> s;
        for (int x = x0; x <= x1; ++x) {
            std::vector<int> ys;
            for (auto& [cx, cy] : set)
                if (cx == x) ys.push_back(cy);
            if (ys.empty()) throw GeometryError(GeomErrc::BrokenAdjacency, "empty column inside the cell set");
            std::sort(ys.begin(), ys.end());
            if (ys.back() - ys.front() + 1 != int(ys.size())) throw GeometryError(GeomErrc::BadSpan, "column is not contiguous");
            s.push_back({ys.front(), ys.back()});
        }
        return from_columns(std::move(s));
    }

    const std::vector<ColumnSpan>& columns() const { return cols_; }
    size_t width() const { return cols_.size(); }
    int height() const
    {
        int lo = cols_[0].b, hi = cols_[0].u;
        for (auto& c : cols_) {
            lo = std::min(lo, c.b);
            hi = std::max(hi, c.u);
        }
        return hi - lo + 1;
    }

    std::vector<Cell> cells() const { return cells_of_spans(cols_); }

    ConvexPolyomino mirrored() const
    {
        std::vector<ColumnSpan> s;
        for (auto& c : cols_) s.push_back({-c.u, -c.b});
        return from_columns(std::move(s));
    }

    bool operator==(const ConvexPolyomino& o) const { return cols_ == o.cols_; }
    bool operator<(const ConvexPolyomino& o) const { return cols_ < o.cols_; }

private:
    std::vector<ColumnSpan> cols_;
};

inline std::vector<Cell> cells_of(const ConvexPolyomino& p) { return p.cells(); }

inline ClassFlags class_flags(const ConvexPolyomino& p)
{
    ClassFlags f{true, true, true};
    const auto& c = p.columns();
    for (size_t i = 1; i < c.size(); ++i) {
        if (c[i].u > c[i - 1].u) f.is_u = false;
        if (c[i].b < c[i - 1].b) f.is_b = false;
    }
    f.is_bu = f.is_u && f.is_b;
    return f;
}

// All statistics from the cell set: edges, vertex stencils and neighbour cells.
inline StatVector compute_stats(const ConvexPolyomino& p)
{
    const auto& cols = p.columns();
    int lo = cols[0].b, hi = cols[0].u;
    for (auto& c : cols) {
        lo = std::min(lo, c.b);
        hi = std::max(hi, c.u);
    }
    const int W = int(cols.size()), H = hi - lo + 1;
    const int GW = W + 2, GH = H + 2;
    std::vector<unsigned char> g(size_t(GW * GH), 0);
    auto at = [&](int x, int y) -> unsigned char& { return g[size_t((y + 1) * GW + (x + 1))]; };
    auto occ = [&](int x, int y) -> bool {
        if (x < -1 || y < -1 || x > W || y > H) return false;
        return g[size_t((y + 1) * GW + (x + 1))] != 0;
    };
    StatVector s;
    for (int x = 0; x < W; ++x)
        for (int y = cols[size_t(x)].b - lo; y <= cols[size_t(x)].u - lo; ++y) {
            at(x, y) = 1;
            ++s.a;
        }
    s.v = W;
    s.h = H;
    s.c = cols[0].height() - 1;

    const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
    for (int x = 0; x < W; ++x)
        for (int y = 0; y < H; ++y) {
            if (!occ(x, y)) continue;
            for (int k = 0; k < 4; ++k)
                if (!occ(x + dx[k], y + dy[k])) ++s.perimeter;
        }
    for (int x = -1; x <= W; ++x)
        for (int y = -1; y <= H; ++y) {
            if (occ(x, y)) continue;
            for (int k = 0; k < 4; ++k)
                if (occ(x + dx[k], y + dy[k])) {
                    ++s.o;
                    break;
                }
        }
    // vertex (i,j) is the lower-left corner of cell (i,j)
    for (int i = 0; i <= W; ++i)
        for (int j = 0; j <= H; ++j) {
            bool ne = occ(i, j), nw = occ(i - 1, j), se = occ(i, j - 1), sw = occ(i - 1, j - 1);
            if (!(ne || nw || se || sw)) continue;
            if (ne && nw && se && sw) {
                ++s.interior;
                continue;
            }
            int deg = int(ne || se) + int(nw || sw) + int(ne || nw) + int(se || sw);
            if (deg == 2) ++s.d2;
            else if (deg == 3) ++s.d3;
            else ++s.d4;
        }
    s.semiperimeter = s.perimeter / 2;
    return s;
}

inline int lattice_vertices_touched(const ConvexPolyomino& p)
{
    std::set<std::pair<int, int>> vs;
    for (auto& [x, y] : p.cells())
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) vs.emplace(x + a, y + b);
    return int(vs.size());
}

} // namespace cvx
