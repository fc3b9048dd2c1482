#include "cvxpoly/io.hpp"

#include <fstream>
#include <sstream>

namespace cvx {

using nlohmann::json;

ConvexPolyomino read_polyomino(const std::string& text)
{
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        json j = json::parse(text);
        std::vector<Cell> cells;
        for (auto& c : j.at("cells")) cells.emplace_back(c.at(0).get<int>(), c.at(1).get<int>());
        return ConvexPolyomino::from_cells(cells);
    }
    std::istringstream is(text);
    std::string line;
    std::vector<std::pair<int, std::pair<int, int>>> rows;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int x, b, u;
        if (!(ls >> x)) continue;
        if (!(ls >> b >> u)) throw std::runtime_error("expected `x b u` in line: " + line);
        rows.push_back({x, {b, u}});
    }
    std::sort(rows.begin(), rows.end());
    for (size_t i = 0; i < rows.size(); ++i)
        if (rows[i].first != rows[0].first + int(i))
            throw GeometryError(GeomErrc::BrokenAdjacency, "column indices must be consecutive");
    std::vector<ColumnSpan> spans;
    for (auto& r : rows) spans.push_back({r.second.first, r.second.second});
    return ConvexPolyomino::from_columns(spans);
}

ConvexPolyomino read_polyomino_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return read_polyomino(ss.str());
}

std::string spans_text(const ConvexPolyomino& p)
{
    std::ostringstream os;
    int x = 0;
    for (auto& c : p.columns()) os << x++ << ' ' << c.b << ' ' << c.u << '\n';
    return os.str();
}

json cells_json(const ConvexPolyomino& p)
{
    json cells = json::array();
    for (auto& [x, y] : p.cells()) cells.push_back({x, y});
    return json{{"cells", cells}};
}

json stats_json(const StatVector& s)
{
    json j;
    j["v"] = s.v;
    j["h"] = s.h;
    j["a"] = s.a;
    j["c"] = s.c;
    j["perimeter"] = s.perimeter;
    j["semiperimeter"] = s.semiperimeter;
    j["horizontal_perimeter"] = s.horizontal_perimeter();
    j["vertical_perimeter"] = s.vertical_perimeter();
    j["int"] = s.interior;
    j["d2"] = s.d2;
    j["d3"] = s.d3;
    j["d4"] = s.d4;
    j["o"] = s.o;
    return j;
}

std::string census_csv(const CensusTable& t)
{
    std::ostringstream os;
    os << t.grading << ",count";
    for (auto& s : t.stats) os << ",total_" << s;
    os << '\n';
    for (auto& [g, r] : t.rows) {
        os << g << ',' << r.count.get_str();
        for (auto& s : t.stats) os << ',' << r.totals.at(s).get_str();
        os << '\n';
    }
    return os.str();
}

json census_json(const CensusTable& t)
{
    json rows = json::array();
    for (auto& [g, r] : t.rows) {
        json tot = json::object();
        for (auto& s : t.stats) tot[s] = r.totals.at(s).get_str();
        rows.push_back({{"grade", g}, {"count", r.count.get_str()}, {"totals", tot}});
    }
    return json{{"grading", t.grading}, {"stats", t.stats}, {"rows", rows}};
}

} // namespace cvx
