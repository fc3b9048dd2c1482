#pragma once

#include "geometry.hpp"
#include "numbers.hpp"

#include <atomic>
#include <climits>
#include <functional>
#include <map>
#include <optional>
#include <thread>

namespace cvx {

enum class PolyClass { CP, CPu, CPb, CPbu };

inline PolyClass parse_class(const std::string& s)
{
    if (s == "cp" || s == "CP") return PolyClass::CP;
    if (s == "cpu" || s == "CPu") return PolyClass::CPu;
    if (s == "cpb" || s == "CPb") return PolyClass::CPb;
    if (s == "cpbu" || s == "CPbu") return PolyClass::CPbu;
    throw std::invalid_argument("unknown class " + s);
}

inline const char* class_name(PolyClass c)
{
    switch (c) {
    case PolyClass::CP: return "cp";
    case PolyClass::CPu: return "cpu";
    case PolyClass::CPb: return "cpb";
    case PolyClass::CPbu: return "cpbu";
    }
    return "?";
}

class EnumError : public std::runtime_error {
public:
    enum Code { BudgetTooSmall, UnknownStatistic, UncertifiableRange };
    EnumError(Code c, const std::string& m) : std::runtime_error(m), code(c) {}
    Code code;
};

namespace detail {

struct Frame {
    std::vector<ColumnSpan> cols;
    int lo = 0, hi = 0;
    bool b_rising = false, u_falling = false;
};

// Children of the last column, ascending by (b, u); calls f on each extension that fits the budget.
template <class F>
void for_each_child(const Frame& fr, int budget, PolyClass cls, F&& f)
{
    const ColumnSpan last = fr.cols.back();
    const int v1 = int(fr.cols.size()) + 1;
    const int hmax = budget - v1;
    if (hmax < fr.hi - fr.lo + 1) return;
    const bool need_u = cls == PolyClass::CPu || cls == PolyClass::CPbu;
    const bool need_b = cls == PolyClass::CPb || cls == PolyClass::CPbu;
    int bmin = fr.hi - hmax + 1;
    if (fr.b_rising || need_b) bmin = std::max(bmin, last.b);
    for (int b = bmin; b <= last.u; ++b) {
        int umax = (fr.u_falling || need_u) ? last.u : INT_MAX;
        for (int u = std::max(b, last.b); u <= umax; ++u) {
            int lo = std::min(fr.lo, b), hi = std::max(fr.hi, u);
            if (hi - lo + 1 > hmax) break;
            f(ColumnSpan{b, u}, lo, hi, fr.b_rising || b > last.b, fr.u_falling || u < last.u);
        }
    }
}

template <class Visit>
void dfs(Frame& fr, int budget, PolyClass cls, Visit& visit)
{
    visit(fr.cols);
    for_each_child(fr, budget, cls, [&](ColumnSpan c, int lo, int hi, bool br, bool uf) {
        Frame save{{}, fr.lo, fr.hi, fr.b_rising, fr.u_falling};
        fr.cols.push_back(c);
        fr.lo = lo;
        fr.hi = hi;
        fr.b_rising = br;
        fr.u_falling = uf;
        dfs(fr, budget, cls, visit);
        fr.cols.pop_back();
        fr.lo = save.lo;
        fr.hi = save.hi;
        fr.b_rising = save.b_rising;
        fr.u_falling = save.u_falling;
    });
}

} // namespace detail

// Streams every polyomino of the class with h+v <= max_sp, in lexicographic order of span sequences.
inline void enumerate(int max_sp, PolyClass cls, const std::function<void(const std::vector<ColumnSpan>&)>& visit)
{
    if (max_sp < 2) throw EnumError(EnumError::BudgetTooSmall, "max semiperimeter must be at least 2");
    for (int u0 = 0; u0 + 2 <= max_sp; ++u0) {
        detail::Frame fr;
        fr.cols.push_back({0, u0});
        fr.lo = 0;
        fr.hi = u0;
        detail::dfs(fr, max_sp, cls, visit);
    }
}

// Work units: first-column height, then either "stop here" or the first transition.
struct Partition {
    int u0;
    std::optional<ColumnSpan> second;
};

inline std::vector<Partition> partitions(int max_sp, PolyClass cls)
{
    std::vector<Partition> out;
    for (int u0 = 0; u0 + 2 <= max_sp; ++u0) {
        out.push_back({u0, std::nullopt});
        detail::Frame fr;
        fr.cols.push_back({0, u0});
        fr.hi = u0;
        detail::for_each_child(fr, max_sp, cls, [&](ColumnSpan c, int, int, bool, bool) { out.push_back({u0, c}); });
    }
    return out;
}

inline void enumerate_partition(int max_sp, PolyClass cls, const Partition& part,
                                const std::function<void(const std::vector<ColumnSpan>&)>& visit)
{
    detail::Frame fr;
    fr.cols.push_back({0, part.u0});
    fr.hi = part.u0;
    if (!part.second) {
        visit(fr.cols);
        return;
    }
    ColumnSpan c = *part.second;
    fr.cols.push_back(c);
    fr.b_rising = c.b > 0;
    fr.u_falling = c.u < part.u0;
    fr.lo = std::min(0, c.b);
    fr.hi = std::max(part.u0, c.u);
    auto v = visit;
    detail::dfs(fr, max_sp, cls, v);
}

struct CensusRow {
    BigInt count;
    std::map<std::string, BigInt> totals;
};

struct CensusTable {
    std::string grading = "semiperimeter";
    std::vector<std::string> stats;
    std::map<int, CensusRow> rows;

    void merge(const CensusTable& o)
    {
        for (auto& [g, r] : o.rows) {
            auto& m = rows[g];
            m.count += r.count;
            for (auto& [k, v] : r.totals) m.totals[k] += v;
        }
    }
};

inline const std::vector<std::string>& census_stat_names()
{
    static const std::vector<std::string> n = {"a", "c", "int", "d2", "d3", "d4", "o", "perimeter", "v", "h"};
    return n;
}

namespace detail {

struct Accum {
    std::vector<std::string> stats;
    std::function<int(const StatVector&)> grade;
    std::function<bool(const StatVector&)> keep;
    std::map<int, std::pair<unsigned long long, std::vector<unsigned long long>>> rows;

    void add(const std::vector<ColumnSpan>& cols)
    {
        StatVector s = compute_stats(ConvexPolyomino::unchecked(cols));
        if (keep && !keep(s)) return;
        auto& r = rows[grade(s)];
        if (r.second.empty()) r.second.assign(stats.size(), 0);
        ++r.first;
        for (size_t i = 0; i < stats.size(); ++i) r.second[i] += (unsigned long long)s.get(stats[i]);
    }

    CensusTable table(const std::string& grading) const
    {
        CensusTable t;
        t.grading = grading;
        t.stats = stats;
        for (auto& [g, r] : rows) {
            auto& row = t.rows[g];
            row.count = BigInt(std::to_string(r.first));
            for (size_t i = 0; i < stats.size(); ++i) row.totals[stats[i]] = BigInt(std::to_string(r.second[i]));
        }
        return t;
    }
};

inline CensusTable run_census(int max_sp, PolyClass cls, const std::vector<std::string>& stats, const std::string& grading,
                              std::function<int(const StatVector&)> grade, std::function<bool(const StatVector&)> keep,
                              int threads)
{
    for (auto& s : stats)
        if (std::find(census_stat_names().begin(), census_stat_names().end(), s) == census_stat_names().end())
            throw EnumError(EnumError::UnknownStatistic, "unknown statistic " + s);
    if (max_sp < 2) throw EnumError(EnumError::BudgetTooSmall, "max semiperimeter must be at least 2");
    if (threads <= 1) {
        Accum acc{stats, grade, keep, {}};
        enumerate(max_sp, cls, [&](const std::vector<ColumnSpan>& c) { acc.add(c); });
        return acc.table(grading);
    }
    auto parts = partitions(max_sp, cls);
    std::atomic<size_t> next{0};
    std::vector<CensusTable> tables{size_t(threads)};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            Accum acc{stats, grade, keep, {}};
            for (size_t i; (i = next++) < parts.size();)
                enumerate_partition(max_sp, cls, parts[i], [&](const std::vector<ColumnSpan>& c) { acc.add(c); });
            tables[size_t(t)] = acc.table(grading);
        });
    for (auto& th : pool) th.join();
    CensusTable out;
    out.grading = grading;
    out.stats = stats;
    for (auto& t : tables) out.merge(t);
    return out;
}

} // namespace detail

inline CensusTable census(int max_sp, PolyClass cls, const std::vector<std::string>& stats, int threads = 1)
{
    return detail::run_census(max_sp, cls, stats, "semiperimeter", [](const StatVector& s) { return s.h + s.v; }, nullptr,
                              threads);
}

// o >= h+v+2, so semiperimeter <= max_outer-2 covers every o <= max_outer.
inline CensusTable census_by_outer(int max_outer, const std::vector<std::string>& stats = {}, int threads = 1)
{
    if (max_outer < 4) throw EnumError(EnumError::BudgetTooSmall, "max outer-site perimeter must be at least 4");
    return detail::run_census(max_outer - 2, PolyClass::CP, stats, "outer", [](const StatVector& s) { return s.o; },
                              [max_outer](const StatVector& s) { return s.o <= max_outer; }, threads);
}

struct Histogram {
    std::string key;
    int certified_max = 0;
    std::map<int, BigInt> counts;
};

// Largest grade of the key whose class is fully inside h+v <= max_sp; nullopt if grade classes are infinite.
inline std::optional<int> certified_grade_max(const std::string& key, int max_sp)
{
    if (key == "d2+d3") return max_sp + 2; // h+v <= n-2
    if (key == "d3+d4") return max_sp - 2; // h+v <= n+2
    if (key == "o") return max_sp + 2;     // h+v <= o-2
    if (key == "sp") return max_sp;
    return std::nullopt;                   // int = 0 and d2 = 4 hold for every rectangle
}

inline Histogram histogram(int max_sp, const std::string& key, std::optional<int> requested_max = std::nullopt, int threads = 1)
{
    auto cert = certified_grade_max(key, max_sp);
    if (!cert)
        throw EnumError(EnumError::UncertifiableRange,
                        "grade classes of '" + key + "' are infinite; no finite budget certifies them (use a bounded key)");
    if (requested_max && *requested_max > *cert)
        throw EnumError(EnumError::UncertifiableRange, "grade " + std::to_string(*requested_max) + " of '" + key +
                                                         "' needs a larger budget; certified up to " + std::to_string(*cert));
    int top = requested_max ? *requested_max : *cert;
    auto t = detail::run_census(max_sp, PolyClass::CP, {}, key, [key](const StatVector& s) { return s.get(key); },
                                [key, top](const StatVector& s) { return s.get(key) <= top; }, threads);
    Histogram h;
    h.key = key;
    h.certified_max = top;
    for (auto& [g, r] : t.rows) h.counts[g] = r.count;
    return h;
}

} // namespace cvx
