#pragma once

#include "enumerator.hpp"
#include "series.hpp"

#include <array>
#include <unordered_map>

namespace cvx {

enum class Family { PerimeterArea, Interior, Degrees, Outer };

inline Family parse_family(const std::string& s)
{
    if (s == "perimeter_area" || s == "perimeter") return Family::PerimeterArea;
    if (s == "interior") return Family::Interior;
    if (s == "degrees") return Family::Degrees;
    if (s == "outer") return Family::Outer;
    throw std::invalid_argument("unknown family " + s);
}

enum class DpClass { CP = 0, CPu = 1, CPbu = 2 };

// How the second column (rows b2..u2) sits against a new first column (rows 0..k-1).
enum class Placement {
    Inside,           // strictly inside on both sides
    FlushBottom,      // same bottom, lower top
    FlushTop,         // same top, higher bottom
    Equal,            // same span
    DropBelow,        // extends below, lower top
    RiseAbove,        // extends above, higher bottom
    DropBelowFlushTop,
    RiseAboveFlushBottom,
    Contains,         // extends past both ends
};

inline const char* placement_name(Placement p)
{
    switch (p) {
    case Placement::Inside: return "inside";
    case Placement::FlushBottom: return "flush-bottom";
    case Placement::FlushTop: return "flush-top";
    case Placement::Equal: return "equal";
    case Placement::DropBelow: return "drop-below";
    case Placement::RiseAbove: return "rise-above";
    case Placement::DropBelowFlushTop: return "drop-below-flush-top";
    case Placement::RiseAboveFlushBottom: return "rise-above-flush-bottom";
    case Placement::Contains: return "contains";
    }
    return "?";
}

inline Placement classify(int k, int b2, int u2)
{
    const int top = k - 1;
    int lo = b2 > 0 ? 1 : (b2 == 0 ? 0 : -1);
    int hi = u2 < top ? -1 : (u2 == top ? 0 : 1);
    if (lo == 1 && hi == -1) return Placement::Inside;
    if (lo == 0 && hi == -1) return Placement::FlushBottom;
    if (lo == 1 && hi == 0) return Placement::FlushTop;
    if (lo == 0 && hi == 0) return Placement::Equal;
    if (lo == -1 && hi == -1) return Placement::DropBelow;
    if (lo == 1 && hi == 1) return Placement::RiseAbove;
    if (lo == -1 && hi == 0) return Placement::DropBelowFlushTop;
    if (lo == 0 && hi == 1) return Placement::RiseAboveFlushBottom;
    return Placement::Contains;
}

// One row of a transition table: target class, placement, the class the remainder must belong to.
// Mirrored rows read a CPb remainder from the CPu state, by vertical reflection.
struct TransitionRow {
    DpClass target;
    Placement placement;
    DpClass source;
    bool mirrored;
};

inline const std::vector<TransitionRow>& transition_table()
{
    using P = Placement;
    static const std::vector<TransitionRow> rows = {
        {DpClass::CPbu, P::Inside, DpClass::CPbu, false},
        {DpClass::CPbu, P::FlushBottom, DpClass::CPbu, false},
        {DpClass::CPbu, P::FlushTop, DpClass::CPbu, false},
        {DpClass::CPbu, P::Equal, DpClass::CPbu, false},

        {DpClass::CPu, P::Inside, DpClass::CPbu, false},
        {DpClass::CPu, P::FlushTop, DpClass::CPbu, false},
        {DpClass::CPu, P::FlushBottom, DpClass::CPu, false},
        {DpClass::CPu, P::Equal, DpClass::CPu, false},
        {DpClass::CPu, P::DropBelow, DpClass::CPu, false},
        {DpClass::CPu, P::DropBelowFlushTop, DpClass::CPu, false},

        {DpClass::CP, P::Inside, DpClass::CPbu, false},
        {DpClass::CP, P::FlushBottom, DpClass::CPu, false},
        {DpClass::CP, P::FlushTop, DpClass::CPu, true},
        {DpClass::CP, P::Equal, DpClass::CP, false},
        {DpClass::CP, P::DropBelow, DpClass::CPu, false},
        {DpClass::CP, P::RiseAbove, DpClass::CPu, true},
        {DpClass::CP, P::DropBelowFlushTop, DpClass::CP, false},
        {DpClass::CP, P::RiseAboveFlushBottom, DpClass::CP, false},
        {DpClass::CP, P::Contains, DpClass::CP, false},
    };
    return rows;
}

struct DpOptions {
    // Outer family: charge q^2 instead of q^0 when the second column contains the first.
    bool paper_weights = false;
    // Degrees family: separate marks q (d2), t (d3), p (d4) instead of q alone.
    bool separate_degree_marks = false;
    // Perimeter family: mark the area with t.
    bool mark_area = true;
};

// Statistic increments of a join; index 0 is the row increment, the rest follow the family's marks.
inline std::vector<int> join_increment(Family fam, const DpOptions& opt, int k, int l, int b2)
{
    const int top = k - 1, u2 = b2 + l - 1;
    const int dh = std::max(0, b2) + std::max(0, top - u2);
    switch (fam) {
    case Family::PerimeterArea: return {dh, k};
    case Family::Interior: {
        int overlap = std::min(top, u2) - std::max(0, b2) + 1;
        return {dh, overlap - 1};
    }
    case Family::Degrees: {
        int d2 = 2 - int(b2 == 0) - int(u2 == top);
        if (opt.separate_degree_marks) return {dh, d2, 2 * (1 + dh) - 2 * d2, d2};
        return {dh, d2};
    }
    case Family::Outer: {
        auto f = [](int d) { return std::max(std::abs(d) - 1, 0); };
        int inc = k - l + 2 + f(top - u2) + f(b2);
        if (opt.paper_weights && classify(k, b2, u2) == Placement::Contains) inc = 2;
        return {dh, inc};
    }
    }
    return {};
}

inline std::vector<int> single_column(Family fam, const DpOptions& opt, int k)
{
    switch (fam) {
    case Family::PerimeterArea: return {k, k};
    case Family::Interior: return {k, 0};
    case Family::Degrees:
        if (opt.separate_degree_marks) return {k, 4, 2 * k - 2, 0};
        return {k, 4};
    case Family::Outer: return {k, 2 * k + 2};
    }
    return {};
}

inline VarSet family_vars(Family fam, const DpOptions& opt)
{
    switch (fam) {
    case Family::PerimeterArea: return opt.mark_area ? VarSet("xyzt") : VarSet("xyz");
    case Family::Interior: return VarSet("xyzq");
    case Family::Degrees: return opt.separate_degree_marks ? VarSet("xyzqtp") : VarSet("xyzq");
    case Family::Outer: return VarSet("xyzq");
    }
    return {};
}


inline bool mark_monotone(Family fam, const DpOptions& opt, size_t mark)
{
    switch (fam) {
    case Family::PerimeterArea: return true;
    case Family::Interior: return true;
    case Family::Degrees: return !(opt.separate_degree_marks && mark == 1); // d3 can drop by 2 on a join
    case Family::Outer: return false;                                       // o can drop when a taller column follows
    }
    return false;
}

class DpError : public std::runtime_error {
public:
    enum Code { InconsistentBounds, Overflow };
    DpError(Code c, const std::string& m) : std::runtime_error(m), code(c) {}
    Code code;
};

struct DpBounds {
    int max_k = 0;
    int max_columns = 0;
    Box box; // over family_vars
};

namespace detail {

using Count = unsigned __int128;

inline BigInt to_bigint(Count c)
{
    BigInt hi(std::to_string((unsigned long long)(c >> 64)));
    BigInt lo(std::to_string((unsigned long long)c));
    return (hi << 64) + lo;
}

// State key: h in the low 8 bits, then one 16-bit field per mark.
inline uint64_t pack_key(const int* v, size_t n)
{
    uint64_t k = 0;
    for (size_t i = 0; i < n; ++i) k |= uint64_t(v[i]) << (i == 0 ? 0 : 8 + 16 * (i - 1));
    return k;
}

inline void unpack_key(uint64_t k, int* v, size_t n)
{
    v[0] = int(k & 0xff);
    for (size_t i = 1; i < n; ++i) v[i] = int((k >> (8 + 16 * (i - 1))) & 0xffff);
}

using Layer = std::vector<std::pair<uint64_t, Count>>; // sorted by key

} // namespace detail

// Column-transfer DP over the number of columns m. Every state is a real polyomino of the class
// with m columns, first column height k and its statistics, so the result is complete on the box
// when max_columns = x-box and max_k = y-box.
inline Series dp_series(Family fam, PolyClass cls, const DpBounds& bd, const DpOptions& opt = {})
{
    const VarSet vars = family_vars(fam, opt);
    if (bd.box.size() != vars.size())
        throw DpError(DpError::InconsistentBounds, "box needs one bound per variable of (" + vars.str() + ")");
    const int ybox = bd.box[1];
    if (bd.max_k < 1 || bd.max_k > ybox)
        throw DpError(DpError::InconsistentBounds, "max_k must lie in 1..y-box (" + std::to_string(ybox) + ")");
    if (bd.max_columns < 1 || bd.max_columns > bd.box[0])
        throw DpError(DpError::InconsistentBounds, "max_columns must lie in 1..x-box");
    if (ybox > 255) throw DpError(DpError::InconsistentBounds, "y-box above 255");

    const size_t nm = vars.size() - 3; // marks after x, y, z
    const size_t nk = 1 + nm;          // key fields: h, marks
    const int K = bd.max_k;
    std::vector<int> cap(nk);
    cap[0] = ybox;
    for (size_t i = 0; i < nm; ++i) {
        cap[i + 1] = mark_monotone(fam, opt, i) ? bd.box[3 + i] : 0xffff;
    }

    // cur[c][k]: states of class c with first column height k.
    std::array<std::vector<detail::Layer>, 3> cur;
    for (auto& v : cur) v.assign(size_t(K) + 1, {});
    for (int k = 1; k <= K; ++k) {
        auto inc = single_column(fam, opt, k);
        bool ok = true;
        for (size_t i = 0; i < nk; ++i) ok = ok && inc[i] <= cap[i];
        if (!ok) continue;
        uint64_t key = detail::pack_key(inc.data(), nk);
        for (auto& v : cur) v[size_t(k)].push_back({key, 1});
    }

    Series out(vars, bd.box);
    std::vector<int> e(vars.size()), f(nk);
    auto emit = [&](int m) {
        const int ci = cls == PolyClass::CP ? 0 : (cls == PolyClass::CPbu ? 2 : 1);
        for (int k = 1; k <= K; ++k)
            for (auto& [key, cnt] : cur[size_t(ci)][size_t(k)]) {
                detail::unpack_key(key, f.data(), nk);
                e[0] = m;
                e[1] = f[0];
                e[2] = k - 1;
                for (size_t i = 0; i < nm; ++i) e[3 + i] = f[1 + i];
                if (out.in_box(e)) out.add_to(e, Rational(detail::to_bigint(cnt)));
            }
    };
    emit(1);

    // rows of the table grouped by (target, placement)
    std::map<std::pair<int, int>, const TransitionRow*> rowmap;
    for (auto& r : transition_table()) rowmap[{int(r.target), int(r.placement)}] = &r;

    std::vector<int> g(nk);
    for (int m = 2; m <= bd.max_columns; ++m) {
        std::array<std::vector<std::unordered_map<uint64_t, detail::Count>>, 3> acc;
        for (auto& v : acc) v.assign(size_t(K) + 1, {});
        for (int k = 1; k <= K; ++k)
            for (int l = 1; l <= K; ++l)
                for (int b2 = 1 - l; b2 <= k - 1; ++b2) {
                    Placement pl = classify(k, b2, b2 + l - 1);
                    auto inc = join_increment(fam, opt, k, l, b2);
                    for (int t = 0; t < 3; ++t) {
                        auto it = rowmap.find({t, int(pl)});
                        if (it == rowmap.end()) continue;
                        const auto& src = cur[size_t(it->second->source)][size_t(l)];
                        auto& dst = acc[size_t(t)][size_t(k)];
                        for (auto& [key, cnt] : src) {
                            detail::unpack_key(key, f.data(), nk);
                            bool ok = true;
                            for (size_t i = 0; i < nk && ok; ++i) {
                                g[i] = f[i] + inc[i];
                                ok = g[i] >= 0 && g[i] <= cap[i];
                            }
                            if (!ok) continue;
                            auto& slot = dst[detail::pack_key(g.data(), nk)];
                            if (__builtin_add_overflow(slot, cnt, &slot))
                                throw DpError(DpError::Overflow, "count overflow at " + std::to_string(m) + " columns");
                        }
                    }
                }
        for (int c = 0; c < 3; ++c)
            for (int k = 1; k <= K; ++k) {
                auto& layer = cur[size_t(c)][size_t(k)];
                layer.assign(acc[size_t(c)][size_t(k)].begin(), acc[size_t(c)][size_t(k)].end());
                std::sort(layer.begin(), layer.end(), [](auto& a, auto& b) { return a.first < b.first; });
            }
        emit(m);
    }
    return out;
}

// Complete-on-box convenience: max_columns = x-box, max_k = y-box.
inline Series dp_series(Family fam, PolyClass cls, const Box& box, const DpOptions& opt = {})
{
    if (box.size() < 2) throw DpError(DpError::InconsistentBounds, "box needs x and y bounds");
    return dp_series(fam, cls, DpBounds{box[1], box[0], box}, opt);
}

// Census of the class as a series in the family's variables, every polyomino with h+v <= n.
inline Series bruteforce_series(Family fam, PolyClass cls, int n, const DpOptions& opt = {})
{
    VarSet vars = family_vars(fam, opt);
    Box box(vars.size(), 4 * n * n + 8);
    box[0] = n - 1;
    box[1] = n - 1;
    box[2] = n - 2;
    Series s(vars, box);
    enumerate(n, cls, [&](const std::vector<ColumnSpan>& c) {
        StatVector st = compute_stats(ConvexPolyomino::unchecked(c));
        Exps e{st.v, st.h, st.c};
        switch (fam) {
        case Family::PerimeterArea:
            if (opt.mark_area) e.push_back(st.a);
            break;
        case Family::Interior: e.push_back(st.interior); break;
        case Family::Degrees:
            e.push_back(st.d2);
            if (opt.separate_degree_marks) {
                e.push_back(st.d3);
                e.push_back(st.d4);
            }
            break;
        case Family::Outer: e.push_back(st.o); break;
        }
        s.add_to(e, 1);
    });
    return s;
}

struct DpMismatch {
    Exps exps;
    Rational brute, dp;
};

struct DpReport {
    Family family;
    PolyClass cls;
    int max_sp;
    size_t terms = 0;
    std::vector<DpMismatch> mismatches;
};

// Coefficientwise comparison on every monomial with h+v <= max_sp; the mismatch list is the contract.
inline DpReport dp_vs_bruteforce(Family fam, PolyClass cls, int max_sp, const DpOptions& opt = {})
{
    Series b = bruteforce_series(fam, cls, max_sp, opt);
    Series d = dp_series(fam, cls, b.box(), opt);
    DpReport r{fam, cls, max_sp, b.nterms(), {}};
    std::map<Exps, std::pair<Rational, Rational>> all;
    for (auto& [e, c] : b.terms()) all[e].first = c;
    for (auto& [e, c] : d.terms())
        if (e[0] + e[1] <= max_sp) all[e].second = c;
    for (auto& [e, p] : all)
        if (p.first != p.second) r.mismatches.push_back({e, p.first, p.second});
    return r;
}

inline const char* family_name(Family f)
{
    switch (f) {
    case Family::PerimeterArea: return "perimeter_area";
    case Family::Interior: return "interior";
    case Family::Degrees: return "degrees";
    case Family::Outer: return "outer";
    }
    return "?";
}

} // namespace cvx
