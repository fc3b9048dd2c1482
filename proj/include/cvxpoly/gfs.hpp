#pragma once

#include "expr.hpp"
#include "recurrences.hpp"

#include <functional>

namespace cvx {

class GfError : public std::runtime_error {
public:
    enum Code { UnknownName, BadBox, Build };
    GfError(Code c, const std::string& m) : std::runtime_error(m), code(c) {}
    Code code;
};

struct GfEntry {
    std::string name;
    VarSet vars;
    std::string anchor;
    // Certified degree bounds for the variables that may later be set to 1.
    std::map<char, DegreeBound> bounds;
    std::function<Series(const Box&)> builder;
    // Non-empty for a verbatim display that disagrees with the geometry; names the verified entry.
    std::string printed_of;
};

namespace gfx {

inline Ex var(char c) { return Ex::var(c); }

// ---- perimeter family ----

inline Ex cbu(const Ex& x, const Ex& y, const Ex& z) { return x * y * (1 - y * z) / (pow(1 - y * z, 2) - x); }

inline Ex z0_perimeter(const Ex& x, const Ex& y)
{
    return ((1 + y - x - sqrt(pow(1 + y - x, 2) - 4 * y)) / (2 * y)).named("z0");
}

inline Ex cu1(const Ex& x, const Ex& y, const Ex& z0)
{
    return (y * (z0 - 1) + x * y * y * z0 * (z0 - 1) / (pow(1 - y * z0, 2) - x)).named("Cu(1)");
}

inline Ex cu(const Ex& x, const Ex& y, const Ex& z, const Ex& z0)
{
    Ex t1 = x * y * (z0 - z);
    Ex t2 = x * x * y * y * z * (1 - z) / (pow(1 - y * z, 2) - x);
    Ex t3 = x * x * y * y * z0 * (1 - z0) / (pow(1 - y * z0, 2) - x);
    return (t1 + t2 - t3) / ((1 - z) * (1 - y * z) + x * z);
}

// C(x,y,1;1) in (s,y) with x bound to s^2.
inline Ex cp_xy()
{
    Ex s = var('s'), y = var('y'), x = var('x');
    Ex z0 = z0_perimeter(x, y);
    Ex c1 = cu1(x, y, z0);
    Ex zp = (1 / (1 + s)).named("z+"), zm = (1 / (1 - s)).named("z-");
    Ex k = x - pow(1 - y, 2);
    return 2 * x * y / k * c1 - s * y / ((1 + s) * (1 + s - y)) * cu(x, y, zp, z0) +
           s * y / ((1 - s) * (1 - s - y)) * cu(x, y, zm, z0) +
           x * y * y / (2 * (1 + s) * pow(1 + s - y, 2)) * cbu(x, y, zp) +
           x * y * y / (2 * (1 - s) * pow(1 - s - y, 2)) * cbu(x, y, zm) - x * (1 - y) * y / k;
}

// ---- interior family ----

inline Ex disc(const Ex& x, const Ex& y) { return pow(1 + x - y, 2) - 4 * x; }

inline Ex f_u_z1(const Ex& x, const Ex& y, const Ex& z, bool printed = false)
{
    Ex K = y * z * z - (1 - x + y) * z + 1;
    Ex first = printed ? x * x * y / sqrt(disc(x, y)) : x * x * y / (K * sqrt(disc(x, y)));
    return first + x * y * (1 - z) * (1 - y * z) * (1 - x - y * z) / (K * (pow(1 - y * z, 2) - x));
}

inline Ex f_bu_z1(const Ex& x, const Ex& y, const Ex& z) { return cbu(x, y, z); }

inline Ex f_bu_dq(const Ex& x, const Ex& y, const Ex& z, bool printed = false)
{
    Ex a = pow(1 - y * z, 2);
    Ex mid = printed ? a * y * y + x : a + x;
    return x * x * y * y * z * mid / pow(a - x, 3);
}

// ---- degree family ----

inline Ex e_bu(const Ex& x, const Ex& y, const Ex& q, const Ex& z)
{
    return pow(q, 4) * x * y * (1 - y * z) / (pow(1 - y * z, 2) - x * pow(1 + (q - 1) * y * z, 2));
}

inline Ex e_radicand(const Ex& x, const Ex& y, const Ex& q)
{
    return pow(1 + y - x - pow(q - 1, 2) * x * y, 2) - 4 * y * pow(1 + (q - 1) * x, 2);
}

inline Ex e_z0(const Ex& x, const Ex& y, const Ex& q, bool printed = false)
{
    Ex num = 1 + y - x - pow(q - 1, 2) * x * y - sqrt(e_radicand(x, y, q));
    return (printed ? num / (2 * (1 + (q - 1) * x)) : num / (2 * y * (1 + (q - 1) * x))).named("z0");
}

inline Ex e_u1(const Ex& x, const Ex& y, const Ex& q, const Ex& z0)
{
    return (-pow(q, 3) * y * (1 - x - y * z0 - (q - 1) * x * y * z0) * (1 - y * z0) * (1 - z0) /
            ((pow(1 - y * z0, 2) - x * pow(1 + (q - 1) * y * z0, 2)) * (1 + (q - 1) * y * z0)))
        .named("Eu(1)");
}

inline Ex e_u(const Ex& x, const Ex& y, const Ex& q, const Ex& z, const Ex& z0, bool printed = false)
{
    Ex g = x * (z + q - 1) * (1 + (q - 1) * y * z) / ((1 - y * z) * (1 - z));
    Ex kernel = printed ? 1 - g : 1 + g;
    Ex p1 = pow(q, 4) * x * y * (1 - x - y * z - (q - 1) * x * y * z) /
            (kernel * (pow(1 - y * z, 2) - x * pow(1 + (q - 1) * y * z, 2)));
    Ex p2 = pow(q, 4) * x * y * (1 + (q - 1) * y * z) * (1 - x - y * z0 - (q - 1) * x * y * z0) * (1 - y * z0) *
            (1 - z0) /
            (kernel * (1 - y * z) * (1 - z) * (pow(1 - y * z0, 2) - x * pow(1 + (q - 1) * y * z0, 2)) *
             (1 + (q - 1) * y * z0));
    return p1 - p2;
}

inline Ex e_full(const Ex& x, const Ex& y, const Ex& q)
{
    Ex R = e_radicand(x, y, q);
    Ex R2 = pow(R, 2);
    Ex q4 = pow(q, 4), w = q - 1;
    return -q4 * x * x * y * y * pow(2 + (x + y + 1) * w - x * y * pow(w, 3), 2) / (sqrt(R) * R) +
           q4 * x * y *
               (-pow(x, 3) * y + 2 * x * x * y * y - x * pow(y, 3) - pow(x, 3) - x * x * y - x * y * y - pow(y, 3) +
                3 * x * x + 5 * x * y + 3 * y * y - 3 * x - 3 * y + 1) /
               R2 -
           8 * q4 * x * x * y * y * w * (x * x - x * y + y * y - 2 * x - 2 * y + 1) / R2 -
           q4 * x * x * y * y * pow(w, 2) *
               (pow(x, 3) + x * x * y + x * y * y + pow(y, 3) + x * x - 44 * x * y + y * y - 5 * x - 5 * y + 3) / R2 +
           q4 * pow(x, 3) * pow(y, 3) * pow(w, 3) *
               (8 * (2 * y + 2 * x + 3) + (3 * x * x + 5 * x * y + 3 * y * y + 5 * x + 5 * y + 4) * w) / R2 -
           q4 * pow(x, 4) * pow(y, 4) * pow(w, 5) * (8 + 3 * (x + y + 1) * w - x * y * pow(w, 3)) / R2;
}

// ---- outer-site family ----

struct OuterParts {
    Ex x, y, q;
    Ex R, z0, ju1;

    Ex alpha(const Ex& z) const { return 1 - q * q * y * z; }
    Ex beta(const Ex& z) const { return 1 + q * (1 - q) * y * z; }

    Ex jbu(const Ex& z) const
    {
        Ex a = alpha(z);
        return pow(q, 4) * x * y * a / (a * a - q * q * pow(1 + q * y * z - q * q * y * z, 2) * x);
    }

    Ex ju(const Ex& z, bool printed = false) const
    {
        Ex a = alpha(z), b = beta(z);
        Ex den = 2 * ((1 - z) * a + q * (1 - q + q * z) * b * x);
        Ex rad = printed ? pow(1 + q * q * (y - x) - q * q * pow(1 - q, 2) * x * y, 2) - 4 * q * q * y * b * b : R;
        Ex t1 = pow(q, 4) * x * y *
                (2 * (1 - z) * a * a + q * a * b * (1 - 2 * q * (1 - z) - q * b) * x - pow(q, 3) * (1 - q) * pow(b, 3) * x * x) /
                (a * a - q * q * b * b * x);
        Ex t2 = pow(q, 5) * x * x * y *
                (1 + q + q * q * (1 - q) * y - q * q * (q - 1) * (1 - pow(1 - q, 2) * y) * x) * b / sqrt(rad);
        return (t1 + t2) / den;
    }
};

inline OuterParts outer_parts(const Ex& x, const Ex& y, const Ex& q)
{
    OuterParts p{x, y, q, {}, {}, {}};
    Ex lin = 1 + q * q * (y - x) - q * q * pow(1 - q, 2) * x * y;
    p.R = (pow(lin, 2) - 4 * q * q * y * pow(1 + q * (1 - q) * x, 2)).named("Rj");
    p.z0 = ((lin - sqrt(p.R)) / (2 * q * q * y * (1 + q * (1 - q) * x))).named("z0");
    Ex z0 = p.z0;
    p.ju1 = (pow(q, 3) * y * (z0 - 1) / (1 + q * (1 - q) * y * z0) + q * q * y * z0 * (z0 - 1) / (1 - q * q * y * z0) * p.jbu(z0))
                .named("Ju(1)");
    return p;
}

// J(x,y,q;1) in (s,y,q), x bound to s^2.
inline Ex j_full(const Ex& s, const Ex& y, const Ex& q)
{
    Ex x = s * s;
    OuterParts P = outer_parts(x, y, q);
    Ex zp = (1 - s / (1 + q * s)).named("z+"), zm = (1 + s / (1 - q * s)).named("z-");
    auto W = [&](const Ex& z) {
        Ex a = P.alpha(z);
        Ex ju = P.ju(z);
        return pow(1 - z, 2) * (pow(q, 4) * y / a + pow(q, 4) * y * y * z * z / (a * a) * P.jbu(z) + 2 * pow(q, 3) * y * z / a * ju) -
               2 * q * q * y * z * (1 - z) / a * (ju - P.ju1);
    };
    return (W(zp) * (1 - zm) - W(zm) * (1 - zp)) / (zp - zm);
}

inline Ex j_full_printed(const Ex& s, const Ex& y, const Ex& q)
{
    Ex x = s * s;
    OuterParts P = outer_parts(x, y, q);
    Ex root = s * sqrt(1 + (1 - q * q) * s * s);
    Ex zp = ((1 + q * (1 - q) * x + q * root) / (1 - q * q * x)).named("z+");
    Ex zm = ((1 + q * (1 - q) * x - q * root) / (1 - q * q * x)).named("z-");
    Ex N = zp * (1 - q + q * zp) * (1 - q * q * y * zm) * P.ju(zp) - zm * (1 - q + q * zm) * (1 - q * q * y * zp) * P.ju(zm) -
           q * q * y * zp * zp * (1 - q * q * y * zm) * (1 - zp) / (2 * (1 - q * q * y * zp)) * P.jbu(zp) +
           q * q * y * zm * zm * (1 - q * q * y * zp) * (1 - zm) / (2 * (1 - q * q * y * zm)) * P.jbu(zm);
    return q * q * y * (1 - q * q * y) / 2 + N / (zp - zm);
}

// ---- helpers ----

inline Box with_var(const VarSet& v, const Box& b, char c, int n)
{
    Box r = b;
    r[size_t(v.require(c))] = n;
    return r;
}

inline int box_of(const VarSet& v, const Box& b, char c) { return b[size_t(v.require(c))]; }

// Evaluates an expression in (s, rest...) with x bound to s^2 and returns the even part as a series in x.
inline Series eval_sproxy(const Ex& e, const std::string& rest, const Box& xbox_rest)
{
    VarSet sv("s" + rest);
    Box sb = xbox_rest;
    sb[0] = 2 * xbox_rest[0] + 1;
    Series r = eval_to_box(e, sv, sb, {{'x', Ex::var('s') * Ex::var('s')}});
    return from_sproxy(r).truncated(xbox_rest);
}

// Fixed-order geometric sum form of the bu-area GF, j-th summand of x-valuation j+1.
inline Ex cpbu_area(int xmax)
{
    Ex x = var('x'), y = var('y'), z = var('z'), t = var('t');
    Ex sum = 0;
    for (int j = 0; j + 1 <= xmax; ++j) {
        Ex den = 1 - y * pow(t, j + 1) * z;
        for (int i = 1; i <= j; ++i) den = den * pow(1 - y * pow(t, i) * z, 2);
        sum = sum + y * pow(x * t, j + 1) / den;
    }
    return sum;
}

inline Series d_deg23_closed(const Box& b)
{
    Ex q = var('q');
    Ex rad = (q * q + q + 1) * (q * q - 3 * q + 1);
    Ex num = (pow(q, 12) - 6 * pow(q, 11) + 11 * pow(q, 10) - 6 * pow(q, 9) + 6 * pow(q, 8) - 12 * pow(q, 7) - 4 * pow(q, 6) +
              2 * pow(q, 5) + 9 * pow(q, 4) + 6 * pow(q, 3) - 4 * q * q - 2 * q + 1) *
             pow(q, 4);
    Ex den = pow(q * q + q + 1, 2) * pow(q * q - 3 * q + 1, 2) * pow(q * q - q - 1, 2);
    Ex e = num / den + pow(pow(q, 3) - 2 * q * q - 1, 2) * pow(q, 6) / ((q * q - q - 1) * rad * sqrt(rad));
    return eval_to_box(e, "q", b);
}

inline Series j_outer_uni_printed(const Box& b)
{
    Ex q = var('q');
    auto P = [&](std::initializer_list<int> c) {
        Ex r = 0;
        int k = 0;
        for (int v : c) {
            if (v) r = r + v * pow(q, k);
            ++k;
        }
        return r;
    };
    Ex A = pow(q, 4) * P({2, -1, -18, -1, 83, 51, -229, -250, 362, 597, -297, -868, 124, 828, -48, -544, 55, 312, -200, 48, -4});
    Ex B = P({1, 1, -1}) * P({1, -2, -2}) * P({2, 0, 0, -2, 1}) * P({1, 2, 0, -4, -5, 0, 3, 2, -2}) *
           P({1, -2, -4, 4, 11, -4, -13, 10, -2});
    Ex rad = (q * q + q + 1) * (q * q - 3 * q + 1);
    Ex e = A / B - pow(q, 5) * P({1, 0, 2, -1}) * P({1, 3, -2}) / (P({1, 1, -1}) * P({2, 0, 0, -2, 1}) * P({1, -2, -2}) * sqrt(rad));
    return eval_to_box(e, "q", b);
}

// E(x,x,q;1) composite remapped to D(1,1,q,q,p;1): each x^m q^d2 becomes q^(2m-d2+4) p^(d2-4).
inline Series d_deg23_p(const Box& b)
{
    int Q = b[0], Pm = b[1];
    int M = std::max(0, (Q + Pm) / 2);
    Ex x = var('x'), q = var('q');
    Series e = eval_to_box(e_full(x, x, q), "xq", {M, 2 * M + 2});
    Series out("qp", b);
    for (auto& [ex, c] : e.terms()) {
        int qe = 2 * ex[0] - ex[1] + 4, pe = ex[1] - 4;
        if (qe <= Q && pe <= Pm) out.add_to({qe, pe}, c);
    }
    return out;
}

// E(x,y,q;1) remapped to D(x,y,q2,q3,q4;1) with (q,t,p) = (q2,q3,q4).
inline Series d_full(const Box& b)
{
    int X = b[0], Y = b[1];
    Ex x = var('x'), y = var('y'), q = var('q');
    Series e = eval_to_box(e_full(x, y, q), "xyq", {X, Y, X + Y + 2});
    Series out("xyqtp", b);
    for (auto& [ex, c] : e.terms()) {
        Exps f{ex[0], ex[1], ex[2], 2 * (ex[0] + ex[1]) - 2 * ex[2] + 4, ex[2] - 4};
        if (out.in_box(f)) out.add_to(f, c);
    }
    return out;
}

// Geometric J composite for the outer-site count: J(x,x,q;1) then x := 1 under o >= 2 + h + v.
inline Series j_outer_uni_true(const Box& b)
{
    int Q = b[0];
    int M = std::max(0, Q - 2);
    Ex s = var('s'), q = var('q');
    Series j = eval_sproxy(j_full(s, s * s, q), "q", {M, Q});
    return substitute_value(j, 'x', 1, DegreeBound::linear(-2, {{'q', 1}}));
}

// d/dq J(x,x,q;1) at q = 1, under o <= 2(h+v).
inline Series j_dq_uni(const Box& b)
{
    int N = b[0];
    Ex s = var('s'), q = var('q');
    Ex e = diff(j_full(s, s * s, q), 'q');
    Series r = eval_to_box(e, "sq", {2 * N + 1, 2 * N + 2}, {{'x', s * s}});
    Series at1 = substitute_value(r, 'q', 1, DegreeBound::linear(0, {{'s', 1}}));
    return from_sproxy(at1).truncated({N});
}

inline Series j_dq_uni_printed(const Box& b)
{
    Ex x = var('x');
    Ex D = sqrt(1 - 4 * x);
    Ex e = -2 * (36 * pow(x, 6) - 13 * pow(x, 5) - 156 * pow(x, 4) + 201 * pow(x, 3) - 98 * x * x + 22 * x - 2) * x * x /
               (pow(1 - 4 * x, 3) * (1 - 2 * x)) +
           4 * pow(x, 4) * (x + 2) * (8 * x - 3) / (pow(1 - 4 * x, 2) * D);
    return eval_to_box(e, "x", b);
}

inline std::vector<GfEntry> make_catalog()
{
    using DB = DegreeBound;
    const Ex x = var('x'), y = var('y'), z = var('z'), q = var('q'), s = var('s');
    std::vector<GfEntry> c;
    auto ex = [](Ex e, VarSet v) { return [e, v](const Box& b) { return eval_to_box(e, v, b); }; };
    const DB zb = DB::linear(-1, {{'y', 1}});

    c.push_back({"cp_halfperimeter", "x", "convex polyominoes by half-perimeter",
                 {},
                 ex(x * x * (1 - 6 * x + 11 * x * x - 4 * pow(x, 3)) / pow(1 - 4 * x, 2) -
                        4 * pow(x, 4) / ((1 - 4 * x) * sqrt(1 - 4 * x)),
                    "x"),
                 ""});
    c.push_back({"cp_halfperimeter_printed", "x", "half-perimeter display as printed",
                 {},
                 ex(x * x * (1 - 8 * x + 21 * x * x - 19 * pow(x, 3) + 4 * pow(x, 4)) / ((1 - 2 * x) * pow(1 - 4 * x, 2)) -
                        2 * pow(x, 4) / ((1 - 4 * x) * sqrt(1 - 4 * x)),
                    "x"),
                 "cp_halfperimeter"});
    c.push_back({"cpbu_z", "xyz", "bu-class GF at t=1", {{'z', zb}}, ex(cbu(x, y, z), "xyz"), ""});
    c.push_back({"cpbu_area", "xyzt", "bu-class GF with area, sum form",
                 {{'z', zb}},
                 [](const Box& b) { return eval_to_box(cpbu_area(b[0]), "xyzt", b); },
                 ""});
    c.push_back({"cpu_z", "xyz", "u-class GF C^u(x,y,1;z)", {{'z', zb}}, ex(cu(x, y, z, z0_perimeter(x, y)), "xyz"), ""});
    c.push_back({"cp_xy", "xy", "convex polyominoes by width and height",
                 {},
                 [](const Box& b) { return eval_sproxy(cp_xy(), "y", b); },
                 ""});

    c.push_back({"f_u_z1", "xyz", "u-class interior GF at q=1", {{'z', zb}}, ex(f_u_z1(x, y, z), "xyz"), ""});
    c.push_back({"f_u_z1_printed", "xyz", "u-class interior GF at q=1 as printed", {{'z', zb}},
                 ex(f_u_z1(x, y, z, true), "xyz"), "f_u_z1"});
    c.push_back({"f_bu_dq", "xyz", "bu-class interior total", {{'z', zb}}, ex(f_bu_dq(x, y, z), "xyz"), ""});
    c.push_back({"f_bu_dq_printed", "xyz", "bu-class interior total as printed", {{'z', zb}},
                 ex(f_bu_dq(x, y, z, true), "xyz"), "f_bu_dq"});
    {
        Ex D = disc(x, y), sD = sqrt(D);
        c.push_back({"f_u_dq", "xy", "u-class interior total at z=1", {},
                     ex(x * y * (x * x - 2 * x * y + y * y + 2 * x + 2 * y - 3) / (2 * D * sD) +
                            x * y * ((1 + x + y) * pow(x - y, 2) + 4 * x * y - 5 * x - 5 * y + 3) / (2 * D * D),
                        "xy"),
                     ""});
        c.push_back({"f_at_11", "xy", "interior GF at q=1, z=1", {},
                     ex(x * y *
                                (2 * x * x * (2 - x) - x * x * (3 - x) * (1 - y) - 2 * x * (2 - x) * pow(1 - y, 2) +
                                 (1 + x) * pow(1 - y, 3)) /
                                (D * D) -
                            4 * x * x * y * y / (D * sD),
                        "xy"),
                     ""});
        c.push_back({"f_dz", "xy", "first-column total at q=1, z=1", {},
                     ex(x * y * y * (pow(x, 3) - 2 * x * x * y + x * y * y + x * x + 3 * y * y - 5 * x - 6 * y + 3) / (D * D) -
                            2 * x * y * y * (1 - x - y) / (D * sD),
                        "xy"),
                     ""});
        Ex w = y - x - 1;
        Ex D4 = pow(D, 4);
        c.push_back({"f_dq", "xy", "interior-vertex total by width and height", {},
                     ex(8 * pow(x, 3) * y * y *
                                (4 * x * (x * x + 6 * x - 1) + 4 * x * (5 * x + 11) * w + (6 * x * x + 29 * x + 17) * w * w) / D4 +
                            x * x * y * y * pow(w, 3) * (40 * x * (2 * x + 1) + 2 * (x * x + 11 * x - 8) * w + w * w * (y + x - 1)) / D4 +
                            4 * x * x * y * y * (4 - 3 * (x + y) - pow(x - y, 2)) / (D * D * sD),
                        "xy"),
                     ""});
    }
    {
        Ex u = 1 - 4 * x;
        c.push_back({"f_dq_uni", "x", "interior-vertex total by half-perimeter", {},
                     ex((32 * pow(x, 4) + 80 * pow(x, 3) - 230 * x * x + 116 * x - 15) * pow(x, 4) / pow(u, 4) -
                            8 * (3 * x - 2) * pow(x, 4) / (pow(u, 2) * sqrt(u)),
                        "x"),
                     ""});
        c.push_back({"e_dq_uni", "x", "degree-2 total by half-perimeter", {},
                     ex(4 * x * x * (8 * pow(x, 5) - 26 * pow(x, 4) + 56 * pow(x, 3) - 37 * x * x + 10 * x - 1) / pow(4 * x - 1, 3) -
                            4 * pow(x, 4) * (4 * x * x - 18 * x + 5) / (pow(u, 2) * sqrt(u)),
                        "x"),
                     ""});
    }

    const DB qd = DB::linear(2, {{'x', 1}, {'y', 1}});
    c.push_back({"e_bu", "xyzq", "bu-class degree-2 GF", {{'z', zb}, {'q', qd}}, ex(e_bu(x, y, q, z), "xyzq"), ""});
    c.push_back({"e_u", "xyzq", "u-class degree-2 GF", {{'z', zb}, {'q', qd}}, ex(e_u(x, y, q, z, e_z0(x, y, q)), "xyzq"), ""});
    c.push_back({"e_u_printed", "xyzq", "u-class degree-2 GF as printed", {{'z', zb}, {'q', qd}},
                 ex(e_u(x, y, q, z, e_z0(x, y, q, true), true), "xyzq"), "e_u"});
    c.push_back({"e_u_at1", "xyq", "u-class degree-2 GF at z=1", {{'q', qd}}, ex(e_u1(x, y, q, e_z0(x, y, q)), "xyq"), ""});
    c.push_back({"e_full", "xyq", "degree-2 GF by width and height", {{'q', qd}}, ex(e_full(x, y, q), "xyq"), ""});
    c.push_back({"d_full", "xyqtp", "boundary-degree GF, (q,t,p) marking degrees 2,3,4",
                 {{'q', qd}, {'t', DB::linear(0, {{'x', 2}, {'y', 2}})}, {'p', DB::linear(-2, {{'x', 1}, {'y', 1}})}},
                 d_full, ""});
    c.push_back({"d_deg23", "q", "convex polyominoes by d2+d3", {}, d_deg23_closed, ""});
    c.push_back({"d_deg23_p", "qp", "D(1,1,q,q,p;1)", {}, d_deg23_p, ""});

    const DB qo = DB::linear(0, {{'x', 2}, {'y', 2}});
    c.push_back({"j_bu", "xyzq", "bu-class outer-site GF", {{'z', zb}, {'q', qo}},
                 ex(outer_parts(x, y, q).jbu(z), "xyzq"), ""});
    c.push_back({"j_u", "xyzq", "u-class outer-site GF", {{'z', zb}, {'q', qo}}, ex(outer_parts(x, y, q).ju(z), "xyzq"), ""});
    c.push_back({"j_u_printed", "xyzq", "u-class outer-site GF as printed", {{'z', zb}, {'q', qo}},
                 ex(outer_parts(x, y, q).ju(z, true), "xyzq"), "j_u"});
    c.push_back({"j_full", "xyq", "outer-site GF by width and height", {{'q', qo}},
                 [](const Box& b) { return eval_sproxy(j_full(var('s'), var('y'), var('q')), "yq", b); }, ""});
    c.push_back({"j_full_printed", "xyq", "outer-site GF by width and height as printed", {{'q', qo}},
                 [](const Box& b) { return eval_sproxy(j_full_printed(var('s'), var('y'), var('q')), "yq", b); }, "j_full"});
    c.push_back({"j_outer_uni", "q", "outer-site count, rational-plus-radical display", {}, j_outer_uni_printed, ""});
    c.push_back({"j_outer_uni_true", "q", "outer-site count from the J composite", {}, j_outer_uni_true, ""});
    c.push_back({"j_dq_uni", "x", "outer-site total by half-perimeter", {}, j_dq_uni, ""});
    c.push_back({"j_dq_uni_printed", "x", "outer-site total display as printed", {}, j_dq_uni_printed, "j_dq_uni"});
    return c;
}

} // namespace gfx

inline const std::vector<GfEntry>& gf_catalog()
{
    static const std::vector<GfEntry> c = gfx::make_catalog();
    return c;
}

inline const GfEntry& gf_entry(const std::string& name)
{
    for (auto& e : gf_catalog())
        if (e.name == name) return e;
    throw GfError(GfError::UnknownName, "unknown generating function '" + name + "'");
}

inline Series build(const std::string& name, const Box& box)
{
    const GfEntry& e = gf_entry(name);
    if (box.size() != e.vars.size())
        throw GfError(GfError::BadBox, name + " takes a box over (" + e.vars.str() + ")");
    try {
        return e.builder(box);
    } catch (SeriesError& err) {
        err.push_path(name);
        throw;
    }
}

// "x=8,q=13" -> box over the entry's variables; every variable must be given.
inline Box parse_box(const VarSet& vars, const std::string& spec)
{
    Box b(vars.size(), -1);
    std::istringstream is(spec);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        auto eq = tok.find('=');
        if (eq != 1 || tok.size() < 3) throw GfError(GfError::BadBox, "bad box item '" + tok + "'");
        int i = vars.index(tok[0]);
        if (i < 0) throw GfError(GfError::BadBox, std::string("variable ") + tok[0] + " not in (" + vars.str() + ")");
        size_t used = 0;
        int v = -1;
        try {
            v = std::stoi(tok.substr(2), &used);
        } catch (const std::exception&) {
        }
        if (used != tok.size() - 2) throw GfError(GfError::BadBox, "bad degree in '" + tok + "'");
        if (v < 0) throw GfError(GfError::BadBox, "negative box bound");
        b[size_t(i)] = v;
    }
    for (size_t i = 0; i < b.size(); ++i)
        if (b[i] < 0) throw GfError(GfError::BadBox, std::string("missing bound for ") + vars[i]);
    return b;
}

inline Series build_spec(const std::string& name, const std::string& box_spec)
{
    return build(name, parse_box(gf_entry(name).vars, box_spec));
}

// ---- algebraic points ----

struct AlgebraicPoint {
    Series value;
    Series residual; // defining polynomial at the point
};

inline const std::vector<std::string>& algebraic_point_names()
{
    static const std::vector<std::string> n = {"z0", "z_plus", "z_minus", "z0_outer", "zpm_outer", "zpm_outer_roots"};
    return n;
}

// Box is over the variables of the point: z0 (x,y); z_plus/z_minus (s,y); z0_outer (x,y,q);
// zpm_outer and zpm_outer_roots (s,q), the latter returning z+ and the residual of both roots.
inline AlgebraicPoint algebraic_point(const std::string& name, const Box& box)
{
    Ex x = Ex::var('x'), y = Ex::var('y'), q = Ex::var('q'), s = Ex::var('s');
    auto run = [&](const Ex& pt, const std::function<Ex(const Ex&)>& poly, const VarSet& v, const Bindings& bind) {
        if (box.size() != v.size()) throw GfError(GfError::BadBox, name + " takes a box over (" + v.str() + ")");
        AlgebraicPoint r{eval_to_box(pt, v, box, bind), eval_to_box(poly(pt), v, box, bind)};
        return r;
    };
    Bindings sx{{'x', s * s}};
    if (name == "z0")
        return run(gfx::z0_perimeter(x, y), [&](const Ex& z) { return (1 - z) * (1 - y * z) + x * z; }, "xy", {});
    if (name == "z_plus") return run(1 / (1 + s), [&](const Ex& z) { return z * (1 + s) - 1; }, "sy", sx);
    if (name == "z_minus") return run(1 / (1 - s), [&](const Ex& z) { return z * (1 - s) - 1; }, "sy", sx);
    if (name == "z0_outer") {
        auto P = gfx::outer_parts(x, y, q);
        return run(P.z0,
                   [&](const Ex& z) {
                       return (1 - z) * P.alpha(z) + q * (1 - q + q * z) * P.beta(z) * x;
                   },
                   "xyq", {});
    }
    // Kernel roots as corrected: 1 - q^2 x - x(1-2q+2qz)/(1-z)^2 = 0.
    auto kernel = [&](const Ex& z) { return (1 - q * q * x) * pow(1 - z, 2) - x * (1 - 2 * q + 2 * q * z); };
    if (name == "zpm_outer") {
        Ex zp = 1 - s / (1 + q * s), zm = 1 + s / (1 - q * s);
        return run(zp, [&](const Ex&) { return kernel(zp) + kernel(zm); }, "sq", sx);
    }
    // Displayed roots against the displayed kernel 1 - q^2 x - qx(q-2+2z)/(1-z)^2.
    if (name == "zpm_outer_roots") {
        Ex root = s * sqrt(1 + (1 - q * q) * s * s);
        Ex zp = (1 + q * (1 - q) * x + q * root) / (1 - q * q * x);
        Ex zm = (1 + q * (1 - q) * x - q * root) / (1 - q * q * x);
        auto k = [&](const Ex& z) { return (1 - q * q * x) * pow(1 - z, 2) - q * x * (q - 2 + 2 * z); };
        return run(zp, [&](const Ex&) { return k(zp) + k(zm); }, "sq", sx);
    }
    throw GfError(GfError::UnknownName, "unknown algebraic point '" + name + "'");
}

// ---- kernel residuals ----

inline const std::vector<std::string>& kernel_equation_names()
{
    static const std::vector<std::string> n = {"eqCPu2", "eqacp1", "eqaF22_q1", "eqbD5", "eqbD8", "eqCu1", "eqJ"};
    return n;
}

inline const std::vector<std::string>& printed_kernel_equation_names()
{
    static const std::vector<std::string> n = {"eqbD5_printed", "eqCu1_printed", "eqJ_printed"};
    return n;
}

inline VarSet kernel_equation_vars(const std::string& name)
{
    if (name == "eqCPu2" || name == "eqacp1" || name == "eqaF22_q1") return "xyz";
    return "xyzq";
}

namespace gfx {

// DP series for a whole class, with z taken up to y-1 so that z-derivatives at 1 are complete.
inline Series dp_leaf(Family fam, PolyClass cls, const Box& box, const DpOptions& opt)
{
    Box b = box;
    b[2] = std::max(b[2], b[1] - 1);
    return dp_series(fam, cls, b, opt);
}

inline Series dz_at1(const Series& full, const VarSet& target, const Box& box)
{
    Series d = derive(full, 'z');
    Series at1 = substitute_value(d, 'z', 1, DegreeBound::linear(-2, {{'y', 1}}));
    return at1.embedded(target, box);
}

} // namespace gfx

// Left minus right side of a functional equation with closed forms (and DP series for unknowns
// that have no closed form) substituted. perturb adds x to the principal closed form.
inline Series kernel_residual(const std::string& name, const Box& box, bool perturb = false)
{
    using namespace gfx;
    const Ex x = Ex::var('x'), y = Ex::var('y'), z = Ex::var('z'), q = Ex::var('q');
    const Ex one = 1;
    VarSet v = kernel_equation_vars(name);
    if (box.size() != v.size()) throw GfError(GfError::BadBox, name + " takes a box over (" + v.str() + ")");
    const Ex bump = perturb ? x : Ex(0);
    DpOptions opt;
    opt.mark_area = false;

    std::function<Series(const Box&)> f;
    if (name == "eqCPu2") {
        Ex z0 = z0_perimeter(x, y);
        Ex Cu = cu(x, y, z, z0) + bump;
        Ex e = (1 + x * z / ((1 - z) * (1 - y * z))) * Cu -
               (x * y / (1 - y * z) + x * y * z / pow(1 - y * z, 2) * cbu(x, y, z) +
                x / ((1 - z) * (1 - y * z)) * cu1(x, y, z0));
        f = [e, v](const Box& b) { return eval_expr(e, v, b); };
    } else if (name == "eqacp1") {
        f = [=](const Box& b) {
            Series C = dp_leaf(Family::PerimeterArea, PolyClass::CP, b, opt);
            Ex Cz = Ex::leaf(C.truncated(b), "C(z)");
            Ex Cd = Ex::leaf(dz_at1(C, v, b), "C'(1)");
            Ex C1 = Ex::leaf(build("cp_xy", {b[0], b[1]}).embedded(v, b), "C(1)") + bump;
            Ex z0 = z0_perimeter(x, y);
            Ex e = (1 - x * z * z / pow(1 - z, 2)) * Cz -
                   (x * y / (1 - y * z) + x * (1 - 2 * z) / pow(1 - z, 2) * C1 + x / (1 - z) * Cd +
                    x * y * y * z * z / pow(1 - y * z, 2) * cbu(x, y, z) -
                    2 * x * y * z / ((1 - y * z) * (1 - z)) * (z * cu(x, y, z, z0) - cu1(x, y, z0)));
            return eval_expr(e, v, b);
        };
    } else if (name == "eqaF22_q1") {
        Ex Fu = f_u_z1(x, y, z) + bump;
        Ex Fu1 = f_u_z1(x, y, one);
        Ex e = Fu - (x * y / (1 - y * z) + x * y * z / pow(1 - y * z, 2) * f_bu_z1(x, y, z) -
                     x * z / ((1 - y * z) * (1 - z)) * Fu + x / ((1 - z) * (1 - y * z)) * Fu1);
        f = [e, v](const Box& b) { return eval_expr(e, v, b); };
    } else if (name == "eqbD5" || name == "eqbD5_printed") {
        bool pr = name == "eqbD5_printed";
        Ex z0 = e_z0(x, y, q);
        Ex Eu = e_u(x, y, q, z, z0) + bump;
        Ex g = x * (z + q - 1) * (1 + (q - 1) * y * z) / ((1 - y * z) * (1 - z));
        Ex e = (pr ? 1 - g : 1 + g) * Eu - q * x * (1 + (q - 1) * y * z) / ((1 - y * z) * (1 - z)) * e_u1(x, y, q, z0) -
               pow(q, 4) * x * y * (1 - x - y * z - (q - 1) * x * y * z) / (pow(1 - y * z, 2) - x * pow(1 + (q - 1) * y * z, 2));
        f = [e, v](const Box& b) { return eval_expr(e, v, b); };
    } else if (name == "eqbD8") {
        f = [=](const Box& b) {
            DpOptions o;
            Series E = dp_leaf(Family::Degrees, PolyClass::CP, b, o);
            Ex Ez = Ex::leaf(E.truncated(b), "E(z)");
            Ex Ed = Ex::leaf(dz_at1(E, v, b), "E'(1)");
            Box eb{b[0], b[1], b[3]};
            Ex E1 = Ex::leaf(build("e_full", eb).embedded(v, b), "E(1)");
            Ex z0 = e_z0(x, y, q);
            Ex Eu = e_u(x, y, q, z, z0) + bump;
            Ex e = (1 - x * pow(q - 1 + z, 2) / pow(1 - z, 2)) * Ez -
                   (pow(q, 4) * x * y / (1 - y * z) + q * q * x * y * y * z * z / pow(1 - y * z, 2) * e_bu(x, y, q, z) -
                    2 * q * x * y * z * (q - 1 + z) / ((1 - y * z) * (1 - z)) * Eu +
                    2 * q * q * x * y * z / ((1 - z) * (1 - y * z)) * e_u1(x, y, q, z0) -
                    q * x * (q - 2 + 2 * z) / pow(1 - z, 2) * E1 + q * q * x / (1 - z) * Ed);
            return eval_expr(e, v, b);
        };
    } else if (name == "eqCu1" || name == "eqCu1_printed") {
        bool pr = name == "eqCu1_printed";
        OuterParts P = outer_parts(x, y, q);
        Ex a = P.alpha(z), be = P.beta(z);
        Ex Ju = P.ju(z) + bump, Jbu = P.jbu(z);
        Ex g = q * x * (1 - q + q * z) * be / ((1 - z) * a);
        Ex e = (pr ? 1 - g : 1 + g) * Ju - (pow(q, 4) * x * y / a + pow(q, 4) * x * y * y * z * z / (a * a) * Jbu +
                                           pow(q, 3) * x * y * z / a * Jbu + q * x * be / ((1 - z) * a) * P.ju1);
        f = [e, v](const Box& b) { return eval_expr(e, v, b); };
    } else if (name == "eqJ" || name == "eqJ_printed") {
        bool pr = name == "eqJ_printed";
        f = [=](const Box& b) {
            DpOptions o;
            Series J = dp_leaf(Family::Outer, PolyClass::CP, b, o);
            Ex Jz = Ex::leaf(J.truncated(b), "J(z)");
            Ex Jd = Ex::leaf(dz_at1(J, v, b), "J'(1)");
            Box jb{b[0], b[1], b[3]};
            Ex J1 = Ex::leaf(build("j_full", jb).embedded(v, b), "J(1)");
            OuterParts P = outer_parts(x, y, q);
            Ex a = P.alpha(z);
            Ex Ju = P.ju(z) + bump;
            Ex w = pr ? q * x * (q - 2 + 2 * z) : x * (1 - 2 * q + 2 * q * z);
            Ex dcoef = pr ? q * q * x / (1 - z) : x / (1 - z);
            Ex e = (1 - q * q * x - w / pow(1 - z, 2)) * Jz -
                   (pow(q, 4) * x * y / a + pow(q, 4) * x * y * y * z * z / (a * a) * P.jbu(z) + 2 * pow(q, 3) * x * y * z / a * Ju -
                    2 * q * q * x * y * z / ((1 - z) * a) * (Ju - P.ju1) - w / pow(1 - z, 2) * J1 + dcoef * Jd);
            return eval_expr(e, v, b);
        };
    } else {
        throw GfError(GfError::UnknownName, "unknown equation '" + name + "'");
    }
    try {
        return eval_to_box(f, box);
    } catch (SeriesError& err) {
        err.push_path(name);
        throw;
    }
}

} // namespace cvx
