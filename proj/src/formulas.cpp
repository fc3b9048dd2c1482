#include "cvxpoly/formulas.hpp"

#include "cvxpoly/enumerator.hpp"
#include "cvxpoly/gfs.hpp"

#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

namespace cvx {

BigInt binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n) return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), (unsigned long)n, (unsigned long)k);
    return r;
}

BigInt fibonacci(long n)
{
    if (n < 0) throw FormulaError(FormulaError::OutOfDomain, "negative Fibonacci index");
    BigInt r;
    mpz_fib_ui(r.get_mpz_t(), (unsigned long)n);
    return r;
}

namespace {

BigInt pow4(long e) { return BigInt(1) << (2 * e); }

Rational frac(const BigInt& a, const BigInt& b)
{
    Rational r(a, b);
    r.canonicalize();
    return r;
}

const std::vector<Rational>& series_coeffs(const std::string& name, int n)
{
    static std::map<std::string, std::pair<int, std::vector<Rational>>> cache;
    auto& slot = cache[name];
    if (slot.first < n || slot.second.empty()) {
        slot.second = coefficients(build(name, {n}));
        slot.first = n;
    }
    return slot.second;
}

} // namespace

const std::vector<ExactFormulaInfo>& exact_formulas()
{
    static const std::vector<ExactFormulaInfo> f = {
        {"count_perimeter", 2, false, "convex polyominoes with perimeter 2n"},
        {"count_perimeter_shifted", 0, false, "convex polyominoes with perimeter 2n+8"},
        {"count_cpbu", 2, false, "bu-class polyominoes with perimeter 2n: Fib(2n-3)"},
        {"count_cpu", 2, false, "u-class polyominoes with perimeter 2n: C(2n-4,n-2)"},
        {"total_interior", 5, false, "total interior vertices over perimeter 2n"},
        {"total_deg2", 5, false, "total degree-2 boundary vertices over perimeter 2n"},
        {"total_outer", 5, true, "total outer-site perimeter over perimeter 2n (display quarantined)"},
        {"total_outer_observed", 5, false, "total outer-site perimeter, form observed from the series"},
    };
    return f;
}

Rational exact_raw(const std::string& name, int n)
{
    const ExactFormulaInfo* info = nullptr;
    for (auto& f : exact_formulas())
        if (f.name == name) info = &f;
    if (!info) throw FormulaError(FormulaError::UnknownName, "unknown formula '" + name + "'");
    if (n < info->min_n)
        throw FormulaError(FormulaError::OutOfDomain, name + " is defined for n >= " + std::to_string(info->min_n));
    const long N = n;
    if (name == "count_perimeter") {
        if (N == 2) return 1;
        if (N == 3) return 2;
        return Rational(BigInt(2 * N + 3) * pow4(N - 4) - 4 * (2 * N - 7) * binomial(2 * N - 8, N - 4));
    }
    if (name == "count_perimeter_shifted") return Rational(BigInt(2 * N + 11) * pow4(N) - 4 * (2 * N + 1) * binomial(2 * N, N));
    if (name == "count_cpbu") return Rational(fibonacci(2 * N - 3));
    if (name == "count_cpu") return Rational(binomial(2 * N - 4, N - 2));
    if (name == "total_interior")
        return frac(BigInt(4 * N * N * N - 78 * N * N + 77 * N + 321) * pow4(N - 5), 6) +
               frac(BigInt(2 * (5 * N - 8) * (N - 3)) * binomial(2 * N - 6, N - 3), 3);
    if (name == "total_deg2")
        return frac(pow4(N - 4) * (2 * N * N + 15 * N + 11), 2) -
               frac(BigInt(2 * (N * N + 2 * N - 19) * (N - 3)) * binomial(2 * N - 6, N - 3), BigInt(2 * N - 7));
    if (name == "total_outer") {
        // powers of 2 and 4 with negative exponents are kept exact
        Rational p4 = N >= 6 ? Rational(pow4(N - 6)) : frac(1, pow4(6 - N));
        Rational p2 = N >= 6 ? Rational(BigInt(BigInt(1) << (N - 6))) : frac(1, BigInt(1) << (6 - N));
        return Rational(50 * N * N + 79 * N + 105) * p4 + p2 - frac((6 * N * N - 19 * N - 8) * (N - 3), 2 * N - 7);
    }
    if (name == "total_outer_observed")
        return frac(pow4(N - 4) * (6 * N * N + 13 * N + 13), 2) -
               frac(BigInt(2 * (3 * N * N - 8 * N - 9) * (N - 3)) * binomial(2 * N - 6, N - 3), BigInt(2 * N - 7));
    throw FormulaError(FormulaError::UnknownName, name);
}

ExactValue exact(const std::string& name, int n)
{
    Rational r = exact_raw(name, n);
    r.canonicalize();
    ExactValue v;
    v.printed = r;
    bool quarantined = false;
    for (auto& f : exact_formulas())
        if (f.name == name) quarantined = f.quarantined;
    if (!quarantined) {
        if (r.get_den() != 1)
            throw FormulaError(FormulaError::IntegralityViolation,
                               name + "(" + std::to_string(n) + ") = " + rational_str(r) + " is not an integer");
        v.value = r.get_num();
        return v;
    }
    // total_outer: oracle from the outer-site total series
    const auto& c = series_coeffs("j_dq_uni", std::max(n, 12));
    Rational oracle = c[size_t(n)];
    v.value = oracle.get_num();
    v.quarantined = true;
    std::ostringstream os;
    os << name << "(" << n << ") display evaluates to " << rational_str(r)
       << (r.get_den() != 1 ? " (non-integral)" : (r == oracle ? " (agrees)" : " (integral but wrong)")) << "; oracle value "
       << v.value.get_str() << " substituted";
    v.note = os.str();
    return v;
}

const std::vector<AsymptoticInfo>& asymptotic_targets()
{
    static const std::vector<AsymptoticInfo> t = {
        {"avg_interior", "mean interior vertices at perimeter 2n"},
        {"avg_deg2", "mean degree-2 vertices at perimeter 2n"},
        {"count_deg23", "polyominoes with d2+d3 = n"},
        {"total_d4_given_deg23", "total d4 over d2+d3 = n"},
        {"avg_d4_given_deg23", "mean d4 over d2+d3 = n"},
        {"count_outer", "polyominoes with outer-site perimeter n"},
        {"avg_outer_given_perimeter", "mean outer-site perimeter at perimeter 2n"},
        {"avg_perimeter_given_outer", "mean perimeter at outer-site perimeter n"},
    };
    return t;
}

Real asymptotic(const std::string& name, long n)
{
    if (n < 1) throw FormulaError(FormulaError::OutOfDomain, "asymptotics need n >= 1");
    using boost::multiprecision::pow;
    using boost::multiprecision::sqrt;
    const Real N = n;
    const Real pi = boost::math::constants::pi<Real>();
    const Real r5 = sqrt(Real(5));
    const Real phi = (3 + r5) / 2;
    const Real f5 = sqrt(r5); // 5^(1/4)
    const Real f125 = f5 * f5 * f5;
    if (name == "avg_interior") return N * N / 12 + N * sqrt(N) / (3 * sqrt(pi)) - (21 * pi - 16) * N / (12 * pi);
    if (name == "avg_deg2") return (N + 6) / 2 + 1 / sqrt(pi * N) + (16 - 7 * pi) / (4 * pi * N);
    if (name == "count_deg23")
        return (N + 1) / 40 * pow(phi, N - 3) + f5 * (2 - r5) / (80 * sqrt(pi * N)) * pow(phi, N - 2);
    if (name == "total_d4_given_deg23")
        return r5 * (N + 1) * (N + 2) / 200 * pow(phi, N - 3) - f125 * sqrt(N * N * N) / (200 * sqrt(pi)) * pow(phi, N - Real(7) / 2);
    if (name == "avg_d4_given_deg23") return N / r5 - f125 * (r5 - 1) * sqrt(N) / (10 * sqrt(pi));
    if (name == "count_outer") return 3 * (r5 - 1) / (20 * sqrt(pi * N) * f5) * pow(phi, N);
    if (name == "avg_outer_given_perimeter") return 25 * N / 16 + sqrt(N) / (4 * sqrt(pi)) + Real(1) / 8;
    if (name == "avg_perimeter_given_outer") return f5 * N;
    throw FormulaError(FormulaError::UnknownName, "unknown asymptotic target '" + name + "'");
}

Source parse_source(const std::string& s)
{
    if (s == "formula") return Source::Formula;
    if (s == "series") return Source::Series;
    if (s == "census") return Source::Census;
    throw FormulaError(FormulaError::UnknownName, "unknown source '" + s + "'");
}

namespace {

Real to_real(const Rational& q)
{
    return Real(q.get_num().get_str()) / Real(q.get_den().get_str());
}

// Outer-site count and total perimeter by o, from J(x,x,q;1) in (s,q): the s-degree is the perimeter.
std::pair<std::vector<Rational>, std::vector<Rational>> outer_series(int Q)
{
    Ex s = Ex::var('s'), q = Ex::var('q');
    Ex J = gfx::j_full(s, s * s, q);
    int S = std::max(0, 2 * Q - 4);
    Series js = eval_to_box(J, "sq", {S, Q});
    Series dj = eval_to_box(diff(J, 's'), "sq", {S, Q});
    DegreeBound b = DegreeBound::linear(-4, {{'q', 2}});
    Series cnt = substitute_value(js, 's', 1, b);
    Series tot = substitute_value(dj.truncated({std::max(0, S - 1), Q}), 's', 1, DegreeBound::linear(-5, {{'q', 2}}));
    return {coefficients(cnt), coefficients(tot)};
}

std::vector<Rational> d4_totals(int Q)
{
    Series d = build("d_deg23_p", {Q, std::max(0, Q - 4)});
    std::vector<Rational> t(size_t(Q) + 1);
    for (auto& [e, c] : d.terms()) t[size_t(e[0])] += c * e[1];
    return t;
}

struct Pair {
    std::vector<Rational> num, den; // exact = num/den (den empty means a plain count)
};

Pair census_source(const std::string& target, int n_max)
{
    Pair p;
    p.num.assign(size_t(n_max) + 1, 0);
    p.den.assign(size_t(n_max) + 1, 0);
    if (target == "avg_interior" || target == "avg_deg2" || target == "avg_outer_given_perimeter") {
        std::string st = target == "avg_interior" ? "int" : target == "avg_deg2" ? "d2" : "o";
        auto t = census(n_max, PolyClass::CP, {st});
        for (auto& [g, r] : t.rows) {
            p.num[size_t(g)] = Rational(r.totals.at(st));
            p.den[size_t(g)] = Rational(r.count);
        }
        return p;
    }
    if (target == "count_outer" || target == "avg_perimeter_given_outer") {
        auto t = census_by_outer(n_max, {"perimeter"});
        for (auto& [g, r] : t.rows) {
            p.num[size_t(g)] = target == "count_outer" ? Rational(r.count) : Rational(r.totals.at("perimeter"));
            p.den[size_t(g)] = target == "count_outer" ? Rational(1) : Rational(r.count);
        }
        return p;
    }
    if (target == "count_deg23" || target == "total_d4_given_deg23" || target == "avg_d4_given_deg23") {
        // d2+d3 = n is complete once h+v <= n-2
        auto t = detail::run_census(std::max(2, n_max - 2), PolyClass::CP, {"d4"}, "deg23",
                                    [](const StatVector& s) { return s.d2 + s.d3; },
                                    [n_max](const StatVector& s) { return s.d2 + s.d3 <= n_max; }, 1);
        for (auto& [g, r] : t.rows) {
            if (target == "count_deg23") {
                p.num[size_t(g)] = Rational(r.count);
                p.den[size_t(g)] = 1;
            } else {
                p.num[size_t(g)] = Rational(r.totals.at("d4"));
                p.den[size_t(g)] = target == "avg_d4_given_deg23" ? Rational(r.count) : Rational(1);
            }
        }
        return p;
    }
    throw FormulaError(FormulaError::SourceUnavailable, "no census source for " + target);
}

Pair series_source(const std::string& target, int n_max)
{
    Pair p;
    auto ratio = [&](const std::string& a, const std::string& b) {
        p.num = coefficients(build(a, {n_max}));
        p.den = coefficients(build(b, {n_max}));
    };
    if (target == "avg_interior") ratio("f_dq_uni", "cp_halfperimeter");
    else if (target == "avg_deg2") ratio("e_dq_uni", "cp_halfperimeter");
    else if (target == "avg_outer_given_perimeter") ratio("j_dq_uni", "cp_halfperimeter");
    else if (target == "count_deg23" || target == "count_outer") {
        // the outer-site count coincides with the d2+d3 count (o = d2 + d3 on every convex polyomino)
        p.num = coefficients(build("d_deg23", {n_max}));
        p.den.assign(p.num.size(), 1);
    } else if (target == "total_d4_given_deg23" || target == "avg_d4_given_deg23") {
        p.num = d4_totals(n_max);
        if (target == "avg_d4_given_deg23") p.den = coefficients(build("d_deg23", {n_max}));
        else p.den.assign(p.num.size(), 1);
    } else if (target == "avg_perimeter_given_outer") {
        auto [cnt, tot] = outer_series(n_max);
        p.num = tot;
        p.den = cnt;
    } else
        throw FormulaError(FormulaError::SourceUnavailable, "no series source for " + target);
    return p;
}

Rational formula_value(const std::string& target, int n, bool& ok)
{
    ok = n >= 5;
    if (!ok) return 0;
    auto cnt = exact("count_perimeter", n).value;
    if (target == "avg_interior") return frac(exact("total_interior", n).value, cnt);
    if (target == "avg_deg2") return frac(exact("total_deg2", n).value, cnt);
    if (target == "avg_outer_given_perimeter") return frac(exact("total_outer_observed", n).value, cnt);
    throw FormulaError(FormulaError::SourceUnavailable,
                       "no closed counting formula for " + target + "; use --source series or census");
}

} // namespace

std::vector<ConvergenceRow> convergence_report(const std::string& target, int n_min, int n_max, Source src)
{
    asymptotic(target, 1); // validates the name
    std::vector<ConvergenceRow> rows;
    auto push = [&](int n, const Rational& ex) {
        Real a = asymptotic(target, n);
        rows.push_back({n, ex, a, to_real(ex) / a});
    };
    if (src == Source::Formula) {
        for (int n = std::max(1, n_min); n <= n_max; ++n) {
            bool ok;
            Rational v = formula_value(target, n, ok);
            if (ok) push(n, v);
        }
        return rows;
    }
    Pair p = src == Source::Series ? series_source(target, n_max) : census_source(target, n_max);
    for (int n = std::max(1, n_min); n <= n_max && size_t(n) < p.num.size(); ++n) {
        if (p.den[size_t(n)] == 0 || p.num[size_t(n)] == 0) continue;
        Rational v = p.num[size_t(n)] / p.den[size_t(n)];
        v.canonicalize();
        push(n, v);
    }
    return rows;
}

ConvergenceSummary summarize(const std::vector<ConvergenceRow>& rows)
{
    ConvergenceSummary s;
    if (rows.empty()) return s;
    s.n_top = rows.back().n;
    s.err_top = abs(rows.back().ratio - 1);
    size_t start = rows.size() / 2;
    for (size_t i = start + 1; i < rows.size(); ++i)
        if (abs(rows[i].ratio - 1) > abs(rows[i - 1].ratio - 1)) {
            s.tail_non_increasing = false;
            s.first_increase = rows[i].n;
            break;
        }
    return s;
}

std::string to_decimal(const Real& r, int digits)
{
    std::ostringstream os;
    os << std::setprecision(digits) << r;
    return os.str();
}

std::string rational_decimal(const Rational& q)
{
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

} // namespace cvx
