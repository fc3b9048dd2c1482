#pragma once

#include "numbers.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cvx {

using Exps = std::vector<int>;
using Box = std::vector<int>;

enum class SeriesErrc {
    VarMismatch,
    NotAUnit,
    NotDivisible,
    NotUnitOne,
    IllegalComposition,
    BoxOverflow,
    OutsideBox,
    UnknownVar,
    OddPart,
};

inline const char* errc_name(SeriesErrc c)
{
    switch (c) {
    case SeriesErrc::VarMismatch: return "VarMismatch";
    case SeriesErrc::NotAUnit: return "NotAUnit";
    case SeriesErrc::NotDivisible: return "NotDivisible";
    case SeriesErrc::NotUnitOne: return "NotUnitOne";
    case SeriesErrc::IllegalComposition: return "IllegalComposition";
    case SeriesErrc::BoxOverflow: return "BoxOverflow";
    case SeriesErrc::OutsideBox: return "OutsideBox";
    case SeriesErrc::UnknownVar: return "UnknownVar";
    case SeriesErrc::OddPart: return "OddPart";
    }
    return "?";
}

class SeriesError : public std::exception {
public:
    SeriesError(SeriesErrc c, std::string msg) : code_(c), msg_(std::move(msg)) { rebuild(); }

    SeriesErrc code() const { return code_; }
    const std::vector<std::string>& path() const { return path_; }
    const char* what() const noexcept override { return full_.c_str(); }

    // called while unwinding through an expression tree, innermost first
    void push_path(const std::string& node)
    {
        path_.insert(path_.begin(), node);
        rebuild();
    }

private:
    void rebuild()
    {
        full_ = std::string(errc_name(code_)) + ": " + msg_;
        if (!path_.empty()) {
            full_ += " [at ";
            for (size_t i = 0; i < path_.size(); ++i) {
                if (i) full_ += " > ";
                full_ += path_[i];
            }
            full_ += "]";
        }
    }

    SeriesErrc code_;
    std::string msg_;
    std::vector<std::string> path_;
    std::string full_;
};

class VarSet {
public:
    VarSet() = default;
    VarSet(std::string names) : names_(std::move(names))
    {
        static const std::string allowed = "xyztqps";
        for (size_t i = 0; i < names_.size(); ++i) {
            if (allowed.find(names_[i]) == std::string::npos)
                throw SeriesError(SeriesErrc::UnknownVar, std::string("variable '") + names_[i] + "' not allowed");
            if (names_.find(names_[i], i + 1) != std::string::npos)
                throw SeriesError(SeriesErrc::VarMismatch, std::string("duplicate variable '") + names_[i] + "'");
        }
    }
    VarSet(const char* names) : VarSet(std::string(names)) {}

    size_t size() const { return names_.size(); }
    char operator[](size_t i) const { return names_[i]; }
    const std::string& str() const { return names_; }
    int index(char v) const
    {
        auto p = names_.find(v);
        return p == std::string::npos ? -1 : int(p);
    }
    bool contains(char v) const { return index(v) >= 0; }
    int require(char v) const
    {
        int i = index(v);
        if (i < 0) throw SeriesError(SeriesErrc::VarMismatch, std::string("variable '") + v + "' not in (" + names_ + ")");
        return i;
    }
    VarSet without(char v) const
    {
        std::string n = names_;
        n.erase(size_t(require(v)), 1);
        return VarSet(n);
    }
    VarSet renamed(char from, char to) const
    {
        std::string n = names_;
        n[size_t(require(from))] = to;
        return VarSet(n);
    }
    bool operator==(const VarSet& o) const { return names_ == o.names_; }
    bool operator!=(const VarSet& o) const { return names_ != o.names_; }

private:
    std::string names_;
};

// A linear degree bound  deg_var <= base + sum coef_w * deg_w.
struct DegreeBound {
    int base = 0;
    std::vector<std::pair<char, int>> coef;

    static DegreeBound constant(int n) { return {n, {}}; }
    static DegreeBound linear(int base, std::vector<std::pair<char, int>> c) { return {base, std::move(c)}; }

    std::string str(char var) const
    {
        std::ostringstream os;
        os << "deg_" << var << " <= " << base;
        for (auto& [w, c] : coef) os << " + " << c << "*deg_" << w;
        return os.str();
    }
};

class Series {
public:
    using Terms = std::map<Exps, Rational>;

    Series() = default;
    Series(VarSet vars, Box box) : vars_(std::move(vars)), box_(std::move(box))
    {
        if (box_.size() != vars_.size()) throw SeriesError(SeriesErrc::VarMismatch, "box arity differs from variable count");
        for (int b : box_)
            if (b < 0) throw SeriesError(SeriesErrc::BoxOverflow, "negative box bound");
    }

    static Series constant(const VarSet& v, const Box& b, const Rational& c)
    {
        Series s(v, b);
        s.set(Exps(v.size(), 0), c);
        return s;
    }

    static Series variable(const VarSet& v, const Box& b, char name)
    {
        Series s(v, b);
        Exps e(v.size(), 0);
        e[size_t(v.require(name))] = 1;
        if (s.in_box(e)) s.set(e, 1);
        return s;
    }

    static Series monomial(const VarSet& v, const Box& b, const Exps& e, const Rational& c)
    {
        Series s(v, b);
        if (s.in_box(e)) s.set(e, c);
        return s;
    }

    const VarSet& vars() const { return vars_; }
    const Box& box() const { return box_; }
    const Terms& terms() const { return terms_; }
    size_t nterms() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    bool in_box(const Exps& e) const
    {
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] < 0 || e[i] > box_[i]) return false;
        return true;
    }

    Rational coeff(const Exps& e) const
    {
        if (e.size() != vars_.size()) throw SeriesError(SeriesErrc::VarMismatch, "exponent arity");
        if (!in_box(e)) throw SeriesError(SeriesErrc::OutsideBox, "exponent outside truncation box");
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational constant_term() const
    {
        auto it = terms_.find(Exps(vars_.size(), 0));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void set(const Exps& e, const Rational& c)
    {
        if (!in_box(e)) throw SeriesError(SeriesErrc::OutsideBox, "set outside box");
        if (c == 0)
            terms_.erase(e);
        else
            terms_[e] = c;
    }

    void add_to(const Exps& e, const Rational& c)
    {
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Series truncated(const Box& b) const
    {
        Series r(vars_, b);
        for (size_t i = 0; i < b.size(); ++i)
            if (b[i] > box_[i]) throw SeriesError(SeriesErrc::BoxOverflow, "truncation box exceeds series box");
        for (auto& [e, c] : terms_)
            if (r.in_box(e)) r.terms_.emplace(e, c);
        return r;
    }

    // Same coefficients viewed in a superset of variables (new ones at exponent 0).
    Series embedded(const VarSet& target, const Box& tbox) const
    {
        Series r(target, tbox);
        std::vector<int> pos(vars_.size());
        for (size_t i = 0; i < vars_.size(); ++i) {
            pos[i] = target.require(vars_[i]);
            if (tbox[size_t(pos[i])] > box_[i]) throw SeriesError(SeriesErrc::BoxOverflow, std::string("embedding widens variable ") + vars_[i]);
        }
        for (auto& [e, c] : terms_) {
            Exps f(target.size(), 0);
            for (size_t i = 0; i < e.size(); ++i) f[size_t(pos[i])] = e[i];
            if (r.in_box(f)) r.terms_.emplace(f, c);
        }
        return r;
    }

    bool operator==(const Series& o) const { return vars_ == o.vars_ && box_ == o.box_ && terms_ == o.terms_; }
    bool operator!=(const Series& o) const { return !(*this == o); }

    Terms& mutable_terms() { return terms_; }

private:
    VarSet vars_;
    Box box_;
    Terms terms_;
};

inline Box box_min(const Box& a, const Box& b)
{
    Box r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::min(a[i], b[i]);
    return r;
}

inline bool box_le(const Box& a, const Box& b)
{
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline int total_degree(const Exps& e)
{
    int d = 0;
    for (int v : e) d += v;
    return d;
}

inline void check_vars(const Series& a, const Series& b)
{
    if (a.vars() != b.vars())
        throw SeriesError(SeriesErrc::VarMismatch, "(" + a.vars().str() + ") vs (" + b.vars().str() + ")");
}

inline Series operator+(const Series& a, const Series& b)
{
    check_vars(a, b);
    Box r = box_min(a.box(), b.box());
    Series out(a.vars(), r);
    auto& t = out.mutable_terms();
    for (auto& [e, c] : a.terms())
        if (out.in_box(e)) t.emplace(e, c);
    for (auto& [e, c] : b.terms())
        if (out.in_box(e)) out.add_to(e, c);
    return out;
}

inline Series operator-(const Series& a)
{
    Series out(a.vars(), a.box());
    auto& t = out.mutable_terms();
    for (auto& [e, c] : a.terms()) t.emplace(e, -c);
    return out;
}

inline Series operator-(const Series& a, const Series& b) { return a + (-b); }

inline Series scale(const Series& a, const Rational& k)
{
    Series out(a.vars(), a.box());
    if (k == 0) return out;
    auto& t = out.mutable_terms();
    for (auto& [e, c] : a.terms()) t.emplace(e, c * k);
    return out;
}

inline Series operator*(const Series& a, const Rational& k) { return scale(a, k); }
inline Series operator*(const Rational& k, const Series& a) { return scale(a, k); }

namespace detail {

// Integer numerators over one common denominator, with dense indices into a box.
struct Packed {
    size_t nv = 0;
    std::vector<int> exps;
    std::vector<size_t> idx;
    std::vector<int> deg;
    std::vector<BigInt> num;
    BigInt den = 1;
    size_t size() const { return num.size(); }
    const int* e(size_t i) const { return exps.data() + i * nv; }
};

struct Dense {
    Box box;
    std::vector<size_t> stride;
    size_t total = 1;
    explicit Dense(const Box& b) : box(b), stride(b.size())
    {
        for (size_t i = b.size(); i-- > 0;) {
            stride[i] = total;
            total *= size_t(b[i] + 1);
        }
    }
    size_t index(const int* e) const
    {
        size_t k = 0;
        for (size_t i = 0; i < box.size(); ++i) k += size_t(e[i]) * stride[i];
        return k;
    }
    void unindex(size_t k, Exps& e) const
    {
        for (size_t i = 0; i < box.size(); ++i) {
            e[i] = int(k / stride[i]);
            k %= stride[i];
        }
    }
};

inline Packed pack(const Series& a, const Dense& d, int maxdeg)
{
    Packed p;
    p.nv = a.vars().size();
    for (auto& [e, c] : a.terms()) {
        bool ok = total_degree(e) <= maxdeg;
        for (size_t i = 0; ok && i < e.size(); ++i) ok = e[i] <= d.box[i];
        if (!ok) continue;
        mpz_lcm(p.den.get_mpz_t(), p.den.get_mpz_t(), c.get_den_mpz_t());
    }
    for (auto& [e, c] : a.terms()) {
        bool ok = total_degree(e) <= maxdeg;
        for (size_t i = 0; ok && i < e.size(); ++i) ok = e[i] <= d.box[i];
        if (!ok) continue;
        p.exps.insert(p.exps.end(), e.begin(), e.end());
        p.idx.push_back(d.index(e.data()));
        p.deg.push_back(total_degree(e));
        BigInt n = p.den / c.get_den();
        n *= c.get_num();
        p.num.push_back(std::move(n));
    }
    return p;
}

} // namespace detail

// Product truncated to the common box; maxdeg additionally drops terms of larger total degree.
inline Series mul(const Series& a, const Series& b, int maxdeg = INT_MAX)
{
    check_vars(a, b);
    Box r = box_min(a.box(), b.box());
    Series out(a.vars(), r);
    if (a.is_zero() || b.is_zero()) return out;
    detail::Dense d(r);
    auto pa = detail::pack(a, d, maxdeg);
    auto pb = detail::pack(b, d, maxdeg);
    const size_t nv = r.size();
    std::vector<BigInt> acc(d.total);
    std::vector<char> hit(d.total, 0);
    for (size_t i = 0; i < pa.size(); ++i) {
        const int* ea = pa.e(i);
        int lim0 = nv ? r[0] - ea[0] : 0;
        for (size_t j = 0; j < pb.size(); ++j) {
            const int* eb = pb.e(j);
            if (nv && eb[0] > lim0) break;
            if (pa.deg[i] + pb.deg[j] > maxdeg) continue;
            bool ok = true;
            for (size_t v = 1; v < nv; ++v)
                if (ea[v] + eb[v] > r[v]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            size_t k = pa.idx[i] + pb.idx[j];
            mpz_addmul(acc[k].get_mpz_t(), pa.num[i].get_mpz_t(), pb.num[j].get_mpz_t());
            hit[k] = 1;
        }
    }
    BigInt den = pa.den * pb.den;
    Exps e(nv);
    auto& t = out.mutable_terms();
    for (size_t k = 0; k < d.total; ++k) {
        if (!hit[k] || acc[k] == 0) continue;
        d.unindex(k, e);
        Rational c(acc[k], den);
        c.canonicalize();
        t.emplace_hint(t.end(), e, std::move(c));
    }
    return out;
}

inline Series operator*(const Series& a, const Series& b) { return mul(a, b); }

inline Series truncate_degree(const Series& a, int maxdeg)
{
    Series out(a.vars(), a.box());
    auto& t = out.mutable_terms();
    for (auto& [e, c] : a.terms())
        if (total_degree(e) <= maxdeg) t.emplace(e, c);
    return out;
}

// 1/a for a with nonzero constant term. Integer recurrence after graded rescaling:
// with u = a/a0 = N/c (N integral, N_0 = c), inv(u)_e = B_e / c^|e| where
// B_0 = 1 and B_e = -sum_{f != 0} N_f c^(|f|-1) B_(e-f).
inline Series invert_unit(const Series& a, int maxdeg = INT_MAX)
{
    Rational a0 = a.constant_term();
    if (a0 == 0) throw SeriesError(SeriesErrc::NotAUnit, "constant term is zero");
    const Box& r = a.box();
    const size_t nv = r.size();
    detail::Dense d(r);
    Series u = scale(a, 1 / a0);
    auto pu = detail::pack(u, d, maxdeg);
    const BigInt& c = pu.den;
    int dmax = 0;
    for (int b : r) dmax += b;
    dmax = std::min(dmax, maxdeg);
    std::vector<BigInt> cpow(size_t(dmax) + 2);
    cpow[0] = 1;
    for (size_t i = 1; i < cpow.size(); ++i) cpow[i] = cpow[i - 1] * c;

    std::vector<size_t> nz;
    std::vector<BigInt> scaled;
    for (size_t i = 0; i < pu.size(); ++i) {
        if (pu.deg[i] == 0) continue;
        nz.push_back(i);
        scaled.push_back(pu.num[i] * cpow[size_t(pu.deg[i] - 1)]);
    }

    std::vector<BigInt> B(d.total);
    std::vector<char> live(d.total, 0);
    Exps e(nv);
    BigInt sum;
    for (size_t k = 0; k < d.total; ++k) {
        d.unindex(k, e);
        int de = total_degree(e);
        if (de > maxdeg) continue;
        live[k] = 1;
        if (k == 0) {
            B[0] = 1;
            continue;
        }
        sum = 0;
        for (size_t t = 0; t < nz.size(); ++t) {
            const int* f = pu.e(nz[t]);
            bool ok = true;
            for (size_t v = 0; v < nv; ++v)
                if (f[v] > e[v]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            size_t kk = k - pu.idx[nz[t]];
            if (B[kk] != 0) mpz_addmul(sum.get_mpz_t(), scaled[t].get_mpz_t(), B[kk].get_mpz_t());
        }
        B[k] = -sum;
    }
    Series out(a.vars(), r);
    auto& t = out.mutable_terms();
    for (size_t k = 0; k < d.total; ++k) {
        if (!live[k] || B[k] == 0) continue;
        d.unindex(k, e);
        Rational q(B[k], cpow[size_t(total_degree(e))]);
        q.canonicalize();
        q /= a0;
        t.emplace_hint(t.end(), e, std::move(q));
    }
    return out;
}

inline Series shift_down(const Series& a, const Exps& m)
{
    Box nb(a.box().size());
    for (size_t i = 0; i < nb.size(); ++i) {
        nb[i] = a.box()[i] - m[i];
        if (nb[i] < 0) throw SeriesError(SeriesErrc::BoxOverflow, "monomial division leaves an empty box");
    }
    Series out(a.vars(), nb);
    auto& t = out.mutable_terms();
    for (auto& [e, c] : a.terms()) {
        Exps f(e.size());
        for (size_t i = 0; i < e.size(); ++i) {
            f[i] = e[i] - m[i];
            if (f[i] < 0) throw SeriesError(SeriesErrc::NotDivisible, "dividend has a term below the divisor's monomial");
        }
        t.emplace_hint(t.end(), std::move(f), c);
    }
    return out;
}

// Divisor's leading monomial: componentwise minimum over its terms.
inline Exps low_monomial(const Series& b)
{
    if (b.is_zero()) throw SeriesError(SeriesErrc::NotAUnit, "division by a series that vanishes in the box");
    Exps m = b.terms().begin()->first;
    for (auto& [e, c] : b.terms())
        for (size_t i = 0; i < e.size(); ++i) m[i] = std::min(m[i], e[i]);
    return m;
}

inline Series exact_div(const Series& a, const Series& b)
{
    check_vars(a, b);
    if (b.constant_term() != 0) return mul(a, invert_unit(b));
    Exps m = low_monomial(b);
    Series bb = shift_down(b, m);
    if (bb.constant_term() == 0) throw SeriesError(SeriesErrc::NotAUnit, "divisor is not a monomial times a unit");
    Series aa = shift_down(a, m);
    return mul(aa, invert_unit(bb));
}

inline Series operator/(const Series& a, const Series& b) { return exact_div(a, b); }

// Principal square root, Newton r <- (r + a/r)/2 with precision 1, 3, 7, ... in total degree.
inline Series sqrt_unit(const Series& a)
{
    if (a.constant_term() != 1) throw SeriesError(SeriesErrc::NotUnitOne, "radicand constant term is not 1");
    int dmax = 0;
    for (int b : a.box()) dmax += b;
    Series r = Series::constant(a.vars(), a.box(), 1);
    int p = 0;
    const Rational half(1, 2);
    while (p < dmax) {
        p = std::min(2 * p + 1, dmax);
        Series quo = mul(a, invert_unit(r, p), p);
        r = scale(truncate_degree(r, p) + quo, half);
    }
    return r;
}

inline Series power(const Series& a, int n)
{
    if (n < 0) return invert_unit(power(a, -n));
    Series r = Series::constant(a.vars(), a.box(), 1);
    Series b = a;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

inline Series derive(const Series& a, char var)
{
    size_t i = size_t(a.vars().require(var));
    Box nb = a.box();
    if (nb[i] == 0) throw SeriesError(SeriesErrc::BoxOverflow, std::string("derivative in ") + var + " of a degree-0 box");
    nb[i] -= 1;
    Series out(a.vars(), nb);
    auto& t = out.mutable_terms();
    for (auto& [e, c] : a.terms()) {
        if (e[i] == 0) continue;
        Exps f = e;
        f[i] -= 1;
        t.emplace(std::move(f), c * e[i]);
    }
    return out;
}

// Split a by powers of var: result[k] has var-exponent 0.
inline std::vector<Series> split_by(const Series& a, size_t i)
{
    Box base = a.box();
    int K = base[i];
    std::vector<Series> parts(size_t(K) + 1, Series(a.vars(), base));
    for (auto& [e, c] : a.terms()) {
        Exps f = e;
        f[i] = 0;
        parts[size_t(e[i])].mutable_terms().emplace(std::move(f), c);
    }
    return parts;
}

// (i) var := g with g(0) = 0.
inline Series substitute(const Series& a, char var, const Series& g)
{
    check_vars(a, g);
    if (g.constant_term() != 0)
        throw SeriesError(SeriesErrc::IllegalComposition, std::string("replacement for ") + var + " has a nonzero constant term");
    size_t i = size_t(a.vars().require(var));
    Box r = box_min(a.box(), g.box());
    auto parts = split_by(a, i);
    int K = a.box()[i];
    Series res = parts[size_t(K)].truncated(r);
    for (int k = K - 1; k >= 0; --k) res = res * g + parts[size_t(k)].truncated(r);
    bool self = !g.is_zero();
    for (auto& [e, c] : g.terms())
        if (e[i] == 0) self = false;
    if (!self) {
        Series gp = power(g.truncated(r), K + 1);
        if (!gp.is_zero())
            throw SeriesError(SeriesErrc::BoxOverflow, std::string("terms beyond the ") + var + "-box would leak into the result");
    }
    return res;
}

// (ii) var := w, another variable of the set; var leaves the variable set.
inline Series substitute_var(const Series& a, char var, char w)
{
    if (var == w) return a;
    size_t i = size_t(a.vars().require(var));
    size_t j = size_t(a.vars().require(w));
    VarSet nv = a.vars().without(var);
    Box nb;
    for (size_t k = 0; k < a.box().size(); ++k) {
        if (k == i) continue;
        nb.push_back(k == j ? std::min(a.box()[j], a.box()[i]) : a.box()[k]);
    }
    Series out(nv, nb);
    for (auto& [e, c] : a.terms()) {
        Exps f;
        for (size_t k = 0; k < e.size(); ++k) {
            if (k == i) continue;
            f.push_back(k == j ? e[j] + e[i] : e[k]);
        }
        if (out.in_box(f)) out.add_to(f, c);
    }
    return out;
}

inline int bound_max(const Series& a, const DegreeBound& b)
{
    int m = b.base;
    for (auto& [w, c] : b.coef) {
        int k = a.vars().require(w);
        if (c > 0) m += c * a.box()[size_t(k)];
    }
    return m;
}

// (iii) var := value, sound only under a certified degree bound for var.
// With shrink set, the box of that variable is reduced until the bound is covered.
inline Series substitute_value(const Series& a0, char var, const Rational& value, const DegreeBound& bound,
                               std::optional<char> shrink = std::nullopt)
{
    Series a = a0;
    size_t i = size_t(a.vars().require(var));
    if (shrink) {
        Box nb = a.box();
        size_t w = size_t(a.vars().require(*shrink));
        while (nb[w] >= 0) {
            Series probe(a.vars(), nb);
            if (bound_max(probe, bound) <= a.box()[i]) break;
            --nb[w];
        }
        if (nb[w] < 0) throw SeriesError(SeriesErrc::BoxOverflow, "no certified range for " + bound.str(var));
        a = a.truncated(nb);
    }
    int need = bound_max(a, bound);
    if (need > a.box()[i]) {
        std::ostringstream os;
        os << "setting " << var << " requires " << var << "-box >= " << need << " (" << bound.str(var) << "), have "
           << a.box()[i];
        throw SeriesError(SeriesErrc::BoxOverflow, os.str());
    }
    VarSet nv = a.vars().without(var);
    Box nb;
    for (size_t k = 0; k < a.box().size(); ++k)
        if (k != i) nb.push_back(a.box()[k]);
    Series out(nv, nb);
    std::vector<Rational> pw(size_t(a.box()[i]) + 1);
    pw[0] = 1;
    for (size_t k = 1; k < pw.size(); ++k) pw[k] = pw[k - 1] * value;
    for (auto& [e, c] : a.terms()) {
        Exps f;
        for (size_t k = 0; k < e.size(); ++k)
            if (k != i) f.push_back(e[k]);
        out.add_to(f, c * pw[size_t(e[i])]);
    }
    return out;
}

// x = s^2 embedding: asserts the odd s-part vanishes and returns the series in x.
inline Series from_sproxy(const Series& a, char to = 'x')
{
    size_t i = size_t(a.vars().require('s'));
    Box nb = a.box();
    nb[i] = a.box()[i] / 2;
    Series out(a.vars().renamed('s', to), nb);
    for (auto& [e, c] : a.terms()) {
        if (e[i] % 2) {
            std::ostringstream os;
            os << "odd power s^" << e[i] << " has coefficient " << c;
            throw SeriesError(SeriesErrc::OddPart, os.str());
        }
        Exps f = e;
        f[i] /= 2;
        if (out.in_box(f)) out.mutable_terms().emplace(std::move(f), c);
    }
    return out;
}

inline std::string exps_str(const Exps& e)
{
    std::string s;
    for (size_t i = 0; i < e.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(e[i]);
    }
    return s;
}

inline std::string rational_str(const Rational& c)
{
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline std::string dump(const Series& a)
{
    std::ostringstream os;
    os << "# vars " << a.vars().str() << " box " << exps_str(a.box()) << "\n";
    for (auto& [e, c] : a.terms()) os << exps_str(e) << '\t' << rational_str(c) << '\n';
    return os.str();
}

inline Series parse_dump(const std::string& text)
{
    std::istringstream is(text);
    std::string line;
    std::optional<Series> s;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string kv, names, kb, boxs;
            hs >> kv >> names >> kb >> boxs;
            Box b;
            std::istringstream bs(boxs);
            std::string tok;
            while (std::getline(bs, tok, ',')) b.push_back(std::stoi(tok));
            s.emplace(VarSet(names), b);
            continue;
        }
        if (!s) throw std::runtime_error("series dump without header");
        auto tab = line.find('\t');
        Exps e;
        std::istringstream es(line.substr(0, tab));
        std::string tok;
        while (std::getline(es, tok, ',')) e.push_back(std::stoi(tok));
        Rational c(line.substr(tab + 1));
        c.canonicalize();
        s->set(e, c);
    }
    if (!s) throw std::runtime_error("empty series dump");
    return *s;
}

// Coefficients of a univariate series as a vector indexed by exponent.
inline std::vector<Rational> coefficients(const Series& a)
{
    if (a.vars().size() != 1) throw SeriesError(SeriesErrc::VarMismatch, "coefficients() needs a univariate series");
    std::vector<Rational> v(size_t(a.box()[0]) + 1);
    for (auto& [e, c] : a.terms()) v[size_t(e[0])] = c;
    return v;
}

} // namespace cvx
