#pragma once

#include "series.hpp"

#include <functional>
#include <memory>
#include <unordered_map>

namespace cvx {

// Expression trees over {const, var, +, -, *, /, sqrt, integer pow}, shared as DAGs.
class Ex {
public:
    enum class Op { Const, Var, Leaf, Add, Sub, Mul, Div, Neg, Pow, Sqrt, Deriv };

    struct Node {
        Op op;
        Rational value;
        char var = 0;
        int n = 0;
        std::vector<Ex> args;
        std::string label;
        std::shared_ptr<const Series> leaf;
    };

    Ex() : Ex(0) {}
    Ex(int v) : Ex(Rational(v)) {}
    Ex(long v) : Ex(Rational(v)) {}
    Ex(const Rational& v)
    {
        auto n = std::make_shared<Node>();
        n->op = Op::Const;
        n->value = v;
        p_ = n;
    }

    static Ex var(char v)
    {
        auto n = std::make_shared<Node>();
        n->op = Op::Var;
        n->var = v;
        return Ex(n);
    }

    // A precomputed series used as a leaf (e.g. an unknown supplied by another route).
    static Ex leaf(Series s, std::string label)
    {
        auto n = std::make_shared<Node>();
        n->op = Op::Leaf;
        n->leaf = std::make_shared<const Series>(std::move(s));
        n->label = std::move(label);
        return Ex(n);
    }

    static Ex make(Op op, std::vector<Ex> args, int k = 0, char v = 0)
    {
        auto n = std::make_shared<Node>();
        n->op = op;
        n->args = std::move(args);
        n->n = k;
        n->var = v;
        return Ex(n);
    }

    Ex named(std::string label) const
    {
        auto n = std::make_shared<Node>(*p_);
        n->label = std::move(label);
        return Ex(n);
    }

    const Node& node() const { return *p_; }
    const Node* id() const { return p_.get(); }

private:
    explicit Ex(std::shared_ptr<const Node> n) : p_(std::move(n)) {}
    std::shared_ptr<const Node> p_;
};

inline Ex operator+(const Ex& a, const Ex& b) { return Ex::make(Ex::Op::Add, {a, b}); }
inline Ex operator-(const Ex& a, const Ex& b) { return Ex::make(Ex::Op::Sub, {a, b}); }
inline Ex operator*(const Ex& a, const Ex& b) { return Ex::make(Ex::Op::Mul, {a, b}); }
inline Ex operator/(const Ex& a, const Ex& b) { return Ex::make(Ex::Op::Div, {a, b}); }
inline Ex operator-(const Ex& a) { return Ex::make(Ex::Op::Neg, {a}); }
inline Ex pow(const Ex& a, int k) { return Ex::make(Ex::Op::Pow, {a}, k); }
inline Ex sqrt(const Ex& a) { return Ex::make(Ex::Op::Sqrt, {a}); }
inline Ex diff(const Ex& a, char v) { return Ex::make(Ex::Op::Deriv, {a}, 0, v); }

inline Ex operator+(const Ex& a, int b) { return a + Ex(b); }
inline Ex operator+(int a, const Ex& b) { return Ex(a) + b; }
inline Ex operator-(const Ex& a, int b) { return a - Ex(b); }
inline Ex operator-(int a, const Ex& b) { return Ex(a) - b; }
inline Ex operator*(const Ex& a, int b) { return a * Ex(b); }
inline Ex operator*(int a, const Ex& b) { return Ex(a) * b; }
inline Ex operator/(const Ex& a, int b) { return a / Ex(b); }
inline Ex operator/(int a, const Ex& b) { return Ex(a) / b; }

inline const char* op_name(Ex::Op op)
{
    switch (op) {
    case Ex::Op::Const: return "const";
    case Ex::Op::Var: return "var";
    case Ex::Op::Leaf: return "leaf";
    case Ex::Op::Add: return "+";
    case Ex::Op::Sub: return "-";
    case Ex::Op::Mul: return "*";
    case Ex::Op::Div: return "/";
    case Ex::Op::Neg: return "neg";
    case Ex::Op::Pow: return "pow";
    case Ex::Op::Sqrt: return "sqrt";
    case Ex::Op::Deriv: return "d";
    }
    return "?";
}

// Variables not in the evaluation set may be bound to expressions over it (e.g. x -> s*s).
using Bindings = std::map<char, Ex>;

class Evaluator {
public:
    Evaluator(VarSet vars, Box box, Bindings bind = {}) : vars_(std::move(vars)), box_(std::move(box)), bind_(std::move(bind)) {}

    Series eval(const Ex& e)
    {
        auto it = cache_.find(e.id());
        if (it != cache_.end()) return it->second;
        Series r;
        try {
            r = compute(e);
        } catch (SeriesError& err) {
            const auto& n = e.node();
            std::string tag = n.label.empty() ? std::string(op_name(n.op)) : n.label;
            if (n.op == Ex::Op::Var) tag += std::string("(") + n.var + ")";
            err.push_path(tag);
            throw;
        }
        cache_.emplace(e.id(), r);
        return r;
    }

private:
    Series compute(const Ex& e)
    {
        const auto& n = e.node();
        switch (n.op) {
        case Ex::Op::Const: return Series::constant(vars_, box_, n.value);
        case Ex::Op::Var: {
            auto b = bind_.find(n.var);
            if (b != bind_.end()) return eval(b->second);
            if (!vars_.contains(n.var)) throw SeriesError(SeriesErrc::UnknownVar, std::string("unbound variable ") + n.var);
            return Series::variable(vars_, box_, n.var);
        }
        case Ex::Op::Leaf: {
            check_vars(*n.leaf, Series(vars_, box_));
            return n.leaf->truncated(box_min(n.leaf->box(), box_));
        }
        case Ex::Op::Add: return eval(n.args[0]) + eval(n.args[1]);
        case Ex::Op::Sub: return eval(n.args[0]) - eval(n.args[1]);
        case Ex::Op::Mul: return eval(n.args[0]) * eval(n.args[1]);
        case Ex::Op::Neg: return -eval(n.args[0]);
        case Ex::Op::Div: {
            const auto& d = n.args[1].node();
            if (d.op == Ex::Op::Const) {
                if (d.value == 0) throw SeriesError(SeriesErrc::NotAUnit, "division by constant zero");
                return scale(eval(n.args[0]), 1 / d.value);
            }
            return exact_div(eval(n.args[0]), eval(n.args[1]));
        }
        case Ex::Op::Pow: return power(eval(n.args[0]), n.n);
        case Ex::Op::Sqrt: return sqrt_unit(eval(n.args[0]));
        case Ex::Op::Deriv: return derive(eval(n.args[0]), n.var);
        }
        throw SeriesError(SeriesErrc::UnknownVar, "bad node");
    }

    VarSet vars_;
    Box box_;
    Bindings bind_;
    std::unordered_map<const Ex::Node*, Series> cache_;
};

inline Series eval_expr(const Ex& e, const VarSet& vars, const Box& box, const Bindings& bind = {})
{
    Evaluator ev(vars, box, bind);
    return ev.eval(e);
}

// Evaluates at a padded box until every division's box loss is absorbed, then truncates to box.
inline Series eval_to_box(const std::function<Series(const Box&)>& f, const Box& box, int rounds = 8)
{
    Box pad(box.size(), 0);
    for (int r = 0; r < rounds; ++r) {
        Box work(box.size());
        for (size_t i = 0; i < box.size(); ++i) work[i] = box[i] + pad[i];
        Series s = f(work);
        bool ok = true;
        for (size_t i = 0; i < box.size(); ++i)
            if (s.box()[i] < box[i]) {
                pad[i] += box[i] - s.box()[i];
                ok = false;
            }
        if (ok) return s.truncated(box);
    }
    throw SeriesError(SeriesErrc::BoxOverflow, "padding did not converge");
}

inline Series eval_to_box(const Ex& e, const VarSet& vars, const Box& box, const Bindings& bind = {})
{
    return eval_to_box([&](const Box& b) { return eval_expr(e, vars, b, bind); }, box);
}

} // namespace cvx
