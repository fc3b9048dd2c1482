#include "cvxpoly/formulas.hpp"
#include "cvxpoly/io.hpp"
#include "cvxpoly/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#ifndef CVXPOLY_DATA_DIR
#define CVXPOLY_DATA_DIR "data"
#endif

using namespace cvx;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Output {
public:
    explicit Output(const std::string& path)
    {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("cannot write " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

// grade -> value, printed in grade order
using Column = std::map<int, Rational>;

Column from_coeffs(const std::vector<Rational>& c, int lo, int hi)
{
    Column out;
    for (int n = lo; n <= hi && n < int(c.size()); ++n) out[n] = c[size_t(n)];
    return out;
}

const char* series_for(const std::string& grade, const std::string& stat)
{
    if (grade == "sp") {
        if (stat == "count") return "cp_halfperimeter";
        if (stat == "int") return "f_dq_uni";
        if (stat == "d2") return "e_dq_uni";
        if (stat == "o") return "j_dq_uni";
    }
    if (grade == "outer" && stat == "count") return "j_outer_uni_true";
    if (grade == "deg23" && stat == "count") return "d_deg23";
    return nullptr;
}

const char* formula_for(const std::string& stat)
{
    if (stat == "count") return "count_perimeter";
    if (stat == "int") return "total_interior";
    if (stat == "d2") return "total_deg2";
    if (stat == "o") return "total_outer";
    return nullptr;
}

Column count_column(const std::string& stat, int max, const std::string& method, const std::string& grade, PolyClass cls,
                    int threads)
{
    const int lo = grade == "sp" ? 2 : 0;
    if (method == "brute") {
        std::vector<std::string> stats;
        if (stat != "count") stats.push_back(stat);
        CensusTable t;
        if (grade == "sp") t = census(max, cls, stats, threads);
        else if (grade == "outer") t = census_by_outer(max, stats, threads);
        else {
            // grade n of d2+d3 is complete once h+v <= n-2 is enumerated
            Histogram h = histogram(std::max(2, max - 2), "d2+d3", max, threads);
            Column c;
            for (auto& [g, n] : h.counts) c[g] = Rational(n);
            return c;
        }
        Column c;
        for (auto& [g, r] : t.rows) c[g] = Rational(stat == "count" ? r.count : r.totals.at(stat));
        return c;
    }
    if (method == "formula") {
        const char* f = formula_for(stat);
        Column c;
        for (auto& info : exact_formulas()) {
            if (info.name != f) continue;
            for (int n = std::max(lo, info.min_n); n <= max; ++n) {
                ExactValue v = exact(f, n);
                if (v.quarantined && n == std::max(lo, info.min_n)) std::cerr << "note: " << v.note << '\n';
                c[n] = Rational(v.value);
            }
        }
        return c;
    }
    const char* gf = series_for(grade, stat);
    Box box{max};
    if (method == "series") return from_coeffs(coefficients(build(gf, box)), lo, max);
    return from_coeffs(coefficients(*dp_reference(gf, box)), lo, max);
}

int cmd_count(const std::string& stat, int max, const std::string& method, const std::string& grade, const std::string& cls_name,
              const std::string& format, const std::string& out, int threads)
{
    PolyClass cls = parse_class(cls_name);
    static const std::vector<std::string> grades = {"sp", "outer", "deg23"};
    if (std::find(grades.begin(), grades.end(), grade) == grades.end()) throw UsageError("unknown grading " + grade);
    if (stat != "count" && std::find(census_stat_names().begin(), census_stat_names().end(), stat) == census_stat_names().end())
        throw UsageError("unknown statistic " + stat);
    if (method != "brute") {
        if (cls != PolyClass::CP) throw UsageError("--class other than cp needs --method brute");
        if (method == "formula" && (grade != "sp" || !formula_for(stat)))
            throw UsageError("no closed formula for " + stat + " graded by " + grade + " (formulas: count, int, d2, o by sp)");
        if ((method == "series" || method == "dp") && !series_for(grade, stat))
            throw UsageError("no generating function for " + stat + " graded by " + grade +
                             " (series/dp: count, int, d2, o by sp; count by outer or deg23)");
    }
    if (grade == "deg23" && stat != "count") throw UsageError("--grade deg23 supports --stat count only");
    if (max < 2) throw UsageError("--max must be at least 2");
    Column c = count_column(stat, max, method, grade, cls, threads);
    Output o(out);
    const std::string gname = grade == "sp" ? "semiperimeter" : grade == "outer" ? "outer" : "deg23";
    const std::string vname = stat == "count" ? "count" : "total_" + stat;
    if (format == "json") {
        json rows = json::array();
        for (auto& [g, v] : c) rows.push_back({{gname, g}, {vname, rational_str(v)}});
        o.os() << json{{"method", method}, {"rows", rows}}.dump(2) << '\n';
    } else {
        o.os() << gname << ',' << vname << '\n';
        for (auto& [g, v] : c) o.os() << g << ',' << rational_str(v) << '\n';
    }
    return 0;
}

int cmd_enumerate(int max_sp, const std::string& cls_name, const std::string& emit, const std::string& out)
{
    PolyClass cls = parse_class(cls_name);
    if (emit != "spans" && emit != "cells" && emit != "stats") throw UsageError("--emit must be spans, cells or stats");
    if (max_sp < 2) throw UsageError("--max-sp must be at least 2");
    Output o(out);
    auto& os = o.os();
    static const std::vector<std::string> cols = {"v", "h", "a", "c", "perimeter", "int", "d2", "d3", "d4", "o"};
    if (emit == "stats") {
        for (size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
        os << '\n';
    }
    bool first = true;
    enumerate(max_sp, cls, [&](const std::vector<ColumnSpan>& spans) {
        ConvexPolyomino p = ConvexPolyomino::unchecked(spans);
        if (emit == "spans") {
            os << (first ? "" : "\n") << spans_text(p);
        } else if (emit == "cells") {
            os << cells_json(p).dump() << '\n';
        } else {
            StatVector s = compute_stats(p);
            for (size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << s.get(cols[i]);
            os << '\n';
        }
        first = false;
    });
    return 0;
}

int cmd_series(const std::string& gf, const std::string& box, const std::string& format, const std::string& out)
{
    Series s = build_spec(gf, box);
    Output o(out);
    if (format == "json") {
        json terms = json::array();
        for (auto& [e, c] : s.terms()) terms.push_back({{"exps", e}, {"coeff", rational_str(c)}});
        o.os() << json{{"gf", gf}, {"vars", s.vars().str()}, {"box", s.box()}, {"terms", terms}}.dump(2) << '\n';
    } else if (format == "dump") {
        o.os() << dump(s);
    } else {
        throw UsageError("--format must be dump or json");
    }
    return 0;
}

int cmd_verify(const std::string& suite, int max, int threads, const std::string& figure)
{
    VerifyOptions opt;
    opt.max_n = max;
    opt.threads = threads;
    opt.figure_path = figure;
    std::vector<int> ids;
    try {
        ids = suite_criteria(suite);
    } catch (std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    bool all = true;
    for (int id : ids) {
        CheckResult r = run_criterion(id, opt);
        std::cout << "[" << (r.passed ? "PASS" : "FAIL") << "] " << id << " " << r.title << ": " << r.summary << '\n';
        for (auto& l : r.lines) std::cout << "    " << l << '\n';
        all = all && r.passed;
    }
    return all ? 0 : 1;
}

int cmd_asymptotic(const std::string& target, int min_n, int max_n, const std::string& source, const std::string& out)
{
    Source src = parse_source(source);
    auto rows = convergence_report(target, min_n, max_n, src);
    Output o(out);
    o.os() << "n,exact,asymptotic,ratio\n";
    for (auto& r : rows) o.os() << r.n << ',' << rational_str(r.exact) << ',' << to_decimal(r.asym) << ',' << to_decimal(r.ratio) << '\n';
    return 0;
}

int cmd_stats(const std::string& in, const std::string& format, const std::string& out)
{
    StatVector s = compute_stats(read_polyomino_file(in));
    Output o(out);
    json j = stats_json(s);
    if (format == "json") {
        o.os() << j.dump(2) << '\n';
    } else {
        std::string head, row;
        for (auto& [k, v] : j.items()) {
            head += (head.empty() ? "" : ",") + k;
            row += (row.empty() ? "" : ",") + v.dump();
        }
        o.os() << head << '\n' << row << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Convex polyomino enumeration, generating functions and cross-checks"};
    app.require_subcommand(1);
    int threads = 1;
    std::string out, format;

    auto* en = app.add_subcommand("enumerate", "list convex polyominoes up to a semiperimeter");
    int en_max = 0;
    std::string en_class = "cp", en_emit = "spans";
    en->add_option("--max-sp", en_max, "largest semiperimeter")->required();
    en->add_option("--class", en_class, "cp, cpu, cpb or cpbu");
    en->add_option("--emit", en_emit, "spans, cells or stats");
    en->add_option("-o,--out", out, "output file");

    auto* co = app.add_subcommand("count", "counts or statistic totals by a grading");
    std::string co_stat = "count", co_method = "brute", co_grade = "sp", co_class = "cp";
    int co_max = 0;
    co->add_option("--stat", co_stat, "count or one of a, c, int, d2, d3, d4, o, perimeter, v, h");
    co->add_option("--max", co_max, "largest grade")->required();
    co->add_option("--method", co_method, "brute, dp, series or formula");
    co->add_option("--grade", co_grade, "sp, outer or deg23");
    co->add_option("--class", co_class, "polyomino class (brute force only)");
    co->add_option("--format", format, "csv or json");
    co->add_option("--threads", threads, "enumeration threads");
    co->add_option("-o,--out", out, "output file");

    auto* se = app.add_subcommand("series", "expand a catalog generating function");
    std::string se_gf, se_box;
    se->add_option("--gf", se_gf, "catalog name")->required();
    se->add_option("--box", se_box, "degree bounds, e.g. x=8,y=8")->required();
    se->add_option("--format", format, "dump or json");
    se->add_option("-o,--out", out, "output file");

    auto* ve = app.add_subcommand("verify", "run acceptance checks");
    std::string ve_suite = "all", ve_fig = std::string(CVXPOLY_DATA_DIR) + "/figure1.txt";
    int ve_max = 12;
    ve->add_option("--suite", ve_suite, "perimeter, interior, degrees, outer, kernels, identities, asymptotics, series, figure, all");
    ve->add_option("--max", ve_max, "census semiperimeter reach");
    ve->add_option("--threads", threads, "enumeration threads");
    ve->add_option("--figure", ve_fig, "figure polyomino file");

    auto* as = app.add_subcommand("asymptotic", "exact versus asymptotic ratios");
    std::string as_target, as_source = "formula";
    int as_max = 0, as_min = 5;
    as->add_option("--target", as_target, "target name")->required();
    as->add_option("--max-n", as_max, "largest n")->required();
    as->add_option("--min-n", as_min, "smallest n");
    as->add_option("--source", as_source, "formula, series or census");
    as->add_option("-o,--out", out, "output file");

    auto* st = app.add_subcommand("stats", "statistics of one polyomino file");
    std::string st_in;
    st->add_option("--in", st_in, "polyomino file (x b u lines or cells JSON)")->required();
    st->add_option("--format", format, "json or csv");
    st->add_option("-o,--out", out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*en) return cmd_enumerate(en_max, en_class, en_emit, out);
        if (*co) return cmd_count(co_stat, co_max, co_method, co_grade, co_class, format.empty() ? "csv" : format, out, threads);
        if (*se) return cmd_series(se_gf, se_box, format.empty() ? "dump" : format, out);
        if (*ve) return cmd_verify(ve_suite, ve_max, threads, ve_fig);
        if (*as) return cmd_asymptotic(as_target, as_min, as_max, as_source, out);
        if (*st) return cmd_stats(st_in, format.empty() ? "json" : format, out);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const GfError& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (e.code == GfError::UnknownName) {
            std::cerr << "known names:";
            for (auto& g : gf_catalog()) std::cerr << ' ' << g.name;
            std::cerr << '\n';
        }
        return 2;
    } catch (const EnumError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const FormulaError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
