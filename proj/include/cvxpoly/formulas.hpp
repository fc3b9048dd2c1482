#pragma once

#include "numbers.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cvx {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<60>>;

class FormulaError : public std::runtime_error {
public:
    enum Code { UnknownName, OutOfDomain, IntegralityViolation, SourceUnavailable };
    FormulaError(Code c, const std::string& m) : std::runtime_error(m), code(c) {}
    Code code;
};

struct ExactFormulaInfo {
    std::string name;
    int min_n;
    bool quarantined;
    std::string description;
};

const std::vector<ExactFormulaInfo>& exact_formulas();

// The display evaluated literally, as a rational.
Rational exact_raw(const std::string& name, int n);

struct ExactValue {
    BigInt value;
    bool quarantined = false;
    Rational printed;      // literal evaluation of the display
    std::string note;
};

// Integer value in the domain. Non-quarantined formulas throw IntegralityViolation on a
// non-integer; quarantined ones substitute the oracle and describe the discrepancy.
ExactValue exact(const std::string& name, int n);

BigInt binomial(long n, long k);
BigInt fibonacci(long n);

struct AsymptoticInfo {
    std::string name;
    std::string description;
};

const std::vector<AsymptoticInfo>& asymptotic_targets();

Real asymptotic(const std::string& name, long n);

enum class Source { Formula, Series, Census };
Source parse_source(const std::string& s);

struct ConvergenceRow {
    int n;
    Rational exact;
    Real asym;
    Real ratio;
};

// Rows for n in [n_min, n_max] where the source defines the target.
std::vector<ConvergenceRow> convergence_report(const std::string& target, int n_min, int n_max, Source src);

struct ConvergenceSummary {
    int n_top = 0;
    Real err_top;
    bool tail_non_increasing = true;
    int first_increase = -1;
};

// |ratio - 1| at the top and monotonicity over the last half of the rows.
ConvergenceSummary summarize(const std::vector<ConvergenceRow>& rows);

std::string to_decimal(const Real& r, int digits = 30);
std::string rational_decimal(const Rational& q);

} // namespace cvx
