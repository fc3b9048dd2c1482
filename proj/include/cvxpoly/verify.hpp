#pragma once

#include "gfs.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cvx {

struct CheckResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string summary;
    std::vector<std::string> lines; // one per sub-check, prefixed "ok" or "FAIL"
};

struct VerifyOptions {
    int max_n = 12;          // census reach for the count criteria
    int threads = 1;
    std::string figure_path; // criterion 10
    unsigned seed = 20240611;
    int property_cases = 200;
};

constexpr int criterion_count = 10;

CheckResult run_criterion(int id, const VerifyOptions& opt);

// perimeter, interior, degrees, outer, kernels, identities, asymptotics, series, figure, all
std::vector<int> suite_criteria(const std::string& suite);

// The same generating function obtained from the column-transfer DP (derivatives, evaluations
// at 1 and remaps under certified bounds), on the same variables and box.
std::optional<Series> dp_reference(const std::string& name, const Box& box);

// A box where the catalog entry and its DP reference are both cheap and complete.
Box default_oracle_box(const std::string& name);

// Differences between two series on the common box, at most `limit` lines.
std::vector<std::string> series_diff(const Series& expected, const Series& actual, size_t limit = 5);

} // namespace cvx
