// One line per acceptance criterion: PASS/FAIL, then the sub-check detail.
#include "cvxpoly/verify.hpp"

#include <chrono>
#include <cstring>
#include <iostream>

int main(int argc, char** argv)
{
    cvx::VerifyOptions opt;
    opt.figure_path = std::string(CVXPOLY_DATA_DIR) + "/figure1.txt";
    opt.max_n = 12;
    opt.property_cases = 200;
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) ids.push_back(std::atoi(argv[++i]));
        else if (!std::strcmp(argv[i], "--threads") && i + 1 < argc) opt.threads = std::atoi(argv[++i]);
        else {
            std::cerr << "usage: acceptance [--criterion N]... [--threads K]\n";
            return 2;
        }
    }
    if (ids.empty())
        for (int i = 1; i <= cvx::criterion_count; ++i) ids.push_back(i);

    bool all = true;
    for (int id : ids) {
        auto t0 = std::chrono::steady_clock::now();
        cvx::CheckResult r = cvx::run_criterion(id, opt);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << (r.passed ? "PASS" : "FAIL") << " criterion " << id << " (" << r.title << "): " << r.summary << " ["
                  << secs << " s]\n";
        for (auto& l : r.lines) std::cout << "    " << l << '\n';
        all = all && r.passed;
    }
    return all ? 0 : 1;
}
