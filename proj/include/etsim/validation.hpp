#pragma once

#include <string>
#include <vector>

namespace etsim {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

/// Runs the analytic-vs-numeric cross-validation suite (the no-argument form
/// runs all twelve criteria). Every tolerance is pinned in the implementation.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& only = {}, int threads = 1);

/// One line per criterion: "PASS  3  d6-scaling  <detail>".
std::string format_results(const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace etsim
