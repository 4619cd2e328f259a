#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace tmsort::validation {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct Criterion {
    int id;
    std::string name;
    std::function<CriterionResult()> run;
};

const std::vector<Criterion>& criteria();

// "PASS  #3  parity zero cross-talk: ... (0.41 s)"
std::string format_line(const CriterionResult& r);

// Runs the selected criteria (all if `only` is empty), printing one line each
// to `log` as soon as it finishes.
std::vector<CriterionResult> run_acceptance(std::ostream& log, const std::vector<int>& only = {});

bool all_passed(const std::vector<CriterionResult>& rs);

}  // namespace tmsort::validation
