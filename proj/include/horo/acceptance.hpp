#pragma once

#include <string>
#include <vector>

namespace horo {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
    double limit_seconds = 0.0;
};

/// keylemma, steering, t3a, graph, octagon, contrast, hedlund, reduction,
/// structure, all. Throws InvalidArgument on an unknown suite.
std::vector<int> suite_criteria(const std::string& suite);
std::vector<std::string> suite_names();

/// Runs one criterion (1..10); a criterion also fails when it overruns its
/// runtime budget or throws.
CriterionResult run_criterion(int id);

/// "PASS 3 t3a-fibre-density 0.84s | detail".
std::string format_result(const CriterionResult& r);

}  // namespace horo
