// Acceptance criteria, shared by the acceptance binary and the selftest command.
#pragma once

#include "equitor/classifier.hpp"

namespace equitor {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::vector<std::string> details;
    double seconds = 0;
};

std::vector<int> acceptance_ids();
CriterionResult run_criterion(int id, int jobs = 1);

}  // namespace equitor
