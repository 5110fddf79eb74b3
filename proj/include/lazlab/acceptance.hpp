#pragma once

#include <functional>
#include <string>
#include <vector>

namespace lazlab {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

inline constexpr int kCriterionCount = 11;

/// Runs acceptance criterion `id` (1-based). Exceptions are caught and
/// reported as failures.
CriterionResult run_criterion(int id);

/// Runs every criterion in order, calling `report` after each one.
std::vector<CriterionResult> run_acceptance(
    const std::function<void(const CriterionResult&)>& report = {});

/// "[PASS] 3 structural zeros: ..." on one line.
std::string format_result(const CriterionResult& r);

}  // namespace lazlab
