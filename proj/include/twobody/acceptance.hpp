#pragma once

// Numbered acceptance checks. Each one measures a worst-case error against a
// fixed threshold and a wall-clock budget; a check passes only when both hold.

#include <optional>
#include <string>
#include <vector>

namespace twobody::acceptance {

struct CriterionInfo {
    int id = 0;
    std::string title;
    double threshold = 0.0;
    double budget_seconds = 0.0;
    /// Part of the quick subset run by `check --fast`.
    bool fast = false;
};

struct CriterionResult {
    CriterionInfo info;
    bool passed = false;
    double measured = 0.0;
    double seconds = 0.0;
    std::string detail;
};

struct RunOptions {
    /// Evaluate Phi(0) from this many series terms instead of the full
    /// evaluation (a negative control for criterion 4).
    std::optional<long> phi_terms;
};

const std::vector<CriterionInfo>& criteria();

/// Throws std::out_of_range for an unknown id. Numerical exceptions raised
/// while measuring are reported as a failed result, not rethrown.
CriterionResult run_criterion(int id, const RunOptions& options = {});

/// One line: "CRITERION <id> PASS|FAIL <title>: measured ... threshold ... time ...".
std::string format_result(const CriterionResult& result);

}  // namespace twobody::acceptance
