// validate.hpp - cross-method, scaling, limit and inequality checks plus the
// closed-form discrepancy report

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "masertur/sweep.hpp"

namespace masertur {

struct CheckResult {
    std::string name;
    bool pass = false;
    bool quarantined = false; // informational: never affects the exit status
    std::string detail;
};

struct ValidationOptions {
    std::uint64_t seed = 12345;
    bool with_trajectory = false;
    int workers = 0;
};

std::vector<CheckResult> run_validation(const ValidationOptions& opts);

// Signed relative errors of the printed-formula evaluators (Model I Q,
// Model II Q, coefficient closed forms) against the FCS pipeline, plus the
// transcription notes. Always generatable; content is documentation.
std::string discrepancy_report();

} // namespace masertur
