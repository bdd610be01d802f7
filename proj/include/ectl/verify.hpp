#ifndef ECTL_VERIFY_HPP
#define ECTL_VERIFY_HPP

#include <string>
#include <vector>

#include "ectl/config.hpp"

namespace ectl {

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;  // the quantity compared against threshold
    double threshold = 0.0;
    std::string detail;
};

// Knobs for harness-sanity tests: perturbing the drift-cancellation pulse
// angle away from pi must make that check fail.
struct FaultInjection {
    double drift_pulse_angle = 3.14159265358979323846;
};

// Runs every module's invariant checks with the configured seed.
std::vector<CheckResult> verify_suite(const ExperimentConfig& cfg,
                                      const FaultInjection& fault = {});

bool all_passed(const std::vector<CheckResult>& results);

} // namespace ectl

#endif
