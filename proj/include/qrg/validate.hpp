#pragma once

#include <string>
#include <vector>

#include "qrg/model1d.hpp"
#include "qrg/model2d.hpp"

namespace qrg {

// Independent numeric re-derivation of the RG maps: project the single
// inter-block bond onto the two-block ground manifold and read the couplings
// back off the resulting 4x4.
Couplings projector_oracle_1d(double gamma);  // 6-spin system, bond (3,4)
Couplings projector_oracle_2d(double gamma);  // 10-spin system, bond (2,8)

// Fault-injection switches for the self-check harness (test use only).
struct ValidationMutations {
    bool flip_zeta4 = false;          // corrupts the 2D analytic assembly
    bool natural_log_entropy = false; // wrong entropy base in plateau checks
};

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;  // includes failing gamma values when not passed
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_passed = false;
};

ValidationReport run_validation(const ValidationMutations& mut = {});

}  // namespace qrg
