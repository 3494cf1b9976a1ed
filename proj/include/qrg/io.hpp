#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "qrg/flow.hpp"

namespace qrg {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kSizeConventionNote =
    "N(n) = 3^(n+1) for 1d and 5^(n+1) for 2d; intercepts depend on this convention";

std::string format_g17(double v);  // 17 significant digits, C locale

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& rows);
std::string sweep_json(const std::vector<SweepRecord>& rows);

struct ScalingRow {
    int n = 0;
    double N = 0.0;
    double gamma_m = 0.0;
    double max_abs_derivative = 0.0;
};

// data rows, then one `# theta=... c=... r2=...` line per fit (peak fit
// first, drift fit second when present)
void write_scaling_csv(std::ostream& os, const std::vector<ScalingRow>& rows,
                       const std::vector<ScalingFit>& fits);
std::string scaling_json(Model m, Observable o, const std::vector<ScalingRow>& rows,
                         const std::vector<ScalingFit>& fits,
                         const std::vector<std::string>& fit_names);

}  // namespace qrg
