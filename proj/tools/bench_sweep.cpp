// Timing harness: parallel sweep kernel vs the serial reference. Also checks
// that both produce bit-identical records, which is what makes the serial
// path usable as a test oracle.
#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#include "qrg/flow.hpp"

namespace {

double time_once(bool parallel, qrg::Model m, std::vector<qrg::SweepRecord>& out) {
    const std::vector<int> steps{0, 1, 2, 3};
    const auto t0 = std::chrono::steady_clock::now();
    out = parallel ? qrg::run_sweep(m, qrg::Observable::TraceDistance, steps, -1.5, 1.5, 241)
                   : qrg::run_sweep_serial(m, qrg::Observable::TraceDistance, steps, -1.5, 1.5, 241);
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

bool identical(const std::vector<qrg::SweepRecord>& a, const std::vector<qrg::SweepRecord>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        // bit-level comparison on purpose: the kernels must agree exactly
        if (a[i].step != b[i].step) return false;
        if (std::memcmp(&a[i].gamma, &b[i].gamma, sizeof(double)) != 0) return false;
        if (std::memcmp(&a[i].value, &b[i].value, sizeof(double)) != 0) return false;
        if (std::memcmp(&a[i].derivative, &b[i].derivative, sizeof(double)) != 0) return false;
    }
    return true;
}

}  // namespace

int main() {
    for (qrg::Model m : {qrg::Model::OneD, qrg::Model::TwoD}) {
        std::vector<qrg::SweepRecord> par, ser;
        // warm-up pass so first-touch costs don't pollute the parallel number
        time_once(true, m, par);
        const double tp = time_once(true, m, par);
        const double ts = time_once(false, m, ser);
        std::printf("%s: serial %.3fs  parallel %.3fs  speedup %.2fx  bit-identical %s\n",
                    to_string(m).c_str(), ts, tp, ts / tp, identical(par, ser) ? "yes" : "NO");
        if (!identical(par, ser)) return 1;
    }
    return 0;
}
