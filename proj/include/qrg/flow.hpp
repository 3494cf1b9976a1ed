#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qrg/model1d.hpp"
#include "qrg/model2d.hpp"
#include "qrg/observables.hpp"

namespace qrg {

enum class Model { OneD, TwoD };
enum class Observable { TraceDistance, Tau };
enum class GroundChoice { First, Second };  // phi0/Y0 vs phi1/Y1

std::string to_string(Model m);
std::string to_string(Observable o);

double effective_size(Model m, int n);  // 3^(n+1) or 5^(n+1)

double renormalized_gamma(Model m, double gamma0, int n);
Couplings renormalized_couplings(Model m, const Couplings& c0, int n);

double observable_at_step(Model m, Observable o, double gamma0, int n,
                          GroundChoice which = GroundChoice::First);

// finite-difference step per step count (see derivative notes below)
double fd_step(Model m, int n);

struct DerivResult {
    double value = 0.0;
    bool one_sided = false;  // stencil kept clear of the zeta branch switch
};

// Two-step Richardson central difference; one-sided away from 0 while
// |gamma0| < branch + 10 h so the stencil never straddles the gamma=0
// formula switch.
DerivResult derivative_wrt_gamma(Model m, Observable o, double gamma0, int n);

struct PseudoCritical {
    double gamma_m = 0.0;
    double max_abs_derivative = 0.0;
};

// Coarse 801-point grid (symmetric log spacing when the range straddles 0,
// floored at the 1e-9 refinement tolerance) then golden-section refinement
// to |dgamma| <= 1e-9. Grid evaluation may run in parallel; refinement is
// single-threaded by contract.
PseudoCritical pseudo_critical_point(Model m, Observable o, int n,
                                     double lo = -1.5, double hi = 1.5,
                                     bool parallel = true);

struct ScalingFit {
    double theta = 0.0;
    double c = 0.0;
    double r_squared = 0.0;
    std::vector<std::pair<double, double>> points;  // (ln N, ln y)
};

ScalingFit scaling_fit(const std::vector<std::pair<double, double>>& n_vs_y);

struct SweepRecord {
    Model model;
    Observable observable;
    int step = 0;
    double gamma = 0.0;
    double value = 0.0;
    double derivative = 0.0;
    bool one_sided = false;
};

// One record per (step, gamma); rows sorted by (step, gamma). The parallel
// kernel and the serial reference produce bit-identical records.
std::vector<SweepRecord> run_sweep(Model m, Observable o, std::vector<int> steps,
                                   double gamma_min, double gamma_max, int points);
std::vector<SweepRecord> run_sweep_serial(Model m, Observable o, std::vector<int> steps,
                                          double gamma_min, double gamma_max, int points);

struct FixedPointReport {
    double gamma = 0.0;
    double slope = 0.0;  // |d gamma' / d gamma| at the root
    bool stable = false;
};

// Sign-change bisection of gamma'(g) - g to 1e-10 on [lo, hi]
std::vector<FixedPointReport> find_fixed_points(Model m, double lo = -1.5, double hi = 1.5);

}  // namespace qrg
