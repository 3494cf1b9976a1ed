#include "qrg/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qrg {

namespace {

constexpr double kRefineTol = 1e-9;
constexpr int kCoarsePoints = 801;

double rg_gamma(Model m, double g) {
    return m == Model::OneD ? rg_step_1d({1.0, g}).gamma : rg_step_2d({1.0, g}).gamma;
}

// runs f(i) for i in [0, n) possibly concurrently, rethrowing the first error
template <typename F>
void parallel_for(int n, bool parallel, F&& f) {
    std::exception_ptr err;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (int i = 0; i < n; ++i) {
        try {
            f(i);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

}  // namespace

std::string to_string(Model m) { return m == Model::OneD ? "1d" : "2d"; }

std::string to_string(Observable o) {
    return o == Observable::TraceDistance ? "trace-distance" : "tau";
}

double effective_size(Model m, int n) {
    return std::pow(m == Model::OneD ? 3.0 : 5.0, n + 1);
}

double renormalized_gamma(Model m, double gamma0, int n) {
    if (n < 0) throw std::invalid_argument("renormalized_gamma: n must be >= 0");
    double g = gamma0;
    for (int k = 0; k < n; ++k) g = rg_gamma(m, g);
    return g;
}

Couplings renormalized_couplings(Model m, const Couplings& c0, int n) {
    if (n < 0) throw std::invalid_argument("renormalized_couplings: n must be >= 0");
    Couplings c = c0;
    for (int k = 0; k < n; ++k)
        c = m == Model::OneD ? rg_step_1d(c) : rg_step_2d(c);
    return c;
}

double observable_at_step(Model m, Observable o, double gamma0, int n, GroundChoice which) {
    const double g = renormalized_gamma(m, gamma0, n);
    if (m == Model::OneD) {
        const BlockGroundPair1D pair = ground_pair_1d({1.0, g});
        const PureState& psi = which == GroundChoice::First ? pair.phi0 : pair.phi1;
        return o == Observable::TraceDistance ? trace_distance_1d(psi) : tau_1d(psi).tau;
    }
    const BlockGroundPair2D pair = ground_pair_2d(g);
    const PureState& psi = which == GroundChoice::First ? pair.upsilon0 : pair.upsilon1;
    return o == Observable::TraceDistance ? trace_distance_2d(psi) : tau_2d(psi).tau;
}

double fd_step(Model m, int n) {
    // 1D: 1e-6 * max(1, 3^-n) is the constant 1e-6 for n >= 0.
    if (m == Model::OneD) return 1e-6;
    return std::max(1e-6 * std::pow(10.0, -n), 1e-12);
}

DerivResult derivative_wrt_gamma(Model m, Observable o, double gamma0, int n) {
    const double h = fd_step(m, n);
    auto f = [&](double g) { return observable_at_step(m, o, g, n); };
    if (std::abs(gamma0) < kZetaBranch + 10.0 * h) {
        // one-sided, pointing away from gamma=0 so the Richardson stencil
        // never crosses the branch switch
        const double s = gamma0 >= 0.0 ? 1.0 : -1.0;
        const double f0 = f(gamma0);
        const double d1 = (-3.0 * f0 + 4.0 * f(gamma0 + s * h) - f(gamma0 + 2.0 * s * h)) /
                          (2.0 * s * h);
        const double d2 = (-3.0 * f0 + 4.0 * f(gamma0 + s * h / 2.0) - f(gamma0 + s * h)) /
                          (s * h);
        return {(4.0 * d2 - d1) / 3.0, true};
    }
    auto central = [&](double t) { return (f(gamma0 + t) - f(gamma0 - t)) / (2.0 * t); };
    return {(4.0 * central(h) - central(2.0 * h)) / 3.0, false};
}

namespace {

std::vector<double> coarse_grid(double lo, double hi) {
    std::vector<double> xs;
    xs.reserve(kCoarsePoints);
    if (lo < 0.0 && hi > 0.0) {
        // log-spaced toward 0 from both sides; a uniform grid cannot resolve
        // the deep-step derivative peaks (width ~ growth-factor^-n)
        const int half = (kCoarsePoints - 1) / 2;
        for (int i = half - 1; i >= 0; --i)
            xs.push_back(-std::exp(std::log(kRefineTol) +
                                   (std::log(-lo) - std::log(kRefineTol)) * i / (half - 1)));
        xs.push_back(0.0);
        for (int i = 0; i < half; ++i)
            xs.push_back(std::exp(std::log(kRefineTol) +
                                  (std::log(hi) - std::log(kRefineTol)) * i / (half - 1)));
    } else {
        for (int i = 0; i < kCoarsePoints; ++i)
            xs.push_back(i == kCoarsePoints - 1
                             ? hi
                             : lo + (hi - lo) * i / (kCoarsePoints - 1));
    }
    return xs;
}

}  // namespace

PseudoCritical pseudo_critical_point(Model m, Observable o, int n, double lo, double hi,
                                     bool parallel) {
    if (n < 1) throw std::invalid_argument("pseudo_critical_point: n must be >= 1");
    if (!(lo < hi)) throw std::invalid_argument("pseudo_critical_point: empty range");
    auto f = [&](double g) { return std::abs(derivative_wrt_gamma(m, o, g, n).value); };

    const std::vector<double> xs = coarse_grid(lo, hi);
    std::vector<double> vals(xs.size());
    parallel_for(int(xs.size()), parallel, [&](int i) { vals[i] = f(xs[i]); });

    std::size_t k = 0;
    for (std::size_t j = 1; j < xs.size(); ++j)
        if (vals[j] > vals[k]) k = j;
    for (std::size_t j = 0; j < xs.size(); ++j)  // ties go to smaller |gamma|
        if (std::abs(vals[j] - vals[k]) <= 1e-12 && std::abs(xs[j]) < std::abs(xs[k])) k = j;
    if (k == 0 || k + 1 == xs.size())
        throw std::runtime_error("pseudo_critical_point: peak on range boundary (range too small)");

    // golden-section refinement on the bracketing cells (single-threaded)
    double a = xs[k - 1], b = xs[k + 1];
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > kRefineTol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    const double gm = 0.5 * (a + b);
    return {gm, f(gm)};
}

ScalingFit scaling_fit(const std::vector<std::pair<double, double>>& n_vs_y) {
    if (n_vs_y.size() < 3) throw std::invalid_argument("scaling_fit: need >= 3 points");
    ScalingFit fit;
    for (auto [N, y] : n_vs_y) {
        if (!(N > 0.0) || !(y > 0.0))
            throw std::invalid_argument("scaling_fit: nonpositive N or y");
        fit.points.emplace_back(std::log(N), std::log(y));
    }
    const double m = double(fit.points.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (auto [x, y] : fit.points) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double det = m * sxx - sx * sx;
    if (!(det > 1e-12 * std::max(1.0, m * sxx)))
        throw std::runtime_error("scaling_fit: degenerate abscissae");
    fit.theta = (m * sxy - sx * sy) / det;
    fit.c = (sy - fit.theta * sx) / m;
    double ss_res = 0.0, ss_tot = 0.0;
    const double ybar = sy / m;
    for (auto [x, y] : fit.points) {
        const double e = y - (fit.theta * x + fit.c);
        ss_res += e * e;
        ss_tot += (y - ybar) * (y - ybar);
    }
    fit.r_squared = ss_tot > 0.0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
    return fit;
}

namespace {

std::vector<SweepRecord> sweep_impl(Model m, Observable o, std::vector<int> steps,
                                    double gamma_min, double gamma_max, int points,
                                    bool parallel) {
    if (points < 2) throw std::invalid_argument("sweep: points must be >= 2");
    if (!(gamma_min < gamma_max)) throw std::invalid_argument("sweep: gamma_min >= gamma_max");
    if (steps.empty()) throw std::invalid_argument("sweep: empty step list");
    for (int s : steps)
        if (s < 0) throw std::invalid_argument("sweep: negative step");
    std::sort(steps.begin(), steps.end());
    steps.erase(std::unique(steps.begin(), steps.end()), steps.end());

    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i)
        grid[i] = i == points - 1 ? gamma_max : gamma_min + (gamma_max - gamma_min) * i / (points - 1);

    std::vector<SweepRecord> rows(steps.size() * std::size_t(points));
    parallel_for(int(rows.size()), parallel, [&](int idx) {
        const int si = idx / points, gi = idx % points;
        const int step = steps[si];
        const double g = grid[gi];
        const DerivResult d = derivative_wrt_gamma(m, o, g, step);
        rows[idx] = {m, o, step, g, observable_at_step(m, o, g, step), d.value, d.one_sided};
    });
    return rows;  // (step, gamma) order by construction
}

}  // namespace

std::vector<SweepRecord> run_sweep(Model m, Observable o, std::vector<int> steps,
                                   double gamma_min, double gamma_max, int points) {
    return sweep_impl(m, o, std::move(steps), gamma_min, gamma_max, points, true);
}

std::vector<SweepRecord> run_sweep_serial(Model m, Observable o, std::vector<int> steps,
                                          double gamma_min, double gamma_max, int points) {
    return sweep_impl(m, o, std::move(steps), gamma_min, gamma_max, points, false);
}

std::vector<FixedPointReport> find_fixed_points(Model m, double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("find_fixed_points: empty range");
    auto g = [&](double x) { return rg_gamma(m, x) - x; };

    const int cells = 3000;
    std::vector<double> roots;
    double x0 = lo, f0 = g(x0);
    for (int i = 1; i <= cells; ++i) {
        const double x1 = i == cells ? hi : lo + (hi - lo) * i / cells;
        const double f1 = g(x1);
        if (f0 == 0.0) roots.push_back(x0);
        if (f0 * f1 < 0.0) {
            double a = x0, b = x1, fa = f0;
            while (b - a > 1e-10) {
                const double mid = 0.5 * (a + b);
                const double fm = g(mid);
                if (fm == 0.0) {
                    a = b = mid;
                    break;
                }
                if (fa * fm < 0.0) {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        x0 = x1;
        f0 = f1;
    }
    if (f0 == 0.0) roots.push_back(x0);

    std::sort(roots.begin(), roots.end());
    std::vector<FixedPointReport> out;
    for (double r : roots) {
        if (!out.empty() && std::abs(r - out.back().gamma) < 1e-8) continue;
        const double h = 1e-6;
        const double slope = std::abs((rg_gamma(m, r + h) - rg_gamma(m, r - h)) / (2.0 * h));
        out.push_back({r, slope, slope < 1.0});
    }
    return out;
}

}  // namespace qrg
