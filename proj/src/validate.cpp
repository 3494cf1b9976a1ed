#include "qrg/validate.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "qrg/flow.hpp"
#include "qrg/observables.hpp"

namespace qrg {

namespace {

// columns of kron(P, P) where P has the block ground pair as columns
std::vector<std::vector<double>> two_block_basis(const std::vector<double>& s0,
                                                 const std::vector<double>& s1) {
    const std::size_t d = s0.size();
    std::vector<std::vector<double>> cols(4, std::vector<double>(d * d));
    const std::vector<double>* s[2] = {&s0, &s1};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    cols[2 * a + b][i * d + j] = (*s[a])[i] * (*s[b])[j];
    return cols;
}

// G = P^T H P restricted to the bond term, then the xx/yy weights of G
Couplings read_couplings(const SymMatrix& bond, const std::vector<std::vector<double>>& cols) {
    const int d = bond.dim();
    double G[4][4] = {};
    for (int a = 0; a < 4; ++a) {
        std::vector<double> hb(d, 0.0);
        for (int i = 0; i < d; ++i) {
            double s = 0.0;
            for (int j = 0; j < d; ++j) s += bond(i, j) * cols[a][j];
            hb[i] = s;
        }
        for (int b = 0; b < 4; ++b) {
            double s = 0.0;
            for (int i = 0; i < d; ++i) s += cols[b][i] * hb[i];
            G[b][a] = s;
        }
    }
    const SymMatrix xx = kron(pauli_x(), pauli_x());
    const SymMatrix yy = pauli_yy();
    double cxx = 0.0, cyy = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cxx += G[i][j] * xx(j, i);
            cyy += G[i][j] * yy(j, i);
        }
    cxx /= 4.0;
    cyy /= 4.0;
    const double lam = 2.0 * (cxx + cyy);
    const double gam = lam == 0.0 ? 0.0 : (cxx - cyy) / (cxx + cyy);
    return {lam, gam};
}

}  // namespace

Couplings projector_oracle_1d(double gamma) {
    const BlockGroundPair1D pair = ground_pair_1d({1.0, gamma});
    SymMatrix bond(64);
    {
        const SymMatrix xx = two_site_term(6, 3, 4, Axis::X);
        const SymMatrix yy = two_site_term(6, 3, 4, Axis::Y);
        const double fx = (1.0 + gamma) / 4.0, fy = (1.0 - gamma) / 4.0;
        for (int i = 0; i < 64; ++i)
            for (int j = i; j < 64; ++j) {
                const double v = fx * xx(i, j) + fy * yy(i, j);
                if (v != 0.0) bond.set(i, j, v);
            }
    }
    return read_couplings(bond, two_block_basis(pair.phi0.amp, pair.phi1.amp));
}

Couplings projector_oracle_2d(double gamma) {
    const BlockGroundPair2D pair = ground_pair_2d(gamma);
    SymMatrix bond(1024);
    {
        const SymMatrix xx = two_site_term(10, 2, 8, Axis::X);
        const SymMatrix yy = two_site_term(10, 2, 8, Axis::Y);
        const double fx = (1.0 + gamma) / 4.0, fy = (1.0 - gamma) / 4.0;
        for (int i = 0; i < 1024; ++i)
            for (int j = i; j < 1024; ++j) {
                const double v = fx * xx(i, j) + fy * yy(i, j);
                if (v != 0.0) bond.set(i, j, v);
            }
    }
    const Couplings single =
        read_couplings(bond, two_block_basis(pair.upsilon0.amp, pair.upsilon1.amp));
    // six equivalent corner bonds contribute; a single bond carries lambda'/6
    return {6.0 * single.lambda, single.gamma};
}

namespace {

std::vector<double> gamma_samples(int count) {
    std::vector<double> gs;
    for (int i = 0; i < count; ++i) gs.push_back(-1.5 + 3.0 * i / (count - 1));
    return gs;
}

std::string list_failures(const std::vector<double>& gs) {
    std::ostringstream os;
    os << "failing gamma:";
    for (std::size_t i = 0; i < gs.size() && i < 8; ++i) os << " " << gs[i];
    if (gs.size() > 8) os << " (+" << gs.size() - 8 << " more)";
    return os.str();
}

CheckResult check_ground_pair_1d() {
    std::vector<double> bad;
    for (double g : gamma_samples(100)) {
        try {
            ground_pair_1d({1.0, g});
        } catch (const std::exception&) {
            bad.push_back(g);
        }
    }
    return {"ground_pair_1d", bad.empty(),
            bad.empty() ? "analytic pair in numeric ground space, 100 samples"
                        : list_failures(bad)};
}

CheckResult check_ground_pair_2d(const ValidationMutations& mut) {
    std::vector<double> bad;
    for (double g : gamma_samples(100)) {
        try {
            ZetaSet z = zeta_set(g);
            if (mut.flip_zeta4) z.zeta[4] = -z.zeta[4];
            std::vector<double> u0(32, 0.0);
            const int w1[] = {0b00001, 0b00010, 0b00100, 0b01000};
            const int w3c[] = {0b00111, 0b01011, 0b01101, 0b01110};
            const int w2m[] = {0b10011, 0b10101, 0b10110, 0b11001, 0b11010, 0b11100};
            for (int b : w1) u0[b] = z.zeta[1];
            for (int b : w3c) u0[b] = z.zeta[2];
            u0[0b10000] = z.zeta[3];
            for (int b : w2m) u0[b] = z.zeta[4];
            u0[0b11111] = z.zeta[5];

            const SymMatrix h = block_hamiltonian_2d({1.0, g});
            const Spectrum sp = eigh(h);
            double res = 0.0;
            for (int i = 0; i < 32; ++i) {
                double hv = 0.0;
                for (int j = 0; j < 32; ++j) hv += h(i, j) * u0[j];
                res = std::max(res, std::abs(hv - sp.values[0] * u0[i]));
            }
            if (res > 1e-8) bad.push_back(g);
        } catch (const std::exception&) {
            bad.push_back(g);
        }
    }
    return {"ground_pair_2d", bad.empty(),
            bad.empty() ? "analytic pair in numeric ground space, 100 samples"
                        : list_failures(bad)};
}

CheckResult check_normalization() {
    std::vector<double> bad;
    for (double g : gamma_samples(100)) {
        const ZetaSet zs = zeta_set(g);
        const double* z = zs.zeta;
        const double n0 = 4 * z[1] * z[1] + 4 * z[2] * z[2] + z[3] * z[3] + 6 * z[4] * z[4] +
                          z[5] * z[5];
        const double n1 = z[6] * z[6] + 6 * z[7] * z[7] + z[8] * z[8] + 4 * z[9] * z[9] +
                          4 * z[10] * z[10];
        if (std::abs(n0 - 1.0) > 1e-10 || std::abs(n1 - 1.0) > 1e-10) bad.push_back(g);
    }
    return {"normalization_identities", bad.empty(),
            bad.empty() ? "both multiplicity sums equal 1, 100 samples" : list_failures(bad)};
}

CheckResult check_monogamy() {
    std::mt19937 rng(20240817);
    std::normal_distribution<double> dist;
    int violations = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = trial % 2 == 0 ? 3 : 5;
        std::vector<double> amp(std::size_t(1) << n);
        double n2 = 0.0;
        for (double& a : amp) {
            a = dist(rng);
            n2 += a * a;
        }
        const double inv = 1.0 / std::sqrt(n2);
        for (double& a : amp) a *= inv;
        const PureState psi{n, std::move(amp)};
        const EntanglementReport rep = n == 3 ? tau_1d(psi) : tau_2d(psi);
        worst = std::min(worst, rep.tau);
        if (rep.tau < -1e-9) ++violations;
    }
    std::ostringstream os;
    os << "1000 random states, min tau = " << worst;
    return {"monogamy_sample", violations == 0, os.str()};
}

CheckResult check_plateaus(const ValidationMutations& mut) {
    const double scale = mut.natural_log_entropy ? std::log(2.0) : 1.0;
    std::vector<std::string> fails;
    auto tau_scaled = [&](const EntanglementReport& rep) {
        double t = scale * rep.ef_global * scale * rep.ef_global;
        for (double ef : rep.ef_pairs) t -= scale * ef * scale * ef;
        return t;
    };
    for (double g : {1.0, -1.0}) {
        const BlockGroundPair1D p1 = ground_pair_1d({1.0, g});
        if (std::abs(tau_scaled(tau_1d(p1.phi0)) - 1.0) > 5e-3)
            fails.push_back("tau_1d(" + std::to_string(g) + ")");
        if (std::abs(trace_distance_1d(p1.phi0) - 0.75) > 5e-3)
            fails.push_back("D_1d(" + std::to_string(g) + ")");
        const BlockGroundPair2D p2 = ground_pair_2d(g);
        if (std::abs(tau_scaled(tau_2d(p2.upsilon0)) - 1.0) > 5e-3)
            fails.push_back("tau_2d(" + std::to_string(g) + ")");
        if (std::abs(trace_distance_2d(p2.upsilon0) - 0.75) > 5e-3)
            fails.push_back("D_2d(" + std::to_string(g) + ")");
    }
    std::string detail = "fixed-point plateaus D=0.750, tau=1";
    if (!fails.empty()) {
        detail = "failed:";
        for (const auto& f : fails) detail += " " + f;
    }
    return {"plateau_values", fails.empty(), detail};
}

CheckResult check_projector_oracle(Model which) {
    std::vector<double> bad;
    const double tol = which == Model::OneD ? 1e-8 : 1e-6;
    for (double g : {-1.2, -0.7, -0.3, 0.0, 0.05, 0.3, 0.5, 0.8, 1.0, 1.4}) {
        const Couplings oracle =
            which == Model::OneD ? projector_oracle_1d(g) : projector_oracle_2d(g);
        const Couplings map =
            which == Model::OneD ? rg_step_1d({1.0, g}) : rg_step_2d({1.0, g});
        if (std::abs(oracle.lambda - map.lambda) > tol || std::abs(oracle.gamma - map.gamma) > tol)
            bad.push_back(g);
    }
    const std::string name =
        which == Model::OneD ? "projector_oracle_1d" : "projector_oracle_2d";
    return {name, bad.empty(),
            bad.empty() ? "RG map matches P^T H P construction" : list_failures(bad)};
}

}  // namespace

ValidationReport run_validation(const ValidationMutations& mut) {
    ValidationReport rep;
    rep.checks.push_back(check_ground_pair_1d());
    rep.checks.push_back(check_ground_pair_2d(mut));
    rep.checks.push_back(check_normalization());
    rep.checks.push_back(check_monogamy());
    rep.checks.push_back(check_plateaus(mut));
    rep.checks.push_back(check_projector_oracle(Model::OneD));
    rep.checks.push_back(check_projector_oracle(Model::TwoD));
    rep.all_passed = true;
    for (const auto& c : rep.checks) rep.all_passed = rep.all_passed && c.passed;
    return rep;
}

}  // namespace qrg
