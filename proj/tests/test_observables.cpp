#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qrg/model1d.hpp"
#include "qrg/model2d.hpp"
#include "qrg/observables.hpp"

using namespace qrg;

namespace {

PureState random_state(std::mt19937& rng, int nq) {
    std::normal_distribution<double> gauss;
    std::vector<double> a(std::size_t(1) << nq);
    double norm2 = 0.0;
    for (double& x : a) {
        x = gauss(rng);
        norm2 += x * x;
    }
    for (double& x : a) x /= std::sqrt(norm2);
    return make_state(nq, a);
}

// Wootters concurrence via the subnormalized-eigenvector (decomposition)
// route, valid for rank <= 2 states: tau_ij = <v_i|YY|v_j> on the support,
// C = | |mu_1| - |mu_2| | for the eigenvalues mu of that 2x2.
double concurrence_rank2_oracle(const SymMatrix& rho) {
    const Spectrum sp = eigh(rho);
    std::vector<int> support;
    for (int k = 0; k < 4; ++k)
        if (sp.values[k] > 1e-12) support.push_back(k);
    REQUIRE(support.size() == 2);
    const SymMatrix yy = pauli_yy();
    double t[2][2];
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            double v = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    v += sp.vectors[support[a]][i] * yy(i, j) * sp.vectors[support[b]][j];
            t[a][b] = std::sqrt(sp.values[support[a]]) * std::sqrt(sp.values[support[b]]) * v;
        }
    SymMatrix tm(2);
    tm.set(0, 0, t[0][0]);
    tm.set(1, 1, t[1][1]);
    tm.set(0, 1, 0.5 * (t[0][1] + t[1][0]));
    const Spectrum ms = eigh(tm);
    return std::abs(std::abs(ms.values[0]) - std::abs(ms.values[1]));
}

// concurrence for any rank via C = max(0, 2 max|k| - sum|k|) where k are the
// eigenvalues of K = sqrt(rho) YY sqrt(rho); K^2 equals the Wootters product
// sqrt(rho) YY rho YY sqrt(rho), so |k_i| are its singular roots
double concurrence_abs_eig_oracle(const SymMatrix& rho) {
    const Spectrum sp = eigh(rho);
    std::vector<double> sq(16, 0.0);
    for (int k = 0; k < 4; ++k) {
        const double s = std::sqrt(std::max(0.0, sp.values[k]));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) sq[std::size_t(i) * 4 + j] += s * sp.vectors[k][i] * sp.vectors[k][j];
    }
    const SymMatrix yy = pauli_yy();
    SymMatrix kmat(4);
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            double v = 0.0;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) v += sq[std::size_t(i) * 4 + a] * yy(a, b) * sq[std::size_t(b) * 4 + j];
            kmat.set(i, j, v);
        }
    const Spectrum ks = eigh(kmat);
    double sum = 0.0, mx = 0.0;
    for (double v : ks.values) {
        sum += std::abs(v);
        mx = std::max(mx, std::abs(v));
    }
    return std::max(0.0, 2.0 * mx - sum);
}

// orthogonal rotation by angle th on one qubit of a 3-qubit state
PureState rotate_qubit(const PureState& psi, int qubit, double th) {
    const int n = psi.nqubits;
    const double c = std::cos(th), s = std::sin(th);
    std::vector<double> out(psi.amp.size(), 0.0);
    const int shift = n - qubit;
    for (int b = 0; b < int(psi.amp.size()); ++b) {
        const int bit = (b >> shift) & 1;
        const int flip = b ^ (1 << shift);
        out[b] += c * psi.amp[b];
        out[b] += (bit == 0 ? -s : s) * psi.amp[flip];
    }
    return make_state(n, out);
}

}  // namespace

TEST_CASE("trace distance: product states, frozen plateau values") {
    PureState prod = make_state(3, {0, 1, 0, 0, 0, 0, 0, 0});  // |up up down>
    CHECK(trace_distance_1d(prod) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(trace_distance_to_marginals(prod, {3, {2}}) == doctest::Approx(0.0).epsilon(1e-10));

    const auto p0 = ground_pair_1d({1.0, 0.0});
    const double d0 = trace_distance_1d(p0.phi0);
    CHECK(d0 == doctest::Approx(0.618).epsilon(8e-3));                    // rounded figure
    CHECK(d0 == doctest::Approx(0.62051270189221941).epsilon(1e-12));     // frozen
    const auto p1 = ground_pair_1d({1.0, 1.0});
    CHECK(trace_distance_1d(p1.phi0) == doctest::Approx(0.75).epsilon(7e-3));

    PureState prod5 = make_state(5, [] {
        std::vector<double> a(32, 0.0);
        a[0] = 1.0;
        return a;
    }());
    CHECK(trace_distance_2d(prod5) == doctest::Approx(0.0).epsilon(1e-10));

    const auto u0 = ground_pair_2d(0.0);
    CHECK(trace_distance_2d(u0.upsilon0) == doctest::Approx(0.718).epsilon(7e-3));
    CHECK(trace_distance_2d(u0.upsilon0) == doctest::Approx(0.71849791827592746).epsilon(1e-12));
    const auto u1 = ground_pair_2d(1.0);
    CHECK(trace_distance_2d(u1.upsilon0) == doctest::Approx(0.75).epsilon(7e-3));
}

TEST_CASE("trace distance: bounds, cut-swap identity, rotation invariance") {
    std::mt19937 rng(31415);
    for (int trial = 0; trial < 100; ++trial) {
        const PureState psi = random_state(rng, 3);
        const double d = trace_distance_1d(psi);
        CHECK(d >= 0.0);
        CHECK(d <= 1.0 + 1e-12);
        // same cut, swapped labels
        CHECK(std::abs(trace_distance_to_marginals(psi, {3, {1}}) -
                       trace_distance_to_marginals(psi, {3, {2, 3}})) < 1e-12);
    }
    std::uniform_real_distribution<double> ang(0.0, 6.28);
    for (int trial = 0; trial < 25; ++trial) {
        const PureState psi = random_state(rng, 3);
        const double d = trace_distance_1d(psi);
        const PureState rot = rotate_qubit(psi, 1 + trial % 3, ang(rng));
        CHECK(std::abs(trace_distance_1d(rot) - d) < 1e-9);
    }
}

TEST_CASE("cut choice {1,3}|{2}: constant 3/4, agrees with 1|23 on plateaus") {
    // For every parity-resolved ground state of the three-site block, the
    // trace distance for the middle-site cut equals 3/4 identically in gamma
    // (verified independently against a dense reference implementation), so
    // it carries no criticality signature of its own.  The two cuts coincide
    // wherever the 1|23 curve sits on its 0.75 plateau, i.e. everywhere the
    // renormalized flow lands away from the critical point.
    for (double g : {0.0, 0.05, 0.2, 0.5, 0.9, 1.0, 1.5, -0.3, -0.7, -1.5}) {
        const auto p = ground_pair_1d({1.0, g});
        CHECK(trace_distance_to_marginals(p.phi0, {3, {1, 3}}) ==
              doctest::Approx(0.75).epsilon(1e-10));
    }
    // step-2 flow, |gamma| >= 0.1: both cuts read the 0.75 plateau
    for (double g0 : {0.1, 0.4, 0.8, 1.2, -0.25, -1.0}) {
        double g = g0;
        for (int k = 0; k < 2; ++k) g = rg_step_1d({1.0, g}).gamma;
        const auto p = ground_pair_1d({1.0, g});
        const double d_main = trace_distance_1d(p.phi0);
        const double d_alt = trace_distance_to_marginals(p.phi0, {3, {1, 3}});
        CHECK(std::abs(d_main - d_alt) < 2e-2);
        CHECK(d_alt == doctest::Approx(0.75).epsilon(1e-10));
    }
    // exactly at criticality the cuts differ: the 1|23 cut alone dips
    const auto p0 = ground_pair_1d({1.0, 0.0});
    CHECK(trace_distance_1d(p0.phi0) < 0.63);
    CHECK(trace_distance_to_marginals(p0.phi0, {3, {1, 3}}) ==
          doctest::Approx(0.75).epsilon(1e-10));
}

TEST_CASE("concurrence: canonical cases and the rank-2 decomposition oracle") {
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(concurrence(density(make_state(2, {s, 0, 0, s}))) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(concurrence(density(make_state(2, {0, 1, 0, 0}))) == doctest::Approx(0.0).epsilon(1e-10));

    const auto p0 = ground_pair_1d({1.0, 0.0});
    const SymMatrix rho = density(p0.phi0);
    const SymMatrix r12 = partial_trace(rho, 3, {1, 2});
    const SymMatrix r13 = partial_trace(rho, 3, {1, 3});
    CHECK(concurrence(r12) == doctest::Approx(s).epsilon(1e-12));    // exactly 1/sqrt(2)
    CHECK(concurrence(r13) == doctest::Approx(0.5).epsilon(1e-10));  // exactly 1/2
    CHECK(std::abs(concurrence(r12) - concurrence_rank2_oracle(r12)) < 1e-8);
    CHECK(std::abs(concurrence(r13) - concurrence_rank2_oracle(r13)) < 1e-8);
    CHECK(std::abs(concurrence(r12) - concurrence_abs_eig_oracle(r12)) < 1e-8);
    CHECK(std::abs(concurrence(r13) - concurrence_abs_eig_oracle(r13)) < 1e-8);

    // oracle agreement on random rank-2 mixtures
    std::mt19937 rng(7);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> uni(0.1, 0.9);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> a(4), b(4);
        double na = 0.0;
        for (double& x : a) {
            x = gauss(rng);
            na += x * x;
        }
        for (double& x : a) x /= std::sqrt(na);
        double dot = 0.0, nb = 0.0;
        for (int i = 0; i < 4; ++i) b[i] = gauss(rng);
        for (int i = 0; i < 4; ++i) dot += a[i] * b[i];
        for (int i = 0; i < 4; ++i) b[i] -= dot * a[i];
        for (double x : b) nb += x * x;
        for (double& x : b) x /= std::sqrt(nb);
        const double p = uni(rng);
        SymMatrix mix(4);
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) mix.set(i, j, p * a[i] * a[j] + (1 - p) * b[i] * b[j]);
        CHECK(std::abs(concurrence(mix) - concurrence_rank2_oracle(mix)) < 1e-8);
        CHECK(std::abs(concurrence(mix) - concurrence_abs_eig_oracle(mix)) < 1e-8);
    }

    CHECK_THROWS(concurrence(SymMatrix(8)));              // wrong dimension
    CHECK_THROWS(concurrence(SymMatrix::identity(4)));    // trace 4, not a density matrix
}

TEST_CASE("eof_two_qubit: endpoints and the C=0.6 example") {
    CHECK(eof_two_qubit(density(make_state(2, {1, 0, 0, 0}))) == doctest::Approx(0.0).epsilon(1e-10));
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(eof_two_qubit(density(make_state(2, {s, 0, 0, s}))) == doctest::Approx(1.0).epsilon(1e-10));

    // |psi> = sqrt(0.9)|00> + sqrt(0.1)|11>: C = 2 sqrt(0.09) = 0.6 exactly
    PureState psi = make_state(2, {std::sqrt(0.9), 0.0, 0.0, std::sqrt(0.1)});
    CHECK(concurrence(density(psi)) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(eof_two_qubit(density(psi)) == doctest::Approx(0.46899559358928111).epsilon(1e-10));
    // consistency with the pure-cut entropy route
    CHECK(eof_pure_cut(psi, {2, {1}}) == doctest::Approx(0.46899559358928111).epsilon(1e-10));
}

TEST_CASE("eof_pure_cut: examples and complement symmetry") {
    PureState prod = make_state(3, {0, 0, 0, 0, 1, 0, 0, 0});
    CHECK(eof_pure_cut(prod, {3, {1}}) == doctest::Approx(0.0).epsilon(1e-10));

    const auto p1 = ground_pair_1d({1.0, 1.0});
    CHECK(eof_pure_cut(p1.phi0, {3, {1}}) == doctest::Approx(1.0).epsilon(1e-10));
    const auto p0 = ground_pair_1d({1.0, 0.0});
    CHECK(eof_pure_cut(p0.phi0, {3, {1}}) == doctest::Approx(0.81127812445913283).epsilon(1e-12));

    std::mt19937 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        const PureState psi = random_state(rng, 3);
        CHECK(std::abs(eof_pure_cut(psi, {3, {1}}) - eof_pure_cut(psi, {3, {2, 3}})) < 1e-10);
    }
}

TEST_CASE("tau_1d: GHZ, plateaus, frozen critical value, report consistency") {
    const double s = 1.0 / std::sqrt(2.0);
    PureState ghz = make_state(3, {s, 0, 0, 0, 0, 0, 0, s});
    const auto rep = tau_1d(ghz);
    CHECK(rep.tau == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rep.ef_global == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rep.ef_pairs[0] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(rep.ef_pairs[1] == doctest::Approx(0.0).epsilon(1e-10));

    for (double g : {1.0, -1.0}) {
        const auto p = ground_pair_1d({1.0, g});
        CHECK(tau_1d(p.phi0).tau == doctest::Approx(1.0).epsilon(5e-3));
    }

    // at the critical point: S(3/4)^2 - Ef(C=1/sqrt2)^2 - Ef(C=1/2)^2
    const auto p0 = ground_pair_1d({1.0, 0.0});
    const auto r0 = tau_1d(p0.phi0);
    CHECK(r0.tau == doctest::Approx(0.17139398553890636).epsilon(1e-9));
    CHECK(r0.ef_global == doctest::Approx(0.81127812445913283).epsilon(1e-12));
    CHECK(r0.ef_pairs[0] == doctest::Approx(0.6008760366928565).epsilon(1e-12));
    CHECK(r0.ef_pairs[1] == doctest::Approx(0.35457890266526954).epsilon(1e-12));
    const double recon = r0.ef_global * r0.ef_global - r0.ef_pairs[0] * r0.ef_pairs[0] -
                         r0.ef_pairs[1] * r0.ef_pairs[1];
    CHECK(r0.tau == doctest::Approx(recon).epsilon(1e-12));
}

TEST_CASE("tau_2d: GHZ, product, independent-path value at gamma=0") {
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<double> a(32, 0.0);
    a[0] = s;
    a[31] = s;
    CHECK(tau_2d(make_state(5, a)).tau == doctest::Approx(1.0).epsilon(1e-10));

    std::vector<double> b(32, 0.0);
    b[0] = 1.0;
    CHECK(tau_2d(make_state(5, b)).tau == doctest::Approx(0.0).epsilon(1e-10));

    // independent recomputation from linalg primitives: entropy of the center
    // marginal, and the |eig| concurrence oracle for the (rank-3) pairs
    const auto u = ground_pair_2d(0.0);
    const auto rep = tau_2d(u.upsilon0);
    const SymMatrix rho = density(u.upsilon0);
    const double sg = von_neumann_entropy(partial_trace(rho, 5, {1}));
    double t = sg * sg;
    for (int k = 2; k <= 5; ++k) {
        const double c = concurrence_abs_eig_oracle(partial_trace(rho, 5, {1, k}));
        const double ef = binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
        t -= ef * ef;
    }
    CHECK(rep.tau == doctest::Approx(t).epsilon(1e-7));
    CHECK(rep.tau == doctest::Approx(0.93803420459133235).epsilon(1e-9));
    // the four corner pairs are equivalent by symmetry
    for (int k = 1; k < 4; ++k)
        CHECK(rep.ef_pairs[k] == doctest::Approx(rep.ef_pairs[0]).epsilon(1e-10));
}

TEST_CASE("monogamy: tau >= 0 after clamp on 1000 random states") {
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 1000; ++trial) {
        const int nq = trial % 2 == 0 ? 3 : 5;
        const PureState psi = random_state(rng, nq);
        const auto rep = nq == 3 ? tau_1d(psi) : tau_2d(psi);
        CHECK(rep.tau >= 0.0);
        CHECK(rep.tau <= 1.0 + 1e-12);
        CHECK(rep.ef_global >= 0.0);
        CHECK(rep.ef_global <= 1.0 + 1e-12);
        for (double ef : rep.ef_pairs) {
            CHECK(ef >= 0.0);
            CHECK(ef <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("ground-state choice is irrelevant: phi1/Y1 match phi0/Y0, 50 gamma") {
    std::mt19937 rng(555);
    std::uniform_real_distribution<double> uni(-1.5, 1.5);
    for (int trial = 0; trial < 50; ++trial) {
        const double g = uni(rng);
        const auto p = ground_pair_1d({1.0, g});
        CHECK(std::abs(trace_distance_1d(p.phi0) - trace_distance_1d(p.phi1)) < 1e-8);
        CHECK(std::abs(tau_1d(p.phi0).tau - tau_1d(p.phi1).tau) < 1e-8);
        const auto u = ground_pair_2d(g);
        CHECK(std::abs(trace_distance_2d(u.upsilon0) - trace_distance_2d(u.upsilon1)) < 1e-8);
        CHECK(std::abs(tau_2d(u.upsilon0).tau - tau_2d(u.upsilon1).tau) < 1e-8);
    }
}

TEST_CASE("bipartition guards") {
    PureState psi = make_state(2, {1, 0, 0, 0});
    CHECK_THROWS(trace_distance_to_marginals(psi, {2, {}}));      // empty part
    CHECK_THROWS(trace_distance_to_marginals(psi, {2, {1, 2}}));  // not a proper subset
    CHECK_THROWS(trace_distance_to_marginals(psi, {2, {3}}));     // label out of range
}
