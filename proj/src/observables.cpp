#include "qrg/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qrg {

namespace {

void check_cut(const Bipartition& cut) {
    if (cut.partA.empty() || int(cut.partA.size()) >= cut.nqubits)
        throw std::invalid_argument("Bipartition: partA must be a nonempty proper subset");
    for (int q : cut.partA)
        if (q < 1 || q > cut.nqubits)
            throw std::invalid_argument("Bipartition: label outside range");
}

std::vector<int> complement(const Bipartition& cut) {
    std::vector<int> b;
    for (int q = 1; q <= cut.nqubits; ++q)
        if (std::find(cut.partA.begin(), cut.partA.end(), q) == cut.partA.end())
            b.push_back(q);
    return b;
}

// rho_A (x) rho_B with qubits scattered back to their original positions
SymMatrix embed_product(const SymMatrix& rhoA, const std::vector<int>& A,
                        const SymMatrix& rhoB, const std::vector<int>& B, int n) {
    const int d = 1 << n;
    auto sub = [&](int idx, const std::vector<int>& labels) {
        int r = 0;
        for (int q : labels) r = (r << 1) | ((idx >> (n - q)) & 1);
        return r;
    };
    SymMatrix out(d);
    for (int r = 0; r < d; ++r)
        for (int c = r; c < d; ++c) {
            const double v = rhoA(sub(r, A), sub(c, A)) * rhoB(sub(r, B), sub(c, B));
            if (v != 0.0) out.set(r, c, v);
        }
    return out;
}

// plain dense product of symmetric matrices (result not symmetric in general)
std::vector<double> mat_mul(const std::vector<double>& x, const std::vector<double>& y, int n) {
    std::vector<double> r(std::size_t(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const double xik = x[std::size_t(i) * n + k];
            if (xik == 0.0) continue;
            for (int j = 0; j < n; ++j) r[std::size_t(i) * n + j] += xik * y[std::size_t(k) * n + j];
        }
    return r;
}

void check_density(const SymMatrix& rho) {
    if (std::abs(rho.trace() - 1.0) > 1e-10)
        throw std::invalid_argument("density matrix trace " + std::to_string(rho.trace()));
}

}  // namespace

double trace_distance_to_marginals(const PureState& psi, const Bipartition& cut) {
    check_cut(cut);
    std::vector<int> A(cut.partA);
    std::sort(A.begin(), A.end());
    const std::vector<int> B = complement(cut);

    const SymMatrix rho = density(psi);
    const SymMatrix rhoA = partial_trace(rho, cut.nqubits, A);
    const SymMatrix rhoB = partial_trace(rho, cut.nqubits, B);
    const SymMatrix prod = embed_product(rhoA, A, rhoB, B, cut.nqubits);

    SymMatrix diff(rho.dim());
    for (int i = 0; i < rho.dim(); ++i)
        for (int j = i; j < rho.dim(); ++j) diff.set(i, j, rho(i, j) - prod(i, j));
    return 0.5 * trace_norm(diff);
}

double concurrence(const SymMatrix& rho2q) {
    if (rho2q.dim() != 4) throw std::invalid_argument("concurrence: need a 4x4 density matrix");
    check_density(rho2q);
    const Spectrum sp = eigh(rho2q);
    for (double p : sp.values)
        if (p < -1e-10)
            throw std::invalid_argument("concurrence: negative eigenvalue " + std::to_string(p));

    // sqrt(rho) via the spectrum, then M = sqrt(rho) YY rho YY sqrt(rho):
    // symmetric PSD with the same eigenvalues as rho YY rho YY (real rho, so
    // the complex conjugate in the Wootters formula is the identity)
    std::vector<double> sq(16, 0.0);
    for (int k = 0; k < 4; ++k) {
        const double s = std::sqrt(std::max(0.0, sp.values[k]));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) sq[std::size_t(i) * 4 + j] += s * sp.vectors[k][i] * sp.vectors[k][j];
    }
    const SymMatrix yy_mat = pauli_yy();
    const std::vector<double>& yy = yy_mat.raw();
    std::vector<double> m = mat_mul(sq, yy, 4);
    m = mat_mul(m, rho2q.raw(), 4);
    m = mat_mul(m, yy, 4);
    m = mat_mul(m, sq, 4);
    const Spectrum ms = eigh(SymMatrix::from_dense(4, m, 1e-9));

    double roots[4];
    for (int k = 0; k < 4; ++k) roots[k] = std::sqrt(std::max(0.0, ms.values[k]));
    // ascending order: largest root is roots[3]
    const double c = roots[3] - roots[2] - roots[1] - roots[0];
    return std::clamp(c, 0.0, 1.0);
}

double eof_two_qubit(const SymMatrix& rho2q) {
    const double c = concurrence(rho2q);
    return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

double eof_pure_cut(const PureState& psi, const Bipartition& cut) {
    check_cut(cut);
    std::vector<int> A(cut.partA);
    std::sort(A.begin(), A.end());
    return von_neumann_entropy(partial_trace(density(psi), cut.nqubits, A));
}

namespace {

EntanglementReport tau_impl(const PureState& psi, int n) {
    if (psi.nqubits != n)
        throw std::invalid_argument("tau: expected " + std::to_string(n) + " qubits");
    EntanglementReport rep;
    const SymMatrix rho = density(psi);
    rep.ef_global = von_neumann_entropy(partial_trace(rho, n, {1}));
    double t = rep.ef_global * rep.ef_global;
    for (int k = 2; k <= n; ++k) {
        const double ef = eof_two_qubit(partial_trace(rho, n, {1, k}));
        rep.ef_pairs.push_back(ef);
        t -= ef * ef;
    }
    if (t < -1e-9)
        throw std::runtime_error("tau: monogamy violated, tau = " + std::to_string(t));
    rep.tau = std::max(t, 0.0);
    return rep;
}

}  // namespace

EntanglementReport tau_1d(const PureState& psi) { return tau_impl(psi, 3); }
EntanglementReport tau_2d(const PureState& psi) { return tau_impl(psi, 5); }

double trace_distance_1d(const PureState& psi) {
    return trace_distance_to_marginals(psi, {3, {1}});
}

double trace_distance_2d(const PureState& psi) {
    return trace_distance_to_marginals(psi, {5, {1, 2, 3, 4}});
}

}  // namespace qrg
