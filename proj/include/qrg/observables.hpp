#pragma once

#include <vector>

#include "qrg/linalg.hpp"

namespace qrg {

struct Bipartition {
    int nqubits = 0;
    std::vector<int> partA;  // nonempty proper subset of {1..nqubits}
};

struct EntanglementReport {
    double ef_global = 0.0;            // E_f of the 1|rest cut, bits
    std::vector<double> ef_pairs;      // E_f(rho_1k), k = 2..n
    double tau = 0.0;
};

// 1/2 || |psi><psi| - rho_A (x) rho_B ||_1 with the product embedded back in
// the original qubit order
double trace_distance_to_marginals(const PureState& psi, const Bipartition& cut);

double concurrence(const SymMatrix& rho2q);     // Wootters closed form, real rho
double eof_two_qubit(const SymMatrix& rho2q);   // h((1+sqrt(1-C^2))/2), bits
double eof_pure_cut(const PureState& psi, const Bipartition& cut);  // S(rho_A)

EntanglementReport tau_1d(const PureState& psi);  // 3 qubits
EntanglementReport tau_2d(const PureState& psi);  // 5 qubits, center = qubit 1

double trace_distance_1d(const PureState& psi);   // cut 1|23
double trace_distance_2d(const PureState& psi);   // cut 1234|5

}  // namespace qrg
