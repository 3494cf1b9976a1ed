#pragma once

#include "qrg/linalg.hpp"

namespace qrg {

struct Couplings {
    double lambda = 1.0;
    double gamma = 0.0;
};

struct BlockGroundPair1D {
    PureState phi0;  // 3 qubits
    PureState phi1;
    double energy = 0.0;  // shared ground energy, reported numerically
};

// h = (lambda/4)[(1+g)(x1x2 + x2x3) + (1-g)(y1y2 + y2y3)], 8x8, traceless
SymMatrix block_hamiltonian_1d(const Couplings& c);

// Closed-form degenerate ground pair, validated against eigh of the block
// Hamiltonian (residual <= 1e-9); throws naming gamma on failure.
BlockGroundPair1D ground_pair_1d(const Couplings& c);

// lambda' = lambda (3g^2+1)/(2(1+g^2)),  g' = (g^3+3g)/(3g^2+1)
Couplings rg_step_1d(const Couplings& c);

// d(g')/dg in closed form
double rg_step_derivative_1d(double gamma);

}  // namespace qrg
