#pragma once

#include "qrg/linalg.hpp"
#include "qrg/model1d.hpp"  // Couplings

namespace qrg {

struct ZetaSet {
    double zeta[11] = {};  // zeta[1..10]; [0] unused
    double varsigma = 1.0;
    double eta1 = 0.0;
    double eta2 = 0.0;
};

struct BlockGroundPair2D {
    PureState upsilon0;  // 5 qubits, odd down-count sector
    PureState upsilon1;  // even sector
    bool numeric_fallback = false;
};

struct XiSet {
    double xi0 = 0.0, xi1 = 0.0, xi2 = 0.0;
};

inline constexpr double kZetaBranch = 1e-8;  // |gamma| below this: gamma=0 limits

// h = (lambda/4) sum_{m=2..5} [(1+g) x1 xm + (1-g) y1 ym], center spin is
// qubit 1, corners 2..5; 32x32, traceless
SymMatrix block_hamiltonian_2d(const Couplings& c);

// zeta_1..zeta_10 with varsigma, eta1, eta2. Radicands are rationalized via
// varsigma - 1 = (g^4 + 34 g^2)/(varsigma + 1), which removes the catastrophic
// cancellation the verbatim forms suffer below |gamma| ~ 1e-5 (algebraically
// identical). Below kZetaBranch the limit values are used.
ZetaSet zeta_set(double gamma);

// Assembles |Y0>, |Y1> from the ZetaSet patterns and validates them against
// eigh of the block Hamiltonian (residual <= 1e-8). On validation failure
// falls back to numeric ground-space vectors fixed by a deterministic
// convention (parity-sector split, largest-amplitude-positive) and flags it.
BlockGroundPair2D ground_pair_2d(double gamma);

XiSet xi_set(double gamma);  // throws if xi0 <= 0

// lambda' = 6 lambda xi0,  g' = (2 xi1 + g xi2)/xi0
Couplings rg_step_2d(const Couplings& c);

}  // namespace qrg
