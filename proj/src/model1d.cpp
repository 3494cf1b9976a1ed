#include "qrg/model1d.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qrg {

SymMatrix block_hamiltonian_1d(const Couplings& c) {
    const double fx = c.lambda / 4.0 * (1.0 + c.gamma);
    const double fy = c.lambda / 4.0 * (1.0 - c.gamma);
    SymMatrix h(8);
    for (auto [i, j] : {std::pair{1, 2}, std::pair{2, 3}}) {
        const SymMatrix xx = two_site_term(3, i, j, Axis::X);
        const SymMatrix yy = two_site_term(3, i, j, Axis::Y);
        for (int r = 0; r < 8; ++r)
            for (int s = r; s < 8; ++s) {
                const double v = fx * xx(r, s) + fy * yy(r, s);
                if (v != 0.0) h.add(r, s, v);
            }
    }
    return h;
}

BlockGroundPair1D ground_pair_1d(const Couplings& c) {
    const double g = c.gamma;
    const double r = std::sqrt(1.0 + g * g);
    const double s2 = std::sqrt(2.0);
    const double nrm = 2.0 * r;

    std::vector<double> a0(8, 0.0), a1(8, 0.0);
    // |phi0>: odd number of down spins
    a0[0b001] = -r / nrm;       // up up down
    a0[0b010] = s2 / nrm;       // up down up
    a0[0b100] = -r / nrm;       // down up up
    a0[0b111] = s2 * g / nrm;   // down down down
    // |phi1>: spin-flipped partner, even sector
    a1[0b000] = -s2 * g / nrm;  // up up up
    a1[0b011] = r / nrm;        // up down down
    a1[0b101] = -s2 / nrm;      // down up down
    a1[0b110] = r / nrm;        // down down up

    BlockGroundPair1D pair;
    pair.phi0 = make_state(3, std::move(a0));
    pair.phi1 = make_state(3, std::move(a1));

    const SymMatrix h = block_hamiltonian_1d(c);
    const Spectrum sp = eigh(h);
    pair.energy = sp.values[0];
    for (const PureState* psi : {&pair.phi0, &pair.phi1}) {
        double res = 0.0;
        for (int i = 0; i < 8; ++i) {
            double hv = 0.0;
            for (int j = 0; j < 8; ++j) hv += h(i, j) * psi->amp[j];
            res = std::max(res, std::abs(hv - pair.energy * psi->amp[i]));
        }
        if (res > 1e-9)
            throw std::runtime_error("ground_pair_1d: residual " + std::to_string(res) +
                                     " at gamma=" + std::to_string(c.gamma));
    }
    return pair;
}

Couplings rg_step_1d(const Couplings& c) {
    const double g = c.gamma, g2 = g * g;
    return {c.lambda * (3.0 * g2 + 1.0) / (2.0 * (1.0 + g2)),
            (g * g2 + 3.0 * g) / (3.0 * g2 + 1.0)};
}

double rg_step_derivative_1d(double g) {
    const double g2 = g * g;
    const double den = 3.0 * g2 + 1.0;
    return ((3.0 * g2 + 3.0) * den - 6.0 * g * (g * g2 + 3.0 * g)) / (den * den);
}

}  // namespace qrg
