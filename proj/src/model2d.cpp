#include "qrg/model2d.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrg {

namespace {

// Basis patterns carrying each zeta amplitude; qubit 1 (center) is the MSB,
// bit value 1 = down. Upsilon0 holds the odd down-count patterns, Upsilon1
// the even ones.
struct Pattern {
    int zeta;
    std::vector<int> basis;
};

const std::vector<Pattern>& u0_patterns() {
    static const std::vector<Pattern> p = {
        {1, {0b00001, 0b00010, 0b00100, 0b01000}},
        {2, {0b00111, 0b01011, 0b01101, 0b01110}},
        {3, {0b10000}},
        {4, {0b10011, 0b10101, 0b10110, 0b11001, 0b11010, 0b11100}},
        {5, {0b11111}},
    };
    return p;
}

const std::vector<Pattern>& u1_patterns() {
    static const std::vector<Pattern> p = {
        {6, {0b00000}},
        {7, {0b00011, 0b00101, 0b00110, 0b01001, 0b01010, 0b01100}},
        {8, {0b01111}},
        {9, {0b10001, 0b10010, 0b10100, 0b11000}},
        {10, {0b10111, 0b11011, 0b11101, 0b11110}},
    };
    return p;
}

int down_parity(int basis) { return __builtin_popcount(basis) & 1; }

}  // namespace

SymMatrix block_hamiltonian_2d(const Couplings& c) {
    const double fx = c.lambda / 4.0 * (1.0 + c.gamma);
    const double fy = c.lambda / 4.0 * (1.0 - c.gamma);
    SymMatrix h(32);
    for (int m = 2; m <= 5; ++m) {
        const SymMatrix xx = two_site_term(5, 1, m, Axis::X);
        const SymMatrix yy = two_site_term(5, 1, m, Axis::Y);
        for (int r = 0; r < 32; ++r)
            for (int s = r; s < 32; ++s) {
                const double v = fx * xx(r, s) + fy * yy(r, s);
                if (v != 0.0) h.add(r, s, v);
            }
    }
    return h;
}

ZetaSet zeta_set(double g) {
    ZetaSet z;
    if (std::abs(g) < kZetaBranch) {
        z.zeta[2] = -std::sqrt(2.0) / 4.0;
        z.zeta[9] = std::sqrt(2.0) / 4.0;
        z.zeta[4] = std::sqrt(3.0) / 6.0;
        z.zeta[7] = -std::sqrt(3.0) / 6.0;
        z.varsigma = 1.0;
        z.eta1 = 2.0;
        z.eta2 = 6.0;
        return z;
    }
    const double g2 = g * g, g4 = g2 * g2, g6 = g4 * g2;
    const double s = std::sqrt(g4 + 34.0 * g2 + 1.0);
    const double sm1 = (g4 + 34.0 * g2) / (s + 1.0);  // s - 1, no cancellation
    const double ag = std::abs(g);
    const double sg = (g > 0.0) ? 1.0 : -1.0;  // Theta(gamma)

    z.varsigma = s;
    z.eta1 = 2.0 * s - g4 * (104.0 + 3.0 * s) - g2 * (71.0 + 17.0 * s);
    z.eta2 = g4 * (71.0 - 2.0 * s) + g2 * (104.0 + 17.0 * s) + 3.0 * (s + 1.0);

    // radicand s + g^2 - 1 = g^2 (1 + (g^2+34)/(s+1))
    z.zeta[1] = -ag * std::sqrt((1.0 + (g2 + 34.0) / (s + 1.0)) / s) / 4.0;
    // radicand s - g^2 + 1 = 2 + g^2 ((g^2+34)/(s+1) - 1)
    z.zeta[2] = -sg * std::sqrt((2.0 + g2 * ((g2 + 34.0) / (s + 1.0) - 1.0)) / s) / 4.0;
    // 4 + 6 g^6 - 2 eta1 = g^2 [2(71+17s) - 4(g^2+34)/(s+1) + 2 g^2 (104+3s) + 6 g^4]
    const double den34 = g2 * (2.0 * (71.0 + 17.0 * s) - 4.0 * (g2 + 34.0) / (s + 1.0) +
                               2.0 * g2 * (104.0 + 3.0 * s) + 6.0 * g4);
    z.zeta[3] = (g2 + sm1) / std::sqrt(den34);
    z.zeta[4] = g * (5.0 + g2 + s) / (2.0 * std::sqrt(den34));
    // 2 + 3 g^6 - eta1 = g^2 [(71+17s) - 2(g^2+34)/(s+1) + g^2 (104+3s) + 3 g^4]
    const double den5 = g2 * ((71.0 + 17.0 * s) - 2.0 * (g2 + 34.0) / (s + 1.0) +
                              g2 * (104.0 + 3.0 * s) + 3.0 * g4);
    z.zeta[5] = 3.0 * std::sqrt(2.0) * g2 / std::sqrt(den5);
    const double den678 = 2.0 * g6 + z.eta2;  // eta2 has no cancellation
    z.zeta[6] = ag * (g2 - 1.0 - s) / std::sqrt(2.0 * den678);
    z.zeta[7] = -sg * (1.0 + 5.0 * g2 + s) / (2.0 * std::sqrt(2.0 * den678));
    z.zeta[8] = -3.0 * std::sqrt(2.0) * ag / std::sqrt(den678);
    z.zeta[9] = sg / 4.0 * std::sqrt((1.0 - g2 + s) / s);
    z.zeta[10] = ag * std::sqrt((1.0 + (g2 + 34.0) / (s + 1.0)) / s) / 4.0;

    for (int i = 1; i <= 10; ++i)
        if (!std::isfinite(z.zeta[i]))
            throw std::runtime_error("zeta_set: zeta" + std::to_string(i) +
                                     " not finite at gamma=" + std::to_string(g));
    return z;
}

namespace {

std::pair<std::vector<double>, std::vector<double>> assemble(const ZetaSet& z) {
    std::vector<double> u0(32, 0.0), u1(32, 0.0);
    for (const auto& p : u0_patterns())
        for (int b : p.basis) u0[b] = z.zeta[p.zeta];
    for (const auto& p : u1_patterns())
        for (int b : p.basis) u1[b] = z.zeta[p.zeta];
    return {std::move(u0), std::move(u1)};
}

double residual(const SymMatrix& h, const std::vector<double>& v, double e) {
    double res = 0.0;
    const int n = h.dim();
    for (int i = 0; i < n; ++i) {
        double hv = 0.0;
        for (int j = 0; j < n; ++j) hv += h(i, j) * v[j];
        res = std::max(res, std::abs(hv - e * v[i]));
    }
    return res;
}

// Deterministic convention for a degenerate numeric ground pair: project the
// two lowest eigenvectors onto the down-count parity sectors, normalize, and
// fix signs so the largest-magnitude amplitude is positive.
std::pair<std::vector<double>, std::vector<double>> numeric_pair(const Spectrum& sp) {
    std::vector<double> odd(32, 0.0), even(32, 0.0);
    for (int k = 0; k < 2; ++k) {
        for (int b = 0; b < 32; ++b) {
            if (down_parity(b))
                odd[b] += sp.vectors[k][b];
            else
                even[b] += sp.vectors[k][b];
        }
    }
    for (auto* v : {&odd, &even}) {
        double n2 = 0.0;
        for (double x : *v) n2 += x * x;
        if (n2 < 1e-16)
            throw std::runtime_error("ground_pair_2d: parity projection degenerate");
        const double inv = 1.0 / std::sqrt(n2);
        for (double& x : *v) x *= inv;
        int imax = 0;
        for (int i = 1; i < 32; ++i)
            if (std::abs((*v)[i]) > std::abs((*v)[imax])) imax = i;
        if ((*v)[imax] < 0.0)
            for (double& x : *v) x = -x;
    }
    return {std::move(odd), std::move(even)};
}

}  // namespace

BlockGroundPair2D ground_pair_2d(double gamma) {
    const SymMatrix h = block_hamiltonian_2d({1.0, gamma});
    const Spectrum sp = eigh(h);
    if (sp.values[2] - sp.values[0] < 1e-9)
        throw std::runtime_error("ground_pair_2d: ground space not 2-dimensional at gamma=" +
                                 std::to_string(gamma));
    const double e0 = sp.values[0];

    auto [u0, u1] = assemble(zeta_set(gamma));
    BlockGroundPair2D pair;
    if (residual(h, u0, e0) <= 1e-8 && residual(h, u1, e0) <= 1e-8) {
        pair.upsilon0 = make_state(5, std::move(u0));
        pair.upsilon1 = make_state(5, std::move(u1));
    } else {
        auto [odd, even] = numeric_pair(sp);
        pair.upsilon0 = make_state(5, std::move(odd));
        pair.upsilon1 = make_state(5, std::move(even));
        pair.numeric_fallback = true;
    }
    return pair;
}

XiSet xi_set(double g) {
    const ZetaSet zs = zeta_set(g);
    const double* z = zs.zeta;
    XiSet x;
    x.xi1 = (3 * z[4] * z[10] + 3 * z[1] * z[7] + z[2] * z[8] + z[3] * z[9]) *
            (z[5] * z[10] + z[1] * z[6] + 3 * z[2] * z[7] + 3 * z[4] * z[9]);
    x.xi2 = z[10] * z[10] * (9 * z[4] * z[4] + z[5] * z[5]) +
            z[1] * z[1] * (z[6] * z[6] + 9 * z[7] * z[7]) +
            z[2] * z[2] * (9 * z[7] * z[7] + z[8] * z[8]) +
            2 * z[2] * z[9] * (9 * z[4] * z[7] + z[3] * z[8]) +
            z[9] * z[9] * (z[3] * z[3] + 9 * z[4] * z[4]) +
            2 * z[10] * (z[1] * z[5] * z[6] + 9 * z[1] * z[4] * z[7] + 3 * z[2] * z[5] * z[7] +
                         3 * z[2] * z[4] * z[8] + 3 * z[3] * z[4] * z[9] + 3 * z[4] * z[5] * z[9]) +
            6 * z[1] * (z[2] * z[6] * z[7] + z[2] * z[7] * z[8] + z[4] * z[6] * z[9] +
                        z[3] * z[7] * z[9]);
    x.xi0 = z[10] * z[10] * (9 * z[4] * z[4] + 6 * g * z[4] * z[5] + z[5] * z[5]) +
            z[1] * z[1] * (z[6] * z[6] + 6 * g * z[6] * z[7] + 9 * z[7] * z[7]) +
            z[2] * z[2] * (9 * z[7] * z[7] + 6 * g * z[7] * z[8] + z[8] * z[8]) +
            2 * z[2] * z[9] * (3 * g * z[3] * z[7] + 9 * z[4] * z[7] + z[3] * z[8] +
                               3 * g * z[4] * z[8]) +
            z[9] * z[9] * (z[3] * z[3] + 6 * g * z[3] * z[4] + 9 * z[4] * z[4]) +
            2 * z[1] * (z[2] * (3 * z[6] * z[7] + 9 * g * z[7] * z[7] + g * z[6] * z[8] +
                                3 * z[7] * z[8]) +
                        z[9] * (g * z[3] * z[6] + 3 * z[4] * z[6] + 3 * z[3] * z[7] +
                                9 * g * z[4] * z[7])) +
            2 * z[10] * (z[1] * z[5] * z[6] + 9 * z[1] * z[4] * z[7] + 3 * z[2] * z[5] * z[7] +
                         3 * z[2] * z[4] * z[8] + 3 * z[3] * z[4] * z[9] + 3 * z[4] * z[5] * z[9] +
                         g * (3 * z[1] * z[4] * z[6] + 9 * z[2] * z[4] * z[7] +
                              3 * z[1] * z[5] * z[7] + z[2] * z[5] * z[8] +
                              9 * z[4] * z[4] * z[9] + z[3] * z[5] * z[9]));
    if (x.xi0 <= 0.0)
        throw std::runtime_error("xi_set: xi0 = " + std::to_string(x.xi0) +
                                 " <= 0 at gamma=" + std::to_string(g));
    return x;
}

Couplings rg_step_2d(const Couplings& c) {
    const XiSet x = xi_set(c.gamma);
    return {6.0 * c.lambda * x.xi0, (2.0 * x.xi1 + c.gamma * x.xi2) / x.xi0};
}

}  // namespace qrg
