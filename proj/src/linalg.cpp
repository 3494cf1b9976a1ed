#include "qrg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qrg {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

double fro_norm(const std::vector<double>& a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

}  // namespace

SymMatrix::SymMatrix(int dim) : dim_(dim) {
    if (!power_of_two(dim) || dim > 1024)
        throw std::invalid_argument("SymMatrix: dim must be a power of two <= 1024, got " +
                                    std::to_string(dim));
    a_.assign(std::size_t(dim) * dim, 0.0);
}

double SymMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

SymMatrix SymMatrix::identity(int dim) {
    SymMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.set(i, i, 1.0);
    return m;
}

SymMatrix SymMatrix::from_dense(int dim, const std::vector<double>& rowmajor, double tol) {
    if (rowmajor.size() != std::size_t(dim) * dim)
        throw std::invalid_argument("from_dense: buffer size mismatch");
    SymMatrix m(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) {
            double u = rowmajor[std::size_t(i) * dim + j];
            double l = rowmajor[std::size_t(j) * dim + i];
            if (std::abs(u - l) > tol)
                throw std::invalid_argument("from_dense: asymmetry " + std::to_string(u - l) +
                                            " at (" + std::to_string(i) + "," + std::to_string(j) + ")");
            m.set(i, j, 0.5 * (u + l));
        }
    return m;
}

PureState make_state(int nqubits, std::vector<double> amp) {
    if (amp.size() != (std::size_t(1) << nqubits))
        throw std::invalid_argument("make_state: amplitude count != 2^nqubits");
    double n2 = 0.0;
    for (double v : amp) n2 += v * v;
    if (std::abs(n2 - 1.0) > 1e-12)
        throw std::invalid_argument("make_state: norm^2 deviates by " + std::to_string(n2 - 1.0));
    return PureState{nqubits, std::move(amp)};
}

SymMatrix density(const PureState& psi) {
    const int d = 1 << psi.nqubits;
    SymMatrix rho(d);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) rho.set(i, j, psi.amp[i] * psi.amp[j]);
    return rho;
}

SymMatrix kron(const SymMatrix& a, const SymMatrix& b) {
    const long out = long(a.dim()) * b.dim();
    if (out > 1024) throw std::invalid_argument("kron: result dim beyond 2^10");
    SymMatrix r{int(out)};
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) {
            const double aij = a(i, j);
            if (aij == 0.0) continue;
            for (int k = 0; k < b.dim(); ++k)
                for (int l = 0; l < b.dim(); ++l) {
                    double v = aij * b(k, l);
                    if (v != 0.0)
                        r.set(i * b.dim() + k, j * b.dim() + l, v);
                }
        }
    return r;
}

SymMatrix partial_trace(const SymMatrix& rho, int nqubits, const std::vector<int>& keep_in) {
    if (rho.dim() != (1 << nqubits))
        throw std::invalid_argument("partial_trace: rho dim != 2^nqubits");
    std::vector<int> keep(keep_in);
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
    for (int q : keep)
        if (q < 1 || q > nqubits)
            throw std::invalid_argument("partial_trace: label " + std::to_string(q) +
                                        " outside 1.." + std::to_string(nqubits));
    if (int(keep.size()) == nqubits) return rho;

    std::vector<int> traced;
    for (int q = 1; q <= nqubits; ++q)
        if (!std::binary_search(keep.begin(), keep.end(), q)) traced.push_back(q);

    const int nk = int(keep.size()), nt = int(traced.size());
    const int dk = 1 << nk, dt = 1 << nt;
    // bit position (from MSB of the full index) of each retained/traced qubit
    auto spread = [&](int bits, const std::vector<int>& labels) {
        int idx = 0;
        for (std::size_t m = 0; m < labels.size(); ++m)
            idx |= ((bits >> (labels.size() - 1 - m)) & 1) << (nqubits - labels[m]);
        return idx;
    };
    SymMatrix out(dk);
    for (int a = 0; a < dk; ++a) {
        const int ra = spread(a, keep);
        for (int b = a; b < dk; ++b) {
            const int rb = spread(b, keep);
            double s = 0.0;
            for (int t = 0; t < dt; ++t) {
                const int rt = spread(t, traced);
                s += rho(ra | rt, rb | rt);
            }
            out.set(a, b, s);
        }
    }
    return out;
}

Spectrum eigh(const SymMatrix& m) {
    const int n = m.dim();
    std::vector<double> a(m.raw());
    std::vector<double> v(std::size_t(n) * n, 0.0);
    for (int i = 0; i < n; ++i) v[std::size_t(i) * n + i] = 1.0;
    auto A = [&](int i, int j) -> double& { return a[std::size_t(i) * n + j]; };
    auto V = [&](int i, int j) -> double& { return v[std::size_t(i) * n + j]; };

    const double scale = std::max(1.0, fro_norm(a));
    const double thresh = 1e-14 * scale;
    auto offdiag = [&] {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += 2.0 * A(i, j) * A(i, j);
        return std::sqrt(s);
    };

    const int max_sweeps = 100;
    int sweep = 0;
    for (; sweep < max_sweeps && offdiag() > thresh; ++sweep) {
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = A(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = c * vkp - s * vkq;
                    V(k, q) = s * vkp + c * vkq;
                }
            }
    }
    if (offdiag() > thresh)
        throw std::runtime_error("eigh: no convergence after " + std::to_string(max_sweeps) +
                                 " sweeps, offdiag=" + std::to_string(offdiag()));

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return A(i, i) < A(j, j); });

    Spectrum sp;
    sp.values.resize(n);
    sp.vectors.assign(n, std::vector<double>(n));
    for (int k = 0; k < n; ++k) {
        sp.values[k] = A(order[k], order[k]);
        auto& col = sp.vectors[k];
        for (int i = 0; i < n; ++i) col[i] = V(i, order[k]);
        // deterministic sign: largest-|component| entry positive
        int imax = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(col[i]) > std::abs(col[imax])) imax = i;
        if (col[imax] < 0.0)
            for (double& x : col) x = -x;
    }
    return sp;
}

double trace_norm(const SymMatrix& a) {
    const Spectrum sp = eigh(a);
    double s = 0.0;
    for (double e : sp.values) s += std::abs(e);
    return s;
}

double von_neumann_entropy(const SymMatrix& rho) {
    if (std::abs(rho.trace() - 1.0) > 1e-10)
        throw std::invalid_argument("von_neumann_entropy: trace " + std::to_string(rho.trace()));
    const Spectrum sp = eigh(rho);
    double s = 0.0;
    for (double p : sp.values) {
        if (p < -1e-10)
            throw std::invalid_argument("von_neumann_entropy: negative eigenvalue " +
                                        std::to_string(p));
        if (p > 0.0) s -= p * std::log2(p);
    }
    return s;
}

double binary_entropy(double p) {
    if (p < -1e-12 || p > 1.0 + 1e-12)
        throw std::invalid_argument("binary_entropy: p=" + std::to_string(p) + " outside [0,1]");
    p = std::clamp(p, 0.0, 1.0);
    double s = 0.0;
    if (p > 0.0) s -= p * std::log2(p);
    if (p < 1.0) s -= (1.0 - p) * std::log2(1.0 - p);
    return s;
}

SymMatrix pauli_x() {
    SymMatrix m(2);
    m.set(0, 1, 1.0);
    return m;
}

SymMatrix pauli_z() {
    SymMatrix m(2);
    m.set(0, 0, 1.0);
    m.set(1, 1, -1.0);
    return m;
}

SymMatrix pauli_yy() {
    // sigma_y (x) sigma_y = -(i sigma_y)(x)(i sigma_y), real in this basis
    SymMatrix m(4);
    m.set(0, 3, -1.0);
    m.set(1, 2, 1.0);
    return m;
}

SymMatrix two_site_term(int nqubits, int i, int j, Axis axis) {
    if (i == j || i < 1 || j < 1 || i > nqubits || j > nqubits)
        throw std::invalid_argument("two_site_term: bad site labels");
    const int d = 1 << nqubits;
    const int bi = 1 << (nqubits - i);  // qubit 1 = MSB
    const int bj = 1 << (nqubits - j);
    SymMatrix m(d);
    for (int s = 0; s < d; ++s) {
        const int t = s ^ bi ^ bj;  // both axes flip the two spins
        if (t < s) continue;
        if (axis == Axis::X) {
            m.set(s, t, 1.0);
        } else {
            // <t| yy |s> = -(-1)^(s_i + s_j)
            const int si = (s >> (nqubits - i)) & 1;
            const int sj = (s >> (nqubits - j)) & 1;
            m.set(s, t, ((si + sj) & 1) ? 1.0 : -1.0);
        }
    }
    return m;
}

}  // namespace qrg
