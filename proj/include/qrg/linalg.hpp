#pragma once

#include <cstddef>
#include <vector>

namespace qrg {

// Dense real symmetric matrix, dimension a power of two (<= 1024).
// Symmetry is enforced structurally: set() writes both (i,j) and (j,i).
class SymMatrix {
public:
    explicit SymMatrix(int dim);

    int dim() const { return dim_; }
    double operator()(int i, int j) const { return a_[std::size_t(i) * dim_ + j]; }
    void set(int i, int j, double v) {
        a_[std::size_t(i) * dim_ + j] = v;
        a_[std::size_t(j) * dim_ + i] = v;
    }
    void add(int i, int j, double v) {
        a_[std::size_t(i) * dim_ + j] += v;
        if (i != j) a_[std::size_t(j) * dim_ + i] += v;
    }
    double trace() const;
    const std::vector<double>& raw() const { return a_; }

    static SymMatrix identity(int dim);
    // builds from a full row-major buffer, rejecting asymmetry beyond tol
    static SymMatrix from_dense(int dim, const std::vector<double>& rowmajor,
                                double tol = 1e-10);

private:
    int dim_;
    std::vector<double> a_;
};

// Real unit vector on nqubits spins. Qubit 1 is the most significant bit;
// basis index b encodes |s1 s2 ... sn> with s=0 <-> up, s=1 <-> down.
struct PureState {
    int nqubits = 0;
    std::vector<double> amp;
};

PureState make_state(int nqubits, std::vector<double> amp);  // checks norm
SymMatrix density(const PureState& psi);                     // |psi><psi|

struct Spectrum {
    std::vector<double> values;                // ascending
    std::vector<std::vector<double>> vectors;  // vectors[k] pairs with values[k]
};

SymMatrix kron(const SymMatrix& a, const SymMatrix& b);
SymMatrix partial_trace(const SymMatrix& rho, int nqubits,
                        const std::vector<int>& keep);
Spectrum eigh(const SymMatrix& a);
double trace_norm(const SymMatrix& a);
double von_neumann_entropy(const SymMatrix& rho);  // bits
double binary_entropy(double p);                   // bits

// Pauli blocks in the same basis convention. sigma_y sigma_y is real and
// symmetric as a 4x4 even though sigma_y itself is imaginary.
SymMatrix pauli_x();
SymMatrix pauli_z();
SymMatrix pauli_yy();

// sigma^axis_i sigma^axis_j embedded on nqubits spins (labels 1-based).
enum class Axis { X, Y };
SymMatrix two_site_term(int nqubits, int i, int j, Axis axis);

}  // namespace qrg
