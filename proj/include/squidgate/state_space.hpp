#pragma once

#include <Eigen/Dense>
#include <complex>
#include <initializer_list>
#include <vector>

namespace squidgate {

// Hilbert space of n four-level SQUIDs coupled to one truncated cavity mode:
// H = (C^4)^(x n) (x) C^cavity_dim. Flat index is row-major with SQUID 1
// slowest and the cavity photon number fastest.
struct SpaceDescriptor {
    int n_squids = 1;
    int cavity_dim = 2;

    int total_dim() const;
    bool operator==(const SpaceDescriptor&) const = default;
};

SpaceDescriptor make_space(int n_squids, int cavity_dim = 2);

// |l_1 ... l_n> (x) |photons>, each l in {0..3}.
struct BasisLabel {
    std::vector<int> levels;
    int photons = 0;
};

int flat_index(const SpaceDescriptor& space, const BasisLabel& label);
BasisLabel label_of(const SpaceDescriptor& space, int flat);

struct StateVector {
    SpaceDescriptor space;
    Eigen::VectorXcd amplitudes;
};

struct DenseOperator {
    SpaceDescriptor space;
    Eigen::MatrixXcd matrix;
};

StateVector basis_state(const SpaceDescriptor& space, const BasisLabel& label);
StateVector basis_state(const SpaceDescriptor& space, std::initializer_list<int> levels,
                        int photons = 0);

DenseOperator identity_op(const SpaceDescriptor& space);

// Embed a 2x2 block acting on levels (lo, hi) of one SQUID (1-based index),
// identity on every other tensor factor. Block rows/columns are ordered
// (lo, hi). The block must be unitary to 1e-10 elementwise.
DenseOperator embed_two_level(const SpaceDescriptor& space, int squid, int level_lo,
                              int level_hi, const Eigen::Matrix2cd& block);

StateVector apply(const DenseOperator& op, const StateVector& state);

// compose(a, b): apply b first, then a (matrix product a*b).
DenseOperator compose(const DenseOperator& a, const DenseOperator& b);
DenseOperator adjoint(const DenseOperator& op);

// Restriction of op to the computational subspace: qubit levels {0,1} on every
// SQUID, cavity in vacuum. Row/column order is the binary number q1 q2 ... qn
// (SQUID 1 = most significant bit). The result is 2^n x 2^n and is unitary only
// if op preserves the subspace.
Eigen::MatrixXcd logical_restriction(const DenseOperator& op);

// Probability of finding the given SQUID (1-based) in `level`, tracing out the rest.
double population(const StateVector& state, int squid, int level);
// Probability of one full basis state.
double population(const StateVector& state, const BasisLabel& label);
// Probability of the cavity holding exactly `photons` quanta.
double cavity_population(const StateVector& state, int photons);

double norm(const StateVector& state);

// max_ij |A_ij - B_ij|; operators must live in the same space.
double max_deviation(const DenseOperator& a, const DenseOperator& b);
// max_i |a_i - b_i| for states of the same space.
double max_deviation(const StateVector& a, const StateVector& b);
// Distance from unitarity: max elementwise |U^dagger U - I|.
double unitarity_defect(const DenseOperator& op);

}  // namespace squidgate
