#pragma once

#include <vector>

#include "squidgate/state_space.hpp"

namespace squidgate {

// Closed-form propagators for the three interaction types, hbar = 1, all rates
// angular (s^-1), all durations in seconds. Conventions, fixed once here:
//
//  - Microwave drive of transition (i, j), i the lower level: in the ordered
//    basis (|i>, |j>),
//        U = [ cos(Omega t)                    -i e^{+i phi} sin(Omega t) ]
//            [ -i e^{-i phi} sin(Omega t)       cos(Omega t)              ]
//    so phi = pi sends |1> -> i|3> after Omega t = pi/2 on the (1,3) transition.
//
//  - Resonant cavity coupling of the |2>-|3> transition: block rotation on
//    (|3, m>, |2, m+1>) by angle g sqrt(m+1) t with -i sin off-diagonals;
//    |3, 0> -> -i |2, 1> after g t = pi/2. The top Fock state |3, N_c - 1> has
//    no partner inside the truncation and is left untouched (see
//    truncation_boundary_states).
//
//  - Dispersive coupling at detuning Delta: diagonal phases
//    |2, m> -> e^{+i g^2 m t / Delta},  |3, m> -> e^{-i g^2 m t / Delta},
//    levels 0 and 1 unaffected.

Eigen::Matrix2cd mw_rotation_block(double omega, double phi, double t);

DenseOperator mw_pulse_propagator(const SpaceDescriptor& space, int squid, int level_lo,
                                  int level_hi, double omega, double phi, double t);

DenseOperator jc_resonant_propagator(const SpaceDescriptor& space, int squid, double g,
                                     double t);

// Appends a warning when delta < 5g (approximation unreliable) if `warnings` is given.
DenseOperator dispersive_propagator(const SpaceDescriptor& space, int squid, double g,
                                    double delta, double t,
                                    std::vector<std::string>* warnings = nullptr);

// Exact propagator of the detuned |2>-|3> cavity coupling, without the
// dispersive approximation: 2x2 blocks on (|3, m>, |2, m+1>) generated by
// [[+delta, G], [G, 0]] with G = g sqrt(m+1), whose large-delta limit
// reproduces dispersive_propagator. The dangling |3, N_c - 1> state evolves
// with phase e^{-i delta t}.
DenseOperator jc_detuned_propagator(const SpaceDescriptor& space, int squid, double g,
                                    double delta, double t);

// Hamiltonians (hermitian, s^-1) generating the above; used for cross-checks
// against the generic matrix exponential.
DenseOperator mw_hamiltonian(const SpaceDescriptor& space, int squid, int level_lo,
                             int level_hi, double omega, double phi);
DenseOperator jc_resonant_hamiltonian(const SpaceDescriptor& space, int squid, double g);
DenseOperator dispersive_hamiltonian(const SpaceDescriptor& space, int squid, double g,
                                     double delta);
DenseOperator jc_detuned_hamiltonian(const SpaceDescriptor& space, int squid, double g,
                                     double delta);

// U = exp(-i H t) via eigendecomposition. H must be hermitian:
// max|H - H^dagger| <= 1e-10 * max(1, max|H|).
DenseOperator expm_propagator(const DenseOperator& hamiltonian, double t);

// Flat indices of |3, N_c - 1> states of the given SQUID: the states whose
// resonant partner |2, N_c> was cut off by the truncation. Population here
// before a resonant or detuned-exact segment means the simulation would leak.
std::vector<int> truncation_boundary_states(const SpaceDescriptor& space, int squid);

// Peak population transferred out of |2, 1> by one detuned segment,
// 4g^2 / (delta^2 + 4g^2); the figure of merit for dispersive validity.
double dispersive_leak_peak(double g, double delta);

}  // namespace squidgate
