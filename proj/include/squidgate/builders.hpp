#pragma once

#include <vector>

#include "squidgate/device.hpp"
#include "squidgate/schedule.hpp"

namespace squidgate {

// Gate-sequence builders. SQUID 1 is the control (it exchanges a photon with
// the cavity); targets pick up their controlled phases theta_t through
// photon-number-dependent dispersive shifts. All thetas must lie in [0, 2pi)
// (0 is allowed and produces a zero-duration dispersive wait). Pulse durations
// come from the device Rabi frequencies, wait durations from g and delta_c of
// the SQUID concerned. Builders throw ConstraintError (with SQUID indices)
// when device parameters cannot realize a required slot or joint wait.

// Canonical ten-step controlled-phase gate on three SQUIDs (control 1,
// targets 2 and 3), one protocol step per label step-1 .. step-10.
Schedule build_three_qubit_gate(const DeviceParams& params, double theta2, double theta3);

// Merged layout on n = thetas.size() + 1 SQUIDs: pulses on disjoint SQUIDs
// share time slots, giving 2n+1 protocol steps. Requires the paired slot
// Rabi frequencies to match.
Schedule build_merged_gate(const DeviceParams& params, const std::vector<double>& thetas);

// Merged two-qubit special case (5 steps).
Schedule build_two_qubit_gate(const DeviceParams& params, double theta);

// n-1 two-qubit gates in sequence, all with control SQUID 1: 5(n-1) steps.
Schedule build_decomposed_gate(const DeviceParams& params, const std::vector<double>& thetas);

// n-target-controlled phase flip: every target gets theta = pi and all
// dispersive waits run in one shared slot; 5 protocol steps regardless of n.
// Requires delta_c/g^2 equal across targets (relative 1e-9).
Schedule build_ntcp_gate(const DeviceParams& params, int n_squids);

// Same 5-step layout with per-target thetas; requires theta_t * delta_c/g^2
// equal across targets so the joint wait has one duration.
Schedule build_multiphase_gate(const DeviceParams& params, const std::vector<double>& thetas);

// Single-qubit Hadamard on `squid` via three pulses on the (1,3) and (0,3)
// transitions; exact real H on the {|0>,|1>} subspace and involutory on the
// full four-level space.
Schedule build_hadamard(const DeviceParams& params, int n_squids, int squid);

// Three-qubit quantum Fourier transform: Hadamards interleaved with
// controlled-phase gates (control 3 onto 2, then control 1 onto {2,3}),
// retuning SQUIDs between stages. Equals the 8x8 DFT up to input qubit
// reversal.
Schedule build_qft3(const DeviceParams& params);

// {pi/2, pi/4, ..., pi/2^{n-1}}: the controlled phases the Fourier circuit needs.
std::vector<double> qft_phase_list(int n_squids);

}  // namespace squidgate
