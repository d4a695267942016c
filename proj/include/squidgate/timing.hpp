#pragma once

#include <string>
#include <vector>

#include "squidgate/device.hpp"

namespace squidgate {

// Gate durations for the Fourier-phase ladder theta_t = pi/2^{t-1}, t = 2..n.
// tau_multiqubit is the exact per-term sum of the merged schedule:
//   pi/Omega13 + pi/g + n pi/(2 Omega02) + sum_t theta_t delta_t / g_t^2.
// tau_decomposed is the closed form for n-1 chained two-qubit gates,
//   (pi/g)(6(n-1)/5 + 10 (2^{n-1}-1)/2^{n-1}),
// stated at the operating point delta = 10g, Omega = 10g and requiring uniform
// g across SQUIDs; disagreement with the actual schedule sum is surfaced via
// timing_consistency, never silently reconciled.
double tau_multiqubit(int n, const DeviceParams& params);
double tau_decomposed(int n, const DeviceParams& params);

struct TimingRow {
    int n;
    double tau_multi;       // s
    double tau_dec;         // s
    double advantage;       // tau_dec - tau_multi
};

std::vector<TimingRow> timing_curve(const DeviceParams& params, int n_min, int n_max);
std::string timing_csv(const std::vector<TimingRow>& rows);

struct TimingConsistency {
    double closed_form;   // s
    double schedule_sum;  // s
    double relative_gap;  // |closed_form - schedule_sum| / closed_form
};

TimingConsistency timing_consistency_multiqubit(int n, const DeviceParams& params);
TimingConsistency timing_consistency_decomposed(int n, const DeviceParams& params);

}  // namespace squidgate
