#include "squidgate/builders.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "squidgate/errors.hpp"

namespace squidgate {

namespace {

constexpr double kPi = std::numbers::pi;

void check_theta(double theta) {
    if (!(theta >= 0.0 && theta < 2.0 * kPi))
        throw std::invalid_argument("controlled phase must lie in [0, 2pi)");
}

void check_device_size(const DeviceParams& p, int n) {
    if (p.n_squids() < n)
        throw std::invalid_argument("device config has " + std::to_string(p.n_squids()) +
                                    " SQUIDs, gate needs " + std::to_string(n));
}

// quarter rotation (Omega t = pi/2)
PulseStep mw(int squid, int lo, int hi, double omega, double phi, double angle = kPi / 2) {
    return PulseStep{MicrowavePulse{squid, lo, hi, omega, phi, angle / omega}};
}

PulseStep resonant_wait(const DeviceParams& p, int squid) {
    const double g = p.squid(squid).g;
    return PulseStep{ResonantWait{squid, g, kPi / (2.0 * g)}};
}

PulseStep dispersive_wait(const DeviceParams& p, int squid, double theta) {
    const SquidParams& s = p.squid(squid);
    return PulseStep{DispersiveWait{squid, s.g, s.delta_c, theta * s.delta_c / (s.g * s.g)}};
}

// photon storage: |1> -> i|3> -> swap into the cavity
ProtocolStep store_step(const DeviceParams& p, int control, const std::string& label) {
    return ProtocolStep{label,
                        {mw(control, 1, 3, p.squid(control).omega_13, kPi), resonant_wait(p, control)}};
}

ProtocolStep retrieve_step(const DeviceParams& p, int control, const std::string& label) {
    return ProtocolStep{label,
                        {resonant_wait(p, control), mw(control, 1, 3, p.squid(control).omega_13, kPi)}};
}

PulseStep control_shelve(const DeviceParams& p, int control, double phi) {
    return mw(control, 0, 2, p.squid(control).omega_02, phi);
}

PulseStep target_pulse(const DeviceParams& p, int target, double phi) {
    return mw(target, 1, 2, p.squid(target).omega_12, phi);
}

// Merged controlled-phase core: 2n+1 protocol steps; pulses on disjoint SQUIDs
// share slots, dispersive waits stay sequential.
void append_merged_core(Schedule& s, const DeviceParams& p, int control,
                        const std::vector<int>& targets, const std::vector<double>& thetas,
                        const std::string& prefix) {
    for (double th : thetas) check_theta(th);
    s.steps.push_back(store_step(p, control, prefix + "store"));
    const int last = static_cast<int>(targets.size()) - 1;
    s.steps.push_back(ProtocolStep{
        prefix + "open",
        {PulseStep{Simultaneous{{control_shelve(p, control, kPi / 2),
                                 target_pulse(p, targets[0], -kPi / 2)}}}}});
    for (int i = 0; i <= last; ++i) {
        const int t = targets[i];
        s.steps.push_back(ProtocolStep{prefix + "phase-" + std::to_string(t),
                                       {dispersive_wait(p, t, thetas[i])}});
        if (i < last) {
            s.steps.push_back(ProtocolStep{
                prefix + "advance-" + std::to_string(t),
                {PulseStep{Simultaneous{{target_pulse(p, t, kPi / 2),
                                         target_pulse(p, targets[i + 1], -kPi / 2)}}}}});
        }
    }
    s.steps.push_back(ProtocolStep{
        prefix + "close",
        {PulseStep{Simultaneous{{target_pulse(p, targets[last], kPi / 2),
                                 control_shelve(p, control, -kPi / 2)}}}}});
    s.steps.push_back(retrieve_step(p, control, prefix + "retrieve"));
}

std::vector<int> default_targets(int n) {
    std::vector<int> t;
    for (int i = 2; i <= n; ++i) t.push_back(i);
    return t;
}

void set_phase_gate_roles(Schedule& s, int control, const std::vector<int>& targets) {
    s.initial_roles[control] = CavityRole::Resonant;
    for (int t : targets) s.initial_roles[t] = CavityRole::Dispersive;
}

// Shared 5-step layout of the single-slot gates (all dispersive waits joint).
Schedule joint_wait_gate(const DeviceParams& p, const std::vector<double>& thetas,
                         const std::string& name, double ratio_tolerance) {
    const int n = static_cast<int>(thetas.size()) + 1;
    if (n < 2) throw std::invalid_argument(name + " gate needs at least one target");
    check_device_size(p, n);
    for (double th : thetas) check_theta(th);
    const std::vector<int> targets = default_targets(n);

    // one shared slot means one duration: theta_t * delta_t / g_t^2 must agree
    std::vector<double> durations;
    for (int i = 0; i < n - 1; ++i) {
        const SquidParams& sq = p.squid(targets[i]);
        durations.push_back(thetas[i] * sq.delta_c / (sq.g * sq.g));
    }
    const double ref = durations[0];
    std::vector<int> offenders;
    for (int i = 0; i < n - 1; ++i)
        if (std::abs(durations[i] - ref) > ratio_tolerance * std::max(std::abs(ref), 1e-300))
            offenders.push_back(targets[i]);
    if (!offenders.empty()) {
        offenders.insert(offenders.begin(), targets[0]);
        throw ConstraintError(
            name + " gate needs equal dispersive durations theta*delta_c/g^2 across targets; "
                   "SQUIDs disagree beyond 1e-9 relative",
            offenders);
    }

    Schedule s;
    s.name = name;
    s.n_squids = n;
    s.thetas = thetas;
    set_phase_gate_roles(s, 1, targets);

    s.steps.push_back(store_step(p, 1, "store"));
    Simultaneous open{{control_shelve(p, 1, kPi / 2)}};
    for (int t : targets) open.members.push_back(target_pulse(p, t, -kPi / 2));
    s.steps.push_back(ProtocolStep{"open", {PulseStep{open}}});

    // all targets accumulate their phases during the same window (first
    // target's exact duration; the 1e-9 check bounds the others' phase error)
    if (targets.size() == 1) {
        s.steps.push_back(ProtocolStep{"phase", {dispersive_wait(p, targets[0], thetas[0])}});
    } else {
        Simultaneous wait;
        for (int t : targets) {
            const SquidParams& sq = p.squid(t);
            wait.members.push_back(PulseStep{DispersiveWait{t, sq.g, sq.delta_c, ref}});
        }
        s.steps.push_back(ProtocolStep{"phase", {PulseStep{wait}}});
    }

    Simultaneous close;
    for (int t : targets) close.members.push_back(target_pulse(p, t, kPi / 2));
    close.members.push_back(control_shelve(p, 1, -kPi / 2));
    s.steps.push_back(ProtocolStep{"close", {PulseStep{close}}});
    s.steps.push_back(retrieve_step(p, 1, "retrieve"));
    validate_schedule(s);
    return s;
}

}  // namespace

Schedule build_three_qubit_gate(const DeviceParams& params, double theta2, double theta3) {
    check_device_size(params, 3);
    check_theta(theta2);
    check_theta(theta3);
    Schedule s;
    s.name = "controlled-phase-3q";
    s.n_squids = 3;
    s.thetas = {theta2, theta3};
    set_phase_gate_roles(s, 1, {2, 3});
    s.steps = {
        store_step(params, 1, "step-1"),
        ProtocolStep{"step-2", {control_shelve(params, 1, kPi / 2)}},
        ProtocolStep{"step-3", {target_pulse(params, 2, -kPi / 2)}},
        ProtocolStep{"step-4", {dispersive_wait(params, 2, theta2)}},
        ProtocolStep{"step-5", {target_pulse(params, 2, kPi / 2)}},
        ProtocolStep{"step-6", {target_pulse(params, 3, -kPi / 2)}},
        ProtocolStep{"step-7", {dispersive_wait(params, 3, theta3)}},
        ProtocolStep{"step-8", {target_pulse(params, 3, kPi / 2)}},
        ProtocolStep{"step-9", {control_shelve(params, 1, -kPi / 2)}},
        retrieve_step(params, 1, "step-10"),
    };
    validate_schedule(s);
    return s;
}

Schedule build_merged_gate(const DeviceParams& params, const std::vector<double>& thetas) {
    const int n = static_cast<int>(thetas.size()) + 1;
    if (n < 2) throw std::invalid_argument("merged gate needs at least one target");
    check_device_size(params, n);
    Schedule s;
    s.name = "controlled-phase-merged-" + std::to_string(n) + "q";
    s.n_squids = n;
    s.thetas = thetas;
    const std::vector<int> targets = default_targets(n);
    set_phase_gate_roles(s, 1, targets);
    append_merged_core(s, params, 1, targets, thetas, "");
    validate_schedule(s);
    return s;
}

Schedule build_two_qubit_gate(const DeviceParams& params, double theta) {
    Schedule s = build_merged_gate(params, {theta});
    s.name = "controlled-phase-2q";
    return s;
}

Schedule build_decomposed_gate(const DeviceParams& params, const std::vector<double>& thetas) {
    const int n = static_cast<int>(thetas.size()) + 1;
    if (n < 2) throw std::invalid_argument("decomposed gate needs at least one target");
    check_device_size(params, n);
    Schedule s;
    s.name = "controlled-phase-decomposed-" + std::to_string(n) + "q";
    s.n_squids = n;
    s.thetas = thetas;
    const std::vector<int> targets = default_targets(n);
    set_phase_gate_roles(s, 1, targets);
    for (int i = 0; i < n - 1; ++i)
        append_merged_core(s, params, 1, {targets[i]}, {thetas[i]},
                           "g" + std::to_string(targets[i]) + "-");
    validate_schedule(s);
    return s;
}

Schedule build_ntcp_gate(const DeviceParams& params, int n_squids) {
    if (n_squids < 2) throw std::invalid_argument("phase-flip gate needs at least two SQUIDs");
    Schedule s = joint_wait_gate(params, std::vector<double>(n_squids - 1, kPi),
                                 "phase-flip-" + std::to_string(n_squids) + "q", 1e-9);
    return s;
}

Schedule build_multiphase_gate(const DeviceParams& params, const std::vector<double>& thetas) {
    return joint_wait_gate(params, thetas,
                           "multiphase-" + std::to_string(thetas.size() + 1) + "q", 1e-9);
}

Schedule build_hadamard(const DeviceParams& params, int n_squids, int squid) {
    check_device_size(params, n_squids);
    if (squid < 1 || squid > n_squids) throw std::invalid_argument("Hadamard SQUID index out of range");
    const SquidParams& sq = params.squid(squid);
    Schedule s;
    s.name = "hadamard-" + std::to_string(squid);
    s.n_squids = n_squids;
    const std::string h = "h" + std::to_string(squid) + "-";
    s.steps = {
        ProtocolStep{h + "a", {mw(squid, 1, 3, sq.omega_13, kPi / 2)}},
        ProtocolStep{h + "b", {mw(squid, 0, 3, sq.omega_03, -kPi / 2, kPi / 4)}},
        ProtocolStep{h + "c", {mw(squid, 1, 3, sq.omega_13, kPi / 2)}},
    };
    validate_schedule(s);
    return s;
}

Schedule build_qft3(const DeviceParams& params) {
    check_device_size(params, 3);
    Schedule s;
    s.name = "qft3";
    s.n_squids = 3;
    s.initial_roles = {{2, CavityRole::Dispersive}};

    auto append = [&s](const Schedule& part) {
        for (const ProtocolStep& step : part.steps) s.steps.push_back(step);
    };
    append(build_hadamard(params, 3, 3));
    s.steps.push_back(
        ProtocolStep{"tune-3", {PulseStep{RetuneMarker{3, CavityRole::Resonant}}}});
    append_merged_core(s, params, 3, {2}, {kPi / 2}, "cp32-");
    append(build_hadamard(params, 3, 2));
    s.steps.push_back(ProtocolStep{"tune-1",
                                   {PulseStep{RetuneMarker{3, CavityRole::Dispersive}},
                                    PulseStep{RetuneMarker{1, CavityRole::Resonant}}}});
    append_merged_core(s, params, 1, {2, 3}, qft_phase_list(3), "cp123-");
    append(build_hadamard(params, 3, 1));
    validate_schedule(s);
    return s;
}

std::vector<double> qft_phase_list(int n_squids) {
    if (n_squids < 1) throw std::invalid_argument("need at least one qubit");
    std::vector<double> thetas;
    double th = kPi / 2;
    for (int t = 2; t <= n_squids; ++t, th /= 2) thetas.push_back(th);
    return thetas;
}

}  // namespace squidgate
