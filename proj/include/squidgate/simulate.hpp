#pragma once

#include <string>
#include <vector>

#include "squidgate/dynamics.hpp"
#include "squidgate/schedule.hpp"
#include "squidgate/state_space.hpp"

namespace squidgate {

// Analytic: closed-form propagators for every action, including the dispersive
// approximation. ExactDispersive: dispersive waits use the exact detuned
// coupling instead, exposing the residual |2> <-> |3> leakage and phase error;
// everything else is identical.
enum class SimMode { Analytic, ExactDispersive };

struct SimOptions {
    SimMode mode = SimMode::Analytic;
    bool collect_trace = false;     // record the state after every protocol step
    double leak_tolerance = 1e-9;   // population allowed on truncation-boundary states
};

struct StepRecord {
    std::string label;
    StateVector state;
};

struct UnitaryResult {
    DenseOperator unitary;
    std::vector<std::string> warnings;
};

struct StateResult {
    StateVector state;
    std::vector<StepRecord> trace;  // empty unless collect_trace
    std::vector<std::string> warnings;
};

// Both entry points walk the schedule enforcing the cavity-role rules:
// at most one SQUID resonant at a time, resonant waits only on the resonant
// SQUID, dispersive waits only on dispersively coupled SQUIDs
// (RoleConflictError otherwise). simulate_state additionally raises
// TruncationLeakError if population beyond leak_tolerance sits on a
// truncation-boundary state when a cavity-coupled segment starts.
UnitaryResult simulate_unitary(const Schedule& schedule, const SpaceDescriptor& space,
                               const SimOptions& options = {});
StateResult simulate_state(const Schedule& schedule, const StateVector& input,
                           const SimOptions& options = {});

}  // namespace squidgate
