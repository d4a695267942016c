#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace squidgate {

// Which coupling a SQUID currently has to the cavity. Exactly one SQUID may be
// resonant at any time; retuning is modelled as an instantaneous marker.
enum class CavityRole { Resonant, Dispersive, Decoupled };

std::string to_string(CavityRole role);
CavityRole role_from_string(const std::string& s);

// Primitive actions. SQUID indices are 1-based throughout.
struct MicrowavePulse {
    int squid = 1;
    int level_lo = 0, level_hi = 1;  // transition addressed, lower level first
    double omega = 0.0;              // Rabi frequency, s^-1
    double phi = 0.0;                // drive phase
    double duration = 0.0;           // s
};

struct ResonantWait {
    int squid = 1;
    double g = 0.0;
    double duration = 0.0;
};

struct DispersiveWait {
    int squid = 1;
    double g = 0.0;
    double delta = 0.0;
    double duration = 0.0;
};

// Zero-duration bookkeeping: the SQUID's cavity coupling changes here.
struct RetuneMarker {
    int squid = 1;
    CavityRole new_role = CavityRole::Decoupled;
};

struct PulseStep;

// Actions running in the same time slot. Members must address pairwise
// disjoint SQUIDs and share one duration; nesting and retunes are not allowed.
struct Simultaneous {
    std::vector<PulseStep> members;
};

struct PulseStep {
    std::variant<MicrowavePulse, ResonantWait, DispersiveWait, Simultaneous, RetuneMarker> action;
};

double action_duration(const PulseStep& step);

// One protocol step as the gate sequence counts them; may bundle several
// primitives that the protocol treats as a unit (e.g. a pulse followed by a
// photon-transfer wait).
struct ProtocolStep {
    std::string label;
    std::vector<PulseStep> actions;  // applied in order
};

struct Schedule {
    std::string name;
    int n_squids = 0;
    std::vector<double> thetas;               // intended controlled phases, ascending target order
    std::map<int, CavityRole> initial_roles;  // SQUIDs not listed are Decoupled
    std::vector<ProtocolStep> steps;

    // Number of protocol steps; groups containing only retune markers do not count.
    int step_count() const;
    // Total wall-clock time; each retune marker adds retune_latency.
    double duration(double retune_latency = 0.0) const;
};

// Structural validation: positive SQUID indices within n_squids, finite
// nonnegative durations, well-formed simultaneous slots (disjoint SQUIDs,
// equal durations, no nesting/retunes). Throws std::invalid_argument or
// ConstraintError (slot duration mismatch, with SQUID indices).
void validate_schedule(const Schedule& schedule);

// Round-trippable serialization: schedule_to_json(schedule_from_json(j)) == j
// for any j this module produced (stable field names, sorted keys).
nlohmann::json schedule_to_json(const Schedule& schedule);
Schedule schedule_from_json(const nlohmann::json& j);

}  // namespace squidgate
