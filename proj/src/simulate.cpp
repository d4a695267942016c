#include "squidgate/simulate.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "squidgate/errors.hpp"

namespace squidgate {

namespace {

class RoleTracker {
public:
    RoleTracker(const Schedule& schedule) {
        for (const auto& [squid, role] : schedule.initial_roles) set(squid, role);
    }

    CavityRole get(int squid) const {
        auto it = roles_.find(squid);
        return it == roles_.end() ? CavityRole::Decoupled : it->second;
    }

    void set(int squid, CavityRole role) {
        if (role == CavityRole::Resonant) {
            for (const auto& [other, r] : roles_)
                if (other != squid && r == CavityRole::Resonant)
                    throw RoleConflictError("SQUID " + std::to_string(squid) +
                                            " cannot tune to cavity resonance while SQUID " +
                                            std::to_string(other) + " is resonant");
        }
        roles_[squid] = role;
    }

    void require(int squid, CavityRole role, const char* what) const {
        if (get(squid) != role)
            throw RoleConflictError(std::string(what) + " on SQUID " + std::to_string(squid) +
                                    " but its cavity role is " + to_string(get(squid)));
    }

private:
    std::map<int, CavityRole> roles_;
};

// Walks actions depth-first, maintaining roles, and hands each primitive's
// propagator to `emit`. `pre_coupled` runs before any cavity-coupled segment
// (resonant wait always; dispersive wait in exact mode) for leak checks.
template <typename Emit, typename PreCoupled>
void walk_action(const PulseStep& step, const SpaceDescriptor& space, const SimOptions& opt,
                 RoleTracker& roles, std::vector<std::string>& warnings, Emit&& emit,
                 PreCoupled&& pre_coupled) {
    std::visit(
        [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, MicrowavePulse>) {
                emit(mw_pulse_propagator(space, a.squid, a.level_lo, a.level_hi, a.omega, a.phi,
                                         a.duration));
            } else if constexpr (std::is_same_v<T, ResonantWait>) {
                roles.require(a.squid, CavityRole::Resonant, "resonant wait");
                pre_coupled(a.squid);
                emit(jc_resonant_propagator(space, a.squid, a.g, a.duration));
            } else if constexpr (std::is_same_v<T, DispersiveWait>) {
                roles.require(a.squid, CavityRole::Dispersive, "dispersive wait");
                if (opt.mode == SimMode::ExactDispersive) {
                    pre_coupled(a.squid);
                    emit(jc_detuned_propagator(space, a.squid, a.g, a.delta, a.duration));
                } else {
                    emit(dispersive_propagator(space, a.squid, a.g, a.delta, a.duration,
                                               &warnings));
                }
            } else if constexpr (std::is_same_v<T, Simultaneous>) {
                // members address disjoint SQUIDs, so sequential application
                // equals the joint propagator exactly
                for (const PulseStep& m : a.members)
                    walk_action(m, space, opt, roles, warnings, emit, pre_coupled);
            } else {
                roles.set(a.squid, a.new_role);
            }
        },
        step.action);
}

void check_space(const Schedule& schedule, const SpaceDescriptor& space) {
    validate_schedule(schedule);
    if (space.n_squids != schedule.n_squids)
        throw std::invalid_argument("schedule is for " + std::to_string(schedule.n_squids) +
                                    " SQUIDs, space has " + std::to_string(space.n_squids));
}

}  // namespace

UnitaryResult simulate_unitary(const Schedule& schedule, const SpaceDescriptor& space,
                               const SimOptions& options) {
    check_space(schedule, space);
    RoleTracker roles(schedule);
    UnitaryResult result{identity_op(space), {}};
    for (const ProtocolStep& step : schedule.steps)
        for (const PulseStep& a : step.actions)
            walk_action(
                a, space, options, roles, result.warnings,
                [&](const DenseOperator& u) { result.unitary.matrix = u.matrix * result.unitary.matrix; },
                [](int) {});
    return result;
}

StateResult simulate_state(const Schedule& schedule, const StateVector& input,
                           const SimOptions& options) {
    check_space(schedule, input.space);
    RoleTracker roles(schedule);
    StateResult result{input, {}, {}};
    for (const ProtocolStep& step : schedule.steps) {
        for (const PulseStep& a : step.actions)
            walk_action(
                a, input.space, options, roles, result.warnings,
                [&](const DenseOperator& u) {
                    result.state.amplitudes = u.matrix * result.state.amplitudes;
                },
                [&](int squid) {
                    double leaked = 0.0;
                    for (int idx : truncation_boundary_states(input.space, squid))
                        leaked += std::norm(result.state.amplitudes[idx]);
                    if (leaked > options.leak_tolerance)
                        throw TruncationLeakError(
                            "population " + std::to_string(leaked) + " on |3, " +
                                std::to_string(input.space.cavity_dim - 1) + "> of SQUID " +
                                std::to_string(squid) +
                                " would couple past the cavity truncation; raise cavity_dim",
                            leaked);
                });
        if (options.collect_trace) result.trace.push_back({step.label, result.state});
    }
    return result;
}

}  // namespace squidgate
