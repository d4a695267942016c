#include "squidgate/schedule.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "squidgate/errors.hpp"

namespace squidgate {

namespace {

const nlohmann::json& require_field(const nlohmann::json& j, const char* field,
                                    const char* context) {
    if (!j.contains(field))
        throw std::invalid_argument(std::string(context) + " record missing \"" + field + "\"");
    return j.at(field);
}

void check_finite_duration(double d, const std::string& what) {
    if (!std::isfinite(d) || d < 0)
        throw std::invalid_argument(what + " duration must be finite and >= 0");
}

// squid addressed by a primitive (not Simultaneous/Retune)
int primitive_squid(const PulseStep& step) {
    return std::visit(
        [](const auto& a) -> int {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, Simultaneous>)
                throw std::invalid_argument("nested simultaneous slots are not allowed");
            else if constexpr (std::is_same_v<T, RetuneMarker>)
                throw std::invalid_argument("retune markers cannot join a simultaneous slot");
            else
                return a.squid;
        },
        step.action);
}

void validate_action(const PulseStep& step, int n_squids);

void validate_simultaneous(const Simultaneous& slot, int n_squids) {
    if (slot.members.size() < 2)
        throw std::invalid_argument("simultaneous slot needs at least two members");
    std::set<int> seen;
    std::vector<int> squids;
    double d0 = -1.0;
    bool mismatch = false;
    for (const PulseStep& member : slot.members) {
        const int sq = primitive_squid(member);
        if (!seen.insert(sq).second)
            throw ConstraintError("simultaneous slot addresses SQUID " + std::to_string(sq) +
                                      " twice",
                                  {sq});
        squids.push_back(sq);
        validate_action(member, n_squids);
        const double d = action_duration(member);
        if (d0 < 0)
            d0 = d;
        else if (std::abs(d - d0) > 1e-12 * std::max(d, d0))
            mismatch = true;
    }
    if (mismatch)
        throw ConstraintError("simultaneous slot members have unequal durations", squids);
}

void validate_action(const PulseStep& step, int n_squids) {
    std::visit(
        [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, Simultaneous>) {
                validate_simultaneous(a, n_squids);
            } else {
                if (a.squid < 1 || a.squid > n_squids)
                    throw std::invalid_argument("action addresses SQUID " +
                                                std::to_string(a.squid) + " outside 1.." +
                                                std::to_string(n_squids));
                if constexpr (std::is_same_v<T, MicrowavePulse>) {
                    if (a.level_lo < 0 || a.level_hi > 3 || a.level_lo >= a.level_hi)
                        throw std::invalid_argument("microwave pulse needs 0 <= lo < hi <= 3");
                    if (!std::isfinite(a.omega) || a.omega <= 0)
                        throw std::invalid_argument("microwave pulse needs positive Rabi frequency");
                    check_finite_duration(a.duration, "pulse");
                } else if constexpr (std::is_same_v<T, ResonantWait>) {
                    if (!std::isfinite(a.g) || a.g <= 0)
                        throw std::invalid_argument("resonant wait needs positive g");
                    check_finite_duration(a.duration, "wait");
                } else if constexpr (std::is_same_v<T, DispersiveWait>) {
                    if (!std::isfinite(a.g) || a.g <= 0)
                        throw std::invalid_argument("dispersive wait needs positive g");
                    if (!std::isfinite(a.delta) || a.delta <= 0)
                        throw std::invalid_argument("dispersive wait needs positive detuning");
                    check_finite_duration(a.duration, "wait");
                }
                // RetuneMarker: nothing beyond the squid range check
            }
        },
        step.action);
}

}  // namespace

std::string to_string(CavityRole role) {
    switch (role) {
        case CavityRole::Resonant: return "resonant";
        case CavityRole::Dispersive: return "dispersive";
        case CavityRole::Decoupled: return "decoupled";
    }
    throw std::logic_error("unreachable");
}

CavityRole role_from_string(const std::string& s) {
    if (s == "resonant") return CavityRole::Resonant;
    if (s == "dispersive") return CavityRole::Dispersive;
    if (s == "decoupled") return CavityRole::Decoupled;
    throw std::invalid_argument("unknown cavity role \"" + s + "\"");
}

double action_duration(const PulseStep& step) {
    return std::visit(
        [](const auto& a) -> double {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, Simultaneous>) {
                double d = 0.0;
                for (const PulseStep& m : a.members) d = std::max(d, action_duration(m));
                return d;
            } else if constexpr (std::is_same_v<T, RetuneMarker>) {
                return 0.0;
            } else {
                return a.duration;
            }
        },
        step.action);
}

int Schedule::step_count() const {
    int count = 0;
    for (const ProtocolStep& step : steps) {
        bool real = false;
        for (const PulseStep& a : step.actions)
            if (!std::holds_alternative<RetuneMarker>(a.action)) real = true;
        if (real) ++count;
    }
    return count;
}

double Schedule::duration(double retune_latency) const {
    double total = 0.0;
    for (const ProtocolStep& step : steps)
        for (const PulseStep& a : step.actions) {
            total += action_duration(a);
            if (std::holds_alternative<RetuneMarker>(a.action)) total += retune_latency;
        }
    return total;
}

void validate_schedule(const Schedule& schedule) {
    if (schedule.n_squids < 1)
        throw std::invalid_argument("schedule needs n_squids >= 1");
    for (const auto& [squid, role] : schedule.initial_roles)
        if (squid < 1 || squid > schedule.n_squids)
            throw std::invalid_argument("initial role for SQUID " + std::to_string(squid) +
                                        " outside 1.." + std::to_string(schedule.n_squids));
    for (const ProtocolStep& step : schedule.steps)
        for (const PulseStep& a : step.actions) validate_action(a, schedule.n_squids);
}

namespace {

nlohmann::json action_to_json(const PulseStep& step) {
    return std::visit(
        [](const auto& a) -> nlohmann::json {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, MicrowavePulse>) {
                return {{"type", "microwave_pulse"}, {"squid", a.squid},
                        {"levels", {a.level_lo, a.level_hi}}, {"omega", a.omega},
                        {"phi", a.phi}, {"duration_s", a.duration}};
            } else if constexpr (std::is_same_v<T, ResonantWait>) {
                return {{"type", "resonant_wait"}, {"squid", a.squid}, {"g", a.g},
                        {"duration_s", a.duration}};
            } else if constexpr (std::is_same_v<T, DispersiveWait>) {
                return {{"type", "dispersive_wait"}, {"squid", a.squid}, {"g", a.g},
                        {"delta", a.delta}, {"duration_s", a.duration}};
            } else if constexpr (std::is_same_v<T, Simultaneous>) {
                nlohmann::json members = nlohmann::json::array();
                for (const PulseStep& m : a.members) members.push_back(action_to_json(m));
                return {{"type", "simultaneous"}, {"members", members}};
            } else {
                return {{"type", "retune"}, {"squid", a.squid}, {"role", to_string(a.new_role)}};
            }
        },
        step.action);
}

PulseStep action_from_json(const nlohmann::json& j) {
    const std::string type = require_field(j, "type", "action").get<std::string>();
    if (type == "microwave_pulse") {
        MicrowavePulse p;
        p.squid = require_field(j, "squid", "microwave_pulse").get<int>();
        const auto& levels = require_field(j, "levels", "microwave_pulse");
        if (!levels.is_array() || levels.size() != 2)
            throw std::invalid_argument("microwave_pulse \"levels\" must be a two-element array");
        p.level_lo = levels[0].get<int>();
        p.level_hi = levels[1].get<int>();
        p.omega = require_field(j, "omega", "microwave_pulse").get<double>();
        p.phi = require_field(j, "phi", "microwave_pulse").get<double>();
        p.duration = require_field(j, "duration_s", "microwave_pulse").get<double>();
        return PulseStep{p};
    }
    if (type == "resonant_wait") {
        ResonantWait w;
        w.squid = require_field(j, "squid", "resonant_wait").get<int>();
        w.g = require_field(j, "g", "resonant_wait").get<double>();
        w.duration = require_field(j, "duration_s", "resonant_wait").get<double>();
        return PulseStep{w};
    }
    if (type == "dispersive_wait") {
        DispersiveWait w;
        w.squid = require_field(j, "squid", "dispersive_wait").get<int>();
        w.g = require_field(j, "g", "dispersive_wait").get<double>();
        w.delta = require_field(j, "delta", "dispersive_wait").get<double>();
        w.duration = require_field(j, "duration_s", "dispersive_wait").get<double>();
        return PulseStep{w};
    }
    if (type == "simultaneous") {
        Simultaneous s;
        for (const auto& mj : require_field(j, "members", "simultaneous"))
            s.members.push_back(action_from_json(mj));
        return PulseStep{s};
    }
    if (type == "retune") {
        RetuneMarker r;
        r.squid = require_field(j, "squid", "retune").get<int>();
        r.new_role = role_from_string(require_field(j, "role", "retune").get<std::string>());
        return PulseStep{r};
    }
    throw std::invalid_argument("unknown action type \"" + type + "\"");
}

}  // namespace

nlohmann::json schedule_to_json(const Schedule& schedule) {
    nlohmann::json j;
    j["name"] = schedule.name;
    j["n_squids"] = schedule.n_squids;
    j["thetas"] = schedule.thetas;
    nlohmann::json roles = nlohmann::json::object();
    for (const auto& [squid, role] : schedule.initial_roles)
        roles[std::to_string(squid)] = to_string(role);
    j["roles"] = roles;
    j["steps"] = nlohmann::json::array();
    for (const ProtocolStep& step : schedule.steps) {
        nlohmann::json actions = nlohmann::json::array();
        for (const PulseStep& a : step.actions) actions.push_back(action_to_json(a));
        j["steps"].push_back({{"label", step.label}, {"actions", actions}});
    }
    return j;
}

Schedule schedule_from_json(const nlohmann::json& j) {
    Schedule s;
    s.name = require_field(j, "name", "schedule").get<std::string>();
    s.n_squids = require_field(j, "n_squids", "schedule").get<int>();
    for (const auto& t : require_field(j, "thetas", "schedule"))
        s.thetas.push_back(t.get<double>());
    for (const auto& [key, value] : require_field(j, "roles", "schedule").items())
        s.initial_roles[std::stoi(key)] = role_from_string(value.get<std::string>());
    for (const auto& sj : require_field(j, "steps", "schedule")) {
        ProtocolStep step;
        step.label = require_field(sj, "label", "step").get<std::string>();
        for (const auto& aj : require_field(sj, "actions", "step"))
            step.actions.push_back(action_from_json(aj));
        s.steps.push_back(std::move(step));
    }
    validate_schedule(s);
    return s;
}

}  // namespace squidgate
