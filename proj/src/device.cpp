#include "squidgate/device.hpp"

#include <stdexcept>

namespace squidgate {

DeviceParams DeviceParams::defaults(int n_squids) {
    if (n_squids < 1) throw std::invalid_argument("need at least one SQUID");
    DeviceParams p;
    p.squids.assign(n_squids, SquidParams{});
    return p;
}

const SquidParams& DeviceParams::squid(int index1) const {
    if (index1 < 1 || index1 > n_squids())
        throw std::invalid_argument("SQUID index " + std::to_string(index1) +
                                    " out of range 1.." + std::to_string(n_squids()));
    return squids[index1 - 1];
}

std::vector<std::string> DeviceParams::validate() const {
    if (squids.empty()) throw std::invalid_argument("device has no SQUIDs");
    std::vector<std::string> warnings;
    for (int i = 1; i <= n_squids(); ++i) {
        const SquidParams& s = squids[i - 1];
        const std::string who = "SQUID " + std::to_string(i);
        if (s.g <= 0) throw std::invalid_argument(who + ": coupling g must be positive");
        for (double om : {s.omega_02, s.omega_12, s.omega_13, s.omega_03})
            if (om <= 0) throw std::invalid_argument(who + ": Rabi frequencies must be positive");
        if (s.delta_c <= 0) throw std::invalid_argument(who + ": dispersive detuning must be positive");
        if (s.delta_c < 5.0 * s.g)
            warnings.push_back(who + ": detuning " + std::to_string(s.delta_c) +
                               " below 5g; dispersive approximation is unreliable");
    }
    return warnings;
}

DeviceParams device_from_json(const nlohmann::json& j) {
    DeviceParams p;
    p.omega_c = j.value("omega_c", 0.0);
    if (!j.contains("squids") || !j["squids"].is_array() || j["squids"].empty())
        throw std::invalid_argument("device config needs a non-empty \"squids\" array");
    for (const auto& sj : j["squids"]) {
        SquidParams s;
        for (const char* field : {"g", "delta_c", "omega_02", "omega_12", "omega_13", "omega_03"})
            if (!sj.contains(field))
                throw std::invalid_argument(std::string("device config squid entry missing \"") +
                                            field + "\"");
        s.g = sj["g"].get<double>();
        s.delta_c = sj["delta_c"].get<double>();
        s.omega_02 = sj["omega_02"].get<double>();
        s.omega_12 = sj["omega_12"].get<double>();
        s.omega_13 = sj["omega_13"].get<double>();
        s.omega_03 = sj["omega_03"].get<double>();
        p.squids.push_back(s);
    }
    p.validate();  // reject unphysical values at parse time; warnings discarded here
    return p;
}

nlohmann::json device_to_json(const DeviceParams& params) {
    nlohmann::json j;
    j["omega_c"] = params.omega_c;
    j["squids"] = nlohmann::json::array();
    for (const SquidParams& s : params.squids) {
        j["squids"].push_back({{"g", s.g},
                               {"delta_c", s.delta_c},
                               {"omega_02", s.omega_02},
                               {"omega_12", s.omega_12},
                               {"omega_13", s.omega_13},
                               {"omega_03", s.omega_03}});
    }
    return j;
}

}  // namespace squidgate
