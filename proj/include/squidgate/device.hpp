#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace squidgate {

// Per-SQUID hardware rates, all angular frequencies in s^-1.
//   g        : |2>-|3> <-> cavity coupling
//   delta_c  : dispersive detuning omega_c - omega_32 used when this SQUID is
//              biased off cavity resonance
//   omega_ij : microwave Rabi frequency of the i<->j transition
struct SquidParams {
    double g = 3.0e9;
    double delta_c = 3.0e10;
    double omega_02 = 3.0e10;
    double omega_12 = 3.0e10;
    double omega_13 = 3.0e10;
    double omega_03 = 3.0e10;
};

struct DeviceParams {
    double omega_c = 0.0;  // cavity frequency; bookkeeping only (interaction picture)
    std::vector<SquidParams> squids;

    static DeviceParams defaults(int n_squids);
    int n_squids() const { return static_cast<int>(squids.size()); }
    const SquidParams& squid(int index1) const;  // 1-based

    // Throws std::invalid_argument on unphysical values (nonpositive rates);
    // returns human-readable warnings for dubious but legal ones
    // (dispersive detuning below 5g).
    std::vector<std::string> validate() const;
};

DeviceParams device_from_json(const nlohmann::json& j);
nlohmann::json device_to_json(const DeviceParams& params);

}  // namespace squidgate
