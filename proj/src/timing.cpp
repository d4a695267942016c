#include "squidgate/timing.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "squidgate/builders.hpp"
#include "squidgate/errors.hpp"

namespace squidgate {

namespace {

constexpr double kPi = std::numbers::pi;

void check_n(int n, const DeviceParams& params) {
    if (n < 2) throw std::invalid_argument("gate duration needs n >= 2");
    if (params.n_squids() < n)
        throw std::invalid_argument("device config has fewer than n SQUIDs");
}

double common_g(const DeviceParams& params, int n) {
    const double g = params.squid(1).g;
    for (int i = 2; i <= n; ++i)
        if (std::abs(params.squid(i).g - g) > 1e-9 * g)
            throw ConstraintError("closed-form durations assume uniform g; SQUID " +
                                      std::to_string(i) + " differs",
                                  {1, i});
    return g;
}

}  // namespace

double tau_multiqubit(int n, const DeviceParams& params) {
    check_n(n, params);
    const SquidParams& c = params.squid(1);
    double tau = kPi / c.omega_13 + kPi / c.g + n * kPi / (2.0 * c.omega_02);
    double theta = kPi / 2.0;
    for (int t = 2; t <= n; ++t, theta /= 2.0) {
        const SquidParams& s = params.squid(t);
        tau += theta * s.delta_c / (s.g * s.g);
    }
    return tau;
}

double tau_decomposed(int n, const DeviceParams& params) {
    check_n(n, params);
    const double g = common_g(params, n);
    const double pow2 = std::pow(2.0, n - 1);
    return (kPi / g) * (6.0 * (n - 1) / 5.0 + 10.0 * (pow2 - 1.0) / pow2);
}

std::vector<TimingRow> timing_curve(const DeviceParams& params, int n_min, int n_max) {
    if (n_min < 2 || n_max < n_min) throw std::invalid_argument("need 2 <= n_min <= n_max");
    std::vector<TimingRow> rows;
    for (int n = n_min; n <= n_max; ++n) {
        const double multi = tau_multiqubit(n, params);
        const double dec = tau_decomposed(n, params);
        rows.push_back({n, multi, dec, dec - multi});
    }
    return rows;
}

std::string timing_csv(const std::vector<TimingRow>& rows) {
    std::ostringstream out;
    out.precision(12);
    out << "n,tau_multi_s,tau_decomposed_s,advantage_s\n";
    for (const TimingRow& r : rows)
        out << r.n << ',' << r.tau_multi << ',' << r.tau_dec << ',' << r.advantage << '\n';
    return out.str();
}

TimingConsistency timing_consistency_multiqubit(int n, const DeviceParams& params) {
    const double closed = tau_multiqubit(n, params);
    const double sum = build_merged_gate(params, qft_phase_list(n)).duration();
    return {closed, sum, std::abs(closed - sum) / closed};
}

TimingConsistency timing_consistency_decomposed(int n, const DeviceParams& params) {
    const double closed = tau_decomposed(n, params);
    const double sum = build_decomposed_gate(params, qft_phase_list(n)).duration();
    return {closed, sum, std::abs(closed - sum) / closed};
}

}  // namespace squidgate
