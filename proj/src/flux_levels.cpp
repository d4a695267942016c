#include "squidgate/flux_levels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "squidgate/errors.hpp"

namespace squidgate {

namespace {

constexpr double kPi = std::numbers::pi;

void check_grid(const Grid& grid) {
    if (!(grid.hi > grid.lo)) throw std::invalid_argument("grid needs hi > lo");
    if (grid.points < 3) throw std::invalid_argument("grid needs at least 3 points");
}

// eigenvalue count below x for the symmetric tridiagonal (d, e), by Sturm
// sequence of the LDL^T pivots
int count_below(const Eigen::VectorXd& d, const Eigen::VectorXd& e2, double x) {
    int count = 0;
    double q = d[0] - x;
    if (q < 0) ++count;
    for (Eigen::Index i = 1; i < d.size(); ++i) {
        if (q == 0.0) q = -1e-300;
        q = d[i] - x - e2[i - 1] / q;
        if (q < 0) ++count;
    }
    return count;
}

// lowest k eigenvalues by bisection on the Sturm count
std::vector<double> lowest_eigenvalues(const Eigen::VectorXd& d, const Eigen::VectorXd& e,
                                       int k) {
    const Eigen::Index n = d.size();
    Eigen::VectorXd e2(n - 1);
    for (Eigen::Index i = 0; i + 1 < n; ++i) e2[i] = e[i] * e[i];

    double lo = d[0], hi = d[0];
    for (Eigen::Index i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < n ? std::abs(e[i]) : 0.0);
        lo = std::min(lo, d[i] - r);
        hi = std::max(hi, d[i] + r);
    }

    std::vector<double> values;
    for (int j = 0; j < k; ++j) {
        double a = lo, b = hi;
        for (int iter = 0; iter < 300 && b - a > 1e-14 * std::max(std::abs(a), std::abs(b));
             ++iter) {
            const double mid = 0.5 * (a + b);
            if (count_below(d, e2, mid) > j)
                b = mid;
            else
                a = mid;
        }
        values.push_back(0.5 * (a + b));
    }
    return values;
}

}  // namespace

double josephson_energy(const CircuitParams& c) {
    return c.critical_current * kFluxQuantum / (2.0 * kPi);
}

double screening_beta(const CircuitParams& c) {
    const double k = 2.0 * kPi / kFluxQuantum;
    return c.inductance * josephson_energy(c) * k * k;
}

double squid_potential(const CircuitParams& c, double phi) {
    const double d = phi - c.external_flux;
    return d * d / (2.0 * c.inductance) -
           josephson_energy(c) * std::cos(2.0 * kPi * phi / kFluxQuantum);
}

Grid auto_grid(const CircuitParams& c, int points, double half_width) {
    if (c.capacitance <= 0 || c.inductance <= 0)
        throw std::invalid_argument("capacitance and inductance must be positive");
    if (c.critical_current < 0) throw std::invalid_argument("critical current must be >= 0");
    if (half_width <= 0) throw std::invalid_argument("half_width must be positive");

    // locate the global classical minimum: coarse scan, then golden-section
    const double harmonic_length =
        std::sqrt(kHbar * std::sqrt(c.inductance / c.capacitance));
    const double span = std::max(3.0 * kFluxQuantum, 8.0 * harmonic_length);
    const int n_scan = 20001;
    double best_phi = c.external_flux, best_v = squid_potential(c, best_phi);
    for (int i = 0; i < n_scan; ++i) {
        const double phi = c.external_flux - span + 2.0 * span * i / (n_scan - 1);
        const double v = squid_potential(c, phi);
        if (v < best_v) {
            best_v = v;
            best_phi = phi;
        }
    }
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = best_phi - span / (n_scan - 1), b = best_phi + span / (n_scan - 1);
    while (b - a > 1e-12 * span) {
        const double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
        if (squid_potential(c, c1) < squid_potential(c, c2))
            b = c2;
        else
            a = c1;
    }
    const double minimum = 0.5 * (a + b);

    const double dh = 1e-6 * kFluxQuantum;
    double curvature = (squid_potential(c, minimum + dh) - 2.0 * squid_potential(c, minimum) +
                        squid_potential(c, minimum - dh)) /
                       (dh * dh);
    if (curvature <= 0) curvature = 1.0 / c.inductance;  // saddle: fall back to the bare inductor
    const double omega = std::sqrt(curvature / c.capacitance);
    const double ho_length = std::sqrt(kHbar / (c.capacitance * omega));
    return Grid{minimum - half_width * ho_length, minimum + half_width * ho_length, points};
}

double LevelStructure::omega(int i, int j) const {
    if (i < 0 || j < 0 || i >= static_cast<int>(energies.size()) ||
        j >= static_cast<int>(energies.size()))
        throw std::invalid_argument("level index out of range of computed levels");
    return (energies[j] - energies[i]) / kHbar;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> discretized_hamiltonian(const CircuitParams& c,
                                                                    const Grid& grid) {
    check_grid(grid);
    if (c.capacitance <= 0) throw std::invalid_argument("capacitance must be positive");
    const int n = grid.points;
    const double h = (grid.hi - grid.lo) / (n - 1);
    const double kinetic = kHbar * kHbar / (c.capacitance * h * h);
    Eigen::VectorXd d(n), e(n - 1);
    for (int i = 0; i < n; ++i)
        d[i] = kinetic + squid_potential(c, grid.lo + i * h);
    e.setConstant(-kinetic / 2.0);
    return {d, e};
}

LevelStructure solve_levels(const CircuitParams& c, const Grid& grid, int k) {
    if (k < 1) throw std::invalid_argument("need at least one level");
    if (k > grid.points - 2) throw std::invalid_argument("grid too small for requested levels");
    auto [d, e] = discretized_hamiltonian(c, grid);
    LevelStructure levels;
    levels.energies = lowest_eigenvalues(d, e, k);
    return levels;
}

RefinementReport solve_with_refinement(const CircuitParams& c, const Grid& grid, int k,
                                       double drift_tolerance) {
    RefinementReport report;
    report.coarse = solve_levels(c, grid, k);
    report.fine = solve_levels(c, Grid{grid.lo, grid.hi, 2 * grid.points}, k);
    const double span =
        std::abs(report.fine.energies.back() - report.fine.energies.front());
    double drift = 0.0;
    for (int i = 0; i < k; ++i) {
        const double denom = std::max({std::abs(report.fine.energies[i]), span, 1e-300});
        drift = std::max(drift,
                         std::abs(report.coarse.energies[i] - report.fine.energies[i]) / denom);
    }
    report.max_relative_drift = drift;
    if (drift > drift_tolerance) {
        std::ostringstream msg;
        msg << "levels drift " << drift << " (tolerance " << drift_tolerance
            << ") when doubling " << grid.points << " grid points; grid too coarse";
        throw ConvergenceError(msg.str());
    }
    return report;
}

std::vector<SweepRow> sweep_flux(const CircuitParams& base, double phi_x_lo_over_phi0,
                                 double phi_x_hi_over_phi0, int n_bias, int grid_points) {
    if (n_bias < 2) throw std::invalid_argument("sweep needs at least two bias points");
    if (!(phi_x_hi_over_phi0 > phi_x_lo_over_phi0))
        throw std::invalid_argument("sweep needs hi > lo");
    std::vector<SweepRow> rows;
    for (int i = 0; i < n_bias; ++i) {
        const double x = phi_x_lo_over_phi0 +
                         (phi_x_hi_over_phi0 - phi_x_lo_over_phi0) * i / (n_bias - 1);
        CircuitParams c = base;
        c.external_flux = x * kFluxQuantum;
        const LevelStructure levels = solve_levels(c, auto_grid(c, grid_points), 4);
        rows.push_back({x, levels.omega01(), levels.omega12(), levels.omega23()});
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out.precision(12);
    out << "phi_x_over_phi0,omega01,omega12,omega23\n";
    for (const SweepRow& r : rows)
        out << r.phi_x_over_phi0 << ',' << r.omega01 << ',' << r.omega12 << ',' << r.omega23
            << '\n';
    return out.str();
}

}  // namespace squidgate
