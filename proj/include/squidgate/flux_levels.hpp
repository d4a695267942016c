#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace squidgate {

// Stationary levels of one rf-SQUID loop,
//   H = Q^2/2C + (phi - phi_x)^2 / 2L - E_J cos(2 pi phi / phi0),
// solved on a real-space flux grid. This module alone works in SI units with
// explicit hbar. phi0 here is hbar/2e (reduced flux quantum), and
// E_J = I_c phi0 / 2pi, matching the circuit convention used for the gate
// frequencies elsewhere.

inline constexpr double kHbar = 1.054571817e-34;        // J s
inline constexpr double kElementaryCharge = 1.602176634e-19;  // C
inline constexpr double kFluxQuantum = kHbar / (2.0 * kElementaryCharge);  // Wb

struct CircuitParams {
    double capacitance = 1e-13;       // F
    double inductance = 1e-10;        // H
    double critical_current = 1e-6;   // A
    double external_flux = 0.0;       // Wb
};

double josephson_energy(const CircuitParams& c);  // I_c phi0 / 2pi, J
// L E_J (2 pi / phi0)^2; > 1 admits a double well at half-integer bias
double screening_beta(const CircuitParams& c);
double squid_potential(const CircuitParams& c, double phi);  // J

struct Grid {
    double lo = 0.0, hi = 0.0;  // Wb
    int points = 0;
};

// Window of +/- half_width harmonic lengths around the classical minimum
// (located by scan plus golden-section refinement; curvature taken
// numerically, falling back to the bare 1/L when non-positive).
Grid auto_grid(const CircuitParams& c, int points, double half_width = 6.0);

struct LevelStructure {
    std::vector<double> energies;  // J, ascending
    double omega(int i, int j) const;  // (E_j - E_i) / hbar, s^-1
    double omega01() const { return omega(0, 1); }
    double omega12() const { return omega(1, 2); }
    double omega23() const { return omega(2, 3); }
};

// Second-order central differences with hard walls at the grid ends; the
// resulting symmetric tridiagonal problem is solved for the lowest k
// eigenvalues by Sturm-sequence bisection.
LevelStructure solve_levels(const CircuitParams& c, const Grid& grid, int k);

// diag and sub-diagonal of the discretized hamiltonian (the exact matrix
// solve_levels works on), for cross-checks against a dense eigensolver.
std::pair<Eigen::VectorXd, Eigen::VectorXd> discretized_hamiltonian(const CircuitParams& c,
                                                                    const Grid& grid);

struct RefinementReport {
    LevelStructure coarse;        // at grid.points
    LevelStructure fine;          // at 2*grid.points
    double max_relative_drift;    // over the k requested levels
};

// Solves at n and 2n points; throws ConvergenceError when the drift exceeds
// drift_tolerance (the grid is too coarse to trust).
RefinementReport solve_with_refinement(const CircuitParams& c, const Grid& grid, int k,
                                       double drift_tolerance = 1e-4);

struct SweepRow {
    double phi_x_over_phi0;
    double omega01, omega12, omega23;  // s^-1
};

// Level transitions vs external flux; the grid re-centers per bias point.
std::vector<SweepRow> sweep_flux(const CircuitParams& base, double phi_x_lo_over_phi0,
                                 double phi_x_hi_over_phi0, int n_bias, int grid_points);
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace squidgate
