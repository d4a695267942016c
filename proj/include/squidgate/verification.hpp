#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "squidgate/schedule.hpp"
#include "squidgate/simulate.hpp"
#include "squidgate/state_space.hpp"

namespace squidgate {

// diag over computational states x1..xn: e^{i sum_t theta_t [x1 = x_t = 1]} —
// the target gate of the controlled-phase protocols (qubit 1 controls).
Eigen::MatrixXcd ideal_phase_gate(int n, const std::vector<double>& thetas);

// F_jk = e^{2 pi i j k / dim} / sqrt(dim)
Eigen::MatrixXcd dft_matrix(int dim);

// permutation reversing qubit order on 2^n states
Eigen::MatrixXcd qubit_reversal(int n);

struct FidelityReport {
    double fidelity;        // |Tr(ideal^dag actual)| / dim, global phase removed
    double max_deviation;   // max elementwise |actual - ideal| after phase alignment
    double leakage;         // worst column-norm deficit of `actual`
    int logical_dim;
};

FidelityReport compare_to_ideal(const Eigen::MatrixXcd& actual, const Eigen::MatrixXcd& ideal);

struct TruthTableRow {
    std::vector<int> input;   // qubit values q1..qn
    double phase;             // arg of the diagonal amplitude, aligned to the
                              // all-zeros row, reported in [0, 2pi)
    double diagonal_weight;   // |<x, vac| U |x, vac>|^2
    double leakage;           // population outside the computational (x) vacuum subspace
    double vacuum_return;     // cavity vacuum population in the output
    bool flagged;             // leakage > 1e-8
};

struct TruthTable {
    std::vector<TruthTableRow> rows;
    std::vector<std::string> warnings;
};

TruthTable truth_table(const Schedule& schedule, const SpaceDescriptor& space,
                       const SimOptions& options = {});
std::string truth_table_text(const TruthTable& table);
nlohmann::json truth_table_json(const TruthTable& table);

// Full verdict on a phase-gate schedule: simulate, restrict, compare.
struct GateReport {
    std::string name;
    FidelityReport fidelity;
    TruthTable table;
};
GateReport analyze_phase_gate(const Schedule& schedule, const SpaceDescriptor& space,
                              const Eigen::MatrixXcd& ideal, const SimOptions& options = {});
std::string gate_report_text(const GateReport& report);
nlohmann::json gate_report_json(const GateReport& report);

// How good the dispersive approximation is at (g, delta, theta): peak
// population escaping |2,1> during one detuned segment (exact matrix element
// vs the 4g^2/(delta^2+4g^2) formula) and the phase deviation from theta at
// the nominal wait duration theta*delta/g^2.
struct DispersiveValidity {
    double g, delta, theta;
    double leak_peak_exact;
    double leak_peak_formula;
    double phase_error;       // exact accumulated phase minus theta, wrapped
};
DispersiveValidity dispersive_validity(double g, double delta, double theta);
std::string dispersive_validity_text(const DispersiveValidity& v);
nlohmann::json dispersive_validity_json(const DispersiveValidity& v);

// Fourier-transform identification: best fidelity against the DFT under the
// four input/output qubit-order conventions.
enum class QftLayout { Direct, InputReversed, OutputReversed, BothReversed };
std::string to_string(QftLayout layout);
struct QftCheck {
    double fidelity;
    QftLayout layout;
};
QftCheck qft_check(const Eigen::MatrixXcd& logical);

// Independent reconstruction of the controlled-phase gate: the per-step
// operators (photon swap, quarter rotations, conditional phases) are stuffed
// directly as constant matrices — no propagator code shared with dynamics —
// and multiplied in protocol order. Exact match with the simulated schedule
// requires cavity_dim = 2 (the literal step operators act as identity on
// higher Fock states, the resonant propagator does not).
DenseOperator protocol_operator_product(const SpaceDescriptor& space,
                                        const std::vector<double>& thetas);

}  // namespace squidgate
