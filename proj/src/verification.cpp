#include "squidgate/verification.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace squidgate {

namespace {

constexpr double kPi = std::numbers::pi;
const std::complex<double> kI{0.0, 1.0};

double wrap_to_2pi(double phase) {
    phase = std::fmod(phase, 2.0 * kPi);
    if (phase < 0) phase += 2.0 * kPi;
    // a hair under 2pi is a rounding-error zero, not a large phase
    if (2.0 * kPi - phase < 1e-9) phase = 0.0;
    return phase;
}

std::vector<int> bits_of(int x, int n) {
    std::vector<int> b(n);
    for (int i = 0; i < n; ++i) b[i] = (x >> (n - 1 - i)) & 1;
    return b;
}

}  // namespace

Eigen::MatrixXcd ideal_phase_gate(int n, const std::vector<double>& thetas) {
    if (static_cast<int>(thetas.size()) != n - 1)
        throw std::invalid_argument("need one theta per target (n-1 values)");
    const int dim = 1 << n;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    for (int x = 0; x < dim; ++x) {
        const std::vector<int> q = bits_of(x, n);
        double phase = 0.0;
        if (q[0] == 1)
            for (int t = 2; t <= n; ++t)
                if (q[t - 1] == 1) phase += thetas[t - 2];
        u(x, x) = std::exp(kI * phase);
    }
    return u;
}

Eigen::MatrixXcd dft_matrix(int dim) {
    if (dim < 1) throw std::invalid_argument("dimension must be positive");
    Eigen::MatrixXcd f(dim, dim);
    const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
    for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k)
            f(j, k) = norm * std::exp(kI * (2.0 * kPi * j * k / dim));
    return f;
}

Eigen::MatrixXcd qubit_reversal(int n) {
    const int dim = 1 << n;
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
    for (int x = 0; x < dim; ++x) {
        int r = 0;
        for (int i = 0; i < n; ++i)
            if (x & (1 << i)) r |= 1 << (n - 1 - i);
        p(r, x) = 1.0;
    }
    return p;
}

FidelityReport compare_to_ideal(const Eigen::MatrixXcd& actual, const Eigen::MatrixXcd& ideal) {
    if (actual.rows() != ideal.rows() || actual.cols() != ideal.cols() ||
        actual.rows() != actual.cols())
        throw std::invalid_argument("fidelity needs square matrices of equal size");
    const int dim = static_cast<int>(actual.rows());
    const std::complex<double> tr = (ideal.adjoint() * actual).trace();
    FidelityReport r;
    r.logical_dim = dim;
    r.fidelity = std::abs(tr) / dim;
    const std::complex<double> align =
        std::abs(tr) > 1e-14 ? std::conj(tr) / std::abs(tr) : std::complex<double>(1.0);
    r.max_deviation = (actual * align - ideal).cwiseAbs().maxCoeff();
    double worst = 0.0;
    for (int c = 0; c < dim; ++c)
        worst = std::max(worst, 1.0 - actual.col(c).squaredNorm());
    r.leakage = std::max(worst, 0.0);
    return r;
}

TruthTable truth_table(const Schedule& schedule, const SpaceDescriptor& space,
                       const SimOptions& options) {
    const int n = space.n_squids;
    const int dim = 1 << n;
    TruthTable table;
    std::vector<std::complex<double>> amps(dim);
    std::vector<StateVector> outputs;
    for (int x = 0; x < dim; ++x) {
        BasisLabel in{bits_of(x, n), 0};
        StateResult res = simulate_state(schedule, basis_state(space, in), options);
        amps[x] = res.state.amplitudes[flat_index(space, in)];
        outputs.push_back(std::move(res.state));
        for (std::string& w : res.warnings) table.warnings.push_back(std::move(w));
    }
    const std::complex<double> ref =
        std::abs(amps[0]) > 1e-6 ? std::conj(amps[0]) / std::abs(amps[0])
                                 : std::complex<double>(1.0);
    for (int x = 0; x < dim; ++x) {
        TruthTableRow row;
        row.input = bits_of(x, n);
        row.phase = wrap_to_2pi(std::arg(amps[x] * ref));
        row.diagonal_weight = std::norm(amps[x]);
        double logical = 0.0;
        for (int y = 0; y < dim; ++y)
            logical += std::norm(outputs[x].amplitudes[flat_index(space, {bits_of(y, n), 0})]);
        row.leakage = std::max(1.0 - logical, 0.0);
        row.vacuum_return = cavity_population(outputs[x], 0);
        row.flagged = row.leakage > 1e-8;
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string truth_table_text(const TruthTable& table) {
    std::ostringstream out;
    out << "input  phase/pi      weight        leakage       vacuum\n";
    for (const TruthTableRow& row : table.rows) {
        for (int b : row.input) out << b;
        out << "    ";
        char buf[92];
        std::snprintf(buf, sizeof buf, "%-12.8f  %-12.8f  %-12.3e  %-12.8f%s", row.phase / kPi,
                      row.diagonal_weight, row.leakage, row.vacuum_return,
                      row.flagged ? "  LEAK" : "");
        out << buf << '\n';
    }
    for (const std::string& w : table.warnings) out << "warning: " << w << '\n';
    return out.str();
}

nlohmann::json truth_table_json(const TruthTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const TruthTableRow& row : table.rows) {
        std::string bits;
        for (int b : row.input) bits += static_cast<char>('0' + b);
        rows.push_back({{"input", bits},
                        {"phase", row.phase},
                        {"diagonal_weight", row.diagonal_weight},
                        {"leakage", row.leakage},
                        {"vacuum_return", row.vacuum_return},
                        {"flagged", row.flagged}});
    }
    return {{"rows", rows}, {"warnings", table.warnings}};
}

GateReport analyze_phase_gate(const Schedule& schedule, const SpaceDescriptor& space,
                              const Eigen::MatrixXcd& ideal, const SimOptions& options) {
    GateReport report;
    report.name = schedule.name;
    UnitaryResult sim = simulate_unitary(schedule, space, options);
    report.fidelity = compare_to_ideal(logical_restriction(sim.unitary), ideal);
    report.table = truth_table(schedule, space, options);
    return report;
}

std::string gate_report_text(const GateReport& report) {
    std::ostringstream out;
    out.precision(12);
    out << "gate: " << report.name << '\n'
        << "fidelity: " << report.fidelity.fidelity << '\n'
        << "max deviation: " << report.fidelity.max_deviation << '\n'
        << "leakage: " << report.fidelity.leakage << '\n'
        << truth_table_text(report.table);
    return out.str();
}

nlohmann::json gate_report_json(const GateReport& report) {
    return {{"gate", report.name},
            {"fidelity", report.fidelity.fidelity},
            {"max_deviation", report.fidelity.max_deviation},
            {"leakage", report.fidelity.leakage},
            {"logical_dim", report.fidelity.logical_dim},
            {"truth_table", truth_table_json(report.table)}};
}

DispersiveValidity dispersive_validity_impl(double g, double delta, double theta) {
    const SpaceDescriptor space = make_space(1, 2);
    const int i30 = flat_index(space, {{3}, 0});
    const int i21 = flat_index(space, {{2}, 1});
    DispersiveValidity v{g, delta, theta, 0.0, dispersive_leak_peak(g, delta), 0.0};
    // transfer peaks at the first half Rabi flop of the detuned pair
    const double w = std::sqrt(delta * delta / 4.0 + g * g);
    const DenseOperator peak = jc_detuned_propagator(space, 1, g, delta, kPi / (2.0 * w));
    v.leak_peak_exact = std::norm(peak.matrix(i30, i21));
    const double t_nominal = theta * delta / (g * g);
    const DenseOperator at_theta = jc_detuned_propagator(space, 1, g, delta, t_nominal);
    double err = std::arg(at_theta.matrix(i21, i21)) - theta;
    err = std::remainder(err, 2.0 * kPi);
    v.phase_error = err;
    return v;
}

DispersiveValidity dispersive_validity(double g, double delta, double theta) {
    if (!(theta >= 0))
        throw std::invalid_argument("theta must be nonnegative");
    return dispersive_validity_impl(g, delta, theta);
}

std::string dispersive_validity_text(const DispersiveValidity& v) {
    std::ostringstream out;
    out.precision(10);
    out << "g: " << v.g << " 1/s\n"
        << "delta: " << v.delta << " 1/s (" << v.delta / v.g << " g)\n"
        << "theta: " << v.theta << " rad\n"
        << "peak |2,1> escape, exact propagator: " << v.leak_peak_exact << '\n'
        << "peak |2,1> escape, 4g^2/(delta^2+4g^2): " << v.leak_peak_formula << '\n'
        << "phase error at nominal duration: " << v.phase_error << " rad\n";
    if (v.delta < 5.0 * v.g)
        out << "warning: detuning below 5g; dispersive phases unreliable\n";
    return out.str();
}

nlohmann::json dispersive_validity_json(const DispersiveValidity& v) {
    return {{"g", v.g},
            {"delta", v.delta},
            {"theta", v.theta},
            {"leak_peak_exact", v.leak_peak_exact},
            {"leak_peak_formula", v.leak_peak_formula},
            {"phase_error", v.phase_error}};
}

std::string to_string(QftLayout layout) {
    switch (layout) {
        case QftLayout::Direct: return "direct";
        case QftLayout::InputReversed: return "input-reversed";
        case QftLayout::OutputReversed: return "output-reversed";
        case QftLayout::BothReversed: return "both-reversed";
    }
    throw std::logic_error("unreachable");
}

QftCheck qft_check(const Eigen::MatrixXcd& logical) {
    const int dim = static_cast<int>(logical.rows());
    int n = 0;
    while ((1 << n) < dim) ++n;
    if ((1 << n) != dim || logical.cols() != dim)
        throw std::invalid_argument("expected a square matrix on 2^n states");
    const Eigen::MatrixXcd f = dft_matrix(dim);
    const Eigen::MatrixXcd r = qubit_reversal(n);
    const std::pair<QftLayout, Eigen::MatrixXcd> candidates[] = {
        {QftLayout::Direct, f},
        {QftLayout::InputReversed, f * r},
        {QftLayout::OutputReversed, r * f},
        {QftLayout::BothReversed, r * f * r},
    };
    QftCheck best{-1.0, QftLayout::Direct};
    for (const auto& [layout, ideal] : candidates) {
        const double fid = compare_to_ideal(logical, ideal).fidelity;
        if (fid > best.fidelity) best = {fid, layout};
    }
    return best;
}

DenseOperator protocol_operator_product(const SpaceDescriptor& space,
                                        const std::vector<double>& thetas) {
    const int n = space.n_squids;
    if (static_cast<int>(thetas.size()) != n - 1)
        throw std::invalid_argument("need one theta per target (n-1 values)");
    const int d = space.total_dim();

    // stuff a constant 2x2 over the (level la, level lb) pair of one SQUID
    auto level_pair = [&](int squid, int la, int lb, const Eigen::Matrix2cd& m) {
        Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(d, d);
        for (int idx = 0; idx < d; ++idx) {
            BasisLabel label = label_of(space, idx);
            if (label.levels[squid - 1] != la) continue;
            BasisLabel partner = label;
            partner.levels[squid - 1] = lb;
            const int p = flat_index(space, partner);
            u(idx, idx) = m(0, 0);
            u(idx, p) = m(0, 1);
            u(p, idx) = m(1, 0);
            u(p, p) = m(1, 1);
        }
        return u;
    };
    // the completed photon transfer: (|3,0>, |2,1>) pair of the control
    auto photon_swap = [&](int squid) {
        Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(d, d);
        for (int idx = 0; idx < d; ++idx) {
            BasisLabel label = label_of(space, idx);
            if (label.levels[squid - 1] != 3 || label.photons != 0) continue;
            BasisLabel partner = label;
            partner.levels[squid - 1] = 2;
            partner.photons = 1;
            const int p = flat_index(space, partner);
            u(idx, idx) = 0.0;
            u(p, p) = 0.0;
            u(idx, p) = -kI;
            u(p, idx) = -kI;
        }
        return u;
    };
    // conditional phase: one photon present marks a control in |1>
    auto conditional_phase = [&](int squid, double theta) {
        Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(d, d);
        for (int idx = 0; idx < d; ++idx) {
            BasisLabel label = label_of(space, idx);
            if (label.photons != 1) continue;
            if (label.levels[squid - 1] == 2) u(idx, idx) = std::exp(kI * theta);
            if (label.levels[squid - 1] == 3) u(idx, idx) = std::exp(-kI * theta);
        }
        return u;
    };

    Eigen::Matrix2cd store13, shelve_fwd, shelve_back, open12, close12;
    store13 << 0, kI, kI, 0;
    shelve_fwd << 0, 1, -1, 0;   // |0> -> -|2>, |2> -> |0>
    shelve_back << 0, -1, 1, 0;  // |0> -> |2>,  |2> -> -|0>
    open12 << 0, -1, 1, 0;       // |1> -> |2>,  |2> -> -|1>
    close12 << 0, 1, -1, 0;      // |1> -> -|2>, |2> -> |1>

    std::vector<Eigen::MatrixXcd> chronological;
    chronological.push_back(level_pair(1, 1, 3, store13));
    chronological.push_back(photon_swap(1));
    chronological.push_back(level_pair(1, 0, 2, shelve_fwd));
    for (int t = 2; t <= n; ++t) {
        chronological.push_back(level_pair(t, 1, 2, open12));
        chronological.push_back(conditional_phase(t, thetas[t - 2]));
        chronological.push_back(level_pair(t, 1, 2, close12));
    }
    chronological.push_back(level_pair(1, 0, 2, shelve_back));
    chronological.push_back(photon_swap(1));
    chronological.push_back(level_pair(1, 1, 3, store13));

    DenseOperator product = identity_op(space);
    for (const Eigen::MatrixXcd& factor : chronological)
        product.matrix = factor * product.matrix;
    return product;
}

}  // namespace squidgate
