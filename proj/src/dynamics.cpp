#include "squidgate/dynamics.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace squidgate {

namespace {

using std::complex;
const complex<double> kI{0.0, 1.0};

void check_duration(double t) {
    if (!std::isfinite(t) || t < 0) throw std::invalid_argument("duration must be finite and >= 0");
}

void check_rate(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0)
        throw std::invalid_argument(std::string(name) + " must be finite and positive");
}

// Visit the resonant-coupling blocks of one SQUID: pairs (|3, m>, |2, m+1>)
// for m = 0 .. N_c - 2, over all spectator configurations.
template <typename F>
void for_each_jc_block(const SpaceDescriptor& space, int squid, F&& f) {
    for (int idx = 0; idx < space.total_dim(); ++idx) {
        BasisLabel label = label_of(space, idx);
        if (label.levels[squid - 1] != 3 || label.photons >= space.cavity_dim - 1) continue;
        BasisLabel partner = label;
        partner.levels[squid - 1] = 2;
        partner.photons += 1;
        f(idx, flat_index(space, partner), label.photons);
    }
}

}  // namespace

Eigen::Matrix2cd mw_rotation_block(double omega, double phi, double t) {
    const double angle = omega * t;
    const double c = std::cos(angle), s = std::sin(angle);
    Eigen::Matrix2cd u;
    u << c, -kI * std::exp(kI * phi) * s, -kI * std::exp(-kI * phi) * s, c;
    return u;
}

DenseOperator mw_pulse_propagator(const SpaceDescriptor& space, int squid, int level_lo,
                                  int level_hi, double omega, double phi, double t) {
    if (level_lo >= level_hi)
        throw std::invalid_argument("microwave pulse needs level_lo < level_hi");
    check_rate(omega, "Rabi frequency");
    check_duration(t);
    return embed_two_level(space, squid, level_lo, level_hi, mw_rotation_block(omega, phi, t));
}

DenseOperator jc_resonant_propagator(const SpaceDescriptor& space, int squid, double g,
                                     double t) {
    check_rate(g, "coupling g");
    check_duration(t);
    DenseOperator op = identity_op(space);
    for_each_jc_block(space, squid, [&](int i3, int i2, int m) {
        const double angle = g * std::sqrt(m + 1.0) * t;
        const double c = std::cos(angle), s = std::sin(angle);
        op.matrix(i3, i3) = c;
        op.matrix(i3, i2) = -kI * s;
        op.matrix(i2, i3) = -kI * s;
        op.matrix(i2, i2) = c;
    });
    return op;
}

DenseOperator dispersive_propagator(const SpaceDescriptor& space, int squid, double g,
                                    double delta, double t,
                                    std::vector<std::string>* warnings) {
    check_rate(g, "coupling g");
    check_rate(delta, "detuning");
    check_duration(t);
    if (delta < 5.0 * g && warnings)
        warnings->push_back("SQUID " + std::to_string(squid) + ": detuning below 5g (" +
                            std::to_string(delta / g) + "g); dispersive phases unreliable");
    DenseOperator op = identity_op(space);
    for (int idx = 0; idx < space.total_dim(); ++idx) {
        BasisLabel label = label_of(space, idx);
        const double shift = g * g * label.photons * t / delta;
        if (label.levels[squid - 1] == 2)
            op.matrix(idx, idx) = std::exp(kI * shift);
        else if (label.levels[squid - 1] == 3)
            op.matrix(idx, idx) = std::exp(-kI * shift);
    }
    return op;
}

DenseOperator jc_detuned_propagator(const SpaceDescriptor& space, int squid, double g,
                                    double delta, double t) {
    check_rate(g, "coupling g");
    check_rate(delta, "detuning");
    check_duration(t);
    DenseOperator op = identity_op(space);
    const complex<double> frame = std::exp(-kI * delta * t / 2.0);
    for_each_jc_block(space, squid, [&](int i3, int i2, int m) {
        const double G = g * std::sqrt(m + 1.0);
        const double W = std::sqrt(delta * delta / 4.0 + G * G);
        const double c = std::cos(W * t), s = std::sin(W * t) / W;
        op.matrix(i3, i3) = frame * (c - kI * s * delta / 2.0);
        op.matrix(i3, i2) = frame * (-kI * s * G);
        op.matrix(i2, i3) = frame * (-kI * s * G);
        op.matrix(i2, i2) = frame * (c + kI * s * delta / 2.0);
    });
    // |3, N_c - 1> has no partner; it just accumulates the detuning phase
    for (int idx : truncation_boundary_states(space, squid))
        op.matrix(idx, idx) = std::exp(-kI * delta * t);
    return op;
}

DenseOperator mw_hamiltonian(const SpaceDescriptor& space, int squid, int level_lo,
                             int level_hi, double omega, double phi) {
    if (level_lo >= level_hi)
        throw std::invalid_argument("microwave pulse needs level_lo < level_hi");
    check_rate(omega, "Rabi frequency");
    DenseOperator h{space, Eigen::MatrixXcd::Zero(space.total_dim(), space.total_dim())};
    for (int idx = 0; idx < space.total_dim(); ++idx) {
        BasisLabel label = label_of(space, idx);
        if (label.levels[squid - 1] != level_lo) continue;
        BasisLabel partner = label;
        partner.levels[squid - 1] = level_hi;
        const int p = flat_index(space, partner);
        h.matrix(idx, p) = omega * std::exp(kI * phi);
        h.matrix(p, idx) = omega * std::exp(-kI * phi);
    }
    return h;
}

DenseOperator jc_resonant_hamiltonian(const SpaceDescriptor& space, int squid, double g) {
    check_rate(g, "coupling g");
    DenseOperator h{space, Eigen::MatrixXcd::Zero(space.total_dim(), space.total_dim())};
    for_each_jc_block(space, squid, [&](int i3, int i2, int m) {
        const double G = g * std::sqrt(m + 1.0);
        h.matrix(i3, i2) = G;
        h.matrix(i2, i3) = G;
    });
    return h;
}

DenseOperator dispersive_hamiltonian(const SpaceDescriptor& space, int squid, double g,
                                     double delta) {
    check_rate(g, "coupling g");
    check_rate(delta, "detuning");
    DenseOperator h{space, Eigen::MatrixXcd::Zero(space.total_dim(), space.total_dim())};
    for (int idx = 0; idx < space.total_dim(); ++idx) {
        BasisLabel label = label_of(space, idx);
        const double shift = g * g * label.photons / delta;
        if (label.levels[squid - 1] == 2)
            h.matrix(idx, idx) = -shift;
        else if (label.levels[squid - 1] == 3)
            h.matrix(idx, idx) = shift;
    }
    return h;
}

DenseOperator jc_detuned_hamiltonian(const SpaceDescriptor& space, int squid, double g,
                                     double delta) {
    check_rate(g, "coupling g");
    check_rate(delta, "detuning");
    DenseOperator h{space, Eigen::MatrixXcd::Zero(space.total_dim(), space.total_dim())};
    for_each_jc_block(space, squid, [&](int i3, int i2, int m) {
        const double G = g * std::sqrt(m + 1.0);
        h.matrix(i3, i3) = delta;
        h.matrix(i3, i2) = G;
        h.matrix(i2, i3) = G;
    });
    for (int idx : truncation_boundary_states(space, squid)) h.matrix(idx, idx) = delta;
    return h;
}

DenseOperator expm_propagator(const DenseOperator& hamiltonian, double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("time must be finite");
    const Eigen::MatrixXcd& h = hamiltonian.matrix;
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw std::invalid_argument("hamiltonian is not hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolve failed");
    Eigen::VectorXcd phases(h.rows());
    for (Eigen::Index k = 0; k < h.rows(); ++k)
        phases[k] = std::exp(-kI * es.eigenvalues()[k] * t);
    return DenseOperator{hamiltonian.space,
                         es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint()};
}

std::vector<int> truncation_boundary_states(const SpaceDescriptor& space, int squid) {
    std::vector<int> out;
    for (int idx = 0; idx < space.total_dim(); ++idx) {
        BasisLabel label = label_of(space, idx);
        if (label.levels[squid - 1] == 3 && label.photons == space.cavity_dim - 1)
            out.push_back(idx);
    }
    return out;
}

double dispersive_leak_peak(double g, double delta) {
    return 4.0 * g * g / (delta * delta + 4.0 * g * g);
}

}  // namespace squidgate
