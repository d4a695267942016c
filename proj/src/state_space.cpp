#include "squidgate/state_space.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace squidgate {

namespace {

constexpr int kSquidLevels = 4;

void check_squid_index(const SpaceDescriptor& space, int squid) {
    if (squid < 1 || squid > space.n_squids)
        throw std::invalid_argument("SQUID index " + std::to_string(squid) +
                                    " out of range 1.." + std::to_string(space.n_squids));
}

void check_level(int level) {
    if (level < 0 || level >= kSquidLevels)
        throw std::invalid_argument("SQUID level " + std::to_string(level) +
                                    " out of range 0..3");
}

void check_same_space(const SpaceDescriptor& a, const SpaceDescriptor& b) {
    if (!(a == b)) throw std::invalid_argument("operands live in different spaces");
}

}  // namespace

int SpaceDescriptor::total_dim() const {
    int d = cavity_dim;
    for (int i = 0; i < n_squids; ++i) d *= kSquidLevels;
    return d;
}

SpaceDescriptor make_space(int n_squids, int cavity_dim) {
    if (n_squids < 1) throw std::invalid_argument("need at least one SQUID");
    if (cavity_dim < 2) throw std::invalid_argument("cavity truncation must keep photon numbers 0 and 1");
    // 4^n * cavity_dim must stay addressable as a dense matrix dimension
    if (n_squids > 10) throw std::invalid_argument("refusing n_squids > 10 (dense space too large)");
    return SpaceDescriptor{n_squids, cavity_dim};
}

int flat_index(const SpaceDescriptor& space, const BasisLabel& label) {
    if (static_cast<int>(label.levels.size()) != space.n_squids)
        throw std::invalid_argument("label has " + std::to_string(label.levels.size()) +
                                    " SQUID levels, space has " + std::to_string(space.n_squids));
    if (label.photons < 0 || label.photons >= space.cavity_dim)
        throw std::invalid_argument("photon number " + std::to_string(label.photons) +
                                    " outside cavity truncation");
    int f = 0;
    for (int l : label.levels) {
        check_level(l);
        f = f * kSquidLevels + l;
    }
    return f * space.cavity_dim + label.photons;
}

BasisLabel label_of(const SpaceDescriptor& space, int flat) {
    if (flat < 0 || flat >= space.total_dim())
        throw std::invalid_argument("flat index out of range");
    BasisLabel label;
    label.photons = flat % space.cavity_dim;
    flat /= space.cavity_dim;
    label.levels.assign(space.n_squids, 0);
    for (int i = space.n_squids - 1; i >= 0; --i) {
        label.levels[i] = flat % kSquidLevels;
        flat /= kSquidLevels;
    }
    return label;
}

StateVector basis_state(const SpaceDescriptor& space, const BasisLabel& label) {
    StateVector s{space, Eigen::VectorXcd::Zero(space.total_dim())};
    s.amplitudes[flat_index(space, label)] = 1.0;
    return s;
}

StateVector basis_state(const SpaceDescriptor& space, std::initializer_list<int> levels,
                        int photons) {
    return basis_state(space, BasisLabel{std::vector<int>(levels), photons});
}

DenseOperator identity_op(const SpaceDescriptor& space) {
    return DenseOperator{space,
                         Eigen::MatrixXcd::Identity(space.total_dim(), space.total_dim())};
}

DenseOperator embed_two_level(const SpaceDescriptor& space, int squid, int level_lo,
                              int level_hi, const Eigen::Matrix2cd& block) {
    check_squid_index(space, squid);
    check_level(level_lo);
    check_level(level_hi);
    if (level_lo == level_hi)
        throw std::invalid_argument("embed_two_level needs two distinct levels");
    if ((block.adjoint() * block - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("embed_two_level block is not unitary");

    const int d = space.total_dim();
    DenseOperator op{space, Eigen::MatrixXcd::Identity(d, d)};
    for (int f = 0; f < d; ++f) {
        BasisLabel label = label_of(space, f);
        if (label.levels[squid - 1] != level_lo) continue;
        BasisLabel partner = label;
        partner.levels[squid - 1] = level_hi;
        const int p = flat_index(space, partner);
        op.matrix(f, f) = block(0, 0);
        op.matrix(f, p) = block(0, 1);
        op.matrix(p, f) = block(1, 0);
        op.matrix(p, p) = block(1, 1);
    }
    return op;
}

StateVector apply(const DenseOperator& op, const StateVector& state) {
    check_same_space(op.space, state.space);
    return StateVector{state.space, op.matrix * state.amplitudes};
}

DenseOperator compose(const DenseOperator& a, const DenseOperator& b) {
    check_same_space(a.space, b.space);
    return DenseOperator{a.space, a.matrix * b.matrix};
}

DenseOperator adjoint(const DenseOperator& op) {
    return DenseOperator{op.space, op.matrix.adjoint()};
}

Eigen::MatrixXcd logical_restriction(const DenseOperator& op) {
    const int n = op.space.n_squids;
    const int dim = 1 << n;
    Eigen::MatrixXcd logical(dim, dim);
    std::vector<int> flat(dim);
    for (int x = 0; x < dim; ++x) {
        BasisLabel label;
        label.photons = 0;
        label.levels.resize(n);
        for (int i = 0; i < n; ++i) label.levels[i] = (x >> (n - 1 - i)) & 1;
        flat[x] = flat_index(op.space, label);
    }
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) logical(r, c) = op.matrix(flat[r], flat[c]);
    return logical;
}

double population(const StateVector& state, int squid, int level) {
    check_squid_index(state.space, squid);
    check_level(level);
    double p = 0.0;
    for (int f = 0; f < state.space.total_dim(); ++f) {
        if (label_of(state.space, f).levels[squid - 1] == level)
            p += std::norm(state.amplitudes[f]);
    }
    return p;
}

double population(const StateVector& state, const BasisLabel& label) {
    return std::norm(state.amplitudes[flat_index(state.space, label)]);
}

double cavity_population(const StateVector& state, int photons) {
    if (photons < 0 || photons >= state.space.cavity_dim)
        throw std::invalid_argument("photon number outside cavity truncation");
    double p = 0.0;
    for (int f = photons; f < state.space.total_dim(); f += state.space.cavity_dim)
        p += std::norm(state.amplitudes[f]);
    return p;
}

double norm(const StateVector& state) { return state.amplitudes.norm(); }

double max_deviation(const DenseOperator& a, const DenseOperator& b) {
    check_same_space(a.space, b.space);
    return (a.matrix - b.matrix).cwiseAbs().maxCoeff();
}

double max_deviation(const StateVector& a, const StateVector& b) {
    check_same_space(a.space, b.space);
    return (a.amplitudes - b.amplitudes).cwiseAbs().maxCoeff();
}

double unitarity_defect(const DenseOperator& op) {
    const int d = op.space.total_dim();
    return (op.matrix.adjoint() * op.matrix - Eigen::MatrixXcd::Identity(d, d))
        .cwiseAbs()
        .maxCoeff();
}

}  // namespace squidgate
