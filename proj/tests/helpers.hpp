#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>

namespace test_helpers {

inline const std::complex<double> ii{0.0, 1.0};

// Haar-ish 2x2 unitary from a QR factorization of a Gaussian draw.
inline Eigen::Matrix2cd random_unitary2(std::mt19937& rng) {
    std::normal_distribution<double> gauss;
    Eigen::Matrix2cd m;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) m(r, c) = std::complex<double>(gauss(rng), gauss(rng));
    return Eigen::HouseholderQR<Eigen::Matrix2cd>(m).householderQ();
}

inline Eigen::MatrixXcd random_unitary(int dim, std::mt19937& rng) {
    std::normal_distribution<double> gauss;
    Eigen::MatrixXcd m(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) m(r, c) = std::complex<double>(gauss(rng), gauss(rng));
    return Eigen::HouseholderQR<Eigen::MatrixXcd>(m).householderQ();
}

}  // namespace test_helpers
