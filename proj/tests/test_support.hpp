#pragma once

// Shared helpers for the test suites: random inputs and Eigen-based reference
// computations that do not go through the library's own kernels.

#include <random>

#include <Eigen/Dense>

#include "discord_lab/discord_lab.hpp"

namespace discord::testing {

inline Matrix2 random_matrix2(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Matrix2 m;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            const double re = g(rng);
            m(i, j) = cplx(re, g(rng));
        }
    return m;
}

template <std::size_t N>
CMatrix<N, N> random_hermitian(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    CMatrix<N, N> m;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            const double re = g(rng);
            m(i, j) = cplx(re, g(rng));
        }
    return hermitian_part(m);
}

template <std::size_t N>
CMatrix<N, N> random_square(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    CMatrix<N, N> m;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            const double re = g(rng);
            m(i, j) = cplx(re, g(rng));
        }
    return m;
}

/// Haar-ish random SU(2) element from a normalized Gaussian quaternion.
inline Matrix2 random_unitary2(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    double q[4];
    double n = 0.0;
    for (double& v : q) {
        v = g(rng);
        n += v * v;
    }
    n = std::sqrt(n);
    const cplx a(q[0] / n, q[1] / n), b(q[2] / n, q[3] / n);
    return Matrix2{a, -std::conj(b), b, std::conj(a)};
}

inline Matrix4 local_unitary_conjugate(const Matrix4& rho, const Matrix2& u, const Matrix2& v) {
    const Matrix4 w = tensor_product(u, v);
    return w * rho * adjoint(w);
}

template <std::size_t N>
Eigen::Matrix<std::complex<double>, N, N> to_eigen(const CMatrix<N, N>& m) {
    Eigen::Matrix<std::complex<double>, N, N> e;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) e(i, j) = m(i, j);
    return e;
}

/// Reference eigenvalues (descending) from Eigen's self-adjoint solver.
template <std::size_t N>
std::array<double, N> reference_eigenvalues(const CMatrix<N, N>& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<std::complex<double>, N, N>> es(to_eigen(m));
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = es.eigenvalues()(static_cast<Eigen::Index>(N - 1 - i));
    return out;
}

/// Reference singular values (descending) from Eigen's JacobiSVD.
template <std::size_t N>
std::array<double, N> reference_singular_values(const CMatrix<N, N>& m) {
    Eigen::JacobiSVD<Eigen::Matrix<std::complex<double>, N, N>> svd(to_eigen(m));
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = svd.singularValues()(static_cast<Eigen::Index>(i));
    return out;
}

inline double reference_spectral_norm(const RealMatrix3& q) {
    Eigen::Matrix3d e;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) e(i, j) = q(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    return Eigen::JacobiSVD<Eigen::Matrix3d>(e).singularValues()(0);
}

/// Ket |ab> in the ee, eg, ge, gg order, with 0 = e and 1 = g.
inline CMatrix<4, 1> ket(int a, int b) {
    CMatrix<4, 1> v;
    v(static_cast<std::size_t>(2 * a + b), 0) = 1.0;
    return v;
}

} // namespace discord::testing
