#pragma once

// Correlation quantifiers for two-qubit states: one-sided geometric discord
// (closed form and measurement-grid minimization), trace-distance discord,
// maximal mutual correlation, correlation distance and negativity.

#include <limits>
#include <numbers>

#include "discord_lab/states.hpp"

namespace discord {

// ---------------------------------------------------------------------------
// Projective measurement on A.

/// sum_k (P_k (x) I) rho (P_k (x) I) for the pair (P1, P2) at (theta, phi).
inline DensityMatrix4 measurement_channel(const DensityMatrix4& rho, const ProjectorPair& pair) {
    Matrix4 out;
    for (std::size_t k = 0; k < 2; ++k) {
        const Matrix4 pk = tensor_product(pair[k], pauli::id());
        out += pk * rho.matrix() * pk;
    }
    return DensityMatrix4::unchecked(out);
}

inline DensityMatrix4 measurement_channel(const DensityMatrix4& rho, double theta, double phi) {
    return measurement_channel(rho, ProjectorPair{theta, phi});
}

enum class DiscordMethod { ClosedForm, BruteForce };

struct DiscordValue {
    double value = 0.0;
    DiscordMethod method = DiscordMethod::ClosedForm;
    /// Minimizing measurement; NaN for the closed form.
    double theta = std::numeric_limits<double>::quiet_NaN();
    double phi = std::numeric_limits<double>::quiet_NaN();
};

/// Normalized one-sided geometric discord
///   D_G^A = (|x|^2 + |T|_2^2 - k_max) / 2
/// with k_max the largest eigenvalue of x x^T + T T^T.
inline DiscordValue geometric_discord_closed(const DensityMatrix4& rho) {
    const PauliDecomposition d = pauli_decomposition(rho);
    const RealMatrix3 k = outer(d.x, d.x) + d.t * d.t.transposed();
    const double k_max = symmetric_eigenvalues(k).front();
    const double value = 0.5 * (dot(d.x, d.x) + d.t.frobenius2() - k_max);
    return {std::max(value, 0.0), DiscordMethod::ClosedForm};
}

// ---------------------------------------------------------------------------
// Minimization over projective measurements on A.

/// Coarse (theta, phi) grid followed by coordinate-descent refinement.
struct GridSpec {
    int theta_points = 181; ///< over [0, pi/2], endpoints included
    int phi_points = 360;   ///< over [0, 2 pi)
    double refine_step = 1e-7;
};

struct MeasurementSearch {
    double value = 0.0;
    double theta = 0.0;
    double phi = 0.0;
};

/// Minimizes objective(ProjectorPair) over all von Neumann measurements on a
/// qubit. Deterministic: ties keep the first grid point in (theta, phi) order.
template <typename Objective>
MeasurementSearch minimize_over_measurements(Objective&& objective, const GridSpec& grid = {}) {
    if (grid.theta_points < 2 || grid.phi_points < 1 || !(grid.refine_step > 0.0)) {
        throw std::invalid_argument("GridSpec: need theta_points >= 2, phi_points >= 1, refine_step > 0");
    }
    const double dtheta = (std::numbers::pi / 2.0) / (grid.theta_points - 1);
    const double dphi = 2.0 * std::numbers::pi / grid.phi_points;

    MeasurementSearch best{std::numeric_limits<double>::infinity(), 0.0, 0.0};
    for (int i = 0; i < grid.theta_points; ++i) {
        const double theta = i * dtheta;
        for (int j = 0; j < grid.phi_points; ++j) {
            const double phi = j * dphi;
            const double v = objective(ProjectorPair{theta, phi});
            if (v < best.value) best = {v, theta, phi};
        }
    }

    double h_theta = dtheta;
    double h_phi = dphi;
    for (int iter = 0; iter < 100000 && std::max(h_theta, h_phi) >= grid.refine_step; ++iter) {
        bool moved = false;
        for (const auto [st, sp] : {std::pair{h_theta, 0.0}, std::pair{-h_theta, 0.0}, std::pair{0.0, h_phi},
                                    std::pair{0.0, -h_phi}}) {
            const double theta = best.theta + st;
            const double phi = best.phi + sp;
            const double v = objective(ProjectorPair{theta, phi});
            if (v < best.value) {
                best = {v, theta, phi};
                moved = true;
                break;
            }
        }
        if (!moved) {
            h_theta *= 0.5;
            h_phi *= 0.5;
        }
    }
    return best;
}

namespace detail {

/// X = (<psi_1| (x) I) rho (|psi_2> (x) I), where P_k = |psi_k><psi_k|.
/// In the measured basis rho - P(rho) = [[0, X], [X^dagger, 0]].
inline Matrix2 measured_coherence_block(const Matrix4& rho, const ProjectorPair& pair) {
    const double c = std::cos(pair.theta), s = std::sin(pair.theta);
    const cplx e = std::polar(1.0, pair.phi);
    const cplx psi1[2] = {c, e * s};
    const cplx psi2[2] = {s, -e * c};
    Matrix2 x;
    for (std::size_t b = 0; b < 2; ++b)
        for (std::size_t d = 0; d < 2; ++d) {
            cplx acc{};
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t a2 = 0; a2 < 2; ++a2) acc += std::conj(psi1[a]) * rho(2 * a + b, 2 * a2 + d) * psi2[a2];
            x(b, d) = acc;
        }
    return x;
}

/// ||rho - P(rho)||_2^2 from the projector sandwich itself.
inline double hs_disturbance2(const Matrix4& rho, const ProjectorPair& pair) {
    const Matrix2 p[2] = {pair.p1(), pair.p2()};
    // coef(a, c, a', c') = sum_k P_k(a, a') P_k(c', c)
    cplx coef[2][2][2][2];
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t c = 0; c < 2; ++c)
            for (std::size_t a2 = 0; a2 < 2; ++a2)
                for (std::size_t c2 = 0; c2 < 2; ++c2)
                    coef[a][c][a2][c2] = p[0](a, a2) * p[0](c2, c) + p[1](a, a2) * p[1](c2, c);
    double sum = 0.0;
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t c = 0; c < 2; ++c)
            for (std::size_t b = 0; b < 2; ++b)
                for (std::size_t d = 0; d < 2; ++d) {
                    cplx measured{};
                    for (std::size_t a2 = 0; a2 < 2; ++a2)
                        for (std::size_t c2 = 0; c2 < 2; ++c2) measured += coef[a][c][a2][c2] * rho(2 * a2 + b, 2 * c2 + d);
                    sum += std::norm(rho(2 * a + b, 2 * c + d) - measured);
                }
    return sum;
}

/// ||rho - P(rho)||_1 = 2 (s_1 + s_2) of the coherence block X, using
/// (s_1 + s_2)^2 = ||X||_F^2 + 2 |det X|.
inline double trace_disturbance(const Matrix4& rho, const ProjectorPair& pair) {
    const Matrix2 x = measured_coherence_block(rho, pair);
    const double f2 = std::norm(x(0, 0)) + std::norm(x(0, 1)) + std::norm(x(1, 0)) + std::norm(x(1, 1));
    const double det = std::abs(x(0, 0) * x(1, 1) - x(0, 1) * x(1, 0));
    return 2.0 * std::sqrt(std::max(f2 + 2.0 * det, 0.0));
}

} // namespace detail

/// 2 min_P ||rho - P(rho)||_2^2 by direct search over measurements on A.
inline DiscordValue geometric_discord_bruteforce(const DensityMatrix4& rho, const GridSpec& grid = {}) {
    const Matrix4& m = rho.matrix();
    const MeasurementSearch r =
        minimize_over_measurements([&](const ProjectorPair& p) { return detail::hs_disturbance2(m, p); }, grid);
    return {2.0 * r.value, DiscordMethod::BruteForce, r.theta, r.phi};
}

/// min_P ||rho - P(rho)||_1 over measurements on A.
inline MeasurementSearch trace_distance_discord(const DensityMatrix4& rho, const GridSpec& grid = {}) {
    const Matrix4& m = rho.matrix();
    return minimize_over_measurements([&](const ProjectorPair& p) { return detail::trace_disturbance(m, p); }, grid);
}

// ---------------------------------------------------------------------------
// Total correlations.

/// q_ij = <s_i (x) s_j> - <s_i (x) I><I (x) s_j>
inline RealMatrix3 correlation_matrix(const DensityMatrix4& rho) {
    const Matrix4& m = rho.matrix();
    Vec3 x{}, y{};
    for (std::size_t k = 0; k < 3; ++k) {
        x[k] = expectation(m, tensor_product(pauli::sigma(k), pauli::id()));
        y[k] = expectation(m, tensor_product(pauli::id(), pauli::sigma(k)));
    }
    RealMatrix3 q;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            q(i, j) = expectation(m, tensor_product(pauli::sigma(i), pauli::sigma(j))) - x[i] * y[j];
    return q;
}

/// C_M: largest singular value of the correlation matrix.
inline double max_mutual_correlation(const DensityMatrix4& rho) {
    return largest_singular_value(correlation_matrix(rho));
}

/// ||rho - rho_A (x) rho_B||_1
inline double correlation_distance(const DensityMatrix4& rho) {
    const Matrix4& m = rho.matrix();
    return trace_norm(m - tensor_product(partial_trace(m, Subsystem::A), partial_trace(m, Subsystem::B)));
}

/// ||rho^PT||_1 - 1. Eigenvalues in [-1e-12, 0) count as zero.
/// ||rho^PT||_1 - 1, evaluated as twice the negative spectral weight so that
/// PPT states give exactly 0.
inline double negativity(const DensityMatrix4& rho) {
    double s = 0.0;
    for (double v : hermitian_eigenvalues(partial_transpose_b(rho.matrix())))
        if (v < -1e-12) s -= v;
    return 2.0 * s;
}

// ---------------------------------------------------------------------------
// C_M of classical states from their classical data.

/// |Cov(X, Y)| for +-1 valued X, Y with joint law p.
inline double cm_cc_analytic(const JointDistribution2x2& p) {
    p.validate();
    const double d1 = p.p11 - p.p22;
    const double d2 = p.p12 - p.p21;
    return std::abs(d1 * d1 - d2 * d2 + p.p12 + p.p21 - p.p11 - p.p22);
}

/// 2 p1 p2 |a1 - a2|
inline double cm_cq_analytic(const BinaryDistribution& p, const BlochVector& a1, const BlochVector& a2) {
    p.validate();
    return 2.0 * p.p1 * p.p2 * discord::norm(a1.vec() - a2.vec());
}

} // namespace discord
