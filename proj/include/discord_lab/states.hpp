#pragma once

// Two-qubit state families in the ee, eg, ge, gg basis: classical-classical and
// classical-quantum mixtures built from one-qubit projector pairs, the
// reference state rho_0, Bloch-vector qubits, random samplers and the Pauli
// (Fano) decomposition.

#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>

#include "discord_lab/linalg.hpp"

namespace discord {

/// Smallest eigenvalue accepted for a state (rounding from propagation).
inline constexpr double kTolPsd = 1e-9;
inline constexpr double kTolTrace = 1e-10;

class InvalidState : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Returns a description of the first violated density-matrix invariant, or
/// nullopt if `m` is Hermitian, unit-trace and PSD within tolerance.
inline std::optional<std::string> state_violation(const Matrix4& m, double tol_psd = kTolPsd) {
    for (const auto& v : m.data()) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return "entries must be finite";
    }
    const double herm = hermiticity_defect(m);
    if (herm > kTolHermitian) return "not Hermitian (max |rho - rho^dagger| = " + std::to_string(herm) + ")";
    const cplx tr = trace(m);
    if (std::abs(tr - 1.0) > kTolTrace) {
        return "trace must be 1 (got " + std::to_string(tr.real()) + (tr.imag() != 0.0 ? " + i*" + std::to_string(tr.imag()) : "") + ")";
    }
    const double lmin = hermitian_eigenvalues(m).back();
    if (lmin < -tol_psd) return "not positive semidefinite (smallest eigenvalue " + std::to_string(lmin) + ")";
    return std::nullopt;
}

/// Hermitian, unit-trace, positive semidefinite 4x4 matrix.
class DensityMatrix4 {
public:
    explicit DensityMatrix4(const Matrix4& m, double tol_psd = kTolPsd) : m_(hermitian_part(m)) {
        if (auto why = state_violation(m, tol_psd)) throw InvalidState("invalid density matrix: " + *why);
    }

    /// Wraps a matrix known to be a state (propagator and channel outputs).
    static DensityMatrix4 unchecked(const Matrix4& m) { return DensityMatrix4(hermitian_part(m), Unchecked{}); }

    const Matrix4& matrix() const { return m_; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    double purity() const { return std::real(trace(m_ * m_)); }

    friend bool operator==(const DensityMatrix4&, const DensityMatrix4&) = default;

private:
    struct Unchecked {};
    DensityMatrix4(const Matrix4& m, Unchecked) : m_(m) {}

    Matrix4 m_;
};

// ---------------------------------------------------------------------------
// One-qubit building blocks.

namespace basis {
inline Matrix2 excited() { return Matrix2{1.0, 0.0, 0.0, 0.0}; }
inline Matrix2 ground() { return Matrix2{0.0, 0.0, 0.0, 1.0}; }
inline Matrix2 plus() { return Matrix2{0.5, 0.5, 0.5, 0.5}; }
inline Matrix2 minus() { return Matrix2{0.5, -0.5, -0.5, 0.5}; }
} // namespace basis

/// Orthogonal rank-one projectors P1, P2 on a qubit, parametrized by the
/// polar-like angle theta and phase phi:
///   P1 = [[cos^2 t, e^{-i phi} sin(2t)/2], [e^{i phi} sin(2t)/2, sin^2 t]]
///   P2 = I - P1.
struct ProjectorPair {
    double theta = 0.0;
    double phi = 0.0;

    Matrix2 p1() const {
        const double c = std::cos(theta), s = std::sin(theta);
        const cplx off = 0.5 * std::sin(2.0 * theta) * std::polar(1.0, -phi);
        return Matrix2{c * c, off, std::conj(off), s * s};
    }
    Matrix2 p2() const {
        const double c = std::cos(theta), s = std::sin(theta);
        const cplx off = -0.5 * std::sin(2.0 * theta) * std::polar(1.0, -phi);
        return Matrix2{s * s, off, std::conj(off), c * c};
    }
    Matrix2 operator[](std::size_t k) const { return k == 0 ? p1() : p2(); }
};

inline std::pair<Matrix2, Matrix2> projector_pair(double theta, double phi) {
    const ProjectorPair pp{theta, phi};
    return {pp.p1(), pp.p2()};
}

class BlochVector {
public:
    BlochVector() = default;
    BlochVector(double x, double y, double z) : BlochVector(Vec3{x, y, z}) {}
    explicit BlochVector(const Vec3& a) : a_(a) {
        if (!(discord::norm(a) <= 1.0 + 1e-12)) {
            throw InvalidState("Bloch vector outside the unit ball (|a| = " + std::to_string(discord::norm(a)) + ")");
        }
    }
    const Vec3& vec() const { return a_; }
    double operator[](std::size_t i) const { return a_[i]; }

private:
    Vec3 a_{0.0, 0.0, 0.0};
};

/// (I + a.sigma) / 2
inline Matrix2 qubit_from_bloch(const BlochVector& a) {
    Matrix2 m = Matrix2::identity();
    for (std::size_t k = 0; k < 3; ++k) m += a[k] * pauli::sigma(k);
    return 0.5 * m;
}

/// Unit vector in the xy plane at angle `angle`.
inline BlochVector planar_bloch(double angle) { return BlochVector(std::cos(angle), std::sin(angle), 0.0); }

// ---------------------------------------------------------------------------
// Classical probability inputs.

inline void check_probabilities(std::initializer_list<double> ps, const char* what) {
    double sum = 0.0;
    for (double p : ps) {
        if (!(p >= 0.0)) throw InvalidState(std::string(what) + ": probabilities must be non-negative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw InvalidState(std::string(what) + ": probabilities must sum to 1");
}

/// p_jk = Prob{X = x_j, Y = y_k} with x_1 = y_1 = +1 and x_2 = y_2 = -1.
struct JointDistribution2x2 {
    double p11 = 0.25, p12 = 0.25, p21 = 0.25, p22 = 0.25;

    double operator()(std::size_t j, std::size_t k) const {
        return j == 0 ? (k == 0 ? p11 : p12) : (k == 0 ? p21 : p22);
    }
    void validate() const { check_probabilities({p11, p12, p21, p22}, "JointDistribution2x2"); }
};

struct BinaryDistribution {
    double p1 = 0.5, p2 = 0.5;

    double operator[](std::size_t k) const { return k == 0 ? p1 : p2; }
    void validate() const { check_probabilities({p1, p2}, "BinaryDistribution"); }
};

// ---------------------------------------------------------------------------
// State families.

/// sum_jk p_jk P_j (x) P_k
inline DensityMatrix4 cc_state(const JointDistribution2x2& p, const ProjectorPair& pair_a,
                               const ProjectorPair& pair_b) {
    p.validate();
    Matrix4 m;
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k) m += p(j, k) * tensor_product(pair_a[j], pair_b[k]);
    return DensityMatrix4(m);
}

/// p1 P1 (x) rho1 + p2 P2 (x) rho2 with rho_i given by Bloch vectors.
inline DensityMatrix4 cq_state(const BinaryDistribution& p, const ProjectorPair& pair_a, const BlochVector& a1,
                               const BlochVector& a2) {
    p.validate();
    const Matrix4 m = p.p1 * tensor_product(pair_a.p1(), qubit_from_bloch(a1)) +
                      p.p2 * tensor_product(pair_a.p2(), qubit_from_bloch(a2));
    return DensityMatrix4(m);
}

/// (|+><+| (x) |-><-| + |-><-| (x) |+><+|) / 2
inline DensityMatrix4 rho_zero() {
    const double q = 0.25;
    return DensityMatrix4(Matrix4{q, 0, 0, -q,  //
                                  0, q, -q, 0,  //
                                  0, -q, q, 0,  //
                                  -q, 0, 0, q});
}

inline DensityMatrix4 product_state(const Matrix2& a, const Matrix2& b) { return DensityMatrix4(tensor_product(a, b)); }

inline DensityMatrix4 maximally_mixed() { return DensityMatrix4(0.25 * Matrix4::identity()); }

enum class Bell { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline DensityMatrix4 bell_state(Bell which) {
    const double s = std::numbers::sqrt2 / 2.0;
    CMatrix<4, 1> v;
    switch (which) {
    case Bell::PhiPlus: v = {s, 0.0, 0.0, s}; break;
    case Bell::PhiMinus: v = {s, 0.0, 0.0, -s}; break;
    case Bell::PsiPlus: v = {0.0, s, s, 0.0}; break;
    case Bell::PsiMinus: v = {0.0, s, -s, 0.0}; break;
    }
    return DensityMatrix4(v * adjoint(v));
}

/// Mixture of the four Bell projectors with weights (phi+, phi-, psi+, psi-).
inline DensityMatrix4 bell_diagonal_state(const std::array<double, 4>& w) {
    check_probabilities({w[0], w[1], w[2], w[3]}, "bell_diagonal_state");
    const Bell kinds[] = {Bell::PhiPlus, Bell::PhiMinus, Bell::PsiPlus, Bell::PsiMinus};
    Matrix4 m;
    for (std::size_t i = 0; i < 4; ++i) m += w[i] * bell_state(kinds[i]).matrix();
    return DensityMatrix4(m);
}

// ---------------------------------------------------------------------------
// Pauli decomposition rho = (I + x.s (x) I + I (x) y.s + sum T_jk s_j (x) s_k) / 4.

struct PauliDecomposition {
    Vec3 x{};
    Vec3 y{};
    RealMatrix3 t;

    Matrix4 reconstruct() const {
        Matrix4 m = Matrix4::identity();
        for (std::size_t k = 0; k < 3; ++k) {
            m += x[k] * tensor_product(pauli::sigma(k), pauli::id());
            m += y[k] * tensor_product(pauli::id(), pauli::sigma(k));
            for (std::size_t l = 0; l < 3; ++l) m += t(k, l) * tensor_product(pauli::sigma(k), pauli::sigma(l));
        }
        return 0.25 * m;
    }
};

inline double expectation(const Matrix4& rho, const Matrix4& op) { return std::real(trace(rho * op)); }

inline PauliDecomposition pauli_decomposition(const Matrix4& rho) {
    PauliDecomposition d;
    for (std::size_t k = 0; k < 3; ++k) {
        d.x[k] = expectation(rho, tensor_product(pauli::sigma(k), pauli::id()));
        d.y[k] = expectation(rho, tensor_product(pauli::id(), pauli::sigma(k)));
        for (std::size_t l = 0; l < 3; ++l) d.t(k, l) = expectation(rho, tensor_product(pauli::sigma(k), pauli::sigma(l)));
    }
    return d;
}

inline PauliDecomposition pauli_decomposition(const DensityMatrix4& rho) { return pauli_decomposition(rho.matrix()); }

// ---------------------------------------------------------------------------
// Random samplers. Each call seeds its own generator.

namespace detail {

inline Vec3 random_unit_vector(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (;;) {
        const Vec3 v{gauss(rng), gauss(rng), gauss(rng)};
        const double n = discord::norm(v);
        if (n > 1e-12) return (1.0 / n) * v;
    }
}

/// Uniform point on the probability simplex via sorted uniforms.
template <std::size_t N>
std::array<double, N> random_simplex(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::array<double, N + 1> cuts{};
    cuts[N] = 1.0;
    for (std::size_t i = 1; i < N; ++i) cuts[i] = u(rng);
    std::sort(cuts.begin() + 1, cuts.begin() + N);
    std::array<double, N> p{};
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < N; ++i) {
        p[i] = cuts[i + 1] - cuts[i];
        sum += p[i];
    }
    p[N - 1] = 1.0 - sum;
    return p;
}

inline ProjectorPair random_projector_pair(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> theta(0.0, std::numbers::pi / 2.0);
    std::uniform_real_distribution<double> phi(0.0, 2.0 * std::numbers::pi);
    const double t = theta(rng);
    return ProjectorPair{t, phi(rng)};
}

inline BlochVector random_bloch_vector(std::mt19937_64& rng) {
    const Vec3 dir = random_unit_vector(rng);
    std::uniform_real_distribution<double> radius(0.0, 1.0);
    return BlochVector(radius(rng) * dir);
}

} // namespace detail

/// G G^dagger / tr(G G^dagger) with G a 4 x rank complex Gaussian matrix.
inline DensityMatrix4 random_density_matrix(std::uint64_t seed, int rank = 4) {
    if (rank < 1 || rank > 4) throw std::invalid_argument("random_density_matrix: rank must be in 1..4");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix4 g;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < static_cast<std::size_t>(rank); ++j) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            g(i, j) = cplx(re, im);
        }
    Matrix4 m = g * adjoint(g);
    m *= cplx(1.0 / std::real(trace(m)));
    return DensityMatrix4(m);
}

struct CcParams {
    JointDistribution2x2 p;
    ProjectorPair pair_a;
    ProjectorPair pair_b;
};

struct CqParams {
    BinaryDistribution p;
    ProjectorPair pair_a;
    BlochVector a1;
    BlochVector a2;
};

inline CcParams random_cc_params(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto w = detail::random_simplex<4>(rng);
    CcParams c;
    c.p = {w[0], w[1], w[2], w[3]};
    c.pair_a = detail::random_projector_pair(rng);
    c.pair_b = detail::random_projector_pair(rng);
    return c;
}

inline CqParams random_cq_params(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto w = detail::random_simplex<2>(rng);
    CqParams c;
    c.p = {w[0], w[1]};
    c.pair_a = detail::random_projector_pair(rng);
    c.a1 = detail::random_bloch_vector(rng);
    c.a2 = detail::random_bloch_vector(rng);
    return c;
}

inline DensityMatrix4 make_state(const CcParams& c) { return cc_state(c.p, c.pair_a, c.pair_b); }
inline DensityMatrix4 make_state(const CqParams& c) { return cq_state(c.p, c.pair_a, c.a1, c.a2); }

inline DensityMatrix4 random_cc_state(std::uint64_t seed) { return make_state(random_cc_params(seed)); }
inline DensityMatrix4 random_cq_state(std::uint64_t seed) { return make_state(random_cq_params(seed)); }

inline DensityMatrix4 random_bell_diagonal_state(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return bell_diagonal_state(detail::random_simplex<4>(rng));
}

} // namespace discord
