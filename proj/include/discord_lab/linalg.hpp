#pragma once

// Small dense linear algebra for two-qubit work: fixed-size complex matrices
// up to 4x4, Kronecker products, partial trace/transpose, Jacobi eigenvalues
// and the Schatten norms used by the correlation measures.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace discord {

using cplx = std::complex<double>;

/// Absolute max-entry tolerance for accepting a matrix as Hermitian.
inline constexpr double kTolHermitian = 1e-10;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotHermitianError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Row-major complex matrix with compile-time shape.
template <std::size_t R, std::size_t C>
class CMatrix {
    static_assert(R >= 1 && C >= 1 && R <= 4 && C <= 4, "dimensions must be in 1..4");

public:
    static constexpr std::size_t rows = R;
    static constexpr std::size_t cols = C;

    constexpr CMatrix() = default;

    /// Row-major initializer; missing entries stay zero.
    CMatrix(std::initializer_list<cplx> entries) {
        if (entries.size() != R * C) {
            throw DimensionError("CMatrix: expected " + std::to_string(R * C) + " entries, got " +
                                 std::to_string(entries.size()));
        }
        std::copy(entries.begin(), entries.end(), data_.begin());
    }

    static CMatrix zero() { return CMatrix{}; }

    static CMatrix identity() requires(R == C) {
        CMatrix m;
        for (std::size_t i = 0; i < R; ++i) m(i, i) = 1.0;
        return m;
    }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * C + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * C + j]; }

    cplx& at(std::size_t i, std::size_t j) {
        check(i, j);
        return (*this)(i, j);
    }
    const cplx& at(std::size_t i, std::size_t j) const {
        check(i, j);
        return (*this)(i, j);
    }

    const std::array<cplx, R * C>& data() const { return data_; }

    CMatrix& operator+=(const CMatrix& o) {
        for (std::size_t k = 0; k < R * C; ++k) data_[k] += o.data_[k];
        return *this;
    }
    CMatrix& operator-=(const CMatrix& o) {
        for (std::size_t k = 0; k < R * C; ++k) data_[k] -= o.data_[k];
        return *this;
    }
    CMatrix& operator*=(cplx s) {
        for (auto& v : data_) v *= s;
        return *this;
    }

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
    friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(CMatrix a, double s) { return a *= cplx(s); }
    friend CMatrix operator*(double s, CMatrix a) { return a *= cplx(s); }

    friend bool operator==(const CMatrix&, const CMatrix&) = default;

private:
    void check(std::size_t i, std::size_t j) const {
        if (i >= R || j >= C) {
            throw std::out_of_range("CMatrix index (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") out of range");
        }
    }

    std::array<cplx, R * C> data_{};
};

using Matrix2 = CMatrix<2, 2>;
using Matrix4 = CMatrix<4, 4>;

template <std::size_t R, std::size_t K, std::size_t C>
CMatrix<R, C> operator*(const CMatrix<R, K>& a, const CMatrix<K, C>& b) {
    CMatrix<R, C> out;
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t k = 0; k < K; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < C; ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

template <std::size_t R, std::size_t C>
CMatrix<C, R> adjoint(const CMatrix<R, C>& m) {
    CMatrix<C, R> out;
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) out(j, i) = std::conj(m(i, j));
    return out;
}

template <std::size_t R, std::size_t C>
CMatrix<C, R> transpose(const CMatrix<R, C>& m) {
    CMatrix<C, R> out;
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) out(j, i) = m(i, j);
    return out;
}

template <std::size_t N>
cplx trace(const CMatrix<N, N>& m) {
    cplx t{};
    for (std::size_t i = 0; i < N; ++i) t += m(i, i);
    return t;
}

template <std::size_t R, std::size_t C>
double max_abs_entry(const CMatrix<R, C>& m) {
    double v = 0.0;
    for (const auto& x : m.data()) v = std::max(v, std::abs(x));
    return v;
}

template <std::size_t R, std::size_t C>
double max_abs_diff(const CMatrix<R, C>& a, const CMatrix<R, C>& b) {
    return max_abs_entry(a - b);
}

/// Largest |m - m^dagger| entry.
template <std::size_t N>
double hermiticity_defect(const CMatrix<N, N>& m) {
    return max_abs_diff(m, adjoint(m));
}

template <std::size_t N>
CMatrix<N, N> hermitian_part(const CMatrix<N, N>& m) {
    return 0.5 * (m + adjoint(m));
}

// ---------------------------------------------------------------------------
// Pauli matrices in the |e> = (1,0), |g> = (0,1) convention: sigma_z|e> = +|e>.

namespace pauli {
inline Matrix2 id() { return Matrix2::identity(); }
inline Matrix2 x() { return Matrix2{0.0, 1.0, 1.0, 0.0}; }
inline Matrix2 y() { return Matrix2{0.0, cplx(0, -1), cplx(0, 1), 0.0}; }
inline Matrix2 z() { return Matrix2{1.0, 0.0, 0.0, -1.0}; }
/// sigma_+ = |e><g|, sigma_- = |g><e|.
inline Matrix2 plus() { return Matrix2{0.0, 1.0, 0.0, 0.0}; }
inline Matrix2 minus() { return Matrix2{0.0, 0.0, 1.0, 0.0}; }
/// sigma_1..3 by zero-based index.
inline Matrix2 sigma(std::size_t k) {
    switch (k) {
    case 0: return x();
    case 1: return y();
    case 2: return z();
    default: throw std::out_of_range("pauli::sigma index must be 0..2");
    }
}
} // namespace pauli

// ---------------------------------------------------------------------------
// Bipartite operations. The 4x4 index is 2*a + b with a the A-index and b the
// B-index, so that row/column order is ee, eg, ge, gg.

enum class Subsystem { A, B };

inline Matrix4 tensor_product(const Matrix2& a, const Matrix2& b) {
    Matrix4 out;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return out;
}

/// Reduced operator on `keep`.
inline Matrix2 partial_trace(const Matrix4& rho, Subsystem keep) {
    Matrix2 out;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t s = 0; s < 2; ++s) {
                if (keep == Subsystem::A)
                    out(i, j) += rho(2 * i + s, 2 * j + s);
                else
                    out(i, j) += rho(2 * s + i, 2 * s + j);
            }
    return out;
}

inline Matrix4 partial_transpose_b(const Matrix4& rho) {
    Matrix4 out;
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t c = 0; c < 2; ++c)
                for (std::size_t d = 0; d < 2; ++d) out(2 * a + b, 2 * c + d) = rho(2 * a + d, 2 * c + b);
    return out;
}

/// Exchanges the two subsystems: S (a (x) b) S = b (x) a.
inline Matrix4 swap_subsystems(const Matrix4& rho) {
    Matrix4 out;
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t c = 0; c < 2; ++c)
                for (std::size_t d = 0; d < 2; ++d) out(2 * b + a, 2 * d + c) = rho(2 * a + b, 2 * c + d);
    return out;
}

// ---------------------------------------------------------------------------
// Eigenvalues via cyclic Jacobi rotations.

namespace detail {

inline double conj_of(double x) { return x; }
inline cplx conj_of(cplx x) { return std::conj(x); }
inline double abs2(double x) { return x * x; }
inline double abs2(cplx x) { return std::norm(x); }
inline double real_of(double x) { return x; }
inline double real_of(cplx x) { return x.real(); }

/// Diagonalizes the Hermitian (or real symmetric) matrix `a` in place and
/// returns its diagonal.
template <typename Scalar, std::size_t N>
std::array<double, N> jacobi_eigenvalues(std::array<Scalar, N * N> a) {
    auto at = [&](std::size_t i, std::size_t j) -> Scalar& { return a[i * N + j]; };

    double frob2 = 0.0;
    for (const auto& v : a) frob2 += abs2(v);

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t q = p + 1; q < N; ++q) off += abs2(at(p, q));
        if (off == 0.0 || off <= 1e-34 * frob2) break;

        for (std::size_t p = 0; p < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const Scalar apq = at(p, q);
                const double r = std::sqrt(abs2(apq));
                if (r == 0.0) continue;
                const Scalar phase = apq / r; // unit modulus
                const double app = real_of(at(p, p));
                const double aqq = real_of(at(q, q));
                const double theta = (aqq - app) / (2.0 * r);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const Scalar phase_c = conj_of(phase);

                // A <- A J, J = [[c, s], [-s conj(phase), c conj(phase)]] on (p, q)
                for (std::size_t k = 0; k < N; ++k) {
                    const Scalar akp = at(k, p);
                    const Scalar akq = at(k, q);
                    at(k, p) = akp * c - akq * (s * phase_c);
                    at(k, q) = akp * s + akq * (c * phase_c);
                }
                // A <- J^dagger A
                for (std::size_t k = 0; k < N; ++k) {
                    const Scalar apk = at(p, k);
                    const Scalar aqk = at(q, k);
                    at(p, k) = apk * c - aqk * (s * phase);
                    at(q, k) = apk * s + aqk * (c * phase);
                }
                at(p, q) = Scalar{};
                at(q, p) = Scalar{};
                at(p, p) = real_of(at(p, p));
                at(q, q) = real_of(at(q, q));
            }
        }
    }

    std::array<double, N> ev{};
    for (std::size_t i = 0; i < N; ++i) ev[i] = real_of(at(i, i));
    std::stable_sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

} // namespace detail

/// Real eigenvalues in descending order. The input is symmetrized before
/// diagonalization; throws NotHermitianError when |m - m^dagger| exceeds
/// kTolHermitian in any entry.
template <std::size_t N>
std::array<double, N> hermitian_eigenvalues(const CMatrix<N, N>& m) {
    const double defect = hermiticity_defect(m);
    if (!(defect <= kTolHermitian)) {
        throw NotHermitianError("hermitian_eigenvalues: input is not Hermitian (max |m - m^dagger| = " +
                                std::to_string(defect) + ")");
    }
    return detail::jacobi_eigenvalues<cplx, N>(hermitian_part(m).data());
}

/// ||m||_2 = sqrt(tr m m^dagger).
template <std::size_t R, std::size_t C>
double hs_norm(const CMatrix<R, C>& m) {
    double s = 0.0;
    for (const auto& v : m.data()) s += std::norm(v);
    return std::sqrt(s);
}

/// Singular values, descending, via the eigenvalues of m^dagger m.
template <std::size_t N>
std::array<double, N> singular_values(const CMatrix<N, N>& m) {
    auto ev = detail::jacobi_eigenvalues<cplx, N>(hermitian_part(adjoint(m) * m).data());
    for (auto& v : ev) v = std::sqrt(std::max(v, 0.0));
    return ev;
}

/// ||m||_1 = tr|m|. Hermitian inputs use |eigenvalues| directly, which keeps
/// full absolute precision for nearly vanishing matrices.
template <std::size_t N>
double trace_norm(const CMatrix<N, N>& m) {
    double s = 0.0;
    if (hermiticity_defect(m) <= kTolHermitian) {
        for (double v : hermitian_eigenvalues(m)) s += std::abs(v);
    } else {
        for (double v : singular_values(m)) s += v;
    }
    return s;
}

/// Largest singular value (spectral norm).
template <std::size_t N>
double operator_norm(const CMatrix<N, N>& m) {
    if (hermiticity_defect(m) <= kTolHermitian) {
        const auto ev = hermitian_eigenvalues(m);
        return std::max(std::abs(ev.front()), std::abs(ev.back()));
    }
    return singular_values(m).front();
}

// ---------------------------------------------------------------------------
// Real 3-vectors and 3x3 matrices (Bloch vectors, correlation tensors).

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

class RealMatrix3 {
public:
    constexpr RealMatrix3() = default;
    RealMatrix3(std::initializer_list<double> entries) {
        if (entries.size() != 9) throw DimensionError("RealMatrix3: expected 9 entries");
        std::copy(entries.begin(), entries.end(), data_.begin());
    }

    static RealMatrix3 diag(double a, double b, double c) { return {a, 0, 0, 0, b, 0, 0, 0, c}; }

    double& operator()(std::size_t i, std::size_t j) { return data_[3 * i + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[3 * i + j]; }

    const std::array<double, 9>& data() const { return data_; }

    bool is_finite() const {
        return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
    }

    RealMatrix3 transposed() const {
        RealMatrix3 t;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend RealMatrix3 operator*(const RealMatrix3& a, const RealMatrix3& b) {
        RealMatrix3 c;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                for (std::size_t k = 0; k < 3; ++k) c(i, j) += a(i, k) * b(k, j);
        return c;
    }
    friend RealMatrix3 operator+(RealMatrix3 a, const RealMatrix3& b) {
        for (std::size_t k = 0; k < 9; ++k) a.data_[k] += b.data_[k];
        return a;
    }
    friend RealMatrix3 operator-(RealMatrix3 a, const RealMatrix3& b) {
        for (std::size_t k = 0; k < 9; ++k) a.data_[k] -= b.data_[k];
        return a;
    }

    /// Squared Frobenius norm.
    double frobenius2() const {
        double s = 0.0;
        for (double v : data_) s += v * v;
        return s;
    }

private:
    std::array<double, 9> data_{};
};

inline RealMatrix3 outer(const Vec3& a, const Vec3& b) {
    RealMatrix3 m;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = a[i] * b[j];
    return m;
}

/// Eigenvalues of a real symmetric 3x3 matrix, descending.
inline std::array<double, 3> symmetric_eigenvalues(const RealMatrix3& m) {
    const RealMatrix3 s = [&] {
        RealMatrix3 t;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) t(i, j) = 0.5 * (m(i, j) + m(j, i));
        return t;
    }();
    return detail::jacobi_eigenvalues<double, 3>(s.data());
}

/// Singular values of a real 3x3 matrix, descending (one-sided Jacobi on the
/// columns, accurate to full relative precision for small values).
inline std::array<double, 3> singular_values(const RealMatrix3& q) {
    std::array<Vec3, 3> col{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) col[j][i] = q(i, j);

    for (int sweep = 0; sweep < 64; ++sweep) {
        bool rotated = false;
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = i + 1; j < 3; ++j) {
                const double alpha = dot(col[i], col[i]);
                const double beta = dot(col[j], col[j]);
                const double gamma = dot(col[i], col[j]);
                if (gamma == 0.0 || std::abs(gamma) <= 1e-16 * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t k = 0; k < 3; ++k) {
                    const double ci = col[i][k];
                    const double cj = col[j][k];
                    col[i][k] = c * ci - s * cj;
                    col[j][k] = s * ci + c * cj;
                }
            }
        }
        if (!rotated) break;
    }
    std::array<double, 3> sv{norm(col[0]), norm(col[1]), norm(col[2])};
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

inline double largest_singular_value(const RealMatrix3& q) { return singular_values(q).front(); }

} // namespace discord
