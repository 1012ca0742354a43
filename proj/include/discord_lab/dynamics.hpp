#pragma once

// Spontaneous emission of two independent two-level atoms at zero temperature.
// Time is measured in units of 1/gamma0 everywhere (the argument `g` is
// gamma0 * t). Closed-form propagators act element-wise on rho in the
// ee, eg, ge, gg basis; integrate_lindblad is an independent RK4 solution of
// the master equation used to check them.

#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "discord_lab/states.hpp"

namespace discord {

enum class Channel { TwoSided, OneSidedA, OneSidedB };

struct EmissionChannel {
    double gamma0 = 1.0;
    Channel kind = Channel::TwoSided;

    EmissionChannel() = default;
    EmissionChannel(double rate, Channel k) : gamma0(rate), kind(k) {
        if (!(rate > 0.0)) throw std::invalid_argument("EmissionChannel: gamma0 must be positive");
    }
};

inline std::string to_string(Channel c) {
    switch (c) {
    case Channel::TwoSided: return "two-sided";
    case Channel::OneSidedA: return "one-sided-a";
    case Channel::OneSidedB: return "one-sided-b";
    }
    return "?";
}

inline Channel parse_channel(const std::string& s) {
    if (s == "two-sided") return Channel::TwoSided;
    if (s == "one-sided-a") return Channel::OneSidedA;
    if (s == "one-sided-b") return Channel::OneSidedB;
    throw std::invalid_argument("unknown channel '" + s + "' (expected two-sided, one-sided-a or one-sided-b)");
}

// ---------------------------------------------------------------------------
// Generator.

namespace detail {

/// (gamma/2)(2 L rho L^+ - L^+ L rho - rho L^+ L) for L = sigma_- on one atom.
inline Matrix4 damping_term(const Matrix4& rho, const Matrix4& lower, double gamma) {
    const Matrix4 raise = adjoint(lower);
    const Matrix4 n = raise * lower;
    return (0.5 * gamma) * (2.0 * (lower * rho * raise) - n * rho - rho * n);
}

inline Matrix4 generator(const Matrix4& rho, Channel kind, double gamma) {
    static const Matrix4 lower_a = tensor_product(pauli::minus(), pauli::id());
    static const Matrix4 lower_b = tensor_product(pauli::id(), pauli::minus());
    Matrix4 out;
    if (kind != Channel::OneSidedB) out += damping_term(rho, lower_a, gamma);
    if (kind != Channel::OneSidedA) out += damping_term(rho, lower_b, gamma);
    return out;
}

inline void check_time(double g, const char* who) {
    if (!(g >= 0.0)) throw std::domain_error(std::string(who) + ": time must be non-negative");
}

/// Fills the lower triangle from the upper one.
inline Matrix4 hermitian_completion(Matrix4 m) {
    for (std::size_t i = 0; i < 4; ++i) {
        m(i, i) = m(i, i).real();
        for (std::size_t j = i + 1; j < 4; ++j) m(j, i) = std::conj(m(i, j));
    }
    return m;
}

} // namespace detail

/// d rho / dt = L_AB rho (two-sided) or L_A rho / L_B rho (one-sided).
inline Matrix4 lindblad_rhs(const DensityMatrix4& rho, const EmissionChannel& ch) {
    return detail::generator(rho.matrix(), ch.kind, ch.gamma0);
}

// ---------------------------------------------------------------------------
// Closed-form propagators. Indices below are zero-based: r(0,0) is rho_11.

/// T_t^{AB}. Coherences between levels with n and m excitations decay at
/// rate (n+m)/2; rho_23 is not fed by any other element.
inline DensityMatrix4 propagate_two_sided(const DensityMatrix4& rho, double g) {
    detail::check_time(g, "propagate_two_sided");
    const Matrix4& r = rho.matrix();
    const double e1 = std::exp(-g), e2 = std::exp(-2.0 * g);
    const double h1 = std::exp(-0.5 * g), h3 = std::exp(-1.5 * g);

    Matrix4 o;
    o(0, 0) = e2 * r(0, 0);
    o(0, 1) = h3 * r(0, 1);
    o(0, 2) = h3 * r(0, 2);
    o(0, 3) = e1 * r(0, 3);
    o(1, 1) = (e1 - e2) * r(0, 0) + e1 * r(1, 1);
    o(2, 2) = (e1 - e2) * r(0, 0) + e1 * r(2, 2);
    o(1, 2) = e1 * r(1, 2);
    o(1, 3) = (h1 - h3) * r(0, 2) + h1 * r(1, 3);
    o(2, 3) = (h1 - h3) * r(0, 1) + h1 * r(2, 3);
    o(3, 3) = 1.0 - o(0, 0).real() - o(1, 1).real() - o(2, 2).real();
    return DensityMatrix4::unchecked(detail::hermitian_completion(o));
}

/// T_t^A: only atom A emits.
inline DensityMatrix4 propagate_one_sided_a(const DensityMatrix4& rho, double g) {
    detail::check_time(g, "propagate_one_sided_a");
    const Matrix4& r = rho.matrix();
    const double e1 = std::exp(-g), h1 = std::exp(-0.5 * g);

    Matrix4 o;
    o(0, 0) = e1 * r(0, 0);
    o(0, 1) = e1 * r(0, 1);
    o(1, 1) = e1 * r(1, 1);
    o(0, 2) = h1 * r(0, 2);
    o(0, 3) = h1 * r(0, 3);
    o(1, 2) = h1 * r(1, 2);
    o(1, 3) = h1 * r(1, 3);
    o(2, 2) = (1.0 - e1) * r(0, 0) + r(2, 2);
    o(2, 3) = (1.0 - e1) * r(0, 1) + r(2, 3);
    o(3, 3) = (1.0 - e1) * r(1, 1) + r(3, 3);
    return DensityMatrix4::unchecked(detail::hermitian_completion(o));
}

/// T_t^B = S T_t^A(S rho S) S with S the subsystem swap.
inline DensityMatrix4 propagate_one_sided_b(const DensityMatrix4& rho, double g) {
    detail::check_time(g, "propagate_one_sided_b");
    const DensityMatrix4 swapped = DensityMatrix4::unchecked(swap_subsystems(rho.matrix()));
    return DensityMatrix4::unchecked(swap_subsystems(propagate_one_sided_a(swapped, g).matrix()));
}

inline DensityMatrix4 propagate(const DensityMatrix4& rho, Channel kind, double g) {
    switch (kind) {
    case Channel::TwoSided: return propagate_two_sided(rho, g);
    case Channel::OneSidedA: return propagate_one_sided_a(rho, g);
    case Channel::OneSidedB: return propagate_one_sided_b(rho, g);
    }
    throw std::invalid_argument("propagate: unknown channel");
}

// ---------------------------------------------------------------------------
// Element lists exactly as they circulate in the literature, kept for the
// misprint demonstrations. Not valid propagators.

namespace as_printed {

/// One-sided map with rho_34(t) = (1 - e^{+g}) rho_12 + rho_34.
inline Matrix4 propagate_one_sided_a(const DensityMatrix4& rho, double g) {
    Matrix4 o = discord::propagate_one_sided_a(rho, g).matrix();
    o(2, 3) = (1.0 - std::exp(g)) * rho(0, 1) + rho(2, 3);
    o(3, 2) = std::conj(o(2, 3));
    return o;
}

/// Two-sided map whose rho_23 entry carries the rho_24 formula
/// (e^{-g/2} - e^{-3g/2}) rho_13 + e^{-g/2} rho_24.
inline Matrix4 propagate_two_sided(const DensityMatrix4& rho, double g) {
    Matrix4 o = discord::propagate_two_sided(rho, g).matrix();
    const double h1 = std::exp(-0.5 * g), h3 = std::exp(-1.5 * g);
    o(1, 2) = (h1 - h3) * rho(0, 2) + h1 * rho(1, 3);
    o(2, 1) = std::conj(o(1, 2));
    return o;
}

} // namespace as_printed

// ---------------------------------------------------------------------------
// Numerical oracle.

/// Fixed-step classical RK4 integration of the master equation up to time g
/// (units of 1/gamma0). The step is shrunk so that an integer number of steps
/// lands exactly on g. Requires dt <= 1e-3.
inline DensityMatrix4 integrate_lindblad(const DensityMatrix4& rho, Channel kind, double g, double dt) {
    detail::check_time(g, "integrate_lindblad");
    if (!(dt > 0.0) || dt > 1e-3) throw std::invalid_argument("integrate_lindblad: dt must be in (0, 1e-3]");
    Matrix4 y = rho.matrix();
    if (g == 0.0) return rho;
    const long steps = static_cast<long>(std::ceil(g / dt - 1e-9));
    const double h = g / static_cast<double>(steps);
    auto f = [kind](const Matrix4& m) { return detail::generator(m, kind, 1.0); };
    for (long s = 0; s < steps; ++s) {
        const Matrix4 k1 = f(y);
        const Matrix4 k2 = f(y + (0.5 * h) * k1);
        const Matrix4 k3 = f(y + (0.5 * h) * k2);
        const Matrix4 k4 = f(y + h * k3);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return DensityMatrix4::unchecked(y);
}

inline DensityMatrix4 integrate_lindblad(const DensityMatrix4& rho, const EmissionChannel& ch, double g, double dt) {
    return integrate_lindblad(rho, ch.kind, g, dt);
}

/// Largest entry-wise deviation between `closed_form(rho, t)` and the RK4
/// solution at `checkpoints` equally spaced times in (0, g]. The oracle is
/// integrated once, checkpoint to checkpoint.
template <typename Propagator>
double max_oracle_deviation(const DensityMatrix4& rho, Channel kind, Propagator&& closed_form, double g, double dt,
                            int checkpoints = 50) {
    if (checkpoints < 1) throw std::invalid_argument("max_oracle_deviation: need at least one checkpoint");
    double worst = 0.0;
    DensityMatrix4 oracle = rho;
    double t_prev = 0.0;
    for (int k = 1; k <= checkpoints; ++k) {
        const double t = g * k / checkpoints;
        oracle = integrate_lindblad(oracle, kind, t - t_prev, dt);
        t_prev = t;
        const Matrix4 closed = [&]() -> Matrix4 {
            if constexpr (std::is_same_v<std::decay_t<decltype(closed_form(rho, t))>, Matrix4>)
                return closed_form(rho, t);
            else
                return closed_form(rho, t).matrix();
        }();
        worst = std::max(worst, max_abs_diff(closed, oracle.matrix()));
    }
    return worst;
}

/// Limit t -> infinity: |gg><gg| for two-sided emission, P_g (x) tr_A rho when
/// only A emits and tr_B rho (x) P_g when only B emits.
inline DensityMatrix4 asymptotic_state(const DensityMatrix4& rho, Channel kind) {
    switch (kind) {
    case Channel::TwoSided: return DensityMatrix4::unchecked(tensor_product(basis::ground(), basis::ground()));
    case Channel::OneSidedA:
        return DensityMatrix4::unchecked(tensor_product(basis::ground(), partial_trace(rho.matrix(), Subsystem::B)));
    case Channel::OneSidedB:
        return DensityMatrix4::unchecked(tensor_product(partial_trace(rho.matrix(), Subsystem::A), basis::ground()));
    }
    throw std::invalid_argument("asymptotic_state: unknown channel");
}

} // namespace discord
