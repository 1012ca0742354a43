#pragma once

// Time curves of correlations for classically correlated initial states under
// spontaneous emission, peak search, figure data and random-state sweeps.

#include <algorithm>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "discord_lab/dynamics.hpp"
#include "discord_lab/measures.hpp"

namespace discord {

struct TimeGrid {
    double t_max = 10.0;
    int steps = 400;

    TimeGrid() = default;
    TimeGrid(double tmax, int n) : t_max(tmax), steps(n) {
        if (!(tmax > 0.0) || n < 2) throw std::invalid_argument("TimeGrid: need t_max > 0 and steps >= 2");
    }

    double at(int i) const { return t_max * static_cast<double>(i) / static_cast<double>(steps - 1); }
};

struct CurveSample {
    std::string label;
    double x = 0.0; ///< gamma0 t, or the Bloch angle for D_max curves
    double value = 0.0;
};

// ---------------------------------------------------------------------------
// Analytic curves for rho_0 and for the planar classical-quantum family.

inline double curve_cm_rho0(Channel kind, double g) {
    return kind == Channel::TwoSided ? std::exp(-g) : std::exp(-0.5 * g);
}

struct Branches {
    double first = 0.0;
    double second = 0.0;
    double min() const { return std::min(first, second); }
};

inline Branches dg_rho0_branches(Channel kind, double g) {
    const double x = std::exp(-g);
    switch (kind) {
    case Channel::TwoSided: {
        const double u = std::exp(g) - 1.0;
        return {0.5 * x * x, 0.5 * ((x - 1.0) * (x - 1.0) + std::exp(-4.0 * g) * u * u * u * u)};
    }
    case Channel::OneSidedA: return {0.5 * x, 0.5 * (x - 1.0) * (x - 1.0)};
    case Channel::OneSidedB: return {0.0, 0.0}; // stays classical-quantum
    }
    return {};
}

inline double curve_dg_rho0(Channel kind, double g) { return dg_rho0_branches(kind, g).min(); }

/// Two-sided emission from (|+><+| (x) rho_1 + |-><-| (x) rho_2) / 2 with unit
/// planar Bloch vectors at relative angle alpha.
inline Branches dg_cq_branches(double alpha, double g) {
    const double e1 = std::exp(-g), e2 = std::exp(-2.0 * g), e3 = std::exp(-3.0 * g), e4 = std::exp(-4.0 * g);
    const double ca = std::cos(alpha);
    const double d1 = 0.25 * (1.0 - ca) * e2;
    const double d2 = 1.0 + 0.5 * e4 - 1.75 * e3 + 3.0 * e2 - 2.75 * e1 + (0.25 * e3 - 0.5 * e2 + 0.25 * e1) * ca;
    return {d1, d2};
}

inline double curve_dg_cq(double alpha, double g) { return dg_cq_branches(alpha, g).min(); }

/// The initial state behind curve_dg_cq; alpha0 rotates both Bloch vectors.
inline DensityMatrix4 planar_cq_state(double alpha, double alpha0 = 0.0) {
    return cq_state(BinaryDistribution{0.5, 0.5}, ProjectorPair{std::numbers::pi / 4.0, 0.0}, planar_bloch(alpha0),
                    planar_bloch(alpha0 + alpha));
}

/// cc state with p = (0, 1/2, 1/2, 0) and both projector pairs at (theta, 0);
/// theta = pi/4 gives rho_0.
inline DensityMatrix4 anticorrelated_cc_state(double theta, double phi = 0.0) {
    const ProjectorPair pair{theta, phi};
    return cc_state(JointDistribution2x2{0.0, 0.5, 0.5, 0.0}, pair, pair);
}

// ---------------------------------------------------------------------------
// Peak search.

struct Peak {
    double t = 0.0;
    double value = 0.0;
};

namespace detail {

inline constexpr double kInvPhi = 0.6180339887498949; // (sqrt 5 - 1) / 2

/// Golden-section maximization of f on [lo, hi] down to an interval < tol.
inline Peak golden_max(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-10) {
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    const double t = 0.5 * (a + b);
    return {t, f(t)};
}

/// Root of a sign-changing h on [lo, hi] by bisection.
inline double bisect(const std::function<double(double)>& h, double lo, double hi) {
    double hlo = h(lo);
    for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        const double hm = h(mid);
        if ((hm <= 0.0) == (hlo <= 0.0)) {
            lo = mid;
            hlo = hm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct Bracket {
    double lo, hi, t_best, f_best;
};

inline Bracket coarse_bracket(const std::function<double(double)>& f, double t_max, int coarse) {
    const TimeGrid grid(t_max, coarse);
    int best = 0;
    double fbest = f(0.0);
    for (int i = 1; i < coarse; ++i) {
        const double v = f(grid.at(i));
        if (v > fbest) {
            fbest = v;
            best = i;
        }
    }
    return {grid.at(std::max(best - 1, 0)), grid.at(std::min(best + 1, coarse - 1)), grid.at(best), fbest};
}

} // namespace detail

/// Maximum of a unimodal-near-peak curve on [0, t_max]: coarse scan, then
/// golden-section refinement inside the bracketing cells.
inline Peak find_peak(const std::function<double(double)>& f, double t_max = 10.0, int coarse = 400,
                      double tol = 1e-10) {
    const auto br = detail::coarse_bracket(f, t_max, coarse);
    Peak best{br.t_best, br.f_best};
    const Peak refined = detail::golden_max(f, br.lo, br.hi, tol);
    if (refined.value > best.value) best = refined;
    return best;
}

/// Maximum of min(b1, b2) on [0, t_max]. The curve has a kink where the
/// branches cross, so each branch is refined separately and the crossing is
/// located by bisection; the best admissible candidate wins.
inline Peak find_peak_of_branches(const std::function<Branches(double)>& branches, double t_max = 10.0,
                                  int coarse = 400, double tol = 1e-10) {
    auto f = [&](double t) { return branches(t).min(); };
    const auto br = detail::coarse_bracket(f, t_max, coarse);
    Peak best{br.t_best, br.f_best};
    auto consider = [&](double t) {
        const double v = f(t);
        if (v > best.value) best = {t, v};
    };
    consider(br.lo);
    consider(br.hi);
    consider(detail::golden_max([&](double t) { return branches(t).first; }, br.lo, br.hi, tol).t);
    consider(detail::golden_max([&](double t) { return branches(t).second; }, br.lo, br.hi, tol).t);
    auto gap = [&](double t) {
        const Branches b = branches(t);
        return b.first - b.second;
    };
    if ((gap(br.lo) <= 0.0) != (gap(br.hi) <= 0.0)) consider(detail::bisect(gap, br.lo, br.hi));
    return best;
}

inline Peak peak_dg_rho0(Channel kind) {
    return find_peak_of_branches([kind](double g) { return dg_rho0_branches(kind, g); });
}

struct DmaxPoint {
    double alpha = 0.0;
    double dmax = 0.0;
    double t_peak = 0.0;
};

inline DmaxPoint dmax_at(double alpha) {
    const Peak p = find_peak_of_branches([alpha](double g) { return dg_cq_branches(alpha, g); });
    return {alpha, p.value, p.t};
}

inline std::vector<DmaxPoint> dmax_vs_alpha(const std::vector<double>& alphas) {
    std::vector<DmaxPoint> out;
    out.reserve(alphas.size());
    for (double a : alphas) {
        if (!(a >= 0.0 && a <= 2.0 * std::numbers::pi + 1e-12)) {
            throw std::invalid_argument("dmax_vs_alpha: angles must lie in [0, 2 pi]");
        }
        out.push_back(dmax_at(a));
    }
    return out;
}

/// n equally spaced angles over [0, 2 pi], endpoints included.
inline std::vector<double> alpha_grid(int n) {
    if (n < 2) throw std::invalid_argument("alpha_grid: need at least 2 points");
    std::vector<double> a(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] = 2.0 * std::numbers::pi * i / (n - 1);
    return a;
}

// ---------------------------------------------------------------------------
// Figures.

/// D_G^A(t) of `initial` under `kind`, computed via propagate -> closed form.
inline double dg_along(const DensityMatrix4& initial, Channel kind, double g) {
    return geometric_discord_closed(propagate(initial, kind, g)).value;
}

inline std::vector<CurveSample> figure_data(int which, const TimeGrid& grid = {6.0, 301}, int alpha_points = 64) {
    std::vector<CurveSample> out;
    auto emit = [&](const std::string& label, const DensityMatrix4& rho, Channel kind) {
        for (int i = 0; i < grid.steps; ++i) {
            const double g = grid.at(i);
            out.push_back({label, g, dg_along(rho, kind, g)});
        }
    };
    switch (which) {
    case 1: {
        const DensityMatrix4 rho0 = rho_zero();
        emit("one_sided", rho0, Channel::OneSidedA);
        emit("two_sided", rho0, Channel::TwoSided);
        break;
    }
    case 2: {
        const double pi = std::numbers::pi;
        emit("rho0", anticorrelated_cc_state(pi / 4.0), Channel::TwoSided);
        emit("rho1", anticorrelated_cc_state(pi / 6.0), Channel::TwoSided);
        emit("rho2", anticorrelated_cc_state(pi / 8.0), Channel::TwoSided);
        break;
    }
    case 3:
        for (const DmaxPoint& p : dmax_vs_alpha(alpha_grid(alpha_points))) out.push_back({"dmax", p.alpha, p.dmax});
        break;
    default: throw std::invalid_argument("figure_data: figure must be 1, 2 or 3");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Random classical-state sweeps.

enum class Family { CC, CQ };

inline std::string to_string(Family f) { return f == Family::CC ? "cc" : "cq"; }

inline Family parse_family(const std::string& s) {
    if (s == "cc") return Family::CC;
    if (s == "cq") return Family::CQ;
    throw std::invalid_argument("unknown family '" + s + "' (expected cc or cq)");
}

struct SweepRecord {
    std::uint64_t seed = 0;
    Family family = Family::CC;
    double cm0 = 0.0;
    double dg0 = 0.0;
    double peak_dg = 0.0;
    double peak_t = 0.0;
};

struct SweepSummary {
    std::size_t total = 0;
    std::size_t correlated = 0;          ///< samples with cm0 above the exclusion threshold
    std::size_t creating = 0;            ///< correlated samples with peak_dg > 1e-8
    double max_initial_dg = 0.0;
    double peak_min = 0.0, peak_median = 0.0, peak_max = 0.0;

    double creating_fraction() const { return correlated ? static_cast<double>(creating) / correlated : 1.0; }
};

struct SweepResult {
    std::vector<SweepRecord> records;
    SweepSummary summary;
};

inline constexpr double kCreatedDiscordThreshold = 1e-8;

inline SweepRecord sweep_one(std::uint64_t seed, Family family, Channel kind, const TimeGrid& grid) {
    const DensityMatrix4 rho = family == Family::CC ? random_cc_state(seed) : random_cq_state(seed);
    SweepRecord r;
    r.seed = seed;
    r.family = family;
    r.cm0 = max_mutual_correlation(rho);
    r.dg0 = geometric_discord_closed(rho).value;
    for (int i = 0; i < grid.steps; ++i) {
        const double g = grid.at(i);
        const double dg = dg_along(rho, kind, g);
        if (dg > r.peak_dg) {
            r.peak_dg = dg;
            r.peak_t = g;
        }
    }
    return r;
}

/// Samples seeds first_seed, first_seed + 1, ... in order. Samples whose C_M
/// is at most `product_cm` are product states and do not count towards the
/// creation tally.
inline SweepResult sweep_classical_states(std::size_t n, Family family, Channel kind, std::uint64_t first_seed,
                                          const TimeGrid& grid = {}, double product_cm = 1e-12) {
    if (n < 1) throw std::invalid_argument("sweep_classical_states: n must be >= 1");
    SweepResult res;
    res.records.reserve(n);
    std::vector<double> peaks;
    for (std::size_t i = 0; i < n; ++i) {
        const SweepRecord r = sweep_one(first_seed + i, family, kind, grid);
        res.records.push_back(r);
        peaks.push_back(r.peak_dg);
        auto& s = res.summary;
        ++s.total;
        s.max_initial_dg = std::max(s.max_initial_dg, r.dg0);
        if (r.cm0 > product_cm) {
            ++s.correlated;
            if (r.peak_dg > kCreatedDiscordThreshold) ++s.creating;
        }
    }
    std::sort(peaks.begin(), peaks.end());
    res.summary.peak_min = peaks.front();
    res.summary.peak_max = peaks.back();
    const std::size_t m = peaks.size();
    res.summary.peak_median = m % 2 ? peaks[m / 2] : 0.5 * (peaks[m / 2 - 1] + peaks[m / 2]);
    return res;
}

} // namespace discord
