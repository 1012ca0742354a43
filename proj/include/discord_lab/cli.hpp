#pragma once

// Command-line front end. run_cli() is the whole program; stdout carries data
// only and diagnostics go to the error stream.
//
// Exit codes: 0 ok, 1 I/O failure, 2 invalid state, 3 oracle divergence or
// failed misprint check.

#include <cstdlib>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "discord_lab/state_io.hpp"

namespace discord::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitInvalidState = 2;
inline constexpr int kExitOracle = 3;

inline constexpr double kOracleDivergence = 1e-5;

/// tol_psd, optionally overridden by DISCORD_LAB_TOL.
inline double psd_tolerance() {
    if (const char* env = std::getenv("DISCORD_LAB_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && *end == '\0' && v >= 0.0) return v;
    }
    return kTolPsd;
}

// ---------------------------------------------------------------------------
// Reports.

struct MeasuresReport {
    double dg_closed = 0.0;
    double dg_bruteforce = 0.0;
    double d1 = 0.0;
    double cm = 0.0;
    double corr_distance = 0.0;
    double negativity = 0.0;
};

inline MeasuresReport compute_measures(const DensityMatrix4& rho, const GridSpec& grid = {}) {
    return {geometric_discord_closed(rho).value,
            geometric_discord_bruteforce(rho, grid).value,
            trace_distance_discord(rho, grid).value,
            max_mutual_correlation(rho),
            correlation_distance(rho),
            negativity(rho)};
}

inline std::string format_measures(const MeasuresReport& r) {
    return "dg_closed=" + format_number(r.dg_closed) + "\n" + "dg_bruteforce=" + format_number(r.dg_bruteforce) + "\n" +
           "d1=" + format_number(r.d1) + "\n" + "cm=" + format_number(r.cm) + "\n" +
           "corr_distance=" + format_number(r.corr_distance) + "\n" + "negativity=" + format_number(r.negativity) + "\n";
}

/// Probe evolved with the corrected and the as-printed one-sided maps and with
/// the RK4 oracle up to time g.
struct TypoReport {
    double g = 0.0;
    double corrected_deviation = 0.0;
    double printed_deviation = 0.0;
    double two_sided_deviation = 0.0;
    double two_sided_printed_deviation = 0.0;

    bool corrected_ok() const { return corrected_deviation <= 1e-7; }
    bool printed_diverges() const { return printed_deviation > 0.1; }
};

/// |e><e| (x) |+><+|, which has rho_12 = 1/2.
inline DensityMatrix4 typo_probe() { return product_state(basis::excited(), basis::plus()); }

inline TypoReport verify_typo(const DensityMatrix4& probe, double g = 2.0, double dt = 1e-4, int checkpoints = 40) {
    TypoReport r;
    r.g = g;
    r.corrected_deviation = max_oracle_deviation(probe, Channel::OneSidedA, propagate_one_sided_a, g, dt, checkpoints);
    const DensityMatrix4 oracle = integrate_lindblad(probe, Channel::OneSidedA, g, dt);
    r.printed_deviation = max_abs_diff(as_printed::propagate_one_sided_a(probe, g), oracle.matrix());

    // the two-sided rho_23 label issue needs rho_24 or rho_13 != 0 to show up
    const DensityMatrix4 probe2 = product_state(basis::plus(), basis::plus());
    const DensityMatrix4 oracle2 = integrate_lindblad(probe2, Channel::TwoSided, g, dt);
    r.two_sided_deviation = max_abs_diff(propagate_two_sided(probe2, g).matrix(), oracle2.matrix());
    r.two_sided_printed_deviation = max_abs_diff(as_printed::propagate_two_sided(probe2, g), oracle2.matrix());
    return r;
}

inline std::string format_typo_report(const TypoReport& r) {
    std::string s;
    s += "probe: |e><e| (x) |+><+|, one-sided emission on A, gamma0 t = " + format_number(r.g) + "\n";
    s += "corrected rho_34 = (1 - e^{-g}) rho_12 + rho_34: max deviation from RK4 = " +
         format_number(r.corrected_deviation) + (r.corrected_ok() ? "  [agrees]" : "  [MISMATCH]") + "\n";
    s += "printed   rho_34 = (1 - e^{+g}) rho_12 + rho_34: max deviation from RK4 = " +
         format_number(r.printed_deviation) + (r.printed_diverges() ? "  [diverges]" : "  [unexpectedly close]") +
         "\n";
    s += "probe: |+><+| (x) |+><+|, two-sided emission, gamma0 t = " + format_number(r.g) + "\n";
    s += "rho_23 = e^{-g} rho_23 (rho_24 formula moved to rho_24): max deviation from RK4 = " +
         format_number(r.two_sided_deviation) + "\n";
    s += "rho_23 carrying the rho_24 formula: max deviation from RK4 = " +
         format_number(r.two_sided_printed_deviation) + "\n";
    return s;
}

/// Rows dg, cm, negativity, corr_distance at `steps` times on [0, g].
/// With `oracle_dt` the states come from the RK4 integrator and the largest
/// deviation from the closed form is returned through `deviation`.
inline std::vector<CurveSample> trajectory(const DensityMatrix4& rho, Channel kind, double g, int steps,
                                           std::optional<double> oracle_dt = std::nullopt,
                                           double* deviation = nullptr) {
    if (steps < 2) throw std::invalid_argument("trajectory: --steps must be >= 2");
    std::vector<CurveSample> dg, cm, neg, cd;
    DensityMatrix4 oracle = rho;
    double t_prev = 0.0, worst = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double t = g * i / (steps - 1);
        DensityMatrix4 s = propagate(rho, kind, t);
        if (oracle_dt) {
            oracle = integrate_lindblad(oracle, kind, t - t_prev, *oracle_dt);
            t_prev = t;
            worst = std::max(worst, max_abs_diff(s.matrix(), oracle.matrix()));
            s = oracle;
        }
        dg.push_back({"dg", t, geometric_discord_closed(s).value});
        cm.push_back({"cm", t, max_mutual_correlation(s)});
        neg.push_back({"negativity", t, negativity(s)});
        cd.push_back({"corr_distance", t, correlation_distance(s)});
    }
    if (deviation) *deviation = worst;
    std::vector<CurveSample> out;
    for (auto* v : {&dg, &cm, &neg, &cd}) out.insert(out.end(), v->begin(), v->end());
    return out;
}

// ---------------------------------------------------------------------------

namespace detail {

inline void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty())
        out << text;
    else
        write_text_file(out_path, text);
}

} // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Two-qubit discord dynamics under spontaneous emission"};
    app.require_subcommand(1);

    // measures
    std::string measures_file;
    auto* measures = app.add_subcommand("measures", "Print every correlation measure of a state file");
    measures->add_option("file", measures_file, "State file (JSON)")->required();

    // evolve
    std::string evolve_file, channel_name = "two-sided", evolve_out;
    double gamma0t = 0.0, dt = 1e-4, gamma0 = 0.0;
    int steps = 201;
    bool want_trajectory = false, want_oracle = false;
    auto* evolve = app.add_subcommand("evolve", "Propagate a state under spontaneous emission");
    evolve->add_option("file", evolve_file, "Initial state file (JSON)")->required();
    evolve->add_option("--channel", channel_name, "two-sided | one-sided-a | one-sided-b")
        ->check(CLI::IsMember({"two-sided", "one-sided-a", "one-sided-b"}));
    evolve->add_option("--gamma0t", gamma0t, "Final time in units of 1/gamma0")->required()->check(CLI::NonNegativeNumber);
    evolve->add_flag("--trajectory", want_trajectory, "Emit a CSV of measures along [0, gamma0t]");
    evolve->add_option("--steps", steps, "Trajectory points")->check(CLI::Range(2, 1000000));
    evolve->add_flag("--oracle", want_oracle, "Use the RK4 integrator and report its deviation");
    evolve->add_option("--dt", dt, "RK4 step (gamma0 t units, <= 1e-3)");
    evolve->add_option("--gamma0", gamma0, "Report times as t = gamma0t / gamma0")->check(CLI::PositiveNumber);
    evolve->add_option("--out", evolve_out, "Output path (default stdout)");

    // figure
    int which = 1, fig_steps = 301, fig_alphas = 64;
    double fig_tmax = 6.0, fig_gamma0 = 0.0;
    std::string fig_out;
    auto* figure = app.add_subcommand("figure", "Emit figure data as CSV");
    figure->add_option("which", which, "1, 2 or 3")->required()->check(CLI::IsMember({1, 2, 3}));
    figure->add_option("--out", fig_out, "Output path (default stdout)");
    figure->add_option("--t-max", fig_tmax, "Time range for figures 1 and 2")->check(CLI::PositiveNumber);
    figure->add_option("--steps", fig_steps, "Time points for figures 1 and 2")->check(CLI::Range(2, 1000000));
    figure->add_option("--alphas", fig_alphas, "Angle points for figure 3")->check(CLI::Range(2, 1000000));
    figure->add_option("--gamma0", fig_gamma0, "Report times as t = gamma0t / gamma0")->check(CLI::PositiveNumber);

    // sweep
    std::string family_name, sweep_channel = "two-sided", sweep_out;
    std::size_t sweep_n = 1000;
    std::uint64_t sweep_seed = 0;
    auto* sweep = app.add_subcommand("sweep", "Peak discord created from random classical states");
    sweep->add_option("--family", family_name, "cc | cq")->required()->check(CLI::IsMember({"cc", "cq"}));
    sweep->add_option("--n", sweep_n, "Number of samples")->check(CLI::Range(std::size_t{1}, std::size_t{100000000}));
    sweep->add_option("--seed", sweep_seed, "First sample seed")->required();
    sweep->add_option("--channel", sweep_channel, "two-sided | one-sided-a | one-sided-b")
        ->check(CLI::IsMember({"two-sided", "one-sided-a", "one-sided-b"}));
    sweep->add_option("--out", sweep_out, "Output path (default stdout)");

    // dmax-scan
    int scan_alphas = 64;
    std::string scan_out;
    auto* dmax = app.add_subcommand("dmax-scan", "Maximal created discord versus Bloch-vector angle");
    dmax->add_option("--alphas", scan_alphas, "Angle points on [0, 2 pi]")->check(CLI::Range(2, 1000000));
    dmax->add_option("--out", scan_out, "Output path (default stdout)");

    // verify-typo
    double typo_t = 2.0, typo_dt = 1e-4;
    auto* typo = app.add_subcommand("verify-typo", "Compare printed and corrected propagator elements with RK4");
    typo->add_option("--gamma0t", typo_t, "Probe time")->check(CLI::PositiveNumber);
    typo->add_option("--dt", typo_dt, "RK4 step (<= 1e-3)");

    // validate
    std::string validate_file;
    auto* validate = app.add_subcommand("validate", "Check a state file");
    validate->add_option("file", validate_file, "State file (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    const double tol = psd_tolerance();
    try {
        if (*measures) {
            out << format_measures(compute_measures(read_state_file(measures_file, tol)));
        } else if (*evolve) {
            const DensityMatrix4 rho = read_state_file(evolve_file, tol);
            const Channel kind = parse_channel(channel_name);
            const std::optional<double> odt = want_oracle ? std::optional<double>(dt) : std::nullopt;
            double deviation = 0.0;
            if (want_trajectory) {
                const auto rows = trajectory(rho, kind, gamma0t, steps, odt, &deviation);
                const bool rescale = gamma0 > 0.0;
                detail::emit(curves_to_csv(rows, rescale ? "t" : "gamma0t", rescale ? 1.0 / gamma0 : 1.0), evolve_out, out);
            } else {
                DensityMatrix4 result = propagate(rho, kind, gamma0t);
                if (odt) {
                    const DensityMatrix4 oracle = integrate_lindblad(rho, kind, gamma0t, *odt);
                    deviation = max_abs_diff(result.matrix(), oracle.matrix());
                    result = oracle;
                }
                detail::emit(state_to_string(result), evolve_out, out);
            }
            if (odt) {
                err << "oracle max deviation from closed form: " << format_number(deviation) << "\n";
                if (deviation > kOracleDivergence) {
                    err << "error: oracle diverges from the closed-form propagator\n";
                    return kExitOracle;
                }
            }
        } else if (*figure) {
            const auto rows = figure_data(which, TimeGrid(fig_tmax, fig_steps), fig_alphas);
            std::string csv;
            if (which == 3)
                csv = curves_to_csv(rows, "alpha");
            else if (fig_gamma0 > 0.0)
                csv = curves_to_csv(rows, "t", 1.0 / fig_gamma0);
            else
                csv = curves_to_csv(rows);
            detail::emit(csv, fig_out, out);
        } else if (*sweep) {
            const auto res = sweep_classical_states(sweep_n, parse_family(family_name), parse_channel(sweep_channel),
                                                    sweep_seed);
            detail::emit(sweep_to_csv(res.records), sweep_out, out);
            const auto& s = res.summary;
            err << "samples=" << s.total << " correlated=" << s.correlated << " creating=" << s.creating
                << " fraction=" << format_number(s.creating_fraction())
                << " max_initial_dg=" << format_number(s.max_initial_dg) << " peak_min=" << format_number(s.peak_min)
                << " peak_median=" << format_number(s.peak_median) << " peak_max=" << format_number(s.peak_max)
                << "\n";
        } else if (*dmax) {
            detail::emit(dmax_to_csv(dmax_vs_alpha(alpha_grid(scan_alphas))), scan_out, out);
        } else if (*typo) {
            const TypoReport r = verify_typo(typo_probe(), typo_t, typo_dt);
            out << format_typo_report(r);
            if (!r.corrected_ok() || !r.printed_diverges()) return kExitOracle;
        } else if (*validate) {
            read_state_file(validate_file, tol);
            out << "valid\n";
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const StateFormatError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalidState;
    } catch (const InvalidState& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalidState;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}

} // namespace discord::cli
