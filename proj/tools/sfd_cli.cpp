// Command-line front end: run a flow, drive the convergence and decay
// studies, re-validate recorded runs, and emit gnuplot scripts. All output
// is deterministic; identical configurations produce byte-identical files.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sfd/config.hpp"
#include "sfd/flow.hpp"
#include "sfd/numfmt.hpp"
#include "sfd/report.hpp"
#include "sfd/studies.hpp"

namespace fs = std::filesystem;
using namespace sfd;

namespace {

std::string snapshot_name(int step) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snapshot_%06d.csv", step);
    return buf;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

// Scaled-down protocols that finish on a workstation; `full` keeps the
// original resolutions. The summary of every study names the preset and
// any substitution it makes, so results are never mistaken for the full
// protocol's.
struct StudyScale {
    int ref_n = 400;
    double ref_tau = 1e-6;
    double run_tau = 1e-6;  // spatial study time step
};

StudyScale study_scale(const std::string& preset) {
    if (preset == "desk") return {400, 1e-6, 1e-6};
    if (preset == "full") return {500, 1e-7, 1e-7};
    throw ConfigError("unknown study preset: " + preset);
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
    const RunConfig cfg = parse_config_file(config_path);
    validate_config(cfg);
    fs::create_directories(out_dir);
    const fs::path out(out_dir);
    write_text(out / "config.txt", render_config(cfg));

    const EulerianSamples datum = resolve_datum(cfg);
    const auto [grid, g0] = build_initial(datum);

    std::vector<DiagnosticsRecord> partial;
    WeightVector last = g0;
    try {
        const FlowResult res = run_flow(cfg, datum, [&](const DiagnosticsRecord& r,
                                                        const WeightVector& g) {
            partial.push_back(r);
            last = g;
        });
        write_series_csv((out / "series.csv").string(), res.series);
        for (const auto& [step, g] : res.snapshots) {
            write_snapshot_csv((out / snapshot_name(step)).string(), res.grid, g);
        }
        if (cfg.particles > 0) {
            write_trajectories_csv((out / "trajectories.csv").string(), res.trajectories,
                                   cfg.tau);
        }
        const std::string summary = render_run_summary(cfg, res);
        write_text(out / "summary.txt", summary);
        std::cout << summary;
        return 0;
    } catch (const Error&) {
        // Flush what the observer saw so the failure can be examined.
        if (!partial.empty()) {
            write_series_csv((out / "series.csv").string(), partial);
            write_snapshot_csv((out / snapshot_name(partial.back().step)).string(), grid, last);
            std::cerr << "flushed " << partial.size() << " series rows and the state of step "
                      << partial.back().step << " to " << out_dir << "\n";
        }
        throw;
    }
}

RunConfig study_base(double alpha, int n_cells, double tau, double t_end, TimeScheme scheme) {
    RunConfig c;
    c.alpha = alpha;
    c.n_cells = n_cells;
    c.tau = tau;
    c.t_end = t_end;
    c.scheme = scheme;
    return c;
}

int cmd_study_space(const std::string& preset, const std::string& out_dir) {
    const StudyScale scale = study_scale(preset);
    const std::vector<int> n_values{25, 50, 100, 200};
    RunConfig base = study_base(-1.0, n_values.front(), scale.run_tau, 0.004, TimeScheme::bdf2);
    RunConfig ref = base;
    ref.n_cells = scale.ref_n;
    ref.tau = scale.ref_tau;

    const SpatialStudyResult r =
        spatial_convergence_study(base, n_values, ref, convergence_datum);

    fs::create_directories(out_dir);
    const fs::path out(out_dir);
    std::ostringstream csv;
    csv << "n_cells,err_g,err_u\n";
    for (std::size_t i = 0; i < r.n_values.size(); ++i) {
        csv << r.n_values[i] << ',' << format_full(r.err_g[i]) << ','
            << format_full(r.err_u[i]) << "\n";
    }
    write_text(out / "errors.csv", csv.str());
    std::string note = "preset " + preset + ": reference N = " + std::to_string(scale.ref_n) +
                       ", tau = " + format_full(scale.ref_tau);
    if (preset == "desk") note += " substitutes for the full protocol (N = 500, tau = 1e-07)";
    const std::string summary = render_spatial_summary(r) + note + "\n";
    write_text(out / "summary.txt", summary);
    std::cout << summary;
    return 0;
}

int cmd_study_time(const std::string& preset, const std::string& scheme_name,
                   const std::string& out_dir) {
    const StudyScale scale = study_scale(preset);
    const std::vector<double> taus{4e-5, 2e-5, 1e-5, 5e-6};
    const double tau_star = 1e-4;
    RunConfig base = study_base(-1.0, 100, taus.front(), 0.004, parse_scheme(scheme_name));
    RunConfig ref = base;
    ref.tau = scale.ref_tau;
    ref.scheme = TimeScheme::bdf2;

    const TemporalStudyResult r =
        temporal_convergence_study(base, taus, tau_star, ref, convergence_datum);

    fs::create_directories(out_dir);
    const fs::path out(out_dir);
    std::ostringstream csv;
    csv << "tau,err\n";
    for (std::size_t i = 0; i < r.tau_values.size(); ++i) {
        csv << format_full(r.tau_values[i]) << ',' << format_full(r.err[i]) << "\n";
    }
    write_text(out / "errors.csv", csv.str());
    std::string note = "preset " + preset + ": N = 100 fixed, reference tau = " +
                       format_full(scale.ref_tau);
    if (preset == "desk") note += " substitutes for the full protocol's tau = 1e-07";
    const std::string summary = render_temporal_summary(r, tau_star) + "scheme: " +
                                scheme_name + "\n" + note + "\n";
    write_text(out / "summary.txt", summary);
    std::cout << summary;
    return 0;
}

int cmd_study_decay(const std::string& sweep, const std::string& out_dir) {
    RunConfig base = study_base(-1.0, 100, 1e-5, 0.02, TimeScheme::bdf2);
    base.initial = "cos2";

    DecaySweepResult r;
    if (sweep == "n") {
        r = decay_sweep_n(base, {50, 100, 200});
    } else if (sweep == "alpha") {
        r = decay_sweep_alpha(base, {-0.5, -1.0, -2.0});
    } else if (sweep == "tau") {
        r = decay_sweep_tau(base, {2e-5, 1e-5, 5e-6});
    } else {
        throw ConfigError("unknown sweep: " + sweep + " (expected n, alpha, or tau)");
    }

    fs::create_directories(out_dir);
    const fs::path out(out_dir);
    std::ostringstream csv;
    csv << r.parameter_name
        << ",entropy_rate,entropy_residual,gnorm_rate,gnorm_residual,var_u_rate,var_g_rate,"
           "reference_rate\n";
    for (const auto& row : r.rows) {
        csv << format_full(row.parameter) << ',' << format_full(row.entropy_fit.rate) << ','
            << format_full(row.entropy_fit.residual) << ',' << format_full(row.gnorm_fit.rate)
            << ',' << format_full(row.gnorm_fit.residual) << ','
            << format_full(row.var_u_fit.rate) << ',' << format_full(row.var_g_fit.rate) << ','
            << format_full(row.reference_rate) << "\n";
    }
    write_text(out / "rates.csv", csv.str());
    const std::string summary = render_decay_summary(r);
    write_text(out / "summary.txt", summary);
    std::cout << summary;
    return 0;
}

int cmd_check(const std::string& run_dir) {
    const fs::path dir(run_dir);
    const RunConfig cfg = parse_config_file((dir / "config.txt").string());
    const auto series = read_series_csv((dir / "series.csv").string());
    const auto violations = check_series(cfg, series);
    if (violations.empty()) {
        std::cout << "ok: " << series.size() << " rows pass all invariants\n";
        return 0;
    }
    for (const auto& v : violations) std::cerr << v << "\n";
    std::cerr << violations.size() << " violation(s)\n";
    return 3;
}

int cmd_emit_plots(const std::string& run_dir) {
    const fs::path dir(run_dir);
    const RunConfig cfg = parse_config_file((dir / "config.txt").string());
    if (!fs::exists(dir / "series.csv")) throw Error("no series.csv in " + run_dir);

    std::ostringstream gp;
    gp << "# Render the diagnostics of a finished run; execute from the run directory.\n";
    gp << "set datafile separator ','\n";
    gp << "set terminal pngcairo size 1000,700\n";
    gp << "set output 'diagnostics.png'\n";
    gp << "set logscale y\n";
    gp << "set format y '%.1e'\n";
    gp << "set xlabel 't'\n";
    gp << "set key top right\n";
    gp << "plot 'series.csv' using 2:3 with lines title 'entropy rel', \\\n";
    gp << "     '' using 2:4 with lines title 'gnorm sq rel', \\\n";
    gp << "     '' using 2:5 with lines title 'var u', \\\n";
    gp << "     '' using 2:6 with lines title 'var g'\n";
    if (cfg.particles > 0 && fs::exists(dir / "trajectories.csv")) {
        gp << "\nset output 'trajectories.png'\n";
        gp << "unset logscale y\n";
        gp << "set format y '% g'\n";
        gp << "set ylabel 'x'\n";
        gp << "plot for [i=3:" << (cfg.particles + 2)
           << "] 'trajectories.csv' using 2:i with lines notitle\n";
    }
    write_text(dir / "plots.gp", gp.str());
    std::cout << "wrote " << (dir / "plots.gp").string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lagrangian minimizing-movement solver for super-fast diffusion"};
    app.require_subcommand(1);

    std::string config_path, out_dir, run_dir;
    std::string preset = "desk";
    std::string scheme = "bdf2";
    std::string sweep = "n";

    auto* run = app.add_subcommand("run", "run one flow and write its artifacts");
    run->add_option("--config", config_path, "key = value configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    run->add_option("--out", out_dir, "output directory (created)")->required();

    auto* space = app.add_subcommand("study-space", "spatial refinement study");
    space->add_option("--preset", preset, "desk or full");
    space->add_option("--out", out_dir, "output directory (created)")->required();

    auto* time = app.add_subcommand("study-time", "time-step refinement study");
    time->add_option("--preset", preset, "desk or full");
    time->add_option("--scheme", scheme, "euler or bdf2");
    time->add_option("--out", out_dir, "output directory (created)")->required();

    auto* decay = app.add_subcommand("study-decay", "decay-rate sweep");
    decay->add_option("--sweep", sweep, "n, alpha, or tau");
    decay->add_option("--out", out_dir, "output directory (created)")->required();

    auto* check = app.add_subcommand("check", "re-validate a recorded run directory");
    check->add_option("dir", run_dir, "run directory")->required();

    auto* plots = app.add_subcommand("emit-plots", "write a gnuplot script into a run directory");
    plots->add_option("dir", run_dir, "run directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) return cmd_run(config_path, out_dir);
        if (space->parsed()) return cmd_study_space(preset, out_dir);
        if (time->parsed()) return cmd_study_time(preset, scheme, out_dir);
        if (decay->parsed()) return cmd_study_decay(sweep, out_dir);
        if (check->parsed()) return cmd_check(run_dir);
        if (plots->parsed()) return cmd_emit_plots(run_dir);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
