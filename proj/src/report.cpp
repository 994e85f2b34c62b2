#include "sfd/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "sfd/numfmt.hpp"

namespace sfd {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

constexpr const char* kSeriesHeader =
    "step,time,entropy_rel,gnorm_sq_rel,var_u,var_g,mass_error,newton_iterations,min_g";

}  // namespace

void write_series_csv(const std::string& path, const std::vector<DiagnosticsRecord>& series) {
    auto out = open_out(path);
    out << kSeriesHeader << "\n";
    for (const auto& r : series) {
        out << r.step << ',' << format_full(r.time) << ',' << format_full(r.entropy_rel) << ','
            << format_full(r.gnorm_sq_rel) << ',' << format_full(r.var_u) << ','
            << format_full(r.var_g) << ',' << format_full(r.mass_error) << ','
            << r.newton_iterations << ',' << format_full(r.min_g) << "\n";
    }
}

std::vector<DiagnosticsRecord> read_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path);
    std::string line;
    if (!std::getline(in, line) || line != kSeriesHeader) {
        throw ConfigError(path + ": unexpected series header");
    }
    std::vector<DiagnosticsRecord> series;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != 9) {
            throw ConfigError(path + " line " + std::to_string(lineno) + ": expected 9 fields");
        }
        try {
            DiagnosticsRecord r;
            r.step = std::stoi(f[0]);
            r.time = std::stod(f[1]);
            r.entropy_rel = std::stod(f[2]);
            r.gnorm_sq_rel = std::stod(f[3]);
            r.var_u = std::stod(f[4]);
            r.var_g = std::stod(f[5]);
            r.mass_error = std::stod(f[6]);
            r.newton_iterations = std::stoi(f[7]);
            r.min_g = std::stod(f[8]);
            series.push_back(r);
        } catch (const std::exception&) {
            throw ConfigError(path + " line " + std::to_string(lineno) + ": malformed number");
        }
    }
    return series;
}

void write_snapshot_csv(const std::string& path, const LagrangianGrid& grid,
                        const WeightVector& g) {
    const EulerianSamples recon = reconstruct_eulerian(grid, g);
    auto out = open_out(path);
    out << "j,omega_j,g_lin_j,g_quad_j,x_j,u_j\n";
    for (int j = 0; j <= grid.cells(); ++j) {
        const double lin = (j == 0) ? g.left_value(1) : g.lin[j - 1];
        const double quad = (j == 0) ? 0.0 : g.quad[j - 1];
        out << j << ',' << format_full(grid.node(j)) << ',' << format_full(lin) << ','
            << format_full(quad) << ',' << format_full(recon.x[static_cast<std::size_t>(j)])
            << ',' << format_full(recon.u[static_cast<std::size_t>(j)]) << "\n";
    }
}

void write_trajectories_csv(const std::string& path, const TrajectorySet& trajectories,
                            double tau) {
    auto out = open_out(path);
    out << "step,time";
    for (std::size_t p = 1; p <= trajectories.labels.size(); ++p) out << ",x_" << p;
    out << "\n";
    for (std::size_t s = 0; s < trajectories.positions.size(); ++s) {
        out << s << ',' << format_full(static_cast<double>(s) * tau);
        for (double x : trajectories.positions[s]) out << ',' << format_full(x);
        out << "\n";
    }
}

void write_xy(const std::string& path, const std::vector<double>& xs,
              const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw DimensionMismatch("xy columns differ in length");
    auto out = open_out(path);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out << format_full(xs[i]) << ' ' << format_full(ys[i]) << "\n";
    }
}

std::vector<std::string> check_series(const RunConfig& config,
                                      const std::vector<DiagnosticsRecord>& series) {
    std::vector<std::string> out;
    constexpr std::size_t kMaxViolations = 100;
    const auto report = [&](int row, const std::string& what) {
        if (out.size() < kMaxViolations) {
            out.push_back("row " + std::to_string(row) + ": " + what);
        }
    };

    if (series.empty()) return {"series is empty"};
    const double tol = config.newton_tol;

    double gnorm_scale = 0.0;
    for (const auto& r : series) gnorm_scale = std::max(gnorm_scale, std::abs(r.gnorm_sq_rel));

    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& r = series[i];
        if (r.step != static_cast<int>(i)) report(static_cast<int>(i), "step index out of order");
        if (std::abs(r.time - r.step * config.tau) > 1e-9 * std::max(1.0, std::abs(r.time))) {
            report(r.step, "time does not equal step * tau");
        }
        if (r.entropy_rel < -10.0 * tol) report(r.step, "entropy_rel below the constant-state bound");
        if (r.gnorm_sq_rel < -1e-12 * gnorm_scale) report(r.step, "gnorm_sq_rel negative beyond rounding");
        if (r.mass_error > 10.0 * tol) report(r.step, "mass error exceeds 10x solver tolerance");
        if (!(r.min_g > 0.0)) report(r.step, "non-positive density");
        if (i > 0 && r.newton_iterations < 1) report(r.step, "missing newton iterations");
    }

    // Monotone dissipation holds until the observable saturates near the
    // solver floor; per-step slack matches the solve tolerance budget.
    const double saturation = 1e3 * tol;
    if (config.scheme == TimeScheme::euler) {
        for (std::size_t i = 1; i < series.size(); ++i) {
            if (series[i - 1].entropy_rel < saturation) break;
            if (series[i].entropy_rel > series[i - 1].entropy_rel + 10.0 * tol) {
                report(series[i].step, "entropy_rel increased before saturation");
            }
        }
    } else {
        for (std::size_t i = 2; i < series.size(); ++i) {
            if (series[i - 1].gnorm_sq_rel < saturation) break;
            if (series[i].gnorm_sq_rel > series[i - 1].gnorm_sq_rel + 10.0 * tol) {
                report(series[i].step, "gnorm_sq_rel increased before saturation");
            }
        }
    }
    if (out.size() == kMaxViolations) out.push_back("(further violations suppressed)");
    return out;
}

namespace {

void describe_fit(std::ostringstream& out, const char* label, const std::vector<double>& t,
                  const std::vector<double>& v, const RunConfig& c, double floor) {
    out << "  " << label << ": ";
    try {
        Window w{};
        if (c.fit_window_start && c.fit_window_end) {
            w = {*c.fit_window_start, *c.fit_window_end};
        } else {
            w = auto_window(t, v, floor);
        }
        const DecayFit fit = fit_decay_rate(t, v, w);
        out << "rate = " << format_full(fit.rate) << ", residual = " << format_full(fit.residual)
            << ", window = [" << format_full(fit.window.t_a) << ", "
            << format_full(fit.window.t_b) << "], samples = " << fit.samples
            << ", midpoint quotient = " << format_full(fit.diff_quotient_mid) << "\n";
    } catch (const Error& e) {
        out << "not fitted (" << e.what() << ")\n";
    }
}

}  // namespace

std::string render_run_summary(const RunConfig& c, const FlowResult& r) {
    std::ostringstream out;
    out << "steps: " << (r.series.size() - 1) << " (tau = " << format_full(c.tau)
        << ", t_end = " << format_full(c.t_end) << ")\n";
    out << "scheme: " << to_string(c.scheme) << ", alpha = " << format_full(c.alpha)
        << ", assembler: " << to_string(c.assembler) << "\n";
    out << "grid: N = " << r.grid.cells()
        << ", total mass = " << format_full(r.grid.total_mass()) << "\n";

    double worst_mass = 0.0;
    int worst_newton = 0;
    double min_g_run = r.series.front().min_g;
    for (const auto& rec : r.series) {
        worst_mass = std::max(worst_mass, rec.mass_error);
        worst_newton = std::max(worst_newton, rec.newton_iterations);
        min_g_run = std::min(min_g_run, rec.min_g);
    }
    out << "max mass error: " << format_full(worst_mass)
        << ", max newton iterations: " << worst_newton
        << ", min g over run: " << format_full(min_g_run) << "\n";
    out << "final entropy_rel: " << format_full(r.series.back().entropy_rel)
        << ", final gnorm_sq_rel: " << format_full(r.series.back().gnorm_sq_rel) << "\n";

    std::vector<double> t, se, sg, vu, vg;
    for (const auto& rec : r.series) {
        t.push_back(rec.time);
        se.push_back(rec.entropy_rel);
        sg.push_back(rec.gnorm_sq_rel);
        vu.push_back(rec.var_u);
        vg.push_back(rec.var_g);
    }
    const double floor_sq = 1e3 * c.newton_tol;
    out << "decay fits (log-linear least squares, "
        << ((c.fit_window_start && c.fit_window_end) ? "fixed window" : "auto window") << "):\n";
    describe_fit(out, "entropy_rel ", t, se, c, floor_sq);
    describe_fit(out, "gnorm_sq_rel", t, sg, c, floor_sq);
    describe_fit(out, "var_u       ", t, vu, c, std::sqrt(floor_sq));
    describe_fit(out, "var_g       ", t, vg, c, std::sqrt(floor_sq));

    if (c.alpha >= -1.0 && c.alpha < 0.0) {
        out << "analytic entropy rate for this mass: "
            << format_full(theoretical_rate(c.alpha, r.grid.total_mass())) << "\n";
    } else {
        out << "analytic entropy rate: n/a for alpha = " << format_full(c.alpha) << "\n";
    }
    return out.str();
}

std::string render_spatial_summary(const SpatialStudyResult& r) {
    std::ostringstream out;
    out << "spatial refinement study\n";
    out << "N, err_g (l-inf at reference mass nodes), err_u (l-inf on comparison grid)\n";
    for (std::size_t i = 0; i < r.n_values.size(); ++i) {
        out << r.n_values[i] << ", " << format_full(r.err_g[i]) << ", "
            << format_full(r.err_u[i]) << "\n";
    }
    if (r.degenerate) {
        out << "degenerate: all errors at rounding level, no slope\n";
    } else {
        out << "slope of log err_g vs log N: " << format_full(r.slope_g) << "\n";
        out << "slope of log err_u vs log N: " << format_full(r.slope_u) << "\n";
    }
    return out.str();
}

std::string render_temporal_summary(const TemporalStudyResult& r, double tau_star) {
    std::ostringstream out;
    out << "time-step refinement study, errors over (" << format_full(tau_star) << ", t_end]\n";
    out << "tau, sup-over-times L2 error in u\n";
    for (std::size_t i = 0; i < r.tau_values.size(); ++i) {
        out << format_full(r.tau_values[i]) << ", " << format_full(r.err[i]) << "\n";
    }
    if (r.degenerate) {
        out << "degenerate: all errors at rounding level, no slope\n";
    } else {
        out << "slope of log err vs log tau: " << format_full(r.slope) << "\n";
    }
    return out.str();
}

std::string render_decay_summary(const DecaySweepResult& r) {
    std::ostringstream out;
    out << "decay-rate sweep over " << r.parameter_name << "\n";
    out << r.parameter_name
        << ", entropy rate (residual), gnorm_sq rate (residual), var_u rate, var_g rate, "
           "analytic rate\n";
    for (const auto& row : r.rows) {
        out << format_full(row.parameter) << ", " << format_full(row.entropy_fit.rate) << " ("
            << format_full(row.entropy_fit.residual) << "), "
            << format_full(row.gnorm_fit.rate) << " (" << format_full(row.gnorm_fit.residual)
            << "), " << format_full(row.var_u_fit.rate) << ", "
            << format_full(row.var_g_fit.rate) << ", ";
        if (std::isnan(row.reference_rate)) {
            out << "n/a";
        } else {
            out << format_full(row.reference_rate);
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace sfd
