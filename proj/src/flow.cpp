#include "sfd/flow.hpp"

#include <cmath>

#include "sfd/basis.hpp"

namespace sfd {

TimeScheme parse_scheme(const std::string& name) {
    if (name == "euler") return TimeScheme::euler;
    if (name == "bdf2") return TimeScheme::bdf2;
    throw ConfigError("unknown scheme '" + name + "', expected euler or bdf2");
}

AssemblerKind parse_assembler(const std::string& name) {
    if (name == "quadrature") return AssemblerKind::quadrature;
    if (name == "closed_form") return AssemblerKind::closed_form;
    throw ConfigError("unknown assembler '" + name + "', expected quadrature or closed_form");
}

std::string to_string(TimeScheme s) { return s == TimeScheme::euler ? "euler" : "bdf2"; }

std::string to_string(AssemblerKind a) {
    return a == AssemblerKind::quadrature ? "quadrature" : "closed_form";
}

void validate_config(const RunConfig& c) {
    if (!(c.alpha < 0.0)) throw ConfigError("alpha must be negative");
    // Any parity works: point symmetry pairs nodes about M/2 and is checked
    // on the data itself, not through the cell count.
    if (c.n_cells < 4) throw ConfigError("n_cells must be at least 4");
    if (!(c.tau > 0.0)) throw ConfigError("tau must be positive");
    if (!(c.t_end > c.tau)) throw ConfigError("t_end must exceed tau");
    const double ratio = c.t_end / c.tau;
    if (std::abs(ratio - std::llround(ratio)) > 1e-8 * ratio) {
        throw ConfigError("t_end must be an integer multiple of tau");
    }
    if (!(c.newton_tol > 0.0)) throw ConfigError("newton_tol must be positive");
    if (c.newton_max_iter < 1) throw ConfigError("newton_max_iter must be at least 1");
    if (c.snapshot_every < 0) throw ConfigError("snapshot_every must be non-negative");
    if (c.particles < 0) throw ConfigError("particles must be non-negative");
    if (c.fit_window_start && c.fit_window_end && !(*c.fit_window_start < *c.fit_window_end)) {
        throw ConfigError("fit window must have positive length");
    }
    if (c.initial.empty()) throw ConfigError("initial datum must be named");
}

int step_count(const RunConfig& c) { return static_cast<int>(std::llround(c.t_end / c.tau)); }

namespace {

DiagnosticsRecord make_record(int step, double time, const EntropyModel& model,
                              const LagrangianGrid& grid, const WassersteinMatrix& mw,
                              const Eigen::VectorXd& mass_coeffs, const WeightVector& g_inf,
                              double s_inf, const WeightVector& g, const WeightVector& g_prev,
                              int iterations) {
    DiagnosticsRecord r;
    r.step = step;
    r.time = time;
    r.entropy_rel = entropy(model, grid, g) - s_inf;
    const WeightVector p = WeightVector::from_stacked(g.stacked() - g_inf.stacked());
    const WeightVector q = WeightVector::from_stacked(g_prev.stacked() - g_inf.stacked());
    r.gnorm_sq_rel = g_norm_sq(mw, p, q);
    r.var_u = variance_u(grid, g);
    r.var_g = variance_g(grid, g);
    r.mass_error = std::abs(mass_coeffs.dot(g.stacked()) - 1.0);
    r.newton_iterations = iterations;
    r.min_g = min_g(grid, g);
    return r;
}

}  // namespace

FlowResult run_flow(const RunConfig& config, const StepObserver& observer) {
    validate_config(config);
    return run_flow(config, resolve_datum(config), observer);
}

EulerianSamples resolve_datum(const RunConfig& c) {
    if (c.initial == "const" || c.initial == "cos2" || c.initial == "root5") {
        return preset_datum(c.initial, c.n_cells);
    }
    EulerianSamples s = load_datum(c.initial);
    if (static_cast<int>(s.x.size()) != c.n_cells + 1) {
        throw ConfigError("datum file has " + std::to_string(s.x.size()) +
                          " nodes, config wants n_cells = " + std::to_string(c.n_cells));
    }
    return s;
}

FlowResult run_flow(const RunConfig& config, const EulerianSamples& datum,
                    const StepObserver& observer) {
    validate_config(config);
    if (static_cast<int>(datum.x.size()) != config.n_cells + 1) {
        throw ConfigError("datum resolution does not match n_cells");
    }
    const auto [grid, g0] = build_initial(datum);

    const WassersteinMatrix mw = (config.assembler == AssemblerKind::quadrature)
                                     ? assemble_quadrature(grid)
                                     : assemble_closed_form(grid);
    const EntropyModel model{config.alpha};
    const WeightVector g_inf = steady_state(grid);
    const double s_inf = entropy(model, grid, g_inf);
    const Eigen::VectorXd mass_coeffs = mass_coefficients(grid);
    const int n_steps = step_count(config);

    FlowResult out{grid, g0, 0.0, {}, {}, {}};
    out.series.reserve(static_cast<std::size_t>(n_steps) + 1);
    for (int p = 1; p <= config.particles; ++p) {
        out.trajectories.labels.push_back(grid.total_mass() * p / (config.particles + 1));
    }

    auto emit = [&](int step, const DiagnosticsRecord& rec, const WeightVector& g) {
        out.series.push_back(rec);
        const bool cadence = config.snapshot_every > 0 && step % config.snapshot_every == 0;
        if (step == 0 || step == n_steps || cadence) out.snapshots.emplace_back(step, g);
        if (!out.trajectories.labels.empty()) {
            std::vector<double> pos(out.trajectories.labels.size());
            for (std::size_t i = 0; i < pos.size(); ++i) {
                pos[i] = eval_G(grid, g, out.trajectories.labels[i]);
            }
            out.trajectories.positions.push_back(std::move(pos));
        }
        if (observer) observer(rec, g);
    };

    emit(0, make_record(0, 0.0, model, grid, mw, mass_coeffs, g_inf, s_inf, g0, g0, 0), g0);

    const StepSolver euler(bdf_coefficients(1), config.tau, mw, model, grid, config.newton_tol,
                           config.newton_max_iter);
    std::optional<StepSolver> bdf2;
    if (config.scheme == TimeScheme::bdf2) {
        bdf2.emplace(bdf_coefficients(2), config.tau, mw, model, grid, config.newton_tol,
                     config.newton_max_iter);
    }

    // Most recent states, oldest first; the first bdf2 step falls back to one
    // implicit-Euler step at the same tau to fill the missing history.
    std::vector<WeightVector> history{g0};
    for (int n = 1; n <= n_steps; ++n) {
        StepSolver::Result res;
        if (config.scheme == TimeScheme::bdf2 && n >= 2) {
            res = bdf2->solve(history);
        } else {
            res = euler.solve({history.back()});
        }
        emit(n,
             make_record(n, n * config.tau, model, grid, mw, mass_coeffs, g_inf, s_inf, res.g,
                         history.back(), res.report.iterations),
             res.g);

        if (config.scheme == TimeScheme::bdf2) {
            if (history.size() == 2) history.erase(history.begin());
            history.push_back(res.g);
        } else {
            history[0] = res.g;
        }
        out.lambda_final = res.lambda;
    }
    out.g_final = history.back();
    return out;
}

}  // namespace sfd
