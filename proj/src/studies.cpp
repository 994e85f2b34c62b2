#include "sfd/studies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sfd {

namespace {

constexpr double kDegenerateError = 1e-10;

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const auto n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += std::log(xs[i]);
        my += std::log(ys[i]);
    }
    mx /= n;
    my /= n;
    double cov = 0.0;
    double var = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = std::log(xs[i]) - mx;
        cov += dx * (std::log(ys[i]) - my);
        var += dx * dx;
    }
    return cov / var;
}

FlowResult run_member(const RunConfig& c, const DatumFactory& datum,
                      const StepObserver& observer = {}) {
    return datum ? run_flow(c, datum(c.n_cells), observer) : run_flow(c, observer);
}

}  // namespace

EulerianSamples convergence_datum(int n_cells) {
    if (n_cells < 4) throw ConfigError("n_cells must be at least 4");
    EulerianSamples s;
    s.x.resize(static_cast<std::size_t>(n_cells) + 1);
    s.u.resize(s.x.size());
    for (int j = 0; j <= n_cells; ++j) {
        s.x[static_cast<std::size_t>(j)] = static_cast<double>(j) / n_cells;
    }
    // fill one half and mirror so point symmetry holds bitwise
    for (int j = 0; j <= n_cells / 2; ++j) {
        const double c = std::cos(2.0 * M_PI * s.x[static_cast<std::size_t>(j)]);
        s.u[static_cast<std::size_t>(j)] = c * c + 0.1;
    }
    for (int j = 0; j < (n_cells + 1) / 2; ++j) {
        s.u[static_cast<std::size_t>(n_cells - j)] = s.u[static_cast<std::size_t>(j)];
    }
    return s;
}

SpatialStudyResult spatial_convergence_study(const RunConfig& base,
                                             const std::vector<int>& n_values,
                                             const RunConfig& reference,
                                             const DatumFactory& datum) {
    if (n_values.size() < 3) throw ConfigError("spatial study needs at least 3 grid sizes");

    const FlowResult ref = run_member(reference, datum);
    const auto xs = comparison_grid();
    const auto u_ref = interpolate_u(reconstruct_eulerian(ref.grid, ref.g_final), xs);

    SpatialStudyResult out;
    out.n_values = n_values;
    for (int n : n_values) {
        RunConfig c = base;
        c.n_cells = n;
        const FlowResult r = run_member(c, datum);

        const double m_min = std::min(r.grid.total_mass(), ref.grid.total_mass());
        double eg = 0.0;
        for (int j = 0; j <= ref.grid.cells(); ++j) {
            const double w = ref.grid.node(j);
            if (w > m_min) break;
            eg = std::max(eg, std::abs(eval_g(r.grid, r.g_final, w) -
                                       eval_g(ref.grid, ref.g_final, w)));
        }
        const auto u_n = interpolate_u(reconstruct_eulerian(r.grid, r.g_final), xs);
        double eu = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            eu = std::max(eu, std::abs(u_n[i] - u_ref[i]));
        }
        out.err_g.push_back(eg);
        out.err_u.push_back(eu);
    }

    const double worst = std::max(*std::max_element(out.err_g.begin(), out.err_g.end()),
                                  *std::max_element(out.err_u.begin(), out.err_u.end()));
    if (worst <= kDegenerateError) {
        out.degenerate = true;
        out.slope_g = out.slope_u = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    std::vector<double> ns(n_values.begin(), n_values.end());
    out.slope_g = loglog_slope(ns, out.err_g);
    out.slope_u = loglog_slope(ns, out.err_u);
    return out;
}

TemporalStudyResult temporal_convergence_study(const RunConfig& base,
                                               const std::vector<double>& tau_values,
                                               double tau_star, const RunConfig& reference,
                                               const DatumFactory& datum) {
    if (tau_values.size() < 3) throw ConfigError("temporal study needs at least 3 step sizes");
    if (!(tau_star >= 0.0) || tau_star >= base.t_end) {
        throw EmptyWindow("tau_star must lie inside the run horizon");
    }

    const double tau_coarse = *std::max_element(tau_values.begin(), tau_values.end());
    const auto stride_of = [&](double tau) {
        const double ratio = tau_coarse / tau;
        const auto s = std::llround(ratio);
        if (s < 1 || std::abs(ratio - static_cast<double>(s)) > 1e-9 * ratio) {
            throw ConfigError("every tau must divide the coarsest tau");
        }
        return s;
    };
    // first common sample index past tau_star (strictly, open interval)
    const auto s_min = static_cast<long long>(std::floor(tau_star / tau_coarse + 1e-9)) + 1;

    const auto xs = comparison_grid();
    const auto sample_run = [&](const RunConfig& c) {
        const long long stride = stride_of(c.tau);
        std::vector<WeightVector> kept;
        const FlowResult r = run_member(c, datum, [&](const DiagnosticsRecord& rec,
                                                      const WeightVector& g) {
            if (rec.step > 0 && rec.step % stride == 0 && rec.step / stride >= s_min) {
                kept.push_back(g);
            }
        });
        std::vector<std::vector<double>> out;
        out.reserve(kept.size());
        for (const auto& g : kept) {
            out.push_back(interpolate_u(reconstruct_eulerian(r.grid, g), xs));
        }
        return out;
    };

    const auto ref_samples = sample_run(reference);
    if (ref_samples.empty()) throw EmptyWindow("no sample times between tau_star and t_end");

    TemporalStudyResult out;
    out.tau_values = tau_values;
    for (double tau : tau_values) {
        RunConfig c = base;
        c.tau = tau;
        const auto samples = sample_run(c);
        if (samples.size() != ref_samples.size()) {
            throw DimensionMismatch("sample cadence mismatch between run and reference");
        }
        double err = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            double sq = 0.0;
            for (std::size_t k = 0; k < xs.size(); ++k) {
                const double d = samples[i][k] - ref_samples[i][k];
                sq += d * d;
            }
            err = std::max(err, std::sqrt(sq / static_cast<double>(xs.size())));
        }
        out.err.push_back(err);
    }

    if (*std::max_element(out.err.begin(), out.err.end()) <= kDegenerateError) {
        out.degenerate = true;
        out.slope = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    out.slope = loglog_slope(out.tau_values, out.err);
    return out;
}

namespace {

DecayRow fit_row(const RunConfig& c, double parameter, const DatumFactory& datum) {
    const FlowResult r = run_member(c, datum);
    std::vector<double> t, se, sg, vu, vg;
    t.reserve(r.series.size());
    for (const auto& rec : r.series) {
        t.push_back(rec.time);
        se.push_back(rec.entropy_rel);
        sg.push_back(rec.gnorm_sq_rel);
        vu.push_back(rec.var_u);
        vg.push_back(rec.var_g);
    }
    // Quadratic observables saturate near solver tolerance; variances are
    // their square roots, hence the sqrt floor.
    const double floor_sq = 1e3 * c.newton_tol;
    const double floor_var = std::sqrt(floor_sq);
    const auto window_of = [&](const std::vector<double>& v, double floor) {
        if (c.fit_window_start && c.fit_window_end) {
            return Window{*c.fit_window_start, *c.fit_window_end};
        }
        return auto_window(t, v, floor);
    };

    DecayRow row;
    row.parameter = parameter;
    row.entropy_fit = fit_decay_rate(t, se, window_of(se, floor_sq));
    row.gnorm_fit = fit_decay_rate(t, sg, window_of(sg, floor_sq));
    row.var_u_fit = fit_decay_rate(t, vu, window_of(vu, floor_var));
    row.var_g_fit = fit_decay_rate(t, vg, window_of(vg, floor_var));
    row.reference_rate = (c.alpha >= -1.0 && c.alpha < 0.0)
                             ? theoretical_rate(c.alpha, r.grid.total_mass())
                             : std::numeric_limits<double>::quiet_NaN();
    return row;
}

}  // namespace

DecaySweepResult decay_sweep_n(const RunConfig& base, const std::vector<int>& n_values,
                               const DatumFactory& datum) {
    DecaySweepResult out;
    out.parameter_name = "n_cells";
    for (int n : n_values) {
        RunConfig c = base;
        c.n_cells = n;
        out.rows.push_back(fit_row(c, static_cast<double>(n), datum));
    }
    return out;
}

DecaySweepResult decay_sweep_alpha(const RunConfig& base, const std::vector<double>& alphas) {
    DecaySweepResult out;
    out.parameter_name = "alpha";
    for (double a : alphas) {
        RunConfig c = base;
        c.alpha = a;
        out.rows.push_back(fit_row(c, a, {}));
    }
    return out;
}

DecaySweepResult decay_sweep_tau(const RunConfig& base, const std::vector<double>& taus) {
    DecaySweepResult out;
    out.parameter_name = "tau";
    for (double tau : taus) {
        RunConfig c = base;
        c.tau = tau;
        out.rows.push_back(fit_row(c, tau, {}));
    }
    return out;
}

}  // namespace sfd
