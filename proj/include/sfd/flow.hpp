#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sfd/diagnostics.hpp"
#include "sfd/kkt.hpp"

namespace sfd {

enum class TimeScheme { euler, bdf2 };
enum class AssemblerKind { quadrature, closed_form };

TimeScheme parse_scheme(const std::string& name);
AssemblerKind parse_assembler(const std::string& name);
std::string to_string(TimeScheme s);
std::string to_string(AssemblerKind a);

/**
 * One flow run. `initial` is a preset name (const, cos2, root5) or a path
 * to a two-column (x, u) file. `t_end` must be an integer multiple of
 * `tau`; `n_cells` must be at least 4, and the datum must be point
 * symmetric so the symmetry carries over to the mass partition.
 */
struct RunConfig {
    double alpha = -1.0;
    int n_cells = 100;
    double tau = 1e-5;
    double t_end = 0.02;
    TimeScheme scheme = TimeScheme::bdf2;
    double newton_tol = 1e-8;
    int newton_max_iter = 50;
    std::string initial = "cos2";
    int snapshot_every = 0;  // 0 keeps only the first and last snapshot
    int particles = 0;       // 0 = no trajectory tracing
    AssemblerKind assembler = AssemblerKind::quadrature;
    std::optional<double> fit_window_start;
    std::optional<double> fit_window_end;
};

/// Throws a ConfigError subtype on any invariant violation.
void validate_config(const RunConfig& config);

/// Steps implied by (tau, t_end); validate_config guarantees an integer count.
int step_count(const RunConfig& config);

struct FlowResult {
    LagrangianGrid grid;
    WeightVector g_final;
    double lambda_final = 0.0;
    std::vector<DiagnosticsRecord> series;                // one row per step, step 0 first
    std::vector<std::pair<int, WeightVector>> snapshots;  // step 0, cadence hits, final step
    TrajectorySet trajectories;                           // labels p*M/(P+1), p = 1..P
};

/// Called after every accepted step (and once for the initial state).
using StepObserver = std::function<void(const DiagnosticsRecord&, const WeightVector&)>;

/**
 * Runs the minimizing-movement flow for the configured scheme.
 *
 * bdf2 bootstraps its missing history with one implicit-Euler step at the
 * same tau. Solver failures propagate as exceptions; the observer has seen
 * every accepted step by then, so callers can flush partial artifacts.
 */
FlowResult run_flow(const RunConfig& config, const StepObserver& observer = {});

/// Same flow on an explicitly supplied datum (its resolution must match
/// config.n_cells); config.initial is ignored.
FlowResult run_flow(const RunConfig& config, const EulerianSamples& datum,
                    const StepObserver& observer = {});

/// The samples config.initial names: a preset or a loaded (x, u) file.
EulerianSamples resolve_datum(const RunConfig& config);

}  // namespace sfd
