#pragma once

#include <string>
#include <vector>

#include "sfd/flow.hpp"
#include "sfd/studies.hpp"

namespace sfd {

/// One row per step: step,time,entropy_rel,gnorm_sq_rel,var_u,var_g,
/// mass_error,newton_iterations,min_g. Full decimal precision, no locale.
void write_series_csv(const std::string& path, const std::vector<DiagnosticsRecord>& series);
std::vector<DiagnosticsRecord> read_series_csv(const std::string& path);

/// Nodal state: j,omega_j,g_lin_j,g_quad_j,x_j,u_j for j = 0..N. Row 0
/// repeats the periodic nodal value g_N and pads the bump column with 0
/// (bumps belong to cells, the first of which is row 1).
void write_snapshot_csv(const std::string& path, const LagrangianGrid& grid,
                        const WeightVector& g);

/// step,time,x_1..x_P; one row per recorded step.
void write_trajectories_csv(const std::string& path, const TrajectorySet& trajectories,
                            double tau);

/// Two-column whitespace-separated text, one (x, y) pair per line.
void write_xy(const std::string& path, const std::vector<double>& xs,
              const std::vector<double>& ys);

/**
 * Re-validates a recorded series against the per-step invariants: row and
 * time bookkeeping, the entropy lower bound, the G-norm rounding floor, the
 * mass drift budget (10x solver tolerance), positivity, and scheme-specific
 * monotone dissipation until saturation (entropy for euler, squared G-norm
 * for bdf2). Returns human-readable violations; empty means pass.
 */
std::vector<std::string> check_series(const RunConfig& config,
                                      const std::vector<DiagnosticsRecord>& series);

/// Decay-rate fits, extrema, and bookkeeping of a finished run.
std::string render_run_summary(const RunConfig& config, const FlowResult& result);

std::string render_spatial_summary(const SpatialStudyResult& r);
std::string render_temporal_summary(const TemporalStudyResult& r, double tau_star);
std::string render_decay_summary(const DecaySweepResult& r);

}  // namespace sfd
