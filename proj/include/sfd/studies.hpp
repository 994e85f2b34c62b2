#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sfd/oracle.hpp"

namespace sfd {

/// Builds the initial datum for a given resolution. Studies that vary
/// n_cells re-evaluate it per run; an empty factory falls back to the
/// config's `initial` field.
using DatumFactory = std::function<EulerianSamples(int n_cells)>;

/// Offset squared cosine cos(2 pi x)^2 + 0.1, the datum of the convergence
/// protocol. Kept apart from the presets: the larger offset keeps 1/u
/// moderate, so the coarse grids of the study stay in the asymptotic
/// regime.
EulerianSamples convergence_datum(int n_cells);

struct SpatialStudyResult {
    std::vector<int> n_values;
    std::vector<double> err_g;  // max |g - g_ref| at the reference mass nodes
    std::vector<double> err_u;  // max |u - u_ref| on the comparison grid
    double slope_g = 0.0;       // log err vs log N
    double slope_u = 0.0;
    bool degenerate = false;  // all errors at rounding level, slopes meaningless
};

/// Runs `base` at every N in n_values plus the reference config, compares
/// final-time states, and fits the error slopes. Needs at least 3 sizes.
SpatialStudyResult spatial_convergence_study(const RunConfig& base,
                                             const std::vector<int>& n_values,
                                             const RunConfig& reference,
                                             const DatumFactory& datum = {});

struct TemporalStudyResult {
    std::vector<double> tau_values;
    std::vector<double> err;  // sup over sample times of the L2 error in u
    double slope = 0.0;       // log err vs log tau
    bool degenerate = false;
};

/**
 * Time-step refinement at fixed N. Errors are measured against the
 * reference run at the times s * tau_coarse inside (tau_star, t_end], where
 * tau_coarse is the largest entry of tau_values; every tau (including the
 * reference's) must divide tau_coarse so all runs hit those times exactly.
 */
TemporalStudyResult temporal_convergence_study(const RunConfig& base,
                                               const std::vector<double>& tau_values,
                                               double tau_star, const RunConfig& reference,
                                               const DatumFactory& datum = {});

struct DecayRow {
    double parameter = 0.0;  // the swept value: N, alpha, or tau
    DecayFit entropy_fit;
    DecayFit gnorm_fit;
    DecayFit var_u_fit;
    DecayFit var_g_fit;
    double reference_rate = 0.0;  // analytic entropy rate; NaN outside -1 <= alpha < 0
};

struct DecaySweepResult {
    std::string parameter_name;
    std::vector<DecayRow> rows;
};

DecaySweepResult decay_sweep_n(const RunConfig& base, const std::vector<int>& n_values,
                               const DatumFactory& datum = {});
DecaySweepResult decay_sweep_alpha(const RunConfig& base, const std::vector<double>& alphas);
DecaySweepResult decay_sweep_tau(const RunConfig& base, const std::vector<double>& taus);

}  // namespace sfd
