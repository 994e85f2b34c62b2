#pragma once

#include <vector>

#include "sfd/lagrangian.hpp"
#include "sfd/wasserstein.hpp"

namespace sfd {

/// Observables recorded after every accepted time step.
struct DiagnosticsRecord {
    int step = 0;
    double time = 0.0;
    double entropy_rel = 0.0;   // S[g] - S[g_inf]
    double gnorm_sq_rel = 0.0;  // |(g^n - g_inf, g^{n-1} - g_inf)|_G^2
    double var_u = 0.0;
    double var_g = 0.0;
    double mass_error = 0.0;  // |c . g - 1|
    int newton_iterations = 0;
    double min_g = 0.0;
};

/// Constant steady state on the grid: nodal values 1/M, no bumps.
WeightVector steady_state(const LagrangianGrid& grid);

/// Coupled two-state seminorm
///   |(p, q)|_G^2 = (5/2) p^T Mw p - 2 p^T Mw q + (1/2) q^T Mw q,
/// the quadratic form behind G-stability of the two-step scheme. Callers
/// pass the shifted pair p = g^n - g_inf, q = g^{n-1} - g_inf.
double g_norm_sq(const WassersteinMatrix& mw, const WeightVector& p, const WeightVector& q);

/// Discrete spread of the reconstructed density around its mean value M:
/// sqrt(sum_i (u_{i-1} - M)^2 (x_i - x_{i-1})) over the N moving cells,
/// with nodal values at left endpoints. Zero exactly at the steady state.
double variance_u(const LagrangianGrid& grid, const WeightVector& g);

/// Same for g around its mean 1/M, on the fixed mass partition.
double variance_g(const LagrangianGrid& grid, const WeightVector& g);

/// Closed time window [t_a, t_b] for rate fitting.
struct Window {
    double t_a = 0.0;
    double t_b = 0.0;
};

struct DecayFit {
    Window window;          // span of the samples actually used
    double rate = 0.0;      // lambda = -slope of the log(value) vs t fit
    double residual = 0.0;  // RMS misfit of the log-linear model
    double diff_quotient_mid = 0.0;  // one-step quotient -(log v_{m+1} - log v_m)/dt
                                     // nearest the window midpoint
    int samples = 0;
};

/**
 * Least-squares exponential decay rate of a positive series.
 *
 * Fits log(value) = c - rate * t over the samples inside the window. The
 * sign convention makes rate positive for decaying series and zero (to
 * roundoff) for constant ones. Needs at least two samples in the window.
 */
DecayFit fit_decay_rate(const std::vector<double>& times, const std::vector<double>& values,
                        Window window);

/// Default fitting window: drops the first 5% of samples (start-up
/// transient) and everything from the first value below `floor` on
/// (saturation, where discretization error dominates the observable).
Window auto_window(const std::vector<double>& times, const std::vector<double>& values,
                   double floor);

/// Analytic decay rate 2(1 - 2a)/((1 - a) m^(1-a)) of the relative entropy,
/// valid for -1 <= a < 0; m is the L1 mass of the initial datum. Reference
/// line only; the discrete rate is grid dependent.
double theoretical_rate(double alpha, double l1_mass);

}  // namespace sfd
