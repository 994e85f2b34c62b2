#pragma once

#include <functional>
#include <vector>

#include "sfd/flow.hpp"

namespace sfd {

/**
 * Squared Wasserstein distance between two sampled densities, computed the
 * slow direct way: piecewise-linear CDFs tabulated on a `resolution`-point
 * uniform x-grid, inverted monotonically, and int (G1 - G2)^2 dw taken by
 * the composite midpoint rule with `resolution` mass points. Converges at
 * second order in the resolution. Reference for the FE quadratic form.
 */
double wasserstein_bruteforce(const EulerianSamples& u1, const EulerianSamples& u2,
                              int resolution);

/// Central-difference gradient of a functional of the stacked weights.
Eigen::VectorXd finite_difference_gradient(const std::function<double(const WeightVector&)>& f,
                                           const WeightVector& g, double h);

/// Central-difference Hessian (four-point stencil per entry), symmetric by
/// construction.
Eigen::MatrixXd finite_difference_hessian(const std::function<double(const WeightVector&)>& f,
                                          const WeightVector& g, double h);

/// The exact FE density as Eulerian samples: the parametric curve
/// (G(w), 1/g(w)) traced with `per_cell` points per cell. Feeds the
/// brute-force distance the same density the weight vector represents.
EulerianSamples sample_fe_density(const LagrangianGrid& grid, const WeightVector& g,
                                  int per_cell);

/// Final-time state of a fine-resolution run, for convergence studies.
struct ReferenceFlow {
    LagrangianGrid grid;
    WeightVector g;
    EulerianSamples reconstruction;
};

ReferenceFlow reference_flow(const RunConfig& config);

/// Fixed uniform torus grid x_i = i/points, i = 0..points-1, on which
/// solutions from different moving meshes are compared.
std::vector<double> comparison_grid(int points = 1000);

/// Piecewise-linear interpolation of (x_j, u_j) onto query points; constant
/// beyond the sample range (the range ends within mass error of x = 1, and
/// the end values agree by periodicity).
std::vector<double> interpolate_u(const EulerianSamples& s, const std::vector<double>& x);

}  // namespace sfd
