#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "sfd/entropy.hpp"
#include "sfd/wasserstein.hpp"

namespace sfd {

/// Backward differentiation formula sum_{i=0}^{k} a_i x^{n+i} = tau * f^{n+k},
/// consistent: sum a_i = 0 and sum i*a_i = 1.
struct BdfScheme {
    int k;
    std::array<double, 3> a;  // a[0..k]
};

/// k = 1: (-1, 1), the implicit Euler / plain minimizing-movement step.
/// k = 2: (1/2, -2, 3/2). Other orders are not shipped.
BdfScheme bdf_coefficients(int k);

/**
 * Per-step variational objective
 *
 *   Psi(g) = -(1/2 tau) sum_{l=0}^{k-1} a_l (g - g^{n+l})^T M_w (g - g^{n+l})
 *            + S_N[g],
 *
 * whose constrained minimizer is the next state g^{n+k}. history holds the
 * last k states, oldest first. The Hessian (a_k / tau) M_w + Hess S_N is
 * positive semidefinite, so the objective is convex.
 */
double objective(const BdfScheme& scheme, double tau, const WassersteinMatrix& mw,
                 const EntropyModel& model, const LagrangianGrid& grid,
                 const std::vector<WeightVector>& history, const WeightVector& g);

Eigen::VectorXd objective_gradient(const BdfScheme& scheme, double tau,
                                   const WassersteinMatrix& mw, const EntropyModel& model,
                                   const LagrangianGrid& grid,
                                   const std::vector<WeightVector>& history,
                                   const WeightVector& g);

Eigen::MatrixXd objective_hessian(const BdfScheme& scheme, double tau,
                                  const WassersteinMatrix& mw, const EntropyModel& model,
                                  const LagrangianGrid& grid,
                                  const std::vector<WeightVector>& history,
                                  const WeightVector& g);

}  // namespace sfd
