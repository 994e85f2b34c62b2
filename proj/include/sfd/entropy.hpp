#pragma once

#include <Eigen/Dense>

#include "sfd/lagrangian.hpp"

namespace sfd {

/**
 * Discrete entropy S_N[g] = (alpha(alpha-1))^{-1} sum_cells int g^{1-alpha} dw
 * for diffusion exponent alpha < 0.
 *
 * alpha = -1 ( S_N = 1/2 int g^2 ) evaluates through exact per-cell
 * polynomials with a constant Hessian. Other exponents integrate by Gauss
 * rules: exact ones when 1-alpha is a small integer, otherwise an 8-point
 * rule whose value is self-checked against a 12-point rule.
 */
struct EntropyModel {
    double alpha;
};

double entropy(const EntropyModel& model, const LagrangianGrid& grid, const WeightVector& g);

/// Gradient with respect to the stacked weights, length 2N.
Eigen::VectorXd entropy_gradient(const EntropyModel& model, const LagrangianGrid& grid,
                                 const WeightVector& g);

/// Symmetric positive-semidefinite Hessian, 2N x 2N. Constant for alpha = -1.
Eigen::MatrixXd entropy_hessian(const EntropyModel& model, const LagrangianGrid& grid,
                                const WeightVector& g);

/// Variants without the positivity precondition, for the Newton iteration,
/// whose iterates are unconstrained in sign. Integer exponents evaluate the
/// polynomial formulas on any state; fractional exponents produce NaN
/// entries on sign-violating states, which the solver reports as
/// NoConvergence instead of aborting mid-iteration.
Eigen::VectorXd entropy_gradient_unchecked(const EntropyModel& model, const LagrangianGrid& grid,
                                           const WeightVector& g);
Eigen::MatrixXd entropy_hessian_unchecked(const EntropyModel& model, const LagrangianGrid& grid,
                                          const WeightVector& g);

}  // namespace sfd
