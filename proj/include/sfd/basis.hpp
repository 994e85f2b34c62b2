#pragma once

#include <Eigen/Dense>

#include "sfd/lagrangian.hpp"

namespace sfd {

/**
 * Basis function phi_j at mass coordinate w, j = 1..2N.
 *
 * j in 1..N-1: interior hat at node w_j. j = N: periodic boundary hat,
 * supported on [0, w_1] and [w_{N-1}, M] with value 1 at w = 0 and w = M.
 * j = N+c: bump on cell c, phi(w) = 1 - ((2w - (w_{c-1} + w_c))/delta_c)^2.
 */
double eval_basis(const LagrangianGrid& grid, int j, double w);

/// Coefficients c with c . g = int_0^M g(w) dw for every weight vector:
/// c_j = (delta_j + delta_{j+1})/2 for hats (periodic wrap),
/// c_{N+j} = (2/3) delta_j for bumps.
Eigen::VectorXd mass_coefficients(const LagrangianGrid& grid);

/// int_0^M g(w) dw, exact for the piecewise-quadratic field.
double mass(const LagrangianGrid& grid, const WeightVector& g);

/// 0-based stacked index of the hat acting as the left endpoint of cell c.
inline int left_hat_index(int c, int n_cells) { return c == 1 ? n_cells - 1 : c - 2; }
/// 0-based stacked index of the hat acting as the right endpoint of cell c.
inline int right_hat_index(int c, int /*n_cells*/) { return c - 1; }
/// 0-based stacked index of the bump of cell c.
inline int bump_index(int c, int n_cells) { return n_cells + c - 1; }

}  // namespace sfd
