#pragma once

#include <Eigen/Dense>
#include <string>

#include "sfd/lagrangian.hpp"

namespace sfd {

/// Symmetric positive-semidefinite 2N x 2N matrix of the quadratic form
/// W[u, u*]^2 = (g - g*)^T M_w (g - g*), with entries
/// M_w[i][j] = int int (M - max(w, w')) phi_i(w) phi_j(w') dw dw'.
using WassersteinMatrix = Eigen::MatrixXd;

enum class Assembly { serial, parallel };

/**
 * Assembles M_w by exact Gauss quadrature (the reference route).
 *
 * Same-cell pairs are split along the diagonal w = w' where the kernel's max
 * switches branch; each triangle is integrated by nested 4-point Gauss rules,
 * exact for the resulting degree <= 6 integrands. Distinct-cell pairs
 * factorize into 1D integrals of degree <= 3.
 *
 * The parallel path distributes independent cell-pair blocks over OpenMP
 * threads and scatters them serially in a fixed order, so its result is
 * bit-identical to the serial path for any thread count.
 */
WassersteinMatrix assemble_quadrature(const LagrangianGrid& grid,
                                      Assembly mode = Assembly::parallel);

/// Assembles M_w from closed-form cell-pair primitives (fast path; agrees
/// with assemble_quadrature to roundoff, enforced by tests). Derivation in
/// docs/derive_closed_forms.py.
WassersteinMatrix assemble_closed_form(const LagrangianGrid& grid,
                                       Assembly mode = Assembly::parallel);

/// Quadratic form value (g - g*)^T M_w (g - g*).
double wasserstein_sq(const WassersteinMatrix& mw, const WeightVector& g,
                      const WeightVector& g_star);

/// Row-major full-precision text dump for offline comparison.
void dump_matrix(const WassersteinMatrix& mw, const std::string& path);

}  // namespace sfd
