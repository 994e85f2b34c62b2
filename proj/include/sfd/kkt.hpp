#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "sfd/bdf.hpp"
#include "sfd/linalg.hpp"

namespace sfd {

/// Newton solve outcome for one time step.
struct NewtonReport {
    int iterations = 0;
    double grad_norm = 0.0;   // final l2 norm of the KKT residual G
    double rel_update = 0.0;  // final relative l-inf update in g
    bool converged = false;
};

/// Saddle-point system H (dg, dl)^T = rhs with H = [[Hess Psi, c], [c^T, 0]]
/// and rhs = -G, G = (grad Psi + lambda c, c.g - 1).
struct KktSystem {
    Eigen::MatrixXd h;
    Eigen::VectorXd rhs;
};

KktSystem kkt_assemble(const BdfScheme& scheme, double tau, const WassersteinMatrix& mw,
                       const EntropyModel& model, const LagrangianGrid& grid,
                       const std::vector<WeightVector>& history, const WeightVector& g,
                       double lambda);

/**
 * Newton iteration on the KKT conditions of min Psi(g) s.t. int g = 1.
 *
 * Warm start: g = most recent history state, lambda = 0. Stops once both the
 * l2 norm of the KKT residual and the relative l-inf update in g (denominator
 * max(1, |g|_inf)) fall below tol; the mass constraint row is linear, so
 * feasibility is restored to roundoff by the first update. For alpha = -1
 * the objective is quadratic and the KKT matrix constant: one instance
 * factorizes it once and every step converges in at most two iterations.
 */
class StepSolver {
public:
    StepSolver(BdfScheme scheme, double tau, const WassersteinMatrix& mw, EntropyModel model,
               const LagrangianGrid& grid, double tol, int max_iter);

    struct Result {
        WeightVector g;
        double lambda = 0.0;
        NewtonReport report;
    };

    Result solve(const std::vector<WeightVector>& history) const;

private:
    BdfScheme scheme_;
    double tau_;
    const WassersteinMatrix& mw_;
    EntropyModel model_;
    const LagrangianGrid& grid_;
    double tol_;
    int max_iter_;
    Eigen::VectorXd mass_coeffs_;
    Eigen::MatrixXd entropy_hess_;                        // alpha = -1 only
    std::unique_ptr<SymmetricIndefiniteSolver> cached_;  // alpha = -1 only
};

/// One-shot convenience wrapper around StepSolver.
StepSolver::Result solve_step(const BdfScheme& scheme, double tau, const WassersteinMatrix& mw,
                              const EntropyModel& model, const LagrangianGrid& grid,
                              const std::vector<WeightVector>& history, double tol,
                              int max_iter);

}  // namespace sfd
