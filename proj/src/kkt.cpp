#include "sfd/kkt.hpp"

#include <cmath>
#include <limits>

#include "sfd/basis.hpp"

namespace sfd {

KktSystem kkt_assemble(const BdfScheme& scheme, double tau, const WassersteinMatrix& mw,
                       const EntropyModel& model, const LagrangianGrid& grid,
                       const std::vector<WeightVector>& history, const WeightVector& g,
                       double lambda) {
    const int dim = 2 * grid.cells();
    if (mw.rows() != dim) throw DimensionMismatch("matrix does not match the grid");
    const Eigen::VectorXd c = mass_coefficients(grid);

    KktSystem sys;
    sys.h = Eigen::MatrixXd::Zero(dim + 1, dim + 1);
    sys.h.topLeftCorner(dim, dim) = objective_hessian(scheme, tau, mw, model, grid, history, g);
    sys.h.topRightCorner(dim, 1) = c;
    sys.h.bottomLeftCorner(1, dim) = c.transpose();

    sys.rhs.resize(dim + 1);
    sys.rhs.head(dim) =
        -(objective_gradient(scheme, tau, mw, model, grid, history, g) + lambda * c);
    sys.rhs[dim] = 1.0 - c.dot(g.stacked());
    return sys;
}

StepSolver::StepSolver(BdfScheme scheme, double tau, const WassersteinMatrix& mw,
                       EntropyModel model, const LagrangianGrid& grid, double tol, int max_iter)
    : scheme_(scheme),
      tau_(tau),
      mw_(mw),
      model_(model),
      grid_(grid),
      tol_(tol),
      max_iter_(max_iter),
      mass_coeffs_(mass_coefficients(grid)) {
    if (model_.alpha == -1.0) {
        // Quadratic entropy: grad S = (Hess S) g with a constant Hessian, and
        // Hess Psi never changes, so factorize the KKT matrix once for the
        // whole run.
        const int dim = 2 * grid_.cells();
        entropy_hess_ =
            entropy_hessian(model_, grid_, WeightVector::constant(grid_.cells(), 1.0));
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim + 1, dim + 1);
        h.topLeftCorner(dim, dim) = (scheme_.a[scheme_.k] / tau_) * mw_ + entropy_hess_;
        h.topRightCorner(dim, 1) = mass_coeffs_;
        h.bottomLeftCorner(1, dim) = mass_coeffs_.transpose();
        cached_ = std::make_unique<SymmetricIndefiniteSolver>(h);
    }
}

StepSolver::Result StepSolver::solve(const std::vector<WeightVector>& history) const {
    if (static_cast<int>(history.size()) != scheme_.k) {
        throw HistoryLengthMismatch("solver needs exactly k history states");
    }
    const int dim = 2 * grid_.cells();
    const bool quadratic = (model_.alpha == -1.0);

    Result res;
    res.g = history.back();
    res.lambda = 0.0;
    double rel_update = std::numeric_limits<double>::infinity();

    for (int iter = 0; iter <= max_iter_; ++iter) {
        // grad Psi = -(1/tau) Mw sum_l a_l (g - g^l) + grad S. Iterates are
        // unconstrained in sign, so the entropy derivatives take the
        // unchecked path; positivity is judged on the accepted state only.
        Eigen::VectorXd movement = Eigen::VectorXd::Zero(dim);
        for (int l = 0; l < scheme_.k; ++l) {
            movement += scheme_.a[l] * (res.g.stacked() - history[l].stacked());
        }
        const Eigen::VectorXd grad_s =
            quadratic ? Eigen::VectorXd(entropy_hess_ * res.g.stacked())
                      : entropy_gradient_unchecked(model_, grid_, res.g);
        Eigen::VectorXd residual(dim + 1);
        residual.head(dim) = -(mw_ * movement) / tau_ + grad_s + res.lambda * mass_coeffs_;
        residual[dim] = mass_coeffs_.dot(res.g.stacked()) - 1.0;
        const double grad_norm = residual.norm();

        if (grad_norm <= tol_ && rel_update <= tol_) {
            res.report.iterations = iter;
            res.report.grad_norm = grad_norm;
            res.report.rel_update = rel_update;
            res.report.converged = true;
            if (!(min_g(grid_, res.g) > 0.0)) {
                throw PositivityLoss("accepted step is not a positive density");
            }
            return res;
        }
        if (iter == max_iter_) break;

        Eigen::VectorXd delta;
        if (quadratic) {
            delta = cached_->solve(-residual);
        } else {
            Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim + 1, dim + 1);
            h.topLeftCorner(dim, dim) = (scheme_.a[scheme_.k] / tau_) * mw_ +
                                        entropy_hessian_unchecked(model_, grid_, res.g);
            h.topRightCorner(dim, 1) = mass_coeffs_;
            h.bottomLeftCorner(1, dim) = mass_coeffs_.transpose();
            delta = SymmetricIndefiniteSolver(h).solve(-residual);
        }

        const Eigen::VectorXd g_new = res.g.stacked() + delta.head(dim);
        rel_update = delta.head(dim).lpNorm<Eigen::Infinity>() /
                     std::max(1.0, g_new.lpNorm<Eigen::Infinity>());
        res.g = WeightVector::from_stacked(g_new);
        res.lambda += delta[dim];
    }
    throw NoConvergence("Newton iteration did not reach tolerance " + std::to_string(tol_) +
                        " within " + std::to_string(max_iter_) + " iterations");
}

StepSolver::Result solve_step(const BdfScheme& scheme, double tau, const WassersteinMatrix& mw,
                              const EntropyModel& model, const LagrangianGrid& grid,
                              const std::vector<WeightVector>& history, double tol,
                              int max_iter) {
    return StepSolver(scheme, tau, mw, model, grid, tol, max_iter).solve(history);
}

}  // namespace sfd
