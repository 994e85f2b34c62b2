#include "sfd/bdf.hpp"

namespace sfd {

BdfScheme bdf_coefficients(int k) {
    switch (k) {
        case 1: return {1, {-1.0, 1.0, 0.0}};
        case 2: return {2, {0.5, -2.0, 1.5}};
        default: throw UnsupportedOrder("only BDF orders 1 and 2 are available");
    }
}

namespace {

void check_history(const BdfScheme& scheme, const std::vector<WeightVector>& history,
                   const WeightVector& g) {
    if (static_cast<int>(history.size()) != scheme.k) {
        throw HistoryLengthMismatch("BDF-" + std::to_string(scheme.k) + " needs exactly " +
                                    std::to_string(scheme.k) + " history states");
    }
    for (const WeightVector& h : history) {
        if (h.cells() != g.cells()) throw DimensionMismatch("history state of wrong size");
    }
}

}  // namespace

double objective(const BdfScheme& scheme, double tau, const WassersteinMatrix& mw,
                 const EntropyModel& model, const LagrangianGrid& grid,
                 const std::vector<WeightVector>& history, const WeightVector& g) {
    check_history(scheme, history, g);
    double movement = 0.0;
    for (int l = 0; l < scheme.k; ++l) {
        movement += scheme.a[l] * wasserstein_sq(mw, g, history[l]);
    }
    return -movement / (2.0 * tau) + entropy(model, grid, g);
}

Eigen::VectorXd objective_gradient(const BdfScheme& scheme, double tau,
                                   const WassersteinMatrix& mw, const EntropyModel& model,
                                   const LagrangianGrid& grid,
                                   const std::vector<WeightVector>& history,
                                   const WeightVector& g) {
    check_history(scheme, history, g);
    const Eigen::VectorXd gs = g.stacked();
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(gs.size());
    for (int l = 0; l < scheme.k; ++l) {
        acc += scheme.a[l] * (gs - history[l].stacked());
    }
    return -(mw * acc) / tau + entropy_gradient(model, grid, g);
}

Eigen::MatrixXd objective_hessian(const BdfScheme& scheme, double tau,
                                  const WassersteinMatrix& mw, const EntropyModel& model,
                                  const LagrangianGrid& grid,
                                  const std::vector<WeightVector>& history,
                                  const WeightVector& g) {
    check_history(scheme, history, g);
    return (scheme.a[scheme.k] / tau) * mw + entropy_hessian(model, grid, g);
}

}  // namespace sfd
