#include "sfd/entropy.hpp"

#include <cmath>
#include <limits>

#include "sfd/basis.hpp"
#include "sfd/gauss.hpp"

namespace sfd {

namespace {

void require_positive(const EntropyModel& model, const LagrangianGrid& grid,
                      const WeightVector& g) {
    if (!(min_g(grid, g) > 0.0)) {
        throw NonPositiveG("entropy with alpha = " + std::to_string(model.alpha) +
                           " needs a positive density");
    }
}

void require_valid(const EntropyModel& model) {
    if (!(model.alpha < 0.0)) throw OutOfValidityRange("entropy exponent must satisfy alpha < 0");
}

// Local weights of cell j: endpoint values a, b and bump amplitude q, so
// g(s) = a(1-s) + b s + 4 q s(1-s) on the unit cell.
struct Local {
    double a, b, q;
    double operator()(double s) const { return a * (1.0 - s) + b * s + 4.0 * q * s * (1.0 - s); }
};

// Shape factors multiplying a, b, q in the local field.
double local_shape(int f, double s) {
    switch (f) {
        case 0: return 1.0 - s;
        case 1: return s;
        default: return 4.0 * s * (1.0 - s);
    }
}

bool near_integer(double v) { return std::abs(v - std::llround(v)) < 1e-12; }

/// Gauss points making every integrand below exact: value g^{1-alpha} and
/// Hessian g^{-1-alpha} phi phi both have degree 2(1-alpha).
bool exact_rule(double alpha, gauss::Rule& out) {
    if (!near_integer(alpha)) return false;
    const long long m = std::llround(1.0 - alpha);
    if (m + 1 > 12) return false;
    const std::size_t pts = static_cast<std::size_t>(m) + 1;
    out = gauss::rule(pts <= 4 ? 4 : (pts <= 8 ? 8 : 12));
    return true;
}

template <typename F>
double integrate_cell(double alpha, F&& f) {
    gauss::Rule r{};
    if (exact_rule(alpha, r)) {
        double acc = 0.0;
        for (std::size_t q = 0; q < r.nodes.size(); ++q) acc += r.weights[q] * f(r.nodes[q]);
        return acc;
    }
    // Fractional exponent: composite 8- and 12-point rules, accepted once
    // they agree, bisected otherwise. Cells where g spans a large ratio put
    // the branch point of g^p close enough to the interval that one fixed
    // rule is not sufficient; one or two bisections restore agreement.
    const auto r8 = gauss::rule(8);
    const auto r12 = gauss::rule(12);
    for (int level = 0; level <= 6; ++level) {
        const int parts = 1 << level;
        const double w = 1.0 / parts;
        double v8 = 0.0, v12 = 0.0;
        for (int p = 0; p < parts; ++p) {
            const double s0 = p * w;
            for (std::size_t q = 0; q < r8.nodes.size(); ++q) {
                v8 += w * r8.weights[q] * f(s0 + w * r8.nodes[q]);
            }
            for (std::size_t q = 0; q < r12.nodes.size(); ++q) {
                v12 += w * r12.weights[q] * f(s0 + w * r12.nodes[q]);
            }
        }
        // NaN (fractional power of a sign-violating iterate) passes through
        // for the solver to handle; agreement only judges finite values.
        if (!std::isfinite(v8) || !std::isfinite(v12)) {
            return std::numeric_limits<double>::quiet_NaN();
        }
        if (std::abs(v12 - v8) <= 1e-10 * (1.0 + std::abs(v12))) return v12;
    }
    throw QuadratureSelfCheckFailure("entropy quadrature did not converge on a cell");
}

Local local_of(const WeightVector& g, int j) {
    return {g.left_value(j), g.right_value(j), g.bump(j)};
}

}  // namespace

double entropy(const EntropyModel& model, const LagrangianGrid& grid, const WeightVector& g) {
    require_valid(model);
    require_positive(model, grid, g);
    const double alpha = model.alpha;
    double acc = 0.0;
    if (alpha == -1.0) {
        // 1/2 int g^2 with the exact per-cell polynomial.
        for (int j = 1; j <= grid.cells(); ++j) {
            const Local l = local_of(g, j);
            acc += grid.width(j) *
                   ((l.a * l.a + l.a * l.b + l.b * l.b) / 6.0 +
                    l.q * (l.a + l.b) / 3.0 + 4.0 / 15.0 * l.q * l.q);
        }
        return acc;
    }
    const double scale = 1.0 / (alpha * (alpha - 1.0));
    for (int j = 1; j <= grid.cells(); ++j) {
        const Local l = local_of(g, j);
        acc += grid.width(j) *
               integrate_cell(alpha, [&](double s) { return std::pow(l(s), 1.0 - alpha); });
    }
    return scale * acc;
}

Eigen::VectorXd entropy_gradient(const EntropyModel& model, const LagrangianGrid& grid,
                                 const WeightVector& g) {
    require_positive(model, grid, g);
    return entropy_gradient_unchecked(model, grid, g);
}

Eigen::VectorXd entropy_gradient_unchecked(const EntropyModel& model, const LagrangianGrid& grid,
                                           const WeightVector& g) {
    require_valid(model);
    const int n = grid.cells();
    const double alpha = model.alpha;
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(2 * n);

    for (int j = 1; j <= n; ++j) {
        const Local l = local_of(g, j);
        const double h = grid.width(j);
        const int idx[3] = {left_hat_index(j, n), right_hat_index(j, n), bump_index(j, n)};
        double d[3];
        if (alpha == -1.0) {
            d[0] = h * (l.a / 3.0 + l.b / 6.0 + l.q / 3.0);
            d[1] = h * (l.a / 6.0 + l.b / 3.0 + l.q / 3.0);
            d[2] = h * ((l.a + l.b) / 3.0 + 8.0 / 15.0 * l.q);
        } else {
            // d/dg_i = -(1/alpha) int g^{-alpha} phi_i.
            for (int f = 0; f < 3; ++f) {
                d[f] = -h / alpha * integrate_cell(alpha, [&](double s) {
                           return std::pow(l(s), -alpha) * local_shape(f, s);
                       });
            }
        }
        for (int f = 0; f < 3; ++f) grad[idx[f]] += d[f];
    }
    return grad;
}

Eigen::MatrixXd entropy_hessian(const EntropyModel& model, const LagrangianGrid& grid,
                                const WeightVector& g) {
    if (model.alpha != -1.0) require_positive(model, grid, g);
    return entropy_hessian_unchecked(model, grid, g);
}

Eigen::MatrixXd entropy_hessian_unchecked(const EntropyModel& model, const LagrangianGrid& grid,
                                          const WeightVector& g) {
    require_valid(model);
    const int n = grid.cells();
    const double alpha = model.alpha;

    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int j = 1; j <= n; ++j) {
        const double h = grid.width(j);
        const int idx[3] = {left_hat_index(j, n), right_hat_index(j, n), bump_index(j, n)};
        double blk[3][3];
        if (alpha == -1.0) {
            blk[0][0] = blk[1][1] = h / 3.0;
            blk[0][1] = blk[1][0] = h / 6.0;
            blk[0][2] = blk[2][0] = blk[1][2] = blk[2][1] = h / 3.0;
            blk[2][2] = 8.0 / 15.0 * h;
        } else {
            // d2/dg_i dg_j = int g^{-1-alpha} phi_i phi_j.
            const Local l = local_of(g, j);
            for (int f = 0; f < 3; ++f) {
                for (int e = f; e < 3; ++e) {
                    blk[f][e] = blk[e][f] = h * integrate_cell(alpha, [&](double s) {
                        return std::pow(l(s), -1.0 - alpha) * local_shape(f, s) *
                               local_shape(e, s);
                    });
                }
            }
        }
        for (int f = 0; f < 3; ++f) {
            for (int e = 0; e < 3; ++e) hess(idx[f], idx[e]) += blk[f][e];
        }
    }
    return hess;
}

}  // namespace sfd
