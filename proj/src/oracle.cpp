#include "sfd/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace sfd {

namespace {

void check_density_samples(const EulerianSamples& s) {
    if (s.x.size() != s.u.size() || s.x.size() < 2) {
        throw DimensionMismatch("density needs matching x/u samples, at least two");
    }
    for (std::size_t j = 0; j + 1 < s.x.size(); ++j) {
        if (!(s.x[j] < s.x[j + 1])) throw Error("sample positions must increase");
    }
    for (double v : s.u) {
        if (!(v > 0.0)) throw NonPositiveDensity("brute-force distance needs positive samples");
    }
}

// Piecewise-linear interpolant of (x_j, u_j) tabulated on the uniform grid
// k/res, k = 0..res; constant beyond the sample range.
std::vector<double> densify(const EulerianSamples& s, int res) {
    std::vector<double> out(static_cast<std::size_t>(res) + 1);
    std::size_t j = 0;
    for (int k = 0; k <= res; ++k) {
        const double x = static_cast<double>(k) / res;
        if (x <= s.x.front()) {
            out[static_cast<std::size_t>(k)] = s.u.front();
            continue;
        }
        if (x >= s.x.back()) {
            out[static_cast<std::size_t>(k)] = s.u.back();
            continue;
        }
        while (s.x[j + 1] < x) ++j;
        const double t = (x - s.x[j]) / (s.x[j + 1] - s.x[j]);
        out[static_cast<std::size_t>(k)] = s.u[j] + t * (s.u[j + 1] - s.u[j]);
    }
    return out;
}

std::vector<double> trapezoid_cdf(const std::vector<double>& u, int res) {
    std::vector<double> f(u.size());
    f[0] = 0.0;
    const double dx = 1.0 / res;
    for (std::size_t k = 1; k < u.size(); ++k) {
        f[k] = f[k - 1] + 0.5 * (u[k - 1] + u[k]) * dx;
    }
    return f;
}

// x with F(x) = w, given F[k] <= w and k maximal; linear within the fine cell.
double invert_at(const std::vector<double>& f, std::size_t k, double w, int res) {
    const double df = f[k + 1] - f[k];
    const double x = static_cast<double>(k) / res;
    if (!(df > 0.0)) return x;
    return x + (w - f[k]) / df / res;
}

}  // namespace

double wasserstein_bruteforce(const EulerianSamples& u1, const EulerianSamples& u2,
                              int resolution) {
    if (resolution < 2) throw Error("resolution must be at least 2");
    check_density_samples(u1);
    check_density_samples(u2);

    const auto f1 = trapezoid_cdf(densify(u1, resolution), resolution);
    const auto f2 = trapezoid_cdf(densify(u2, resolution), resolution);
    const double m1 = f1.back();
    const double m2 = f2.back();
    if (std::abs(m1 - m2) > 1e-10) {
        throw MassMismatch("masses differ by " + std::to_string(std::abs(m1 - m2)));
    }
    const double mass = 0.5 * (m1 + m2);
    const double dm = mass / resolution;

    std::size_t k1 = 0;
    std::size_t k2 = 0;
    const auto top = static_cast<std::size_t>(resolution) - 1;
    double acc = 0.0;
    for (int m = 0; m < resolution; ++m) {
        const double w = (m + 0.5) * dm;
        while (k1 < top && f1[k1 + 1] < w) ++k1;
        while (k2 < top && f2[k2 + 1] < w) ++k2;
        const double d = invert_at(f1, k1, w, resolution) - invert_at(f2, k2, w, resolution);
        acc += d * d;
    }
    return acc * dm;
}

Eigen::VectorXd finite_difference_gradient(const std::function<double(const WeightVector&)>& f,
                                           const WeightVector& g, double h) {
    const Eigen::VectorXd base = g.stacked();
    Eigen::VectorXd out(base.size());
    for (Eigen::Index i = 0; i < base.size(); ++i) {
        Eigen::VectorXd v = base;
        v[i] = base[i] + h;
        const double fp = f(WeightVector::from_stacked(v));
        v[i] = base[i] - h;
        const double fm = f(WeightVector::from_stacked(v));
        out[i] = (fp - fm) / (2.0 * h);
    }
    return out;
}

Eigen::MatrixXd finite_difference_hessian(const std::function<double(const WeightVector&)>& f,
                                          const WeightVector& g, double h) {
    const Eigen::VectorXd base = g.stacked();
    const Eigen::Index n = base.size();
    const double f0 = f(g);
    Eigen::MatrixXd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            Eigen::VectorXd v = base;
            double val;
            if (i == j) {
                v[i] = base[i] + 2.0 * h;
                const double fp = f(WeightVector::from_stacked(v));
                v[i] = base[i] - 2.0 * h;
                const double fm = f(WeightVector::from_stacked(v));
                val = (fp - 2.0 * f0 + fm) / (4.0 * h * h);
            } else {
                v[i] = base[i] + h;
                v[j] = base[j] + h;
                const double fpp = f(WeightVector::from_stacked(v));
                v[j] = base[j] - h;
                const double fpm = f(WeightVector::from_stacked(v));
                v[i] = base[i] - h;
                v[j] = base[j] + h;
                const double fmp = f(WeightVector::from_stacked(v));
                v[j] = base[j] - h;
                const double fmm = f(WeightVector::from_stacked(v));
                val = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
            }
            out(i, j) = val;
            out(j, i) = val;
        }
    }
    return out;
}

EulerianSamples sample_fe_density(const LagrangianGrid& grid, const WeightVector& g,
                                  int per_cell) {
    if (per_cell < 1) throw Error("per_cell must be positive");
    if (!(min_g(grid, g) > 0.0)) throw NonPositiveG("cannot sample a non-positive density");

    EulerianSamples s;
    s.x.reserve(static_cast<std::size_t>(grid.cells()) * per_cell + 1);
    s.u.reserve(s.x.capacity());
    s.x.push_back(0.0);
    s.u.push_back(1.0 / g.left_value(1));

    double x_left = 0.0;  // G at the left edge of the current cell
    for (int j = 1; j <= grid.cells(); ++j) {
        const double a = g.left_value(j);
        const double b = g.right_value(j);
        const double q = g.bump(j);
        const double h = grid.width(j);
        for (int i = 1; i <= per_cell; ++i) {
            const double t = static_cast<double>(i) / per_cell;
            // local antiderivative of a(1-t) + b t + 4 q t(1-t)
            const double cum =
                a * (t - 0.5 * t * t) + 0.5 * b * t * t + 4.0 * q * (0.5 * t * t - t * t * t / 3.0);
            s.x.push_back(x_left + h * cum);
            s.u.push_back(1.0 / (a * (1.0 - t) + b * t + 4.0 * q * t * (1.0 - t)));
        }
        x_left = s.x.back();
    }
    return s;
}

ReferenceFlow reference_flow(const RunConfig& config) {
    FlowResult r = run_flow(config);
    EulerianSamples recon = reconstruct_eulerian(r.grid, r.g_final);
    return {r.grid, r.g_final, std::move(recon)};
}

std::vector<double> comparison_grid(int points) {
    if (points < 2) throw Error("comparison grid needs at least 2 points");
    std::vector<double> x(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) x[static_cast<std::size_t>(i)] = static_cast<double>(i) / points;
    return x;
}

std::vector<double> interpolate_u(const EulerianSamples& s, const std::vector<double>& x) {
    if (s.x.size() != s.u.size() || s.x.size() < 2) {
        throw DimensionMismatch("interpolation needs matching x/u samples");
    }
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = x[i];
        if (xi <= s.x.front()) {
            out[i] = s.u.front();
        } else if (xi >= s.x.back()) {
            out[i] = s.u.back();
        } else {
            const auto it = std::upper_bound(s.x.begin(), s.x.end(), xi);
            const auto j = static_cast<std::size_t>(it - s.x.begin()) - 1;
            const double t = (xi - s.x[j]) / (s.x[j + 1] - s.x[j]);
            out[i] = s.u[j] + t * (s.u[j + 1] - s.u[j]);
        }
    }
    return out;
}

}  // namespace sfd
