#include "sfd/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace sfd {

WeightVector steady_state(const LagrangianGrid& grid) {
    return WeightVector::constant(grid.cells(), 1.0 / grid.total_mass());
}

double g_norm_sq(const WassersteinMatrix& mw, const WeightVector& p, const WeightVector& q) {
    const Eigen::VectorXd sp = p.stacked();
    const Eigen::VectorXd sq = q.stacked();
    if (mw.rows() != sp.size() || sp.size() != sq.size()) {
        throw DimensionMismatch("g_norm_sq arguments do not match the matrix");
    }
    const Eigen::VectorXd mp = mw * sp;
    const Eigen::VectorXd mq = mw * sq;
    return 2.5 * sp.dot(mp) - 2.0 * sp.dot(mq) + 0.5 * sq.dot(mq);
}

double variance_u(const LagrangianGrid& grid, const WeightVector& g) {
    if (!(min_g(grid, g) > 0.0)) throw NonPositiveG("variance needs a positive density");
    const double mean = grid.total_mass();
    double sum = 0.0;
    for (int j = 1; j <= grid.cells(); ++j) {
        const double a = g.left_value(j);
        const double b = g.right_value(j);
        const double q = g.bump(j);
        const double dx = grid.width(j) * (0.5 * (a + b) + (2.0 / 3.0) * q);
        const double dev = 1.0 / a - mean;
        sum += dev * dev * dx;
    }
    return std::sqrt(sum);
}

double variance_g(const LagrangianGrid& grid, const WeightVector& g) {
    if (!(min_g(grid, g) > 0.0)) throw NonPositiveG("variance needs a positive density");
    const double mean = 1.0 / grid.total_mass();
    double sum = 0.0;
    for (int j = 1; j <= grid.cells(); ++j) {
        const double dev = g.left_value(j) - mean;
        sum += dev * dev * grid.width(j);
    }
    return std::sqrt(sum);
}

DecayFit fit_decay_rate(const std::vector<double>& times, const std::vector<double>& values,
                        Window window) {
    if (times.size() != values.size()) {
        throw DimensionMismatch("times and values differ in length");
    }
    std::vector<int> idx;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] >= window.t_a && times[i] <= window.t_b) idx.push_back(static_cast<int>(i));
    }
    if (idx.size() < 2) throw EmptyWindow("rate fit needs at least two samples in the window");
    for (int i : idx) {
        if (!(values[static_cast<std::size_t>(i)] > 0.0)) {
            throw NonPositiveValues("rate fit needs strictly positive values");
        }
    }

    const auto n = static_cast<double>(idx.size());
    double mean_t = 0.0;
    double mean_y = 0.0;
    for (int i : idx) {
        mean_t += times[static_cast<std::size_t>(i)];
        mean_y += std::log(values[static_cast<std::size_t>(i)]);
    }
    mean_t /= n;
    mean_y /= n;

    double cov = 0.0;
    double var_t = 0.0;
    for (int i : idx) {
        const double dt = times[static_cast<std::size_t>(i)] - mean_t;
        cov += dt * (std::log(values[static_cast<std::size_t>(i)]) - mean_y);
        var_t += dt * dt;
    }
    if (!(var_t > 0.0)) throw EmptyWindow("window has no time spread");
    const double slope = cov / var_t;

    double ss = 0.0;
    for (int i : idx) {
        const double r = std::log(values[static_cast<std::size_t>(i)]) - mean_y -
                         slope * (times[static_cast<std::size_t>(i)] - mean_t);
        ss += r * r;
    }

    // One-step difference quotient at the sample nearest the window midpoint,
    // for comparison against the fitted slope.
    const double t_mid = 0.5 * (times[static_cast<std::size_t>(idx.front())] +
                                times[static_cast<std::size_t>(idx.back())]);
    std::size_t m = 0;
    for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
        if (std::abs(times[static_cast<std::size_t>(idx[k])] - t_mid) <
            std::abs(times[static_cast<std::size_t>(idx[m])] - t_mid)) {
            m = k;
        }
    }
    const auto i0 = static_cast<std::size_t>(idx[m]);
    const auto i1 = static_cast<std::size_t>(idx[m + 1]);

    DecayFit fit;
    fit.window = {times[static_cast<std::size_t>(idx.front())],
                  times[static_cast<std::size_t>(idx.back())]};
    fit.rate = -slope;
    fit.residual = std::sqrt(ss / n);
    fit.diff_quotient_mid =
        -(std::log(values[i1]) - std::log(values[i0])) / (times[i1] - times[i0]);
    fit.samples = static_cast<int>(idx.size());
    return fit;
}

Window auto_window(const std::vector<double>& times, const std::vector<double>& values,
                   double floor) {
    if (times.size() != values.size()) {
        throw DimensionMismatch("times and values differ in length");
    }
    if (times.empty()) throw EmptyWindow("empty series");
    const auto n = times.size();
    std::size_t first = static_cast<std::size_t>(0.05 * static_cast<double>(n));
    if (first >= n) first = n - 1;
    std::size_t last = n - 1;
    for (std::size_t i = first; i < n; ++i) {
        if (values[i] < floor) {
            last = (i > first) ? i - 1 : first;
            break;
        }
    }
    return {times[first], times[last]};
}

double theoretical_rate(double alpha, double l1_mass) {
    if (!(alpha >= -1.0 && alpha < 0.0)) {
        throw OutOfValidityRange("analytic rate holds for -1 <= alpha < 0");
    }
    if (!(l1_mass > 0.0)) throw OutOfValidityRange("mass must be positive");
    return 2.0 * (1.0 - 2.0 * alpha) / ((1.0 - alpha) * std::pow(l1_mass, 1.0 - alpha));
}

}  // namespace sfd
