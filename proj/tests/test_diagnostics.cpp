#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "sfd/diagnostics.hpp"
#include "sfd/errors.hpp"
#include "sfd/lagrangian.hpp"
#include "sfd/wasserstein.hpp"

using namespace sfd;

namespace {

LagrangianGrid uniform_grid(int n, double mass = 1.0) {
    std::vector<double> nodes(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) nodes[static_cast<std::size_t>(j)] = mass * j / n;
    return LagrangianGrid::from_nodes(std::move(nodes));
}

}  // namespace

TEST_CASE("the steady state is constant with zero spread") {
    const auto grid = uniform_grid(6, 2.0);
    const auto g = steady_state(grid);
    for (int j = 1; j <= 6; ++j) {
        CHECK(g.right_value(j) == 0.5);
        CHECK(g.bump(j) == 0.0);
    }
    CHECK(variance_u(grid, g) == 0.0);
    CHECK(variance_g(grid, g) == 0.0);
}

TEST_CASE("variances reproduce hand-computed two-level profiles") {
    // Two cells of mass 1/2 with nodal values 1.5 and 0.5. The g spread is
    // sqrt(2 * 0.25 * 0.5) = 1/2; the u spread per the left-endpoint rule is
    // sqrt(1^2 * 0.5 + (1/3)^2 * 0.5) = sqrt(5)/3.
    const auto grid = uniform_grid(2);
    WeightVector g;
    g.lin.resize(2);
    g.quad.resize(2);
    g.lin << 1.5, 0.5;
    g.quad << 0.0, 0.0;

    CHECK(variance_g(grid, g) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(variance_u(grid, g) == doctest::Approx(std::sqrt(5.0) / 3.0).epsilon(1e-14));

    WeightVector flat = g;
    flat.lin[1] = -0.5;
    CHECK_THROWS_AS(variance_u(grid, flat), NonPositiveG);
}

TEST_CASE("variance_u agrees with the reconstructed samples") {
    auto [grid, g] = build_initial(preset_datum("cos2", 32));
    const auto rec = reconstruct_eulerian(grid, g);
    const double mean = grid.total_mass();
    double sum = 0.0;
    for (std::size_t j = 1; j < rec.x.size(); ++j) {
        const double dev = rec.u[j - 1] - mean;
        sum += dev * dev * (rec.x[j] - rec.x[j - 1]);
    }
    CHECK(variance_u(grid, g) == doctest::Approx(std::sqrt(sum)).epsilon(1e-13));
}

TEST_CASE("the two-state seminorm reduces to the quadratic form on the diagonal") {
    const int n = 4;
    const auto grid = uniform_grid(n);
    const auto mw = assemble_quadrature(grid, Assembly::serial);

    std::mt19937 rng(31u);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    WeightVector p, q;
    p.lin.resize(n);
    p.quad.resize(n);
    q.lin.resize(n);
    q.quad.resize(n);
    for (int j = 0; j < n; ++j) {
        p.lin[j] = dist(rng);
        p.quad[j] = dist(rng);
        q.lin[j] = dist(rng);
        q.quad[j] = dist(rng);
    }

    const Eigen::VectorXd sp = p.stacked();
    const double direct = sp.dot(mw * sp);
    CHECK(g_norm_sq(mw, p, p) == doctest::Approx(direct).epsilon(1e-13));

    // G-stability: the coupled form is nonnegative for arbitrary pairs.
    CHECK(g_norm_sq(mw, p, q) >= -1e-14);

    WeightVector wrong = WeightVector::constant(n + 2, 0.0);
    CHECK_THROWS_AS(g_norm_sq(mw, p, wrong), DimensionMismatch);
}

TEST_CASE("exact exponentials are fitted to rounding accuracy") {
    std::vector<double> times, values;
    for (int i = 0; i <= 100; ++i) {
        times.push_back(0.01 * i);
        values.push_back(std::exp(-3.0 * 0.01 * i));
    }

    const auto fit = fit_decay_rate(times, values, {0.2, 0.8});
    CHECK(fit.rate == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fit.residual <= 1e-12);
    CHECK(fit.diff_quotient_mid == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(fit.samples == 61);
    CHECK(fit.window.t_a == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(fit.window.t_b == doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("constant series fit to rate zero") {
    std::vector<double> times, values;
    for (int i = 0; i < 50; ++i) {
        times.push_back(0.1 * i);
        values.push_back(2.5);
    }
    const auto fit = fit_decay_rate(times, values, {0.0, 10.0});
    CHECK(std::abs(fit.rate) <= 1e-12);
    CHECK(fit.residual <= 1e-12);
}

TEST_CASE("degenerate fit inputs raise typed errors") {
    const std::vector<double> times{0.0, 0.1, 0.2, 0.3};
    const std::vector<double> values{1.0, 0.5, 0.25, 0.125};

    CHECK_THROWS_AS(fit_decay_rate(times, values, {0.05, 0.05}), EmptyWindow);
    CHECK_THROWS_AS(fit_decay_rate(times, values, {5.0, 9.0}), EmptyWindow);
    CHECK_THROWS_AS(fit_decay_rate(times, {1.0, 0.5, 0.25}, {0.0, 1.0}), DimensionMismatch);
    CHECK_THROWS_AS(fit_decay_rate({0.1, 0.1}, {1.0, 1.0}, {0.0, 1.0}), EmptyWindow);

    auto tainted = values;
    tainted[2] = 0.0;
    CHECK_THROWS_AS(fit_decay_rate(times, tainted, {0.0, 1.0}), NonPositiveValues);
}

TEST_CASE("auto windows skip the transient and stop at the floor") {
    std::vector<double> times, values;
    for (int i = 0; i < 100; ++i) {
        times.push_back(0.01 * i);
        values.push_back(std::exp(-times.back()));
    }
    const auto w = auto_window(times, values, 0.6);
    CHECK(w.t_a == doctest::Approx(times[5]).epsilon(1e-14));
    // exp(-t) >= 0.6 up to t = 0.51; the first sample below cuts the window.
    CHECK(w.t_b == doctest::Approx(0.51).epsilon(1e-12));

    // Series that never reaches the floor keeps its full tail.
    const auto w2 = auto_window(times, values, 1e-9);
    CHECK(w2.t_b == doctest::Approx(times.back()).epsilon(1e-14));

    CHECK_THROWS_AS(auto_window({}, {}, 1.0), EmptyWindow);
}

TEST_CASE("analytic rate values and validity range") {
    CHECK(theoretical_rate(-1.0, 1.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(theoretical_rate(-0.5, 1.0) == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
    CHECK(theoretical_rate(-0.5, 0.51) ==
          doctest::Approx((8.0 / 3.0) / std::pow(0.51, 1.5)).epsilon(1e-14));
    CHECK_THROWS_AS(theoretical_rate(-2.0, 1.0), OutOfValidityRange);
    CHECK_THROWS_AS(theoretical_rate(0.0, 1.0), OutOfValidityRange);
    CHECK_THROWS_AS(theoretical_rate(-0.5, 0.0), OutOfValidityRange);
}
