#include <cmath>
#include <vector>

#include "doctest.h"
#include "sfd/basis.hpp"
#include "sfd/bdf.hpp"
#include "sfd/errors.hpp"
#include "sfd/flow.hpp"
#include "sfd/kkt.hpp"

using namespace sfd;

namespace {

RunConfig short_run(const std::string& initial, int n, double alpha, TimeScheme scheme,
                    int steps, double tau = 1e-5) {
    RunConfig c;
    c.alpha = alpha;
    c.n_cells = n;
    c.tau = tau;
    c.t_end = steps * tau;
    c.scheme = scheme;
    c.initial = initial;
    return c;
}

}  // namespace

TEST_CASE("a converged step satisfies the optimality system") {
    auto [grid, g0] = build_initial(preset_datum("cos2", 24));
    const auto mw = assemble_quadrature(grid, Assembly::serial);
    const EntropyModel model{-1.5};
    const auto scheme = bdf_coefficients(1);
    const double tau = 1e-5;
    const std::vector<WeightVector> history{g0};

    const auto res = solve_step(scheme, tau, mw, model, grid, history, 1e-10, 50);
    REQUIRE(res.report.converged);
    CHECK(res.report.grad_norm <= 1e-10);
    CHECK(res.report.rel_update <= 1e-10);

    // Stationarity of the Lagrangian: grad Psi + lambda c = 0 at the
    // accepted state, and the mass row holds to roundoff.
    const Eigen::VectorXd grad =
        objective_gradient(scheme, tau, mw, model, grid, history, res.g);
    const Eigen::VectorXd c = mass_coefficients(grid);
    CHECK((grad + res.lambda * c).lpNorm<Eigen::Infinity>() <= 1e-9);
    CHECK(std::abs(c.dot(res.g.stacked()) - 1.0) <= 1e-12);
}

TEST_CASE("the assembled saddle system has the documented shape") {
    auto [grid, g0] = build_initial(preset_datum("cos2", 12));
    const auto mw = assemble_quadrature(grid, Assembly::serial);
    const EntropyModel model{-1.0};
    const auto scheme = bdf_coefficients(1);
    const double tau = 2e-5;
    const std::vector<WeightVector> history{g0};
    const double lambda = 0.4;

    const auto sys = kkt_assemble(scheme, tau, mw, model, grid, history, g0, lambda);
    const int m = 2 * grid.cells();
    REQUIRE(sys.h.rows() == m + 1);
    REQUIRE(sys.rhs.size() == m + 1);

    const Eigen::MatrixXd hess = objective_hessian(scheme, tau, mw, model, grid, history, g0);
    const Eigen::VectorXd c = mass_coefficients(grid);
    CHECK(((sys.h.topLeftCorner(m, m) - hess).cwiseAbs().maxCoeff()) == 0.0);
    CHECK(((sys.h.topRightCorner(m, 1) - c).cwiseAbs().maxCoeff()) == 0.0);
    CHECK(((sys.h.bottomLeftCorner(1, m).transpose() - c).cwiseAbs().maxCoeff()) == 0.0);
    CHECK(sys.h(m, m) == 0.0);

    const Eigen::VectorXd grad =
        objective_gradient(scheme, tau, mw, model, grid, history, g0);
    // Assembly accumulates the gradient terms in a different order than the
    // expression below, so demand roundoff-level agreement, not identity.
    CHECK(((sys.rhs.head(m) + grad + lambda * c).cwiseAbs().maxCoeff()) <= 1e-14);
    CHECK(sys.rhs[m] == doctest::Approx(-(c.dot(g0.stacked()) - 1.0)).epsilon(1e-15));
}

TEST_CASE("the constant state is a fixed point of both schemes") {
    for (auto scheme : {TimeScheme::euler, TimeScheme::bdf2}) {
        CAPTURE(to_string(scheme));
        const auto res = run_flow(short_run("const", 16, -1.0, scheme, 20));
        for (const auto& rec : res.series) {
            CHECK(std::abs(rec.entropy_rel) <= 1e-12);
            CHECK(rec.mass_error <= 1e-12);
            if (rec.step > 0) CHECK(rec.newton_iterations == 1);
        }
        const auto& first = res.snapshots.front().second;
        const auto& last = res.snapshots.back().second;
        CHECK(((last.stacked() - first.stacked()).lpNorm<Eigen::Infinity>()) <= 1e-10);
    }
}

TEST_CASE("quadratic diffusion converges in at most two newton iterations") {
    const auto res = run_flow(short_run("cos2", 32, -1.0, TimeScheme::bdf2, 30));
    int worst = 0;
    for (const auto& rec : res.series) worst = std::max(worst, rec.newton_iterations);
    CHECK(worst <= 2);
    CHECK(res.series.back().min_g > 0.0);
}

TEST_CASE("starved iteration budgets surface as NoConvergence") {
    auto config = short_run("cos2", 24, -1.5, TimeScheme::euler, 5);
    config.newton_max_iter = 1;
    CHECK_THROWS_AS(run_flow(config), NoConvergence);
}

TEST_CASE("the observer sees every accepted step before a failure") {
    auto config = short_run("cos2", 24, -1.5, TimeScheme::euler, 5);
    config.newton_max_iter = 1;
    int seen = -1;
    try {
        run_flow(config, [&](const DiagnosticsRecord& rec, const WeightVector&) {
            seen = rec.step;
        });
        FAIL("expected NoConvergence");
    } catch (const NoConvergence&) {
        CHECK(seen == 0);  // the initial state was delivered before the throw
    }
}

TEST_CASE("the two-step scheme bootstraps with one implicit-euler step") {
    // Capture the state after the first accepted step of each run; the
    // two-step scheme has no second history state yet, so its opening move
    // must coincide bitwise with the one-step scheme at the same tau.
    const auto first_state = [](TimeScheme scheme) {
        Eigen::VectorXd captured;
        run_flow(short_run("cos2", 24, -0.8, scheme, 2),
                 [&](const DiagnosticsRecord& rec, const WeightVector& g) {
                     if (rec.step == 1) captured = g.stacked();
                 });
        return captured;
    };
    const Eigen::VectorXd euler = first_state(TimeScheme::euler);
    const Eigen::VectorXd bdf2 = first_state(TimeScheme::bdf2);
    REQUIRE(euler.size() > 0);
    REQUIRE(bdf2.size() > 0);
    CHECK((euler.array() == bdf2.array()).all());
}

TEST_CASE("series, snapshots, and trajectories follow the run contract") {
    auto config = short_run("cos2", 24, -1.0, TimeScheme::bdf2, 10);
    config.snapshot_every = 4;
    config.particles = 3;
    const auto res = run_flow(config);

    REQUIRE(static_cast<int>(res.series.size()) == 11);
    for (int i = 0; i <= 10; ++i) {
        CHECK(res.series[static_cast<std::size_t>(i)].step == i);
        CHECK(res.series[static_cast<std::size_t>(i)].time ==
              doctest::Approx(i * config.tau).epsilon(1e-12));
    }

    std::vector<int> steps;
    for (const auto& [step, g] : res.snapshots) steps.push_back(step);
    CHECK(steps == std::vector<int>{0, 4, 8, 10});

    REQUIRE(res.trajectories.labels.size() == 3);
    const double mass = res.grid.total_mass();
    CHECK(res.trajectories.labels[0] == doctest::Approx(mass / 4).epsilon(1e-12));
    REQUIRE(res.trajectories.positions.size() == 11);
    for (const auto& row : res.trajectories.positions) {
        REQUIRE(row.size() == 3);
        for (double x : row) {
            CHECK(x >= 0.0);
            CHECK(x <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("identical configurations produce identical results") {
    const auto config = short_run("root5", 20, -1.2, TimeScheme::bdf2, 8);
    const auto a = run_flow(config);
    const auto b = run_flow(config);
    CHECK((a.g_final.stacked().array() == b.g_final.stacked().array()).all());
    REQUIRE(a.series.size() == b.series.size());
    for (std::size_t i = 0; i < a.series.size(); ++i) {
        CHECK(a.series[i].entropy_rel == b.series[i].entropy_rel);
        CHECK(a.series[i].gnorm_sq_rel == b.series[i].gnorm_sq_rel);
        CHECK(a.series[i].var_u == b.series[i].var_u);
    }
}

TEST_CASE("configuration invariants are enforced up front") {
    RunConfig c = short_run("cos2", 24, -1.0, TimeScheme::euler, 10);
    CHECK_NOTHROW(validate_config(c));
    CHECK(step_count(c) == 10);

    RunConfig bad = c;
    bad.alpha = 0.3;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);
    bad = c;
    bad.n_cells = 3;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);
    bad = c;
    bad.tau = -1e-5;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);
    bad = c;
    bad.t_end = 10.5 * c.tau;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);
    bad = c;
    bad.newton_tol = 0.0;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);
    bad = c;
    bad.initial = "/no/such/file.csv";
    CHECK_THROWS_AS(resolve_datum(bad), ConfigError);

    CHECK(parse_scheme("euler") == TimeScheme::euler);
    CHECK(parse_scheme("bdf2") == TimeScheme::bdf2);
    CHECK_THROWS_AS(parse_scheme("bdf3"), ConfigError);
    CHECK(parse_assembler("closed_form") == AssemblerKind::closed_form);
    CHECK_THROWS_AS(parse_assembler("sparse"), ConfigError);
}
