#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "sfd/entropy.hpp"
#include "sfd/errors.hpp"
#include "sfd/lagrangian.hpp"

using namespace sfd;

namespace {

LagrangianGrid uniform_grid(int n, double mass = 1.0) {
    std::vector<double> nodes(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) nodes[static_cast<std::size_t>(j)] = mass * j / n;
    return LagrangianGrid::from_nodes(std::move(nodes));
}

WeightVector random_positive_field(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(0.8, 1.6);
    WeightVector g;
    g.lin.resize(n);
    g.quad.resize(n);
    for (int j = 0; j < n; ++j) {
        g.lin[j] = dist(rng);
        g.quad[j] = 0.1 * (dist(rng) - 1.2);
    }
    return g;
}

// Composite Simpson on the reconstructed field, cell by cell. The integrand
// is smooth inside every cell, so 2000 panels reach rounding level and the
// value is independent of the Gauss machinery under test.
double simpson_entropy(double alpha, const LagrangianGrid& grid, const WeightVector& g) {
    const int panels = 2000;
    double acc = 0.0;
    for (int j = 1; j <= grid.cells(); ++j) {
        const double p = grid.node(j - 1);
        const double h = grid.width(j);
        double cell = 0.0;
        for (int i = 0; i <= panels; ++i) {
            const double w = p + h * i / panels;
            const double coeff = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            cell += coeff * std::pow(eval_g(grid, g, w), 1.0 - alpha);
        }
        acc += cell * h / (3.0 * panels);
    }
    return acc / (alpha * (alpha - 1.0));
}

}  // namespace

TEST_CASE("constant states have the closed-form entropy for every exponent") {
    // S[c] = M c^{1-alpha} / (alpha(alpha-1)). Covers the exact polynomial
    // branch, the integer Gauss branch, and the fractional self-checked one.
    const double c = 1.7;
    const auto grid = uniform_grid(6, 2.0);
    const auto g = WeightVector::constant(6, c);
    for (double alpha : {-0.5, -1.0, -2.0, -9.0, -11.5}) {
        CAPTURE(alpha);
        const double expected = 2.0 * std::pow(c, 1.0 - alpha) / (alpha * (alpha - 1.0));
        CHECK(entropy({alpha}, grid, g) == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("entropy matches an independent Simpson evaluation") {
    const auto grid = uniform_grid(5);
    const auto g = random_positive_field(5, 11u);
    for (double alpha : {-0.5, -1.0, -1.5, -2.0, -3.0}) {
        CAPTURE(alpha);
        const double expected = simpson_entropy(alpha, grid, g);
        CHECK(entropy({alpha}, grid, g) == doctest::Approx(expected).epsilon(1e-11));
    }
}

TEST_CASE("steep cells are integrated through rule bisection") {
    // A three-fold jump across one cell puts the branch point of g^(3/2)
    // close enough that a single fixed rule misses the self-check; the
    // composite escalation has to recover instead of aborting.
    const auto grid = uniform_grid(2);
    WeightVector g;
    g.lin.resize(2);
    g.quad.resize(2);
    g.lin << 38.9, 71.9;
    g.quad << 0.0, 0.0;
    const double value = entropy({-0.5}, grid, g);
    CHECK(std::isfinite(value));
    CHECK(value == doctest::Approx(simpson_entropy(-0.5, grid, g)).epsilon(1e-9));
}

TEST_CASE("gradient is finite-difference consistent") {
    const int n = 4;
    const auto grid = uniform_grid(n);
    const auto g = random_positive_field(n, 7u);
    for (double alpha : {-0.5, -1.0, -2.0}) {
        CAPTURE(alpha);
        const EntropyModel model{alpha};
        const Eigen::VectorXd grad = entropy_gradient(model, grid, g);
        const double scale = std::max(1.0, grad.cwiseAbs().maxCoeff());
        const Eigen::VectorXd base = g.stacked();
        for (int i = 0; i < 2 * n; ++i) {
            const double h = 1e-5;
            Eigen::VectorXd up = base, dn = base;
            up[i] += h;
            dn[i] -= h;
            const double fd = (entropy(model, grid, WeightVector::from_stacked(up)) -
                               entropy(model, grid, WeightVector::from_stacked(dn))) /
                              (2.0 * h);
            CHECK(std::abs(grad[i] - fd) <= 1e-6 * scale);
        }
    }
}

TEST_CASE("hessian is finite-difference consistent and positive semidefinite") {
    const int n = 4;
    const auto grid = uniform_grid(n);
    const auto g = random_positive_field(n, 13u);
    for (double alpha : {-1.0, -1.5}) {
        CAPTURE(alpha);
        const EntropyModel model{alpha};
        const Eigen::MatrixXd hess = entropy_hessian(model, grid, g);
        const double scale = std::max(1.0, hess.cwiseAbs().maxCoeff());
        const Eigen::VectorXd base = g.stacked();
        for (int i = 0; i < 2 * n; ++i) {
            const double h = 1e-5;
            Eigen::VectorXd up = base, dn = base;
            up[i] += h;
            dn[i] -= h;
            const Eigen::VectorXd fd =
                (entropy_gradient(model, grid, WeightVector::from_stacked(up)) -
                 entropy_gradient(model, grid, WeightVector::from_stacked(dn))) /
                (2.0 * h);
            for (int k = 0; k < 2 * n; ++k) {
                CHECK(std::abs(hess(k, i) - fd[k]) <= 1e-6 * scale);
            }
        }

        CHECK(((hess - hess.transpose()).cwiseAbs().maxCoeff()) <= 1e-13 * scale);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hess);
        REQUIRE(eig.info() == Eigen::Success);
        CHECK(eig.eigenvalues().minCoeff() >= -1e-12 * eig.eigenvalues().maxCoeff());
    }
}

TEST_CASE("the quadratic-diffusion hessian is constant in the state") {
    const auto grid = uniform_grid(5);
    const auto a = entropy_hessian({-1.0}, grid, random_positive_field(5, 1u));
    const auto b = entropy_hessian({-1.0}, grid, random_positive_field(5, 2u));
    CHECK((a.array() == b.array()).all());
}

TEST_CASE("invalid exponents and non-positive states are rejected") {
    const auto grid = uniform_grid(4);
    const auto g = WeightVector::constant(4, 1.0);
    CHECK_THROWS_AS(entropy({0.5}, grid, g), OutOfValidityRange);
    CHECK_THROWS_AS(entropy({0.0}, grid, g), OutOfValidityRange);

    WeightVector touching = g;
    touching.quad[2] = -1.0;  // midpoint value 1 + 4q/4 = 0
    CHECK_THROWS_AS(entropy({-1.0}, grid, touching), NonPositiveG);
    CHECK_THROWS_AS(entropy_gradient({-1.5}, grid, touching), NonPositiveG);
}

TEST_CASE("unchecked variants follow the sign-violation contract") {
    // Fractional exponents turn a negative iterate into NaN for the solver
    // to catch; integer exponents stay polynomial and evaluate anywhere.
    const auto grid = uniform_grid(4);
    WeightVector g = WeightVector::constant(4, 1.0);
    g.lin[1] = -0.3;

    const Eigen::VectorXd frac = entropy_gradient_unchecked({-1.5}, grid, g);
    CHECK(std::isnan(frac[1]));

    const Eigen::VectorXd poly = entropy_gradient_unchecked({-2.0}, grid, g);
    CHECK(poly.allFinite());
    const Eigen::MatrixXd polyh = entropy_hessian_unchecked({-1.0}, grid, g);
    CHECK(polyh.allFinite());
}
