#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "sfd/errors.hpp"

namespace sfd {

/// Density samples u(x_j) >= 0 on node set 0 = x_0 < ... < x_n = 1.
/// Initial data must live on the uniform grid x_j = j/n and be point
/// symmetric (u(x) = u(1-x)); reconstructed solutions reuse this shape
/// with a moving node set.
struct EulerianSamples {
    std::vector<double> x;
    std::vector<double> u;
};

/// Validates sizes, monotonicity, positivity, and (on uniform node sets)
/// point symmetry and periodicity. `require_uniform` additionally rejects
/// non-uniform node sets, as needed for initial data.
void validate_samples(const EulerianSamples& s, bool require_uniform);

/**
 * Partition 0 = w_0 < ... < w_N = M of the mass interval [0, M].
 *
 * Cells are 1-based: cell j = [w_{j-1}, w_j] with width delta_j.
 * The partition is periodic with period M, so delta_{N+1} wraps to delta_1.
 */
class LagrangianGrid {
public:
    /// Builds from the node list {0, w_1, ..., M}; needs at least two cells
    /// and strictly increasing nodes.
    static LagrangianGrid from_nodes(std::vector<double> omega);

    int cells() const { return static_cast<int>(omega_.size()) - 1; }
    double total_mass() const { return omega_.back(); }

    /// w_j, j = 0..N.
    double node(int j) const { return omega_[static_cast<std::size_t>(j)]; }
    const std::vector<double>& nodes() const { return omega_; }

    /// delta_j = w_j - w_{j-1}, j = 1..N+1 (periodic wrap at N+1).
    double width(int j) const;

    /// Delta_j = (w_{j+1} - w_{j-1})/2 with the periodic extension w_{N+1} = M + w_1.
    double half_span(int j) const;

    /// sigma_j = (w_{j+1} + w_j + w_{j-1})/3, same periodic extension.
    double sigma(int j) const;

    /// 1-based index of the cell containing w (boundaries resolve upward,
    /// w = M resolves to cell N).
    int cell_of(double w) const;

    /// w_{N-i} = M - w_i for all i, within rel_tol * M.
    bool point_symmetric(double rel_tol = 1e-12) const;

private:
    explicit LagrangianGrid(std::vector<double> omega) : omega_(std::move(omega)) {}
    std::vector<double> omega_;
};

/**
 * Weight vector of the piecewise-quadratic field g(w) = sum_i g_i phi_i(w).
 *
 * lin[j-1]  = g_j, nodal value at w_j for j = 1..N (g_0 = g_N periodically);
 * quad[j-1] = g_{N+j}, bump amplitude on cell j.
 */
struct WeightVector {
    Eigen::VectorXd lin;
    Eigen::VectorXd quad;

    int cells() const { return static_cast<int>(lin.size()); }

    /// Value at the left node of cell j (1-based).
    double left_value(int j) const { return j == 1 ? lin[lin.size() - 1] : lin[j - 2]; }
    /// Value at the right node of cell j.
    double right_value(int j) const { return lin[j - 1]; }
    /// Bump amplitude of cell j.
    double bump(int j) const { return quad[j - 1]; }

    /// Concatenation (lin, quad) as one vector of length 2N.
    Eigen::VectorXd stacked() const;
    static WeightVector from_stacked(const Eigen::VectorXd& v);

    static WeightVector constant(int n_cells, double value);
};

/// g(w), evaluated from the local cell representation.
double eval_g(const LagrangianGrid& grid, const WeightVector& g, double w);

/// G(w) = int_0^w g, the piecewise-cubic transported position; G(M) = mass.
double eval_G(const LagrangianGrid& grid, const WeightVector& g, double w);

/// Minimum of g over all nodes, cell midpoints, and interior extrema of the
/// per-cell quadratics. Used for positivity monitoring.
double min_g(const LagrangianGrid& grid, const WeightVector& g);

/// Particle labels (mass coordinates) and their positions per recorded step.
struct TrajectorySet {
    std::vector<double> labels;
    std::vector<std::vector<double>> positions;  // positions[step][p]
};

/// Built-in initial data on the uniform grid with n_cells cells:
/// "const" (u = 1), "cos2" (cos(2 pi x)^2 + 0.01),
/// "root5" ((|x - 1/2| + 1e-4)^(1/5) - 0.1).
EulerianSamples preset_datum(const std::string& name, int n_cells);

/// Two-column whitespace-separated text file (x, u) on the uniform grid.
EulerianSamples load_datum(const std::string& path);

/**
 * Builds the mass partition and initial weights from uniform density samples.
 *
 * With g_j = 1/u(x_j), nodes follow w_{j+1} = w_j + (2/N) / (g_{j+1} + g_j),
 * so every cell carries mass 1/N exactly and the discrete mass of g is 1 by
 * construction. Bump amplitudes start at zero.
 */
std::pair<LagrangianGrid, WeightVector> build_initial(const EulerianSamples& samples);

/// Moving mesh x_j = G(w_j) and nodal density u_j = 1/g(w_j), j = 0..N.
EulerianSamples reconstruct_eulerian(const LagrangianGrid& grid, const WeightVector& g);

/// Positions x_p(t_n) = G^n(w_p) for labels w_p in (0, M).
TrajectorySet trace_particles(const LagrangianGrid& grid,
                              const std::vector<WeightVector>& g_sequence,
                              const std::vector<double>& labels);

}  // namespace sfd
