#include "sfd/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace sfd {

void validate_samples(const EulerianSamples& s, bool require_uniform) {
    const std::size_t n = s.x.size();
    if (n < 3 || s.u.size() != n) {
        throw ConfigError("need matching x/u sample lists with at least two cells");
    }
    if (s.x.front() != 0.0 || s.x.back() != 1.0) {
        throw ConfigError("sample nodes must start at 0 and end at 1");
    }
    for (std::size_t j = 1; j < n; ++j) {
        if (!(s.x[j] > s.x[j - 1])) throw ConfigError("sample nodes must be strictly increasing");
    }
    double umax = 0.0;
    for (double v : s.u) {
        if (!(v > 0.0)) throw NonPositiveDensity("density sample <= 0");
        umax = std::max(umax, v);
    }

    const double dx = 1.0 / static_cast<double>(n - 1);
    bool uniform = true;
    for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(s.x[j] - static_cast<double>(j) * dx) > 1e-12) {
            uniform = false;
            break;
        }
    }
    if (require_uniform && !uniform) {
        throw NonUniformMesh("initial data must be sampled on the uniform grid x_j = j/N");
    }
    if (uniform) {
        // Point symmetry u(x) = u(1-x); j = 0 against j = n-1 also covers the
        // periodicity requirement u(0) = u(1).
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(s.u[j] - s.u[n - 1 - j]) > 1e-10 * umax) {
                throw AsymmetricDatum("density samples are not point symmetric");
            }
        }
    }
}

LagrangianGrid LagrangianGrid::from_nodes(std::vector<double> omega) {
    if (omega.size() < 3) throw DegenerateGrid("need at least two cells");
    if (omega.front() != 0.0) throw DegenerateGrid("first node must be 0");
    for (std::size_t j = 1; j < omega.size(); ++j) {
        if (!(omega[j] > omega[j - 1])) throw DegenerateGrid("nodes must be strictly increasing");
    }
    return LagrangianGrid(std::move(omega));
}

double LagrangianGrid::width(int j) const {
    const int n = cells();
    if (j < 1 || j > n + 1) throw IndexOutOfRange("cell width index out of range");
    if (j == n + 1) j = 1;
    return omega_[j] - omega_[j - 1];
}

double LagrangianGrid::half_span(int j) const {
    return 0.5 * (width(j) + width(j + 1));
}

double LagrangianGrid::sigma(int j) const {
    const int n = cells();
    if (j < 1 || j > n) throw IndexOutOfRange("sigma index out of range");
    const double next = (j == n) ? total_mass() + omega_[1] : omega_[j + 1];
    return (next + omega_[j] + omega_[j - 1]) / 3.0;
}

int LagrangianGrid::cell_of(double w) const {
    if (w < 0.0 || w > total_mass()) throw IndexOutOfRange("mass coordinate outside [0, M]");
    const auto it = std::upper_bound(omega_.begin(), omega_.end(), w);
    int c = static_cast<int>(it - omega_.begin());
    return std::min(std::max(c, 1), cells());
}

bool LagrangianGrid::point_symmetric(double rel_tol) const {
    const int n = cells();
    const double m = total_mass();
    for (int i = 1; i < n; ++i) {
        if (std::abs(omega_[n - i] - (m - omega_[i])) > rel_tol * m) return false;
    }
    return true;
}

Eigen::VectorXd WeightVector::stacked() const {
    Eigen::VectorXd v(lin.size() + quad.size());
    v << lin, quad;
    return v;
}

WeightVector WeightVector::from_stacked(const Eigen::VectorXd& v) {
    if (v.size() % 2 != 0) throw DimensionMismatch("stacked weight vector must have even length");
    const auto n = v.size() / 2;
    return {v.head(n), v.tail(n)};
}

WeightVector WeightVector::constant(int n_cells, double value) {
    return {Eigen::VectorXd::Constant(n_cells, value), Eigen::VectorXd::Zero(n_cells)};
}

namespace {

// Local representation on cell j: g(s) = a(1-s) + b s + 4 q s(1-s), s in [0,1].
struct CellPoly {
    double a, b, q;
    double operator()(double s) const { return a * (1.0 - s) + b * s + 4.0 * q * s * (1.0 - s); }
    // int_0^s g dt, scaled to unit length.
    double cumulative(double s) const {
        return a * (s - 0.5 * s * s) + 0.5 * b * s * s + 4.0 * q * (0.5 * s * s - s * s * s / 3.0);
    }
    double mean() const { return 0.5 * (a + b) + 2.0 / 3.0 * q; }
};

CellPoly cell_poly(const WeightVector& g, int j) {
    return {g.left_value(j), g.right_value(j), g.bump(j)};
}

}  // namespace

double eval_g(const LagrangianGrid& grid, const WeightVector& g, double w) {
    const int j = grid.cell_of(w);
    const double s = (w - grid.node(j - 1)) / grid.width(j);
    return cell_poly(g, j)(s);
}

double eval_G(const LagrangianGrid& grid, const WeightVector& g, double w) {
    const int j = grid.cell_of(w);
    double acc = 0.0;
    for (int c = 1; c < j; ++c) acc += grid.width(c) * cell_poly(g, c).mean();
    const double s = (w - grid.node(j - 1)) / grid.width(j);
    return acc + grid.width(j) * cell_poly(g, j).cumulative(s);
}

double min_g(const LagrangianGrid& grid, const WeightVector& g) {
    double lo = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= grid.cells(); ++j) {
        const CellPoly p = cell_poly(g, j);
        lo = std::min({lo, p.a, p.b, p(0.5)});
        // Interior extremum of the quadratic, when it exists.
        if (p.q != 0.0) {
            const double s = (p.b - p.a + 4.0 * p.q) / (8.0 * p.q);
            if (s > 0.0 && s < 1.0) lo = std::min(lo, p(s));
        }
    }
    return lo;
}

EulerianSamples preset_datum(const std::string& name, int n_cells) {
    const int n = n_cells;
    EulerianSamples s;
    s.x.resize(n + 1);
    s.u.resize(n + 1);
    for (int j = 0; j <= n; ++j) s.x[j] = static_cast<double>(j) / n;

    auto fill = [&](auto&& f) {
        // Evaluate on [0, 1/2] and mirror so symmetry holds to the bit.
        for (int j = 0; j <= n / 2; ++j) {
            s.u[j] = f(s.x[j]);
            s.u[n - j] = s.u[j];
        }
    };
    const double pi = std::acos(-1.0);
    if (name == "const") {
        fill([](double) { return 1.0; });
    } else if (name == "cos2") {
        fill([&](double x) { const double c = std::cos(2.0 * pi * x); return c * c + 0.01; });
    } else if (name == "root5") {
        fill([](double x) { return std::pow(std::abs(x - 0.5) + 1e-4, 0.2) - 0.1; });
    } else {
        throw ConfigError("unknown initial datum preset: " + name);
    }
    validate_samples(s, true);
    return s;
}

EulerianSamples load_datum(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open initial datum file: " + path);
    EulerianSamples s;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        double x, u;
        if (row >> x >> u) {
            s.x.push_back(x);
            s.u.push_back(u);
        }
    }
    validate_samples(s, true);
    return s;
}

std::pair<LagrangianGrid, WeightVector> build_initial(const EulerianSamples& samples) {
    validate_samples(samples, true);
    const int n = static_cast<int>(samples.x.size()) - 1;

    std::vector<double> gnode(n + 1);
    for (int j = 0; j <= n; ++j) gnode[j] = 1.0 / samples.u[j];

    // Each cell carries mass 1/N: w_{j+1} - w_j = (2/N) / (g_{j+1} + g_j).
    std::vector<double> omega(n + 1);
    omega[0] = 0.0;
    for (int j = 0; j < n; ++j) {
        omega[j + 1] = omega[j] + (2.0 / n) / (gnode[j + 1] + gnode[j]);
    }

    WeightVector w{Eigen::VectorXd(n), Eigen::VectorXd::Zero(n)};
    for (int j = 1; j <= n; ++j) w.lin[j - 1] = gnode[j];
    return {LagrangianGrid::from_nodes(std::move(omega)), std::move(w)};
}

EulerianSamples reconstruct_eulerian(const LagrangianGrid& grid, const WeightVector& g) {
    if (!(min_g(grid, g) > 0.0)) throw NonPositiveG("cannot invert a non-positive density");
    const int n = grid.cells();
    EulerianSamples out;
    out.x.resize(n + 1);
    out.u.resize(n + 1);
    out.x[0] = 0.0;
    out.u[0] = 1.0 / g.left_value(1);
    double acc = 0.0;
    for (int j = 1; j <= n; ++j) {
        acc += grid.width(j) * CellPoly{g.left_value(j), g.right_value(j), g.bump(j)}.mean();
        out.x[j] = acc;
        out.u[j] = 1.0 / g.right_value(j);
    }
    return out;
}

TrajectorySet trace_particles(const LagrangianGrid& grid,
                              const std::vector<WeightVector>& g_sequence,
                              const std::vector<double>& labels) {
    for (double w : labels) {
        if (!(w > 0.0 && w < grid.total_mass())) {
            throw LabelOutOfRange("particle label must lie strictly inside (0, M)");
        }
    }
    TrajectorySet t;
    t.labels = labels;
    t.positions.reserve(g_sequence.size());
    for (const WeightVector& g : g_sequence) {
        std::vector<double> row(labels.size());
        for (std::size_t p = 0; p < labels.size(); ++p) row[p] = eval_G(grid, g, labels[p]);
        t.positions.push_back(std::move(row));
    }
    return t;
}

}  // namespace sfd
