#include "sfd/basis.hpp"

namespace sfd {

double eval_basis(const LagrangianGrid& grid, int j, double w) {
    const int n = grid.cells();
    if (j < 1 || j > 2 * n) throw IndexOutOfRange("basis index must lie in 1..2N");
    const int c = grid.cell_of(w);  // also rejects w outside [0, M]
    const double s = (w - grid.node(c - 1)) / grid.width(c);

    if (j > n) {
        return j - n == c ? 4.0 * s * (1.0 - s) : 0.0;
    }
    // Hat j rises on cell j and falls on cell j+1; the boundary hat N falls
    // on cell 1 and rises on cell N.
    if (c == j) return s;
    const int falling = (j == n) ? 1 : j + 1;
    if (c == falling) return 1.0 - s;
    return 0.0;
}

Eigen::VectorXd mass_coefficients(const LagrangianGrid& grid) {
    const int n = grid.cells();
    Eigen::VectorXd c(2 * n);
    for (int j = 1; j <= n; ++j) {
        c[j - 1] = 0.5 * (grid.width(j) + grid.width(j + 1));
        c[n + j - 1] = 2.0 / 3.0 * grid.width(j);
    }
    return c;
}

double mass(const LagrangianGrid& grid, const WeightVector& g) {
    double acc = 0.0;
    for (int j = 1; j <= grid.cells(); ++j) {
        acc += grid.width(j) *
               (0.5 * (g.left_value(j) + g.right_value(j)) + 2.0 / 3.0 * g.bump(j));
    }
    return acc;
}

}  // namespace sfd
