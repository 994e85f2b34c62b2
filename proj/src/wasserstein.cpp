#include "sfd/wasserstein.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <vector>

#include "sfd/basis.hpp"
#include "sfd/gauss.hpp"

namespace sfd {

namespace {

// Every basis function restricted to one cell is one of three shapes in the
// unit coordinate s: down = 1-s (hat of the left node), up = s (hat of the
// right node), bump = 4s(1-s). Blocks below are indexed [down, up, bump].
using Block = std::array<double, 9>;

constexpr int kDown = 0, kUp = 1, kBump = 2;

double shape(int f, double s) {
    switch (f) {
        case kDown: return 1.0 - s;
        case kUp: return s;
        default: return 4.0 * s * (1.0 - s);
    }
}

// int_0^1 shape ds.
constexpr std::array<double, 3> kMean{0.5, 0.5, 2.0 / 3.0};

// X[f][g] = int_0^1 int_0^1 max(s,t) f(s) g(t) ds dt (symmetric).
constexpr double kX[3][3] = {
    {7.0 / 60.0, 7.0 / 40.0, 17.0 / 90.0},
    {7.0 / 40.0, 1.0 / 5.0, 11.0 / 45.0},
    {17.0 / 90.0, 11.0 / 45.0, 88.0 / 315.0},
};

// First moment int_cell w * shape((w - p)/h) dw for cell [p, p+h].
double first_moment(int f, double p, double h) {
    switch (f) {
        case kDown: return h * (h + 3.0 * p) / 6.0;
        case kUp: return h * (2.0 * h + 3.0 * p) / 6.0;
        default: return h * (h + 2.0 * p) / 3.0;
    }
}

struct CellGeom {
    double p, h;  // cell [p, p+h]
};

/**
 * Cell-pair block by closed form.
 *
 * Same cell:  h^2 [ (M - p) F0 G0 - h X[f][g] ].
 * c left of d (max = w'):  (h_c F0) [ M h_d G0 - mu_g(d) ]; mirrored if c > d.
 */
Block closed_form_block(double M, int c, int d, CellGeom cc, CellGeom cd) {
    Block b{};
    if (c == d) {
        const double scale = cc.h * cc.h;
        for (int f = 0; f < 3; ++f) {
            for (int g = 0; g < 3; ++g) {
                b[f * 3 + g] = scale * ((M - cc.p) * kMean[f] * kMean[g] - cc.h * kX[f][g]);
            }
        }
    } else if (c < d) {
        for (int f = 0; f < 3; ++f) {
            const double mf = cc.h * kMean[f];
            for (int g = 0; g < 3; ++g) {
                b[f * 3 + g] = mf * (M * cd.h * kMean[g] - first_moment(g, cd.p, cd.h));
            }
        }
    } else {
        for (int f = 0; f < 3; ++f) {
            for (int g = 0; g < 3; ++g) {
                const double mg = cd.h * kMean[g];
                b[f * 3 + g] = mg * (M * cc.h * kMean[f] - first_moment(f, cc.p, cc.h));
            }
        }
    }
    return b;
}

/**
 * Cell-pair block by Gauss quadrature.
 *
 * Same cell, in unit coordinates with the kernel M - p - h*max(s,t):
 *   lower triangle (t < s, max = s):  h^2 int_0^1 (M-p-hs) f(s) [int_0^s g] ds,
 *   upper triangle mirrored with f and g swapped.
 * The outer integrand has degree 6 after the exact inner rule, so nested
 * 4-point rules integrate both triangles exactly. Distinct cells never
 * straddle the diagonal: the kernel is M - w' and the double integral is a
 * product of two 1D integrals of degree <= 3.
 */
Block quadrature_block(double M, int c, int d, CellGeom cc, CellGeom cd) {
    const auto rule = gauss::rule(4);
    Block b{};
    if (c == d) {
        const double p = cc.p, h = cc.h;
        for (int f = 0; f < 3; ++f) {
            for (int g = 0; g < 3; ++g) {
                double acc = 0.0;
                for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                    const double s = rule.nodes[i];
                    const double kern = rule.weights[i] * (M - p - h * s);
                    double finner = 0.0, ginner = 0.0;  // int_0^s of each shape
                    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
                        const double t = s * rule.nodes[q];
                        finner += rule.weights[q] * shape(f, t);
                        ginner += rule.weights[q] * shape(g, t);
                    }
                    acc += kern * (shape(f, s) * (s * ginner) + shape(g, s) * (s * finner));
                }
                b[f * 3 + g] = h * h * acc;
            }
        }
        return b;
    }
    // Left cell carries the plain factor, right cell the kernel factor.
    const CellGeom& left = (c < d) ? cc : cd;
    const CellGeom& right = (c < d) ? cd : cc;
    std::array<double, 3> plain{}, weighted{};
    for (int f = 0; f < 3; ++f) {
        double a0 = 0.0, a1 = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double s = rule.nodes[q];
            a0 += rule.weights[q] * shape(f, s);
            a1 += rule.weights[q] * (M - right.p - right.h * s) * shape(f, s);
        }
        plain[f] = left.h * a0;
        weighted[f] = right.h * a1;
    }
    for (int f = 0; f < 3; ++f) {
        for (int g = 0; g < 3; ++g) {
            b[f * 3 + g] = (c < d) ? plain[f] * weighted[g] : weighted[f] * plain[g];
        }
    }
    return b;
}

template <typename BlockFn>
WassersteinMatrix assemble(const LagrangianGrid& grid, Assembly mode, BlockFn&& block_fn) {
    const int n = grid.cells();
    const double M = grid.total_mass();
    WassersteinMatrix mw = WassersteinMatrix::Zero(2 * n, 2 * n);

    auto geom = [&](int c) { return CellGeom{grid.node(c - 1), grid.width(c)}; };
    auto scatter = [&](int c, int d, const Block& b) {
        const int rows[3] = {left_hat_index(c, n), right_hat_index(c, n), bump_index(c, n)};
        const int cols[3] = {left_hat_index(d, n), right_hat_index(d, n), bump_index(d, n)};
        for (int f = 0; f < 3; ++f) {
            for (int g = 0; g < 3; ++g) mw(rows[f], cols[g]) += b[f * 3 + g];
        }
    };

    if (mode == Assembly::serial) {
        for (int c = 1; c <= n; ++c) {
            for (int d = 1; d <= n; ++d) scatter(c, d, block_fn(M, c, d, geom(c), geom(d)));
        }
        return mw;
    }

    // Independent blocks in parallel, then a serial fixed-order scatter: the
    // accumulation order per entry matches the serial path exactly, so the
    // result is bit-identical for any thread count.
    std::vector<Block> blocks(static_cast<std::size_t>(n) * n);
#pragma omp parallel for schedule(static)
    for (int pair = 0; pair < n * n; ++pair) {
        const int c = pair / n + 1;
        const int d = pair % n + 1;
        blocks[pair] = block_fn(M, c, d, geom(c), geom(d));
    }
    for (int c = 1; c <= n; ++c) {
        for (int d = 1; d <= n; ++d) scatter(c, d, blocks[(c - 1) * n + (d - 1)]);
    }
    return mw;
}

}  // namespace

WassersteinMatrix assemble_quadrature(const LagrangianGrid& grid, Assembly mode) {
    return assemble(grid, mode, quadrature_block);
}

WassersteinMatrix assemble_closed_form(const LagrangianGrid& grid, Assembly mode) {
    return assemble(grid, mode, closed_form_block);
}

double wasserstein_sq(const WassersteinMatrix& mw, const WeightVector& g,
                      const WeightVector& g_star) {
    if (g.cells() != g_star.cells() || mw.rows() != 2 * g.cells() || mw.cols() != mw.rows()) {
        throw DimensionMismatch("weight vectors and matrix dimensions disagree");
    }
    const Eigen::VectorXd d = g.stacked() - g_star.stacked();
    return d.dot(mw * d);
}

void dump_matrix(const WassersteinMatrix& mw, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open matrix dump file: " + path);
    char buf[32];
    for (Eigen::Index i = 0; i < mw.rows(); ++i) {
        for (Eigen::Index j = 0; j < mw.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", mw(i, j));
            out << buf << (j + 1 == mw.cols() ? '\n' : ' ');
        }
    }
}

}  // namespace sfd
