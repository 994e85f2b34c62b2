#include "sfd/linalg.hpp"

#include <lapacke.h>

#include "sfd/errors.hpp"

namespace sfd {

SymmetricIndefiniteSolver::SymmetricIndefiniteSolver(const Eigen::MatrixXd& a)
    : factors_(a), ipiv_(static_cast<std::size_t>(a.rows())) {
    if (a.rows() != a.cols()) throw DimensionMismatch("factorization needs a square matrix");
    const auto n = static_cast<lapack_int>(a.rows());
    const lapack_int info =
        LAPACKE_dsytrf(LAPACK_COL_MAJOR, 'L', n, factors_.data(), n, ipiv_.data());
    if (info > 0) throw SingularKkt("saddle-point matrix is singular (zero pivot)");
    if (info < 0) throw Error("dsytrf: invalid argument " + std::to_string(-info));
}

Eigen::VectorXd SymmetricIndefiniteSolver::solve(const Eigen::VectorXd& rhs) const {
    if (rhs.size() != factors_.rows()) throw DimensionMismatch("right-hand side of wrong size");
    Eigen::VectorXd x = rhs;
    const auto n = static_cast<lapack_int>(factors_.rows());
    const lapack_int info = LAPACKE_dsytrs(LAPACK_COL_MAJOR, 'L', n, 1, factors_.data(), n,
                                           ipiv_.data(), x.data(), n);
    if (info != 0) throw SingularKkt("backsolve on the factorized saddle-point matrix failed");
    return x;
}

}  // namespace sfd
