#pragma once

#include <Eigen/Dense>
#include <vector>

namespace sfd {

/**
 * Bunch-Kaufman factorization of a dense symmetric indefinite matrix,
 * the appropriate solver for saddle-point systems (which have one negative
 * eigenvalue per constraint, so Cholesky-type methods do not apply).
 * Wraps LAPACK dsytrf/dsytrs. Throws SingularKkt when the factorization
 * reports an exactly singular pivot.
 */
class SymmetricIndefiniteSolver {
public:
    explicit SymmetricIndefiniteSolver(const Eigen::MatrixXd& a);

    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

private:
    Eigen::MatrixXd factors_;
    std::vector<int> ipiv_;
};

}  // namespace sfd
