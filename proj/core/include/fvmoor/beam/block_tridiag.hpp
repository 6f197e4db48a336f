#pragma once

#include <vector>

#include "fvmoor/types.hpp"

namespace fvmoor {

/// Block tri-diagonal system  A_w[i] x[i-1] + A_c[i] x[i] + A_e[i] x[i+1] = B[i]
/// with 6x6 blocks. `lower[0]` and `upper[n-1]` are ignored.
struct BlockTriDiagSystem {
  std::vector<Mat6> lower;
  std::vector<Mat6> diag;
  std::vector<Mat6> upper;
  std::vector<Vec6> rhs;

  explicit BlockTriDiagSystem(std::size_t n = 0)
      : lower(n, Mat6::Zero()), diag(n, Mat6::Zero()), upper(n, Mat6::Zero()),
        rhs(n, Vec6::Zero()) {}

  std::size_t size() const { return diag.size(); }

  /// y = A x for block vectors.
  std::vector<Vec6> multiply(const std::vector<Vec6>& x) const;

  Eigen::MatrixXd dense_matrix() const;
  Eigen::VectorXd dense_rhs() const;
};

/// Block Thomas elimination. Throws SolverError
/// "singular diagonal block at cell k" when a pivot block is not invertible.
std::vector<Vec6> solve_block_tridiagonal(const BlockTriDiagSystem& sys);

Eigen::VectorXd flatten(const std::vector<Vec6>& blocks);
std::vector<Vec6> unflatten(const Eigen::VectorXd& v);

}  // namespace fvmoor
