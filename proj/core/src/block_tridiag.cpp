#include "fvmoor/beam/block_tridiag.hpp"

#include <string>

namespace fvmoor {

std::vector<Vec6> BlockTriDiagSystem::multiply(const std::vector<Vec6>& x) const {
  const std::size_t n = size();
  std::vector<Vec6> y(n, Vec6::Zero());
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = diag[i] * x[i];
    if (i > 0) y[i] += lower[i] * x[i - 1];
    if (i + 1 < n) y[i] += upper[i] * x[i + 1];
  }
  return y;
}

Eigen::MatrixXd BlockTriDiagSystem::dense_matrix() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(6 * n, 6 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m.block<6, 6>(6 * i, 6 * i) = diag[i];
    if (i > 0) m.block<6, 6>(6 * i, 6 * (i - 1)) = lower[i];
    if (i + 1 < n) m.block<6, 6>(6 * i, 6 * (i + 1)) = upper[i];
  }
  return m;
}

Eigen::VectorXd BlockTriDiagSystem::dense_rhs() const { return flatten(rhs); }

std::vector<Vec6> solve_block_tridiagonal(const BlockTriDiagSystem& sys) {
  const std::size_t n = sys.size();
  std::vector<Mat6> gain(n);
  std::vector<Vec6> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Mat6 pivot = sys.diag[i];
    Vec6 b = sys.rhs[i];
    if (i > 0) {
      pivot -= sys.lower[i] * gain[i - 1];
      b -= sys.lower[i] * y[i - 1];
    }
    Eigen::FullPivLU<Mat6> lu(pivot);
    if (!lu.isInvertible() || !pivot.allFinite()) {
      throw SolverError("singular diagonal block at cell " + std::to_string(i));
    }
    if (i + 1 < n) gain[i] = lu.solve(sys.upper[i]);
    y[i] = lu.solve(b);
  }
  std::vector<Vec6> x(n);
  for (std::size_t k = n; k-- > 0;) {
    x[k] = y[k];
    if (k + 1 < n) x[k] -= gain[k] * x[k + 1];
  }
  return x;
}

Eigen::VectorXd flatten(const std::vector<Vec6>& blocks) {
  Eigen::VectorXd v(6 * static_cast<Eigen::Index>(blocks.size()));
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    v.segment<6>(6 * static_cast<Eigen::Index>(i)) = blocks[i];
  }
  return v;
}

std::vector<Vec6> unflatten(const Eigen::VectorXd& v) {
  std::vector<Vec6> out(static_cast<std::size_t>(v.size() / 6));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = v.segment<6>(6 * static_cast<Eigen::Index>(i));
  }
  return out;
}

}  // namespace fvmoor
