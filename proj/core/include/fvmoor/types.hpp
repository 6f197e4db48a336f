#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Geometry>

namespace fvmoor {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Quat = Eigen::Quaterniond;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input or configuration that violates a documented invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Degenerate geometry detected while evaluating strains.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// A nonlinear or linear solve failed.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Newton iteration hit the iteration cap; carries the last residual norm.
class ConvergenceError : public SolverError {
 public:
  ConvergenceError(const std::string& what, double last_residual)
      : SolverError(what), last_residual_(last_residual) {}
  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

}  // namespace fvmoor
