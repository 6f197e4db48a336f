#pragma once

// Forward-mode dual numbers used to obtain exact Jacobian blocks of the beam
// residual. Only the header-only Jet type of Ceres is used.
#include <ceres/jet.h>

namespace fvmoor {

/// Number of unknowns seen by a single face or cell stencil evaluation.
inline constexpr int kStencilUnknowns = 12;

using Dual = ceres::Jet<double, kStencilUnknowns>;

inline double value_of(double x) { return x; }

template <typename T, int N>
inline T value_of(const ceres::Jet<T, N>& x) {
  return x.a;
}

}  // namespace fvmoor
