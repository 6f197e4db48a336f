#pragma once

#include <algorithm>
#include <cmath>

#include "fvmoor/ad.hpp"
#include "fvmoor/types.hpp"

namespace fvmoor {

template <typename T>
using Vec3T = Eigen::Matrix<T, 3, 1>;
template <typename T>
using Mat3T = Eigen::Matrix<T, 3, 3>;
template <typename T>
using QuatT = Eigen::Quaternion<T>;

namespace detail {
// Below this squared angle the closed forms are replaced by their Taylor
// series so that dual-number derivatives stay finite at the identity.
inline constexpr double kSmallAngle2 = 1e-16;
}  // namespace detail

/// Unit quaternion of the rotation vector `theta` (axis * angle).
template <typename T>
QuatT<T> quat_exp(const Vec3T<T>& theta) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const T t2 = theta.squaredNorm();
  T w;
  T k;
  if (value_of(t2) < detail::kSmallAngle2) {
    w = T(1.0) - t2 / 8.0;
    k = T(0.5) - t2 / 48.0;
  } else {
    const T t = sqrt(t2);
    w = cos(t / 2.0);
    k = sin(t / 2.0) / t;
  }
  return QuatT<T>(w, k * theta.x(), k * theta.y(), k * theta.z());
}

/// Rotation vector of a unit quaternion, on the shortest-arc branch.
template <typename T>
Vec3T<T> quat_log(const QuatT<T>& q_in) {
  using std::atan2;
  using std::sqrt;
  QuatT<T> q = q_in;
  if (value_of(q.w()) < 0.0) q.coeffs() = -q.coeffs();
  const Vec3T<T> v = q.vec();
  const T s2 = v.squaredNorm();
  const T w = q.w();
  T factor;
  if (value_of(s2) < detail::kSmallAngle2) {
    factor = 2.0 / w * (T(1.0) - s2 / (3.0 * w * w));
  } else {
    const T s = sqrt(s2);
    factor = 2.0 * atan2(s, w) / s;
  }
  return factor * v;
}

/// Spherical interpolation at parameter 1/2, which equals the normalised sum
/// of the two quaternions taken in the same hemisphere.
template <typename T>
QuatT<T> quat_midpoint(const QuatT<T>& a, const QuatT<T>& b) {
  const T dot = a.coeffs().dot(b.coeffs());
  Eigen::Matrix<T, 4, 1> c =
      value_of(dot) < 0.0 ? Eigen::Matrix<T, 4, 1>(a.coeffs() - b.coeffs())
                          : Eigen::Matrix<T, 4, 1>(a.coeffs() + b.coeffs());
  QuatT<T> m;
  m.coeffs() = c / c.norm();
  return m;
}

/// General slerp between unit quaternions, shortest arc.
inline Quat quat_slerp(const Quat& a, const Quat& b, double t) {
  Quat bb = b;
  if (a.coeffs().dot(b.coeffs()) < 0.0) bb.coeffs() = -b.coeffs();
  const Vec3 rel = quat_log<double>(a.conjugate() * bb);
  return (a * quat_exp<double>(Vec3(t * rel))).normalized();
}

/// Fractional power of a unit quaternion via axis-angle scaling.
inline Quat quat_pow(const Quat& q, double exponent) {
  return quat_exp<double>(Vec3(exponent * quat_log<double>(q)));
}

/// Convert a jet-valued vector to its real part.
template <typename T>
Vec3 real_part(const Vec3T<T>& v) {
  return Vec3(value_of(v.x()), value_of(v.y()), value_of(v.z()));
}

/// Roll, pitch, yaw (intrinsic z-y'-x'') of a unit quaternion in radians.
inline Vec3 roll_pitch_yaw(const Quat& q) {
  const double w = q.w(), x = q.x(), y = q.y(), z = q.z();
  const double roll = std::atan2(2.0 * (w * x + y * z), 1.0 - 2.0 * (x * x + y * y));
  const double sp = std::clamp(2.0 * (w * y - z * x), -1.0, 1.0);
  const double pitch = std::asin(sp);
  const double yaw = std::atan2(2.0 * (w * z + x * y), 1.0 - 2.0 * (y * y + z * z));
  return {roll, pitch, yaw};
}

}  // namespace fvmoor
