#pragma once

// Scalar-generic face and cell kernels of the finite-volume beam residual.

#include "fvmoor/beam/beam_state.hpp"
#include "fvmoor/loads/external_loads.hpp"
#include "fvmoor/rotation.hpp"

namespace fvmoor::detail {

inline constexpr double kMinSegment = 1e-12;

template <typename T>
using Vec6T = Eigen::Matrix<T, 6, 1>;

template <typename T>
struct FaceFlux {
  Vec3T<T> force = Vec3T<T>::Zero();
  Vec3T<T> moment = Vec3T<T>::Zero();
  Vec3T<T> position = Vec3T<T>::Zero();
  QuatT<T> orientation = QuatT<T>::Identity();
  T axial_strain = T(0.0);
  Vec3T<T> shear_strain = Vec3T<T>::Zero();
  Vec3T<T> curvature = Vec3T<T>::Zero();
  double spacing = 0.0;
};

template <typename T>
void check_segment(const Vec3T<T>& d) {
  if (value_of(d.squaredNorm()) < kMinSegment * kMinSegment) {
    throw GeometryError("zero-length segment");
  }
}

// Face between cell a (west) and cell b (east).
template <typename T>
FaceFlux<T> interior_face_flux(const Vec3T<T>& ra, const QuatT<T>& qa, const Vec3T<T>& rb,
                               const QuatT<T>& qb, double la, double lb,
                               const CrossSection& s) {
  FaceFlux<T> f;
  const double h = 0.5 * (la + lb);
  const Vec3T<T> d = rb - ra;
  check_segment(d);
  const Vec3T<T> tangent = d / h;
  f.orientation = quat_midpoint(qa, qb);
  const Mat3T<T> r = f.orientation.toRotationMatrix();
  f.shear_strain = r.transpose() * tangent - Vec3T<T>::UnitX();
  f.curvature = quat_log<T>(QuatT<T>(qa.conjugate() * qb)) / h;
  f.axial_strain = tangent.norm() - 1.0;
  f.force = r * s.force_stiffness().cast<T>().cwiseProduct(f.shear_strain);
  f.moment = r * s.moment_stiffness().cast<T>().cwiseProduct(f.curvature);
  f.position = ra + (la / (la + lb)) * d;
  f.spacing = h;
  return f;
}

// Face at a constrained end located at `p`. `west_end` is true for the s = 0
// end. Bending moment is zero; an optional torsional lock ties the cell twist
// to `twist_ref`.
template <typename T>
FaceFlux<T> pinned_face_flux(const Vec3T<T>& rc, const QuatT<T>& qc, const Vec3& p,
                             double lc, bool west_end, const CrossSection& s,
                             const Quat* twist_ref) {
  FaceFlux<T> f;
  const double h = 0.5 * lc;
  const Vec3T<T> pp = p.cast<T>();
  const Vec3T<T> d = west_end ? Vec3T<T>(rc - pp) : Vec3T<T>(pp - rc);
  check_segment(d);
  const Vec3T<T> tangent = d / h;
  f.orientation = qc;
  const Mat3T<T> r = qc.toRotationMatrix();
  f.shear_strain = r.transpose() * tangent - Vec3T<T>::UnitX();
  f.axial_strain = tangent.norm() - 1.0;
  f.force = r * s.force_stiffness().cast<T>().cwiseProduct(f.shear_strain);
  if (twist_ref != nullptr) {
    const Vec3T<T> rel = quat_log<T>(QuatT<T>(twist_ref->cast<T>().conjugate() * qc));
    const T twist = rel.x() / h;
    f.curvature = Vec3T<T>(twist, T(0.0), T(0.0));
    const T torque = s.torsional_stiffness * twist;
    const Vec3T<T> m_mat(torque, T(0.0), T(0.0));
    // Sign so the face behaves as the west face (moment acting on s- side).
    f.moment = west_end ? Vec3T<T>(r * m_mat) : Vec3T<T>(-(r * m_mat));
  }
  f.position = pp;
  f.spacing = h;
  return f;
}

template <typename T>
FaceFlux<T> free_face_flux(const Vec3T<T>& rc, const QuatT<T>& qc, double lc, bool west_end) {
  FaceFlux<T> f;
  const Vec3T<T> axis = qc.toRotationMatrix().col(0);
  f.position = west_end ? Vec3T<T>(rc - 0.5 * lc * axis) : Vec3T<T>(rc + 0.5 * lc * axis);
  f.orientation = qc;
  f.spacing = 0.5 * lc;
  return f;
}

// Per-cell source terms: external load, translational and rotational inertia.
struct CellHistory {
  Vec3 position;
  Quat orientation;
  Vec3 velocity;
  Vec3 angular_velocity;
};

struct StepInfo {
  double dt = 0.0;
  double time = 0.0;
  bool quasi_static = true;
};

template <typename T>
CellKinematics<T> cell_kinematics(const Vec3T<T>& r, const Vec3T<T>& xw, const Vec3T<T>& xe,
                                  double lc, const CellHistory& prev, const StepInfo& step) {
  CellKinematics<T> k;
  k.position = r;
  k.time = step.time;
  const Vec3T<T> t = (xe - xw) / lc;
  check_segment(Vec3T<T>(xe - xw));
  const T tn = t.norm();
  k.tangent = t / tn;
  k.strain = tn - 1.0;
  if (!step.quasi_static) {
    k.velocity = (r - prev.position.cast<T>()) / step.dt;
    k.acceleration = (k.velocity - prev.velocity.cast<T>()) / step.dt;
  }
  return k;
}

template <typename T>
Vec6T<T> cell_source(const Vec3T<T>& r, const QuatT<T>& q, const Vec3T<T>& xw,
                     const Vec3T<T>& xe, double lc, const CellHistory& prev,
                     const StepInfo& step, const CrossSection& s, const LoadEnvironment& env) {
  const CellKinematics<T> k = cell_kinematics(r, xw, xe, lc, prev, step);
  Vec3T<T> force = total_external(k, s, env);
  Vec3T<T> moment = Vec3T<T>::Zero();
  if (!step.quasi_static) {
    force -= s.mass_per_length() * k.acceleration;
    const Vec3T<T> omega =
        quat_log<T>(QuatT<T>(q * prev.orientation.cast<T>().conjugate())) / step.dt;
    const Mat3T<T> rot = q.toRotationMatrix();
    const Vec3 inertia = s.rotary_inertia();
    const Vec3T<T> spin = rot * inertia.cast<T>().cwiseProduct(rot.transpose() * omega);
    const Mat3 rp = prev.orientation.toRotationMatrix();
    const Vec3 spin_prev = rp * inertia.cwiseProduct(rp.transpose() * prev.angular_velocity);
    moment -= (spin - spin_prev.cast<T>()) / step.dt;
  }
  Vec6T<T> out;
  out.template head<3>() = force * lc;
  out.template tail<3>() = moment * lc;
  return out;
}

}  // namespace fvmoor::detail
