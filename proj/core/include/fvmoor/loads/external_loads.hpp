#pragma once

// Distributed external force per unit length on a line cell. Every function
// is a pure template over the scalar type so the beam solver can evaluate it
// with dual numbers for exact Jacobians.

#include <cmath>

#include "fvmoor/beam/cross_section.hpp"
#include "fvmoor/loads/environment.hpp"
#include "fvmoor/rotation.hpp"

namespace fvmoor {

/// Kinematics of one cell centre. `tangent` has unit length; `strain` is the
/// axial strain used by the drag stretch factor.
template <typename T>
struct CellKinematics {
  Vec3T<T> position = Vec3T<T>::Zero();
  Vec3T<T> velocity = Vec3T<T>::Zero();
  Vec3T<T> acceleration = Vec3T<T>::Zero();
  Vec3T<T> tangent = Vec3T<T>::UnitX();
  T strain = T(0.0);
  double time = 0.0;
};

namespace detail {

// Norm whose derivative is taken as zero at the origin, where every caller
// multiplies it by a vanishing vector.
template <typename T>
T safe_norm(const Vec3T<T>& v) {
  using std::sqrt;
  const T n2 = v.squaredNorm();
  if (value_of(n2) <= 0.0) return T(0.0);
  return sqrt(n2);
}

template <typename T>
Vec3T<T> lift(const Vec3& v) {
  return v.cast<T>();
}

template <typename T>
Vec3T<T> fluid_velocity_at(const CellKinematics<T>& k, const LoadEnvironment& env) {
  if (!env.fluid_velocity) return Vec3T<T>::Zero();
  return lift<T>(env.fluid_velocity(real_part(k.position), k.time));
}

template <typename T>
Vec3T<T> fluid_acceleration_at(const CellKinematics<T>& k, const LoadEnvironment& env) {
  if (!env.fluid_acceleration) return Vec3T<T>::Zero();
  return lift<T>(env.fluid_acceleration(real_part(k.position), k.time));
}

}  // namespace detail

/// Morison quadratic drag, split into tangential and normal parts. The force
/// opposes the velocity of the line relative to the fluid.
template <typename T>
Vec3T<T> drag_force(const CellKinematics<T>& k, const CrossSection& s,
                    const LoadEnvironment& env) {
  using std::sqrt;
  if (value_of(k.strain) < -1.0) throw GeometryError("drag: axial strain below -1");
  const Vec3T<T> vr = k.velocity - detail::fluid_velocity_at(k, env);
  const Vec3T<T> vt = k.tangent * k.tangent.dot(vr);
  const Vec3T<T> vn = vr - vt;
  const T stretch = sqrt(T(1.0) + k.strain);
  const T scale = 0.5 * env.fluid_density * s.diameter * stretch;
  return -scale * (env.drag_tangential * detail::safe_norm(vt) * vt +
                   env.drag_normal * detail::safe_norm(vn) * vn);
}

/// Added-mass reaction of the fluid plus the Froude-Krylov term of a
/// non-quiescent field: rho_f A (a_f - C_M,t a_r,t - C_M,n a_r,n).
template <typename T>
Vec3T<T> added_mass_force(const CellKinematics<T>& k, const CrossSection& s,
                          const LoadEnvironment& env) {
  const Vec3T<T> af = detail::fluid_acceleration_at(k, env);
  const Vec3T<T> ar = k.acceleration - af;
  const Vec3T<T> at = k.tangent * k.tangent.dot(ar);
  const Vec3T<T> an = ar - at;
  return env.fluid_density * s.area *
         (af - env.added_mass_tangential * at - env.added_mass_normal * an);
}

/// Net weight in the fluid, (rho_b - rho_f) A g.
inline Vec3 buoyancy_force(const CrossSection& s, const LoadEnvironment& env) {
  return (s.density - env.fluid_density) * s.area * env.gravity;
}

/// Split of the seabed reaction into its normal and friction parts.
template <typename T>
struct SeabedReaction {
  Vec3T<T> normal = Vec3T<T>::Zero();
  Vec3T<T> friction = Vec3T<T>::Zero();
  Vec3T<T> total() const { return normal + friction; }
};

/// Penalty spring-damper normal reaction and stick/slip Coulomb friction on a
/// flat horizontal seabed with upward unit normal.
template <typename T>
SeabedReaction<T> seabed_reaction(const CellKinematics<T>& k, const CrossSection& s,
                                  const LoadEnvironment& env) {
  SeabedReaction<T> out;
  const T penetration = env.seabed_elevation - k.position.z();
  if (!(value_of(penetration) > 0.0)) return out;
  const double d = s.diameter;
  // Damping only resists downward (penetrating) motion.
  T sink = -k.velocity.z();
  if (value_of(sink) < 0.0) sink = T(0.0);
  T fn = env.seabed_stiffness * d * penetration + env.seabed_damping * d * sink;
  if (value_of(fn) < 0.0) fn = T(0.0);
  out.normal = Vec3T<T>(T(0.0), T(0.0), fn);

  const Vec3T<T> vt(k.velocity.x(), k.velocity.y(), T(0.0));
  const T speed = detail::safe_norm(vt);
  const T limit = env.friction_coefficient * fn;
  const T stick = env.seabed_tangential_stiffness * d * speed;
  if (value_of(speed) > 0.0 && value_of(stick) >= value_of(limit)) {
    out.friction = -limit * vt / speed;
  } else {
    out.friction = -env.seabed_tangential_stiffness * d * vt;
  }
  return out;
}

template <typename T>
Vec3T<T> seabed_force(const CellKinematics<T>& k, const CrossSection& s,
                      const LoadEnvironment& env) {
  return seabed_reaction(k, s, env).total();
}

/// f_ext = f_d + f_a + f_b + f_gc; gravity enters through the net-weight term.
template <typename T>
Vec3T<T> total_external(const CellKinematics<T>& k, const CrossSection& s,
                        const LoadEnvironment& env) {
  return drag_force(k, s, env) + added_mass_force(k, s, env) +
         detail::lift<T>(buoyancy_force(s, env)) + seabed_force(k, s, env);
}

}  // namespace fvmoor
