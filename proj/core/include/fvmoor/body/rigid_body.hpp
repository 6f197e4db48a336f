#pragma once

#include <optional>
#include <vector>

#include "fvmoor/types.hpp"

namespace fvmoor {

/// Floating body. Pose and velocity refer to the centre of mass; the angular
/// velocity and inertia are expressed in the body frame.
struct RigidBodyState {
  Vec3 position = Vec3::Zero();
  Quat orientation = Quat::Identity();
  Vec3 velocity = Vec3::Zero();
  Vec3 angular_velocity = Vec3::Zero();
  double mass = 1.0;
  Mat3 inertia = Mat3::Identity();
  /// Constant added mass (surge, sway, heave, roll, pitch, yaw) in the body
  /// frame, treated implicitly by the integrator.
  Vec6 added_mass = Vec6::Zero();
  /// Attachment points in the body frame, relative to the centre of mass.
  std::vector<Vec3> fairleads;

  Mat3 rotation() const { return orientation.toRotationMatrix(); }
  /// Throws ValidationError for non-positive mass, a non-SPD inertia or a
  /// non-unit quaternion.
  void validate() const;
};

struct HydroLoads {
  Vec3 force = Vec3::Zero();   // inertial frame, N
  Vec3 moment = Vec3::Zero();  // about the centre of mass, inertial frame, N m
};

struct BodyLoads {
  Vec3 force = Vec3::Zero();
  Vec3 moment = Vec3::Zero();
  Vec3 hydro_force = Vec3::Zero();
  Vec3 hydro_moment = Vec3::Zero();
  Vec3 mooring_force = Vec3::Zero();
  Vec3 mooring_moment = Vec3::Zero();
  Vec3 gravity_force = Vec3::Zero();
  Vec3 gravity_moment = Vec3::Zero();
};

/// Sums hydro, mooring and gravity loads. `fairlead_forces[k]` is the force
/// applied to the body at fairlead k, in the inertial frame.
BodyLoads aggregate_loads(const RigidBodyState& body, const std::vector<Vec3>& fairlead_forces,
                          const HydroLoads& hydro, const Vec3& gravity);

struct BodyAccelerations {
  Vec3 linear = Vec3::Zero();   // inertial frame, m/s^2
  Vec3 angular = Vec3::Zero();  // body frame, rad/s^2
};

struct BodyStep {
  RigidBodyState state;
  BodyAccelerations accelerations;  // after relaxation
};

/// Semi-implicit Euler step of length dt from `start`. When
/// `previous_iterate` holds the accelerations used by the preceding outer
/// iteration of the same step, the new accelerations are blended as
/// relax * new + (1 - relax) * previous.
BodyStep integrate_6dof(const RigidBodyState& start, const BodyLoads& loads, double dt,
                        double relax,
                        const std::optional<BodyAccelerations>& previous_iterate = std::nullopt);

struct FairleadKinematics {
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
};

std::vector<FairleadKinematics> fairlead_kinematics(const RigidBodyState& body);

/// Rotational plus translational kinetic energy, J.
double kinetic_energy(const RigidBodyState& body);

}  // namespace fvmoor
