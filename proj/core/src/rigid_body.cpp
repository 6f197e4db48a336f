#include "fvmoor/body/rigid_body.hpp"

#include <cmath>

#include "fvmoor/rotation.hpp"

namespace fvmoor {

void RigidBodyState::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw ValidationError("body: mass must be positive");
  if (!inertia.isApprox(inertia.transpose(), 1e-12)) {
    throw ValidationError("body: inertia must be symmetric");
  }
  Eigen::LLT<Mat3> llt(inertia);
  if (llt.info() != Eigen::Success) throw ValidationError("body: inertia must be positive definite");
  if (std::abs(orientation.norm() - 1.0) > 1e-10) {
    throw ValidationError("body: orientation must be a unit quaternion");
  }
  if ((added_mass.array() < 0.0).any()) throw ValidationError("body: added mass must be >= 0");
}

BodyLoads aggregate_loads(const RigidBodyState& body, const std::vector<Vec3>& fairlead_forces,
                          const HydroLoads& hydro, const Vec3& gravity) {
  if (fairlead_forces.size() != body.fairleads.size()) {
    throw ValidationError("body: one force per fairlead required");
  }
  BodyLoads out;
  out.hydro_force = hydro.force;
  out.hydro_moment = hydro.moment;
  const Mat3 r = body.rotation();
  for (std::size_t k = 0; k < fairlead_forces.size(); ++k) {
    out.mooring_force += fairlead_forces[k];
    out.mooring_moment += (r * body.fairleads[k]).cross(fairlead_forces[k]);
  }
  out.gravity_force = body.mass * gravity;
  out.force = out.hydro_force + out.mooring_force + out.gravity_force;
  out.moment = out.hydro_moment + out.mooring_moment + out.gravity_moment;
  return out;
}

BodyStep integrate_6dof(const RigidBodyState& start, const BodyLoads& loads, double dt,
                        double relax, const std::optional<BodyAccelerations>& previous_iterate) {
  if (!(dt > 0.0)) throw ValidationError("body: time step must be positive");
  if (!(relax > 0.0 && relax <= 1.0)) throw ValidationError("body: relax must be in (0, 1]");
  const Mat3 r = start.rotation();
  // Translational added mass acts along body axes.
  const Mat3 ma = r * start.added_mass.head<3>().asDiagonal() * r.transpose();
  const Mat3 m_eff = start.mass * Mat3::Identity() + ma;
  const Mat3 i_eff = start.inertia + Mat3(start.added_mass.tail<3>().asDiagonal());
  Eigen::FullPivLU<Mat3> i_lu(i_eff);
  if (!i_lu.isInvertible()) throw SolverError("body: singular inertia");

  BodyAccelerations acc;
  acc.linear = m_eff.ldlt().solve(loads.force);
  // Body angular momentum carried with the rotating frame, then torqued.
  const Vec3 w = start.angular_velocity;
  const Vec3 momentum = i_eff * w;
  const Vec3 carried = quat_exp<double>(Vec3(-dt * w)) * momentum;
  const Vec3 predicted = i_lu.solve(Vec3(carried + dt * (r.transpose() * loads.moment)));
  acc.angular = (predicted - w) / dt;

  if (previous_iterate) {
    acc.linear = relax * acc.linear + (1.0 - relax) * previous_iterate->linear;
    acc.angular = relax * acc.angular + (1.0 - relax) * previous_iterate->angular;
  }

  BodyStep out{start, acc};
  RigidBodyState& s = out.state;
  s.velocity = start.velocity + dt * acc.linear;
  s.position = start.position + dt * s.velocity;
  s.angular_velocity = start.angular_velocity + dt * acc.angular;
  s.orientation = (start.orientation * quat_exp<double>(Vec3(dt * s.angular_velocity))).normalized();
  return out;
}

std::vector<FairleadKinematics> fairlead_kinematics(const RigidBodyState& body) {
  const Mat3 r = body.rotation();
  const Vec3 w = r * body.angular_velocity;
  std::vector<FairleadKinematics> out;
  out.reserve(body.fairleads.size());
  for (const Vec3& p : body.fairleads) {
    const Vec3 arm = r * p;
    out.push_back({body.position + arm, body.velocity + w.cross(arm)});
  }
  return out;
}

double kinetic_energy(const RigidBodyState& body) {
  return 0.5 * body.mass * body.velocity.squaredNorm() +
         0.5 * body.angular_velocity.dot(body.inertia * body.angular_velocity);
}

}  // namespace fvmoor
