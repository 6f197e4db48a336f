#pragma once

#include <functional>

#include "fvmoor/types.hpp"

namespace fvmoor {

/// Fluid, gravity and seabed description used by the line load model.
struct LoadEnvironment {
  double fluid_density = 1000.0;                 // rho_f, kg/m^3 (0 for vacuum)
  Vec3 gravity = Vec3(0.0, 0.0, -9.81);          // m/s^2
  double drag_tangential = 0.5;                  // C_D,t
  double drag_normal = 1.6;                      // C_D,n
  double added_mass_tangential = 0.0;            // C_M,t
  double added_mass_normal = 1.6;                // C_M,n
  double seabed_elevation = -0.5;                // z_g, m
  double seabed_stiffness = 1000.0;              // K_n, N/m^2
  double seabed_damping = 1.0;                   // C, N s/m^2
  double seabed_tangential_stiffness = 100.0;    // K_t, N s/m^2
  double friction_coefficient = 0.01;            // mu

  /// Ambient fluid velocity and acceleration fields; empty means quiescent.
  std::function<Vec3(const Vec3&, double)> fluid_velocity;
  std::function<Vec3(const Vec3&, double)> fluid_acceleration;

  /// Throws ValidationError if a coefficient has the wrong sign.
  void validate() const;

  /// The same environment with every fluid and seabed term disabled.
  static LoadEnvironment vacuum(const Vec3& g = Vec3(0.0, 0.0, -9.81));
};

}  // namespace fvmoor
