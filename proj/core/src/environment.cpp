#include "fvmoor/loads/environment.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace fvmoor {

void LoadEnvironment::validate() const {
  auto non_negative = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ValidationError(std::string("environment: ") + name + " must be non-negative");
    }
  };
  non_negative(fluid_density, "fluid_density");
  non_negative(drag_tangential, "drag_tangential");
  non_negative(drag_normal, "drag_normal");
  non_negative(added_mass_tangential, "added_mass_tangential");
  non_negative(added_mass_normal, "added_mass_normal");
  non_negative(seabed_stiffness, "seabed_stiffness");
  non_negative(seabed_damping, "seabed_damping");
  non_negative(seabed_tangential_stiffness, "seabed_tangential_stiffness");
  non_negative(friction_coefficient, "friction_coefficient");
  if (!gravity.allFinite()) throw ValidationError("environment: gravity must be finite");
}

LoadEnvironment LoadEnvironment::vacuum(const Vec3& g) {
  LoadEnvironment e;
  e.fluid_density = 0.0;
  e.gravity = g;
  e.drag_tangential = e.drag_normal = 0.0;
  e.added_mass_tangential = e.added_mass_normal = 0.0;
  e.seabed_elevation = -std::numeric_limits<double>::infinity();
  e.seabed_stiffness = e.seabed_damping = 0.0;
  e.seabed_tangential_stiffness = 0.0;
  e.friction_coefficient = 0.0;
  return e;
}

}  // namespace fvmoor
