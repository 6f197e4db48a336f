#include "fvmoor/beam/cross_section.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace fvmoor {

void CrossSection::validate() const {
  auto require = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ValidationError(std::string("cross-section: ") + name + " must be positive");
    }
  };
  require(area, "area");
  require(diameter, "diameter");
  require(axial_stiffness, "axial stiffness");
  require(shear_stiffness_2, "shear stiffness GA2");
  require(shear_stiffness_3, "shear stiffness GA3");
  require(bending_stiffness_2, "bending stiffness EI2");
  require(bending_stiffness_3, "bending stiffness EI3");
  require(torsional_stiffness, "torsional stiffness");
  require(mass_per_length(), "mass per unit length");
}

CrossSection CrossSection::circular(double diameter, double axial_stiffness,
                                    double mass_per_length,
                                    std::optional<double> shear_stiffness,
                                    std::optional<double> bending_stiffness,
                                    std::optional<double> torsional_stiffness) {
  if (!(diameter > 0.0)) throw ValidationError("cross-section: diameter must be positive");
  CrossSection s;
  s.diameter = diameter;
  s.area = std::numbers::pi * diameter * diameter / 4.0;
  s.second_moment_2 = std::numbers::pi * std::pow(diameter, 4) / 64.0;
  s.second_moment_3 = s.second_moment_2;
  s.polar_moment = 2.0 * s.second_moment_2;
  s.axial_stiffness = axial_stiffness;
  const double youngs = axial_stiffness / s.area;
  const double ga = shear_stiffness.value_or(axial_stiffness / 2.0);
  const double ei = bending_stiffness.value_or(youngs * s.second_moment_2);
  s.shear_stiffness_2 = ga;
  s.shear_stiffness_3 = ga;
  s.bending_stiffness_2 = ei;
  s.bending_stiffness_3 = ei;
  s.torsional_stiffness = torsional_stiffness.value_or(ei);
  s.density = mass_per_length / s.area;
  s.validate();
  return s;
}

}  // namespace fvmoor
