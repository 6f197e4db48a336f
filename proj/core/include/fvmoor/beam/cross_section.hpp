#pragma once

#include <optional>

#include "fvmoor/types.hpp"

namespace fvmoor {

/// Geometric and material properties of a circular beam cross-section.
///
/// Stiffness blocks are expressed in the material frame with the first axis
/// along the centre line: `axial_shear = (EA, GA2, GA3)` and
/// `torsion_bending = (GJ, EI2, EI3)`.
struct CrossSection {
  double area = 0.0;             // m^2
  double diameter = 0.0;         // m
  double second_moment_2 = 0.0;  // m^4
  double second_moment_3 = 0.0;  // m^4
  double polar_moment = 0.0;     // m^4
  double axial_stiffness = 0.0;          // EA, N
  double shear_stiffness_2 = 0.0;        // GA2, N
  double shear_stiffness_3 = 0.0;        // GA3, N
  double bending_stiffness_2 = 0.0;      // EI2, N m^2
  double bending_stiffness_3 = 0.0;      // EI3, N m^2
  double torsional_stiffness = 0.0;      // GJ, N m^2
  double density = 0.0;                  // rho_b, kg/m^3

  double mass_per_length() const { return density * area; }
  Vec3 force_stiffness() const {
    return {axial_stiffness, shear_stiffness_2, shear_stiffness_3};
  }
  Vec3 moment_stiffness() const {
    return {torsional_stiffness, bending_stiffness_2, bending_stiffness_3};
  }
  /// Rotational inertia per unit length in the material frame, kg m.
  Vec3 rotary_inertia() const {
    return density * Vec3(polar_moment, second_moment_2, second_moment_3);
  }

  /// Throws ValidationError unless every stiffness and the line mass are positive.
  void validate() const;

  /// Solid circular section from diameter, axial stiffness and line mass.
  ///
  /// Missing stiffnesses default to GA = EA/2, EI = E*pi*d^4/64 with
  /// E = EA/A, and GJ = EI.
  static CrossSection circular(double diameter, double axial_stiffness,
                               double mass_per_length,
                               std::optional<double> shear_stiffness = {},
                               std::optional<double> bending_stiffness = {},
                               std::optional<double> torsional_stiffness = {});
};

}  // namespace fvmoor
