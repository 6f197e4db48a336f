#pragma once

#include <optional>
#include <vector>

#include "fvmoor/types.hpp"

namespace fvmoor {

/// Planar elastic catenary between an anchor and a fairlead that is
/// `vertical_span` above it and `horizontal_span` away.
struct CatenaryProblem {
  double horizontal_span = 0.0;    // m, >= 0
  double vertical_span = 0.0;      // m, fairlead minus anchor elevation
  double length = 0.0;             // unstretched, m
  double weight_per_length = 0.0;  // submerged, N/m
  double axial_stiffness = 0.0;    // EA, N
  /// Allow part of the line to rest on a frictionless seabed through the anchor.
  bool seabed_at_anchor = false;
  int samples = 51;
};

struct CatenarySolution {
  double horizontal_tension = 0.0;  // H, N
  double anchor_vertical = 0.0;     // vertical force component at the anchor, N
  double fairlead_vertical = 0.0;   // at the fairlead, N
  double anchor_tension = 0.0;
  double fairlead_tension = 0.0;
  double grounded_length = 0.0;     // unstretched length on the seabed, m
  // Sampled shape relative to the anchor, in the vertical plane.
  std::vector<double> arc, x, z, tension;
};

/// Solves the boundary-value problem by shooting on the horizontal tension.
/// Throws SolverError when no bracket contains a solution.
CatenarySolution elastic_catenary(const CatenaryProblem& problem);

/// Three-dimensional wrapper returning the tension vectors pulling on each
/// support (anchor force points from the anchor into the line).
struct CatenaryEnds {
  Vec3 anchor_force = Vec3::Zero();
  Vec3 fairlead_force = Vec3::Zero();
  CatenarySolution planar;
};

CatenaryEnds elastic_catenary(const Vec3& anchor, const Vec3& fairlead, double length,
                              double weight_per_length, double axial_stiffness,
                              bool seabed_at_anchor = false);

}  // namespace fvmoor
