#pragma once

#include <vector>

#include "fvmoor/beam/beam_state.hpp"

namespace fvmoor {

/// Strain measures at the interior faces of a beam (face k lies between
/// cells k and k+1, so there are N-1 entries).
struct StrainState {
  std::vector<double> axial;          // epsilon = |dr/ds| - 1
  std::vector<Vec3> shear;            // Gamma = R^T dr/ds - e1
  std::vector<Vec3> curvature;        // kappa, material frame, 1/m
  std::vector<Quat> face_orientation; // interpolated face frames

  std::size_t faces() const { return axial.size(); }
};

/// Strains at interior faces, with tangents from central differences of the
/// adjacent cell centres over the undeformed spacing.
StrainState compute_strain(const BeamState& state);

/// Internal force and moment resultants in the spatial frame.
struct InternalLoads {
  std::vector<Vec3> force;
  std::vector<Vec3> moment;
};

/// n = R diag(EA, GA2, GA3) Gamma and m = R diag(GJ, EI2, EI3) kappa at each face.
InternalLoads internal_loads(const StrainState& strain, const CrossSection& section);

}  // namespace fvmoor
