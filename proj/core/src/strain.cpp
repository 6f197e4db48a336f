#include "fvmoor/beam/strain.hpp"

#include "beam_kernels.hpp"

namespace fvmoor {

StrainState compute_strain(const BeamState& state) {
  state.validate();
  const std::size_t n = state.cells();
  if (n < 2) throw ValidationError("strain: at least two cells required");
  StrainState out;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const auto flux = detail::interior_face_flux<double>(
        state.position[k], state.orientation[k], state.position[k + 1],
        state.orientation[k + 1], state.cell_length[k], state.cell_length[k + 1],
        state.section);
    out.axial.push_back(flux.axial_strain);
    out.shear.push_back(flux.shear_strain);
    out.curvature.push_back(flux.curvature);
    out.face_orientation.push_back(flux.orientation);
  }
  return out;
}

InternalLoads internal_loads(const StrainState& strain, const CrossSection& section) {
  InternalLoads out;
  const Vec3 cn = section.force_stiffness();
  const Vec3 cm = section.moment_stiffness();
  for (std::size_t k = 0; k < strain.faces(); ++k) {
    const Mat3 r = strain.face_orientation[k].toRotationMatrix();
    out.force.push_back(r * cn.cwiseProduct(strain.shear[k]));
    out.moment.push_back(r * cm.cwiseProduct(strain.curvature[k]));
  }
  return out;
}

}  // namespace fvmoor
