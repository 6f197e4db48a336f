#include "fvmoor/morph/mesh_morph.hpp"

#include <algorithm>
#include <cmath>

#include "fvmoor/rotation.hpp"

namespace fvmoor {

void MorphConfig::validate() const {
  if (!(inner_radius > 0.0 && inner_radius < outer_radius)) {
    throw ValidationError("morph: radii must satisfy 0 < inner < outer");
  }
  if (std::abs(initial_orientation.norm() - 1.0) > 1e-12) {
    throw ValidationError("morph: initial orientation must be a unit quaternion");
  }
  for (const auto& a : translation) {
    if (a && (a->zone < 0.0 || a->ramp < 0.0)) throw ValidationError("morph: translation zone must be >= 0");
  }
  if (!distance) throw ValidationError("morph: distance function not set");
}

double box_distance(const Vec3& p, const Vec3& centre, const Vec3& dimensions, const Quat& orientation) {
  const Vec3 local = orientation.conjugate() * (p - centre);
  const Vec3 outside = (local.cwiseAbs() - 0.5 * dimensions).cwiseMax(0.0);
  return outside.norm();
}

MorphConfig benchmark_morph_config(const Vec3& dimensions) {
  MorphConfig c;
  c.distance = [dimensions](const Vec3& p) { return box_distance(p, Vec3::Zero(), dimensions); };
  const double ramp = c.outer_radius - c.inner_radius;
  c.translation[0] = AxisProfile{0.9, ramp};
  c.translation[2] = AxisProfile{0.1, ramp};
  return c;
}

double blend_weight_at(double w, double r_in, double r_out) {
  if (w <= r_in) return 1.0;
  if (w >= r_out) return 0.0;
  return 1.0 - (w - r_in) / (r_out - r_in);
}

double blend_weight(const Vec3& p, const MorphConfig& cfg) {
  return blend_weight_at(cfg.distance(p), cfg.inner_radius, cfg.outer_radius);
}

Quat blended_rotation(const Quat& q, const Quat& q0, double beta) {
  if (beta == 1.0) return q.normalized();
  if (beta == 0.0) return q0.normalized();
  const Vec3 rel = quat_log<double>(q * q0.conjugate());
  return (quat_exp<double>(Vec3(beta * rel)) * q0).normalized();
}

Vec3 translation_weights(const Vec3& p, const MorphConfig& cfg) {
  Vec3 a;
  double beta = -1.0;
  for (int k = 0; k < 3; ++k) {
    const auto& prof = cfg.translation[static_cast<std::size_t>(k)];
    if (!prof) {
      if (beta < 0.0) beta = blend_weight(p, cfg);
      a[k] = beta;
      continue;
    }
    const double d = std::abs(p[k]) - prof->zone;
    if (d <= 0.0) a[k] = 1.0;
    else if (d >= prof->ramp) a[k] = 0.0;
    else a[k] = 1.0 - d / prof->ramp;
  }
  return a;
}

Vec3 point_displacement(const Vec3& p, const Vec3& b, const Quat& q, const MorphConfig& cfg) {
  const double beta = blend_weight(p, cfg);
  const Quat qb = blended_rotation(q, cfg.initial_orientation, beta);
  // Rotation relative to the initial pose, so the identity pose leaves p fixed.
  const Quat r = qb * cfg.initial_orientation.conjugate();
  const Vec3 rotated = r * p;
  return translation_weights(p, cfg).cwiseProduct(b) + (rotated - p);
}

}  // namespace fvmoor
