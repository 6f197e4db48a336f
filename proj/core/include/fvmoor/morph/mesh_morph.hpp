#pragma once

#include <functional>
#include <optional>

#include "fvmoor/types.hpp"

namespace fvmoor {

/// Translation weight along one axis: 1 for |p| <= zone, falling linearly to
/// 0 at zone + ramp.
struct AxisProfile {
  double zone = 0.0;
  double ramp = 0.0;
  bool operator==(const AxisProfile&) const = default;
};

struct MorphConfig {
  double inner_radius = 0.05;
  double outer_radius = 0.45;
  /// Per-axis translation profiles; an unset axis uses the blend weight.
  std::array<std::optional<AxisProfile>, 3> translation;
  Quat initial_orientation = Quat::Identity();
  /// Distance from a point to the body surface in its initial pose.
  std::function<double(const Vec3&)> distance;

  /// Throws ValidationError unless 0 < r_in < r_out, q0 is unit and a
  /// distance function is set.
  void validate() const;
};

/// Minimum distance from p to the surface of a box with the given centre,
/// extents and orientation; zero inside.
double box_distance(const Vec3& p, const Vec3& centre, const Vec3& dimensions,
                    const Quat& orientation = Quat::Identity());

/// The benchmark layout: box distance, radii 0.05 / 0.45 m and translation
/// zones 0.9 m in x and 0.1 m in z.
MorphConfig benchmark_morph_config(const Vec3& dimensions = Vec3(0.2, 0.2, 0.132));

double blend_weight(const Vec3& p, const MorphConfig& cfg);
/// Same ramp expressed in terms of a known distance.
double blend_weight_at(double distance, double inner_radius, double outer_radius);

/// (q q0^-1)^beta q0, with the fractional power taken on the shortest arc.
Quat blended_rotation(const Quat& q, const Quat& q0, double beta);

Vec3 translation_weights(const Vec3& p, const MorphConfig& cfg);

/// Displacement of p (relative to the rotation centre, initial pose) when the
/// body has moved by b and turned to orientation q.
Vec3 point_displacement(const Vec3& p, const Vec3& b, const Quat& q, const MorphConfig& cfg);

}  // namespace fvmoor
