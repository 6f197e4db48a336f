#pragma once

#include <functional>
#include <vector>

#include "fvmoor/beam/cross_section.hpp"
#include "fvmoor/types.hpp"

namespace fvmoor {

/// Cell-centred discretisation of one beam. Cell i spans arc length
/// [s_i - L_i/2, s_i + L_i/2] of the undeformed line; face i is the west face
/// of cell i and face N is the east face of the last cell.
struct BeamState {
  CrossSection section;
  std::vector<Vec3> position;          // cell centres, m
  std::vector<Quat> orientation;       // material -> spatial, unit
  std::vector<Vec3> velocity;          // m/s
  std::vector<Vec3> angular_velocity;  // spatial frame, rad/s
  std::vector<double> arc_length;      // s at cell centres, m
  std::vector<double> cell_length;     // undeformed L_c, m

  // Interpolated face data (N + 1 entries), refreshed by the solver.
  std::vector<Vec3> face_position;
  std::vector<Quat> face_orientation;

  /// Reference orientation of the anchor-end cell used to lock the
  /// zero-energy spin of an isotropic line about its own axis.
  Quat twist_reference = Quat::Identity();

  std::size_t cells() const { return position.size(); }
  double total_length() const;

  /// Straight beam from `start` along unit direction `dir` with `n` equal cells.
  static BeamState straight(const CrossSection& section, const Vec3& start, const Vec3& dir,
                            double length, std::size_t n);

  /// Throws ValidationError if array sizes are inconsistent or ordering is broken.
  void validate() const;

  /// Largest deviation of any orientation from unit norm.
  double max_quaternion_drift() const;
};

/// Boundary condition at one beam end.
struct EndCondition {
  enum class Kind {
    /// Prescribed fixed position, moment-free.
    kPinned,
    /// Position (and velocity) from a motion callback, moment-free.
    kPrescribedMotion,
    /// Force- and moment-free.
    kFree,
  };

  struct Motion {
    Vec3 position;
    Vec3 velocity;
  };

  Kind kind = Kind::kFree;
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  std::function<Motion(double)> motion;

  static EndCondition pinned(const Vec3& p) { return {Kind::kPinned, p, Vec3::Zero(), {}}; }
  static EndCondition free() { return {}; }
  static EndCondition prescribed(std::function<Motion(double)> m) {
    EndCondition e;
    e.kind = Kind::kPrescribedMotion;
    e.motion = std::move(m);
    return e;
  }

  bool constrained() const { return kind != Kind::kFree; }
  /// Constrained position at time t.
  Vec3 position_at(double t) const;
};

/// One condition per end: the anchor end is at s = 0, the fairlead end at s = L.
struct BeamBC {
  EndCondition anchor;
  EndCondition fairlead;
};

/// Forces exerted by the supports on the beam at each constrained end.
struct EndReactions {
  Vec3 anchor = Vec3::Zero();
  Vec3 fairlead = Vec3::Zero();
};

}  // namespace fvmoor
