#include "fvmoor/beam/beam_state.hpp"

#include <cmath>
#include <numeric>

namespace fvmoor {

double BeamState::total_length() const {
  return std::accumulate(cell_length.begin(), cell_length.end(), 0.0);
}

BeamState BeamState::straight(const CrossSection& section, const Vec3& start, const Vec3& dir,
                              double length, std::size_t n) {
  if (n == 0) throw ValidationError("beam: at least one cell required");
  if (!(length > 0.0)) throw ValidationError("beam: length must be positive");
  const Vec3 u = dir.normalized();
  BeamState b;
  b.section = section;
  const double h = length / static_cast<double>(n);
  const Quat q = Quat::FromTwoVectors(Vec3::UnitX(), u).normalized();
  for (std::size_t i = 0; i < n; ++i) {
    const double s = (static_cast<double>(i) + 0.5) * h;
    b.position.push_back(start + s * u);
    b.orientation.push_back(q);
    b.velocity.push_back(Vec3::Zero());
    b.angular_velocity.push_back(Vec3::Zero());
    b.arc_length.push_back(s);
    b.cell_length.push_back(h);
  }
  for (std::size_t i = 0; i <= n; ++i) {
    b.face_position.push_back(start + static_cast<double>(i) * h * u);
    b.face_orientation.push_back(q);
  }
  b.twist_reference = q;
  return b;
}

void BeamState::validate() const {
  const std::size_t n = position.size();
  if (n == 0) throw ValidationError("beam: no cells");
  if (orientation.size() != n || velocity.size() != n || angular_velocity.size() != n ||
      arc_length.size() != n || cell_length.size() != n) {
    throw ValidationError("beam: inconsistent per-cell array sizes");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(cell_length[i] > 0.0)) throw ValidationError("beam: cell lengths must be positive");
    if (i > 0 && !(arc_length[i] > arc_length[i - 1])) {
      throw ValidationError("beam: cells must be ordered by increasing arc length");
    }
  }
}

double BeamState::max_quaternion_drift() const {
  double d = 0.0;
  for (const auto& q : orientation) d = std::max(d, std::abs(q.norm() - 1.0));
  return d;
}

Vec3 EndCondition::position_at(double t) const {
  if (kind == Kind::kPrescribedMotion && motion) return motion(t).position;
  return position;
}

}  // namespace fvmoor
