#include "fvmoor/body/hydro.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace fvmoor {

HydroModel no_hydro() {
  return [](const RigidBodyState&, double) { return HydroLoads{}; };
}

BoxHydro::BoxHydro(const Params& p, std::optional<StokesWave> wave)
    : p_(p), wave_(std::move(wave)) {
  if ((p_.dimensions.array() <= 0.0).any()) throw ValidationError("hydro: box dimensions must be positive");
  if (p_.panels < 1) throw ValidationError("hydro: panels must be >= 1");
  if (!(p_.density > 0.0)) throw ValidationError("hydro: density must be positive");
  if ((p_.damping.array() < 0.0).any()) throw ValidationError("hydro: damping must be >= 0");
}

namespace {

struct Face {
  Vec3 normal, centre, t1, t2;
  double h1, h2;
};

std::array<Face, 6> box_faces(const Vec3& dims, const Vec3& centre) {
  const Vec3 h = 0.5 * dims;
  std::array<Face, 6> f;
  int k = 0;
  for (int axis = 0; axis < 3; ++axis) {
    const int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
    for (double sgn : {-1.0, 1.0}) {
      Face& face = f[k++];
      face.normal = sgn * Vec3::Unit(axis);
      face.centre = centre + sgn * h[axis] * Vec3::Unit(axis);
      face.t1 = Vec3::Unit(a1);
      face.t2 = Vec3::Unit(a2);
      face.h1 = h[a1];
      face.h2 = h[a2];
    }
  }
  return f;
}

// Wet part of a flat panel below the level `eta`: area fraction and the
// centroid of the wet strip, assuming depth varies along one in-plane line.
struct WetPanel {
  double fraction;
  Vec3 centroid;
};

WetPanel wet_part(const Vec3& c, const Vec3& n, double zspan, double eta) {
  const double zmin = c.z() - 0.5 * zspan, zmax = c.z() + 0.5 * zspan;
  if (zmax <= eta) return {1.0, c};
  if (zmin >= eta) return {0.0, c};
  if (zspan <= 1e-14) return {c.z() < eta ? 1.0 : 0.0, c};
  const double f = (eta - zmin) / zspan;
  const Vec3 up = Vec3::UnitZ() - n.z() * n;  // steepest ascent within the panel
  const double zc = 0.5 * (zmin + eta);
  const Vec3 centroid = up.z() > 1e-12 ? Vec3(c + (zc - c.z()) / up.z() * up) : c;
  return {f, centroid};
}

}  // namespace

HydroLoads BoxHydro::pressure_loads(const RigidBodyState& body, double t) const {
  const Mat3 r = body.rotation();
  const double rg = p_.density * p_.gravity;
  HydroLoads out;
  const int m = p_.panels;
  for (const Face& face : box_faces(p_.dimensions, p_.centre)) {
    const Vec3 nw = r * face.normal;
    const Vec3 t1 = r * face.t1, t2 = r * face.t2;
    const double d1 = 2.0 * face.h1 / m, d2 = 2.0 * face.h2 / m;
    const double zspan = std::abs(t1.z()) * d1 + std::abs(t2.z()) * d2;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const Vec3 local = face.centre + (-face.h1 + (i + 0.5) * d1) * face.t1 +
                           (-face.h2 + (j + 0.5) * d2) * face.t2;
        const Vec3 c = body.position + r * local;
        const double eta = wave_ ? wave_->elevation(c.x(), t) : 0.0;
        const WetPanel w = wet_part(c, nw, zspan, eta);
        if (w.fraction <= 0.0) continue;
        double p = -rg * w.centroid.z();
        if (wave_) p += wave_->dynamic_pressure(w.centroid, t);
        p = std::max(p, 0.0);
        const Vec3 f = -p * w.fraction * d1 * d2 * nw;
        out.force += f;
        out.moment += (w.centroid - body.position).cross(f);
      }
    }
  }
  return out;
}

HydroLoads BoxHydro::damping_loads(const RigidBodyState& body) const {
  HydroLoads out;
  out.force = -(p_.damping.head<3>().array() * body.velocity.array()).matrix();
  const Vec3 mb = -(p_.damping.tail<3>().array() * body.angular_velocity.array()).matrix();
  out.moment = body.rotation() * mb;
  return out;
}

HydroLoads BoxHydro::operator()(const RigidBodyState& body, double t) const {
  HydroLoads a = pressure_loads(body, t);
  const HydroLoads b = damping_loads(body);
  a.force += b.force;
  a.moment += b.moment;
  return a;
}

double BoxHydro::still_water_volume(const RigidBodyState& body) const {
  BoxHydro still(p_);
  return still.pressure_loads(body, 0.0).force.z() / (p_.density * p_.gravity);
}

}  // namespace fvmoor
