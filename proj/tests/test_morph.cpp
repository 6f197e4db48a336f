#include <doctest.h>

#include <numbers>
#include <random>

#include "fvmoor/morph/mesh_morph.hpp"
#include "fvmoor/rotation.hpp"

using namespace fvmoor;

namespace {

Quat about_z(double angle) { return Quat(Eigen::AngleAxisd(angle, Vec3::UnitZ())); }

MorphConfig sphere_config() {
  MorphConfig c;
  c.distance = [](const Vec3& p) { return std::max(0.0, p.norm() - 0.1); };
  return c;
}

}  // namespace

TEST_CASE("blend weight") {
  CHECK(blend_weight_at(0.05, 0.05, 0.45) == 1.0);
  CHECK(blend_weight_at(0.45, 0.05, 0.45) == 0.0);
  CHECK(blend_weight_at(0.25, 0.05, 0.45) == 0.5);
  CHECK(blend_weight_at(0.0, 0.05, 0.45) == 1.0);
  CHECK(blend_weight_at(3.0, 0.05, 0.45) == 0.0);
  const MorphConfig c = sphere_config();
  CHECK(blend_weight(Vec3(0.35, 0, 0), c) == doctest::Approx(0.5));
  // Continuous across both radii.
  for (double r : {0.05, 0.45}) {
    CHECK(std::abs(blend_weight_at(r - 1e-9, 0.05, 0.45) - blend_weight_at(r + 1e-9, 0.05, 0.45)) <
          1e-8);
  }
}

TEST_CASE("box distance") {
  const Vec3 dims(0.2, 0.2, 0.132);
  CHECK(box_distance(Vec3::Zero(), Vec3::Zero(), dims) == 0.0);
  CHECK(box_distance(Vec3(0.3, 0, 0), Vec3::Zero(), dims) == doctest::Approx(0.2));
  CHECK(box_distance(Vec3(0.4, 0.5, 0.066), Vec3::Zero(), dims) == doctest::Approx(0.5));
  CHECK(box_distance(Vec3(0, 0.3, 0), Vec3::Zero(), dims, about_z(std::numbers::pi / 4)) ==
        doctest::Approx(0.3 - 0.1 * std::sqrt(2.0)));
}

TEST_CASE("blended rotation") {
  const Quat q = about_z(std::numbers::pi / 2);
  const Quat q0 = Quat::Identity();
  CHECK(blended_rotation(q, q0, 1.0).isApprox(q, 1e-15));
  CHECK(blended_rotation(q, q0, 0.0).isApprox(q0, 1e-15));
  const Quat half = blended_rotation(q, q0, 0.5);
  const Eigen::AngleAxisd aa(half);
  CHECK(aa.angle() == doctest::Approx(std::numbers::pi / 4).epsilon(1e-12));
  CHECK((aa.axis() - Vec3::UnitZ()).norm() < 1e-12);
  CHECK(half.angularDistance(about_z(std::numbers::pi / 4)) < 1e-12);

  // Relative to a non-trivial start the blend runs from q0 to q.
  const Quat start = quat_exp<double>(Vec3(0.2, -0.1, 0.4));
  const Quat end = quat_exp<double>(Vec3(0.5, 0.3, -0.2)) * start;
  const Quat mid = blended_rotation(end, start, 0.5);
  CHECK(mid.angularDistance(start) == doctest::Approx(mid.angularDistance(end)).epsilon(1e-10));

  // Shortest arc: q and -q give the same blend.
  const Quat neg(-q.w(), -q.x(), -q.y(), -q.z());
  CHECK(blended_rotation(neg, q0, 0.5).angularDistance(half) < 1e-12);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 200; ++k) {
    const Quat a = quat_exp<double>(Vec3(u(rng), u(rng), u(rng)));
    const Quat b = quat_exp<double>(Vec3(u(rng), u(rng), u(rng)));
    const double beta = (u(rng) + 2.0) / 4.0;
    CHECK(std::abs(blended_rotation(a, b, beta).norm() - 1.0) < 1e-12);
  }
  CHECK(blended_rotation(q0, q0, 0.3).isApprox(q0, 1e-15));
}

TEST_CASE("point displacement") {
  MorphConfig c = sphere_config();
  const Vec3 b(0.03, -0.02, 0.01);
  const Quat q = quat_exp<double>(Vec3(0.1, 0.2, 0.3));

  SUBCASE("rigid zone moves rigidly") {
    std::vector<Vec3> pts{{0.1, 0, 0}, {0, 0.12, 0.03}, {-0.05, 0.05, -0.1}, {0.02, 0.01, 0.0}};
    std::vector<Vec3> moved;
    for (const Vec3& p : pts) {
      REQUIRE(blend_weight(p, c) == 1.0);
      const Vec3 d = point_displacement(p, b, q, c);
      CHECK((d - (b + q * p - p)).norm() < 1e-15);
      moved.push_back(p + d);
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        CHECK(std::abs((moved[i] - moved[j]).norm() - (pts[i] - pts[j]).norm()) < 1e-12);
      }
    }
  }
  SUBCASE("static zone stays") {
    CHECK(point_displacement(Vec3(0.6, 0.2, 0), b, q, c).norm() == 0.0);
  }
  SUBCASE("translation weight in mid-ramp") {
    c.translation[0] = AxisProfile{0.2, 0.2};
    const Vec3 p(0.3, 0, 0);
    CHECK(translation_weights(p, c).x() == doctest::Approx(0.5));
    const Vec3 d = point_displacement(p, Vec3(0.1, 0, 0), Quat::Identity(), c);
    CHECK((d - Vec3(0.05, 0, 0)).norm() < 1e-15);
  }
  SUBCASE("identity pose") {
    c.initial_orientation = quat_exp<double>(Vec3(0, 0.3, 0));
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    for (int k = 0; k < 100; ++k) {
      const Vec3 p(u(rng), u(rng), u(rng));
      CHECK(point_displacement(p, Vec3::Zero(), c.initial_orientation, c).norm() < 1e-15);
    }
  }
  SUBCASE("continuous across the ramp edges") {
    for (double r : {0.15, 0.55}) {
      const Vec3 lo(r - 1e-9, 0, 0), hi(r + 1e-9, 0, 0);
      CHECK((point_displacement(lo, b, q, c) - point_displacement(hi, b, q, c)).norm() < 1e-8);
    }
  }
}

TEST_CASE("benchmark layout") {
  const MorphConfig c = benchmark_morph_config();
  CHECK_NOTHROW(c.validate());
  // Inside the x zone the surge is carried fully; beyond zone plus ramp not at all.
  CHECK(translation_weights(Vec3(0.8, 0, 0), c).x() == 1.0);
  CHECK(translation_weights(Vec3(1.4, 0, 0), c).x() == 0.0);
  CHECK(translation_weights(Vec3(0, 0, 0.05), c).z() == 1.0);
  CHECK(translation_weights(Vec3(0, 0, 0.6), c).z() == 0.0);
  // The body surface follows the body exactly.
  const Vec3 corner(0.1, 0.1, 0.066);
  const Quat q = quat_exp<double>(Vec3(0, 0.05, 0));
  CHECK((point_displacement(corner, Vec3(0.02, 0, 0.01), q, c) -
         (Vec3(0.02, 0, 0.01) + q * corner - corner))
            .norm() < 1e-15);
}

TEST_CASE("morph config validation") {
  MorphConfig c = sphere_config();
  CHECK_NOTHROW(c.validate());
  c.inner_radius = 0.5;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = sphere_config();
  c.inner_radius = 0.0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = sphere_config();
  c.initial_orientation = Quat(0.9, 0, 0, 0);
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = sphere_config();
  c.distance = nullptr;
  CHECK_THROWS_AS(c.validate(), ValidationError);
}
