#include <doctest.h>

#include <numbers>

#include "fvmoor/body/hydro.hpp"
#include "fvmoor/body/rigid_body.hpp"
#include "fvmoor/body/waves.hpp"
#include "fvmoor/rotation.hpp"

using namespace fvmoor;

namespace {

const Vec3 kG(0, 0, -9.81);

RigidBodyState benchmark_body() {
  RigidBodyState b;
  b.mass = 3.16;
  b.position = Vec3(0, 0, -0.0126);
  b.inertia = Vec3(0.015, 0.015, 0.021).asDiagonal();
  for (double x : {-0.1, 0.1}) {
    for (double y : {0.1, -0.1}) b.fairleads.push_back(Vec3(x, y, -0.0736) - b.position);
  }
  return b;
}

}  // namespace

TEST_CASE("body validation") {
  RigidBodyState b = benchmark_body();
  CHECK_NOTHROW(b.validate());
  b.mass = 0.0;
  CHECK_THROWS_AS(b.validate(), ValidationError);
  b = benchmark_body();
  b.inertia(0, 0) = -1.0;
  CHECK_THROWS_AS(b.validate(), ValidationError);
  b = benchmark_body();
  b.orientation.coeffs() *= 1.1;
  CHECK_THROWS_AS(b.validate(), ValidationError);
}

TEST_CASE("load aggregation") {
  const RigidBodyState b = benchmark_body();
  BodyLoads l = aggregate_loads(b, std::vector<Vec3>(4, Vec3::Zero()), {}, kG);
  CHECK(l.force == b.mass * kG);
  CHECK(l.moment.norm() == 0.0);

  RigidBodyState one = b;
  one.fairleads = {Vec3(0.1, -0.05, 0.02)};
  const Vec3 f(0.3, 0.2, -0.4);
  l = aggregate_loads(one, {f}, {}, Vec3::Zero());
  CHECK((l.moment - Vec3(0.1, -0.05, 0.02).cross(f)).norm() < 1e-15);

  // Symmetric equal-tension lines pulling toward the anchors.
  const std::vector<Vec3> anchors{{-1.385, 0.423, -0.5}, {-1.385, -0.423, -0.5},
                                  {1.385, 0.423, -0.5}, {1.385, -0.423, -0.5}};
  std::vector<Vec3> forces;
  const auto fk = fairlead_kinematics(b);
  for (std::size_t k = 0; k < 4; ++k) forces.push_back(0.38 * (anchors[k] - fk[k].position).normalized());
  HydroLoads h{Vec3(0, 0, 31.0), Vec3(0.001, 0, 0)};
  l = aggregate_loads(b, forces, h, kG);
  CHECK(std::abs(l.mooring_force.x()) < 1e-10);
  CHECK(std::abs(l.mooring_force.y()) < 1e-10);
  CHECK(l.force == l.hydro_force + l.mooring_force + l.gravity_force);
  CHECK(l.moment == l.hydro_moment + l.mooring_moment + l.gravity_moment);
}

TEST_CASE("free motion") {
  RigidBodyState b = benchmark_body();
  b.velocity = Vec3(0.1, -0.2, 0.05);
  const Vec3 p0 = b.position;
  for (int k = 0; k < 100; ++k) b = integrate_6dof(b, {}, 0.01, 1.0).state;
  CHECK((b.position - (p0 + Vec3(0.1, -0.2, 0.05))).norm() < 1e-14);

  // Semi-implicit Euler free fall: z_n = -g dt^2 n (n + 1) / 2.
  double prev_err = 0.0;
  for (double dt : {0.02, 0.01, 0.005}) {
    RigidBodyState f = benchmark_body();
    BodyLoads l;
    l.force = f.mass * kG;
    const int n = static_cast<int>(std::lround(1.0 / dt));
    for (int k = 0; k < n; ++k) f = integrate_6dof(f, l, dt, 1.0).state;
    const double err = std::abs((f.position.z() - p0.z()) + 0.5 * 9.81);
    CHECK(err == doctest::Approx(0.5 * 9.81 * dt).epsilon(1e-9));
    if (prev_err > 0) CHECK(prev_err / err == doctest::Approx(2.0).epsilon(1e-6));
    prev_err = err;
  }
}

TEST_CASE("torque-free rotation") {
  SUBCASE("principal axis spin") {
    RigidBodyState b = benchmark_body();
    b.angular_velocity = Vec3(0, 0, 2.0);
    const double e0 = kinetic_energy(b);
    for (int k = 0; k < 1000; ++k) b = integrate_6dof(b, {}, 1e-3, 1.0).state;
    CHECK((b.angular_velocity - Vec3(0, 0, 2.0)).norm() < 1e-12);
    CHECK(std::abs(kinetic_energy(b) - e0) < 1e-6 * e0);
    CHECK(std::abs(b.orientation.norm() - 1.0) < 1e-10);
    // Two rad about z.
    CHECK(std::abs(quat_log<double>(b.orientation).z() - 2.0) < 1e-9);
  }
  SUBCASE("general spin keeps |I w|") {
    RigidBodyState b = benchmark_body();
    b.inertia = Vec3(0.01, 0.015, 0.021).asDiagonal();
    b.angular_velocity = Vec3(0.7, 1.5, -0.4);
    const double l0 = (b.inertia * b.angular_velocity).norm();
    for (int k = 0; k < 1000; ++k) b = integrate_6dof(b, {}, 1e-3, 1.0).state;
    CHECK(std::abs((b.inertia * b.angular_velocity).norm() - l0) < 1e-6 * l0);
  }
}

TEST_CASE("under-relaxation blends with the previous iterate") {
  const RigidBodyState b = benchmark_body();
  BodyLoads l;
  l.force = Vec3(1, 0, 0);
  BodyAccelerations prev;
  prev.linear = Vec3(0, 1, 0);
  const BodyStep s = integrate_6dof(b, l, 0.01, 0.7, prev);
  CHECK((s.accelerations.linear - Vec3(0.7 / b.mass, 0.3, 0)).norm() < 1e-15);
  // relax = 1 is independent of history.
  const BodyStep a = integrate_6dof(b, l, 0.01, 1.0, prev);
  const BodyStep c = integrate_6dof(b, l, 0.01, 1.0);
  CHECK(a.state.position == c.state.position);
  CHECK_THROWS_AS(integrate_6dof(b, l, 0.01, 0.0), ValidationError);
  CHECK_THROWS_AS(integrate_6dof(b, l, -0.01, 0.5), ValidationError);
}

TEST_CASE("added mass slows the response") {
  RigidBodyState b = benchmark_body();
  b.added_mass << 1.0, 0, 0, 0, 0, 0;
  BodyLoads l;
  l.force = Vec3(4.16, 0, 0);
  CHECK(integrate_6dof(b, l, 0.01, 1.0).accelerations.linear.x() == doctest::Approx(1.0));
}

TEST_CASE("fairlead kinematics") {
  RigidBodyState b = benchmark_body();
  auto fk = fairlead_kinematics(b);
  for (std::size_t k = 0; k < 4; ++k) CHECK(fk[k].position == b.position + b.fairleads[k]);

  b.velocity = Vec3(0, 0, 0.3);
  for (const auto& f : fairlead_kinematics(b)) CHECK(f.velocity == b.velocity);

  b.velocity.setZero();
  b.orientation = quat_exp<double>(Vec3(0.1, 0.2, -0.1));
  b.angular_velocity = Vec3(0, 0.8, 0);
  fk = fairlead_kinematics(b);
  const double h = 1e-6;
  RigidBodyState moved = b;
  moved.orientation = (b.orientation * quat_exp<double>(Vec3(h * b.angular_velocity))).normalized();
  const auto fk2 = fairlead_kinematics(moved);
  for (std::size_t k = 0; k < 4; ++k) {
    const Vec3 fd = (fk2[k].position - fk[k].position) / h;
    CHECK((fd - fk[k].velocity).norm() < 1e-6);
    CHECK(fk[k].velocity.norm() ==
          doctest::Approx(0.8 * Vec3(b.fairleads[k].x(), 0, b.fairleads[k].z()).norm()).epsilon(1e-9));
  }
}

TEST_CASE("Stokes wave") {
  StokesWave::Params p;
  p.height = 0.12;
  p.period = 2.0;
  p.depth = 0.5;
  const StokesWave w(p);
  CHECK(w.wavelength() == doctest::Approx(4.06).epsilon(0.01));
  const double k = w.wave_number(), om = w.angular_frequency();
  CHECK(om * om == doctest::Approx(9.81 * k * std::tanh(k * 0.5)).epsilon(1e-12));
  // Ramp: zero at the start, full after one period.
  CHECK(w.elevation(0.0, 0.0) == 0.0);
  CHECK(w.ramp_factor(1.0) == doctest::Approx(0.5));
  CHECK(w.ramp_factor(2.5) == 1.0);
  // Crest minus trough equals H for the second-order profile.
  const double crest = w.elevation(0.0, 4.0), trough = w.elevation(0.0, 5.0);
  CHECK(crest - trough == doctest::Approx(0.12).epsilon(1e-12));
  CHECK(crest > -trough);
  CHECK(dispersion_wave_number(1.8, 0.5) > dispersion_wave_number(2.0, 0.5));
  CHECK(w.dynamic_pressure(Vec3(0, 0, 0.5), 4.0) == w.dynamic_pressure(Vec3(0, 0, 0.0), 4.0));
}

TEST_CASE("box hydrostatics") {
  BoxHydro::Params p;
  p.centre = Vec3::Zero();
  p.panels = 8;
  const BoxHydro box(p);
  RigidBodyState b = benchmark_body();
  const double volume = 0.2 * 0.2 * 0.0786;
  CHECK(box.still_water_volume(b) == doctest::Approx(volume).epsilon(1e-12));
  const HydroLoads h = box.pressure_loads(b, 0.0);
  CHECK(h.force.z() == doctest::Approx(1000 * 9.81 * volume).epsilon(1e-12));
  CHECK(h.force.head<2>().norm() < 1e-12);
  CHECK(h.moment.norm() < 1e-12);

  // Hydrostatic heave stiffness is rho g A_wp.
  RigidBodyState down = b;
  down.position.z() -= 0.001;
  const double dfz = box.pressure_loads(down, 0.0).force.z() - h.force.z();
  CHECK(dfz == doctest::Approx(1000 * 9.81 * 0.04 * 0.001).epsilon(1e-9));

  // A small pitch produces a restoring moment.
  RigidBodyState tilted = b;
  tilted.orientation = quat_exp<double>(Vec3(0, 0.02, 0));
  CHECK(box.pressure_loads(tilted, 0.0).moment.y() < 0.0);

  BoxHydro::Params dp = p;
  dp.damping << 1, 2, 3, 0.1, 0.2, 0.3;
  RigidBodyState moving = b;
  moving.velocity = Vec3(0.1, 0, -0.2);
  const HydroLoads d = BoxHydro(dp).damping_loads(moving);
  CHECK((d.force - Vec3(-0.1, 0, 0.6)).norm() < 1e-15);
  CHECK_THROWS_AS(BoxHydro(BoxHydro::Params{Vec3(0, 1, 1)}), ValidationError);
}

TEST_CASE("box in a wave feels the Froude-Krylov load") {
  StokesWave::Params wp;
  wp.height = 0.12;
  wp.period = 2.0;
  wp.depth = 0.5;
  const StokesWave w(wp);
  BoxHydro::Params p;
  const BoxHydro box(p, w);
  const RigidBodyState b = benchmark_body();
  // Heave force follows the crest and trough passing the box.
  const double crest = box.pressure_loads(b, 4.0).force.z();
  const double trough = box.pressure_loads(b, 5.0).force.z();
  const double still = BoxHydro(p).pressure_loads(b, 4.0).force.z();
  CHECK(crest > still);
  CHECK(trough < still);
}
