#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "fvmoor/beam/beam_solver.hpp"
#include "fvmoor/rotation.hpp"

namespace fvmoor::testing {

inline CrossSection benchmark_section() { return CrossSection::circular(0.003656, 19.0, 0.0567); }

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Beam with centres on a circular arc of radius r in the xy-plane, material
// axis 1 along the arc.
inline BeamState arc_beam(const CrossSection& cs, double r, double angle, std::size_t n) {
  BeamState b = BeamState::straight(cs, Vec3::Zero(), Vec3::UnitX(), r * angle, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double th = angle * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    b.position[i] = Vec3(r * std::sin(th), r * (1.0 - std::cos(th)), 0.0);
    b.orientation[i] = Quat(Eigen::AngleAxisd(th, Vec3::UnitZ()));
  }
  return b;
}

// Random smooth perturbation of a straight line.
inline BeamState perturbed_beam(const CrossSection& cs, std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  BeamState b = BeamState::straight(cs, Vec3::Zero(), Vec3(1, 0.2, -0.3).normalized(), 1.0, n);
  for (std::size_t i = 0; i < n; ++i) {
    b.position[i] += 0.02 * Vec3(u(rng), u(rng), u(rng));
    b.orientation[i] = (quat_exp<double>(Vec3(0.2 * u(rng), 0.2 * u(rng), 0.2 * u(rng))) *
                        b.orientation[i]).normalized();
    b.velocity[i] = 0.1 * Vec3(u(rng), u(rng), u(rng));
    b.angular_velocity[i] = 0.1 * Vec3(u(rng), u(rng), u(rng));
  }
  return b;
}

inline BlockTriDiagSystem random_system(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  BlockTriDiagSystem s(n);
  auto rnd = [&] {
    Mat6 m;
    for (int i = 0; i < 36; ++i) m.data()[i] = u(rng);
    return m;
  };
  for (std::size_t i = 0; i < n; ++i) {
    s.lower[i] = i > 0 ? rnd() : Mat6::Zero();
    s.upper[i] = i + 1 < n ? rnd() : Mat6::Zero();
    s.diag[i] = rnd() + 14.0 * Mat6::Identity();
    for (int k = 0; k < 6; ++k) s.rhs[i][k] = u(rng);
  }
  return s;
}

}  // namespace fvmoor::testing
