// Acceptance checks: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "fvmoor/beam/beam_solver.hpp"
#include "fvmoor/coupling/initialize.hpp"
#include "fvmoor/coupling/simulation.hpp"
#include "fvmoor/io/catenary.hpp"
#include "fvmoor/io/postprocess.hpp"
#include "fvmoor/loads/external_loads.hpp"
#include "fvmoor/morph/mesh_morph.hpp"
#include "fvmoor/rotation.hpp"
#include "helpers.hpp"

using namespace fvmoor;
using namespace fvmoor::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string scenario_path(const char* name) { return std::string(FVMOOR_SCENARIO_DIR) + "/" + name; }

Outcome pretension() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto report = init_check(load_scenario(scenario_path("benchmark.cfg")));
  double lo = 1e300, hi = -1e300;
  bool ok = report.size() == 4;
  for (const auto& l : report) {
    lo = std::min(lo, l.pretension);
    hi = std::max(hi, l.pretension);
    ok = ok && std::abs(l.pretension - 0.38) <= 0.05 * 0.38;
  }
  const double elapsed = seconds_since(t0);
  ok = ok && hi - lo < 1e-6 && elapsed < 30.0;
  return {ok, fmt("anchor tension %.6f N, spread %.2e N, %.1f s", lo, hi - lo, elapsed)};
}

Outcome catenary_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(20240915);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  LoadEnvironment env;
  env.seabed_elevation = -100.0;  // fully suspended
  const CrossSection cs = CrossSection::circular(0.003656, 19.0, 0.0567, {}, 1e-8, 1e-8);
  const double w = (cs.density - env.fluid_density) * cs.area * 9.81;
  bool ok = true;
  double worst = 0.0;
  int monotone = 0;
  for (int c = 0; c < 10; ++c) {
    const double span = 0.6 + 0.4 * u(rng), rise = 0.1 + 0.3 * u(rng), az = 2 * std::numbers::pi * u(rng);
    const Vec3 anchor(0, 0, -0.5);
    const Vec3 fairlead = anchor + Vec3(span * std::cos(az), span * std::sin(az), rise);
    const double length = (fairlead - anchor).norm() * (1.05 + 0.2 * u(rng));
    const double oracle = elastic_catenary(anchor, fairlead, length, w, 19.0).fairlead_force.norm();
    double prev = 1e300;
    bool mono = true;
    for (std::size_t n : {15, 30, 60}) {
      const InitResult r = initialize_line(anchor, fairlead, {cs, length, n}, env);
      const double err = std::abs(r.fairlead_tension - oracle) / oracle;
      mono = mono && err < prev;
      prev = err;
      if (n == 60) {
        worst = std::max(worst, err);
        ok = ok && err < 0.01;
      }
    }
    monotone += mono;
  }
  const double elapsed = seconds_since(t0);
  ok = ok && monotone == 10 && elapsed < 120.0;
  return {ok, fmt("worst 60-cell error %.3e, monotone in %.0f/10, %.1f s", worst, monotone, elapsed)};
}

Outcome solver_correctness() {
  double worst_lu = 0.0;
  for (std::size_t n : {1, 2, 10, 50}) {
    const BlockTriDiagSystem s = random_system(n, static_cast<unsigned>(100 + n));
    const Eigen::VectorXd ref = s.dense_matrix().partialPivLu().solve(s.dense_rhs());
    const Eigen::VectorXd x = flatten(solve_block_tridiagonal(s));
    worst_lu = std::max(worst_lu, (x - ref).norm() / ref.norm());
  }
  const CrossSection cs = benchmark_section();
  const BeamState prev = perturbed_beam(cs, 10, 5);
  const BeamState b = perturbed_beam(cs, 10, 6);
  LoadEnvironment env;
  env.seabed_elevation = -0.02;
  const BeamBC bc{EndCondition::pinned(Vec3(-0.1, 0, 0)), EndCondition::pinned(Vec3(1.05, 0.18, -0.3))};
  const StepControl step = StepControl::dynamic(0.01, 0.01);
  const Eigen::MatrixXd jac = assemble_system(b, prev, env, bc, step).dense_matrix();
  Eigen::MatrixXd fd(jac.rows(), jac.cols());
  const double h = 1e-7;
  for (Eigen::Index c = 0; c < jac.cols(); ++c) {
    std::vector<Vec6> dx(b.cells(), Vec6::Zero());
    dx[static_cast<std::size_t>(c / 6)][c % 6] = h;
    const auto rp = flatten(evaluate_residual(apply_increment(b, dx), prev, env, bc, step).residual);
    dx[static_cast<std::size_t>(c / 6)][c % 6] = -h;
    const auto rm = flatten(evaluate_residual(apply_increment(b, dx), prev, env, bc, step).residual);
    fd.col(c) = (rp - rm) / (2 * h);
  }
  const double jac_err = (jac - fd).norm() / fd.norm();
  return {worst_lu < 1e-10 && jac_err < 1e-5,
          fmt("block solve vs LU %.2e, Jacobian vs FD %.2e", worst_lu, jac_err)};
}

Outcome dynamics_order() {
  const CrossSection cs = benchmark_section();
  const LoadEnvironment env = LoadEnvironment::vacuum();
  const BeamBC bc{EndCondition::free(), EndCondition::free()};
  auto com_z = [](const BeamState& b) {
    double z = 0.0;
    for (const Vec3& p : b.position) z += p.z();
    return z / static_cast<double>(b.cells());
  };
  std::vector<double> err;
  for (double dt : {0.04, 0.02, 0.01}) {
    BeamState b = BeamState::straight(cs, Vec3::Zero(), Vec3::UnitX(), 1.0, 10);
    const double z0 = com_z(b);
    const int n = static_cast<int>(std::lround(1.0 / dt));
    for (int k = 0; k < n; ++k) b = advance_step(b, env, bc, dt, (k + 1) * dt).state;
    err.push_back(std::abs(com_z(b) - (z0 - 0.5 * 9.81)));
  }
  const double s1 = std::log2(err[0] / err[1]), s2 = std::log2(err[1] / err[2]);
  const bool ok = std::abs(s1 - 1.0) <= 0.15 && std::abs(s2 - 1.0) <= 0.15;
  return {ok, fmt("COM errors %.3e %.3e %.3e m", err[0], err[1], err[2]) +
                  fmt(", slopes %.3f %.3f", s1, s2)};
}

Outcome taut_string() {
  // A 1 m line stretched by 1 % between pins, plucked into its first mode.
  const double l0 = 1.0, strain = 0.01, span = l0 * (1 + strain), ea = 19.0, amp = 0.002;
  const std::size_t n = 60;
  const CrossSection cs = CrossSection::circular(0.003656, ea, 0.0567);
  const LoadEnvironment env = LoadEnvironment::vacuum(Vec3::Zero());
  const double tension = ea * strain;
  const double rho_a = cs.mass_per_length();
  const double f_ref = std::sqrt(tension / rho_a) / (2 * span);
  BeamState b = BeamState::straight(cs, Vec3::Zero(), Vec3::UnitX(), l0, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = b.position[i].x() * (1 + strain);
    b.position[i] = Vec3(x, amp * std::sin(std::numbers::pi * x / span), 0);
    const double slope = amp * std::numbers::pi / span * std::cos(std::numbers::pi * x / span);
    b.orientation[i] = Quat(Eigen::AngleAxisd(std::atan(slope), Vec3::UnitZ()));
  }
  const BeamBC bc{EndCondition::pinned(Vec3::Zero()), EndCondition::pinned(Vec3(span, 0, 0))};
  NewtonOptions opts;
  opts.tolerance = 1e-10;
  const double dt = 1.0 / f_ref / 200.0;
  std::vector<double> crossings;
  double prev_y = b.position[n / 2].y();
  double t = 0.0;
  for (int k = 0; k < 800 && crossings.size() < 7; ++k) {
    b = advance_step(b, env, bc, dt, t + dt, opts).state;
    const double y = 0.5 * (b.position[n / 2 - 1].y() + b.position[n / 2].y());
    if ((prev_y > 0) != (y > 0)) crossings.push_back(t + dt * prev_y / (prev_y - y));
    prev_y = y;
    t += dt;
  }
  if (crossings.size() < 3) return {false, "fewer than two half periods observed"};
  const double half = (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
  const double f = 0.5 / half;
  const double rel = std::abs(f - f_ref) / f_ref;
  return {rel < 0.05, fmt("f %.4f Hz vs %.4f Hz, error %.2f %%", f, f_ref, 100 * rel)};
}

Outcome force_units() {
  const CrossSection cs = benchmark_section();
  LoadEnvironment env;
  env.seabed_elevation = -100.0;
  double worst = 0.0;
  auto compare = [&](double got, double want) { worst = std::max(worst, std::abs(got - want)); };
  CellKinematics<double> k;
  k.velocity = Vec3(0, 1, 0);
  compare(drag_force(k, cs, env).norm(), 0.5 * 1000 * 0.003656 * 1.6);
  k = {};
  k.acceleration = Vec3(0, 0, 1);
  compare(added_mass_force(k, cs, env).norm(), 1000 * cs.area * 1.6);
  k.acceleration = Vec3(3, 0, 0);
  compare(added_mass_force(k, cs, env).norm(), 0.0);
  CrossSection steel = cs;
  steel.area = 1.0499e-5;
  steel.density = 7800;
  compare(buoyancy_force(steel, env).norm(), 6800 * 1.0499e-5 * 9.81);
  env.seabed_elevation = -0.5;
  k = {};
  k.position = Vec3(0, 0, -0.501);
  compare(seabed_reaction(k, cs, env).normal.z(), 1000 * 0.003656 * 0.001);
  compare(seabed_reaction(k, cs, env).friction.norm(), 0.0);
  k.position = Vec3(0, 0, -0.49);
  compare(seabed_force(k, cs, env).norm(), 0.0);
  // Friction magnitude across the stick/slip threshold.
  k.position = Vec3(0, 0, -0.502);
  const double limit = env.friction_coefficient * seabed_reaction(k, cs, env).normal.z();
  const double v_star = limit / (env.seabed_tangential_stiffness * cs.diameter);
  const Vec3 dir(0.6, 0.8, 0);
  double jump = 0.0;
  for (double s : {1 - 1e-12, 1.0, 1 + 1e-12}) {
    k.velocity = v_star * s * dir;
    jump = std::max(jump, std::abs(seabed_reaction(k, cs, env).friction.norm() - limit));
  }
  return {worst <= 1e-12 && jump <= 1e-12,
          fmt("largest deviation %.2e, friction jump %.2e", worst, jump)};
}

Outcome equilibrium_persistence() {
  const RecordSet r = run_simulation(load_scenario(scenario_path("benchmark.cfg")));
  double drift = 0.0;
  const TimeSeries& sx = r.at("surge");
  const TimeSeries& sy = r.at("sway");
  const TimeSeries& sz = r.at("heave");
  for (std::size_t i = 0; i < sx.size(); ++i) {
    drift = std::max(drift, std::hypot(sx.value[i] - sx.value[0], sy.value[i] - sy.value[0],
                                       sz.value[i] - sz.value[0]));
  }
  double tension = 0.0;
  for (const auto& ch : r.channels) {
    if (ch.name.find("_tension") == std::string::npos) continue;
    for (double v : ch.value) tension = std::max(tension, std::abs(v - ch.value[0]) / ch.value[0]);
  }
  const bool ok = sx.time.back() >= 10.0 - 1e-9 && drift < 1e-3 && tension < 0.02;
  return {ok, fmt("%.0f s, COM drift %.2e m, tension drift %.2e", sx.time.back(), drift, tension)};
}

Outcome morphing() {
  const MorphConfig c = benchmark_morph_config();
  const Vec3 b(0.03, -0.01, 0.02);
  const Quat q = quat_exp<double>(Vec3(0.05, 0.1, -0.2));
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> u(-0.13, 0.13);
  std::vector<Vec3> pts, moved;
  while (pts.size() < 50) {
    const Vec3 p(u(rng), u(rng), u(rng));
    if (blend_weight(p, c) < 1.0 || translation_weights(p, c) != Vec3::Ones()) continue;
    pts.push_back(p);
    moved.push_back(p + point_displacement(p, b, q, c));
  }
  double rigid = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      rigid = std::max(rigid, std::abs((moved[i] - moved[j]).norm() - (pts[i] - pts[j]).norm()));
    }
  }
  double identity = 0.0;
  std::uniform_real_distribution<double> wide(-1.5, 1.5);
  for (int k = 0; k < 200; ++k) {
    const Vec3 p(wide(rng), wide(rng), wide(rng) * 0.3);
    identity = std::max(identity, point_displacement(p, Vec3::Zero(), c.initial_orientation, c).norm());
  }
  const double mid = blend_weight_at(0.5 * (c.inner_radius + c.outer_radius), c.inner_radius, c.outer_radius);
  return {rigid <= 1e-12 && identity == 0.0 && mid == 0.5,
          fmt("rigid distance error %.2e, identity displacement %.2e, midpoint beta %.17g", rigid,
              identity, mid)};
}

Outcome postprocessing() {
  TimeSeries s;
  s.name = "sine";
  const double a = 0.065, f = 0.5;
  for (int k = 0; k <= 2000; ++k) {
    const double t = k * 0.01;
    s.push(t, a * std::sin(2 * std::numbers::pi * f * t + 0.4));
  }
  const double p2t = amplitude_peak_to_trough(s, 8, 16);
  const SpectralPeak pk = fft_dominant_amplitude(s, 8, 16);
  const double e1 = std::abs(p2t - a) / a, e2 = std::abs(pk.amplitude - a) / a;
  const bool ok = e1 < 1e-3 && e2 < 1e-3 && std::abs(pk.frequency - f) <= pk.resolution;
  return {ok, fmt("p2t error %.2e, fft error %.2e, frequency %.4f Hz (bin %.4f Hz)", e1, e2,
                  pk.frequency, pk.resolution)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const Scenario sc = load_scenario(scenario_path("surge.cfg"));
  const fs::path root = fs::temp_directory_path() / "fvmoor_determinism";
  fs::remove_all(root);
  write_records((root / "a").string(), run_simulation(sc, 1), sc.name);
  write_records((root / "b").string(), run_simulation(sc, 4), sc.name);
  std::size_t files = 0, differ = 0;
  for (const auto& e : fs::directory_iterator(root / "a")) {
    ++files;
    const fs::path other = root / "b" / e.path().filename();
    if (!fs::exists(other) || slurp(e.path()) != slurp(other)) ++differ;
  }
  fs::remove_all(root);
  return {files > 1 && differ == 0,
          fmt("%.0f files, %.0f differ (1 and 4 threads)", static_cast<double>(files),
              static_cast<double>(differ))};
}

Outcome benchmark_run() {
  const Scenario sc = load_scenario(scenario_path("h12t20.cfg"));
  const RecordSet r = run_simulation(sc);
  const double wave_f = 1.0 / sc.wave->period;
  const auto [t0, t1] = default_window("heave");
  const SpectralPeak heave = fft_dominant_amplitude(r.at("heave"), t0, t1);
  const SpectralPeak tension = fft_dominant_amplitude(r.at("line1_anchor_tension"), t0, t1);
  const bool ok = r.at("heave").time.back() >= sc.coupling.end_time - 1e-9 &&
                  std::abs(heave.frequency - wave_f) < 1e-9 && std::abs(tension.frequency - wave_f) < 1e-9;
  return {ok, fmt("heave %.3f Hz (amplitude %.4f m), line1 tension %.3f Hz (amplitude %.4f N)",
                  heave.frequency, heave.amplitude, tension.frequency, tension.amplitude)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"pretension", pretension},
      {"catenary oracle", catenary_oracle},
      {"solver correctness", solver_correctness},
      {"dynamics order", dynamics_order},
      {"taut string frequency", taut_string},
      {"force model units", force_units},
      {"equilibrium persistence", equilibrium_persistence},
      {"morphing field", morphing},
      {"post-processing", postprocessing},
      {"determinism", determinism},
      {"coupled wave run", benchmark_run},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %zu %s: %s (%s)\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL",
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
