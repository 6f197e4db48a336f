#include "fvmoor/coupling/simulation.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "fvmoor/io/catenary.hpp"
#include "fvmoor/rotation.hpp"

namespace fvmoor {

namespace {

Vec3 vec(const Triple& t) { return {t[0], t[1], t[2]}; }
Vec6 vec(const Sextuple& t) {
  Vec6 v;
  for (int k = 0; k < 6; ++k) v[k] = t[static_cast<std::size_t>(k)];
  return v;
}

LineProperties properties(const LineSpec& l) {
  return {make_section(l), l.length, static_cast<std::size_t>(l.cells)};
}

LineReport report(const LineSpec& l, const InitResult& r, const Vec3& anchor, const Vec3& fairlead,
                  const LoadEnvironment& env) {
  LineReport out;
  out.name = l.name;
  out.pretension = r.pretension;
  out.fairlead_tension = r.fairlead_tension;
  out.ramp_steps = r.ramp_steps;
  const CrossSection cs = make_section(l);
  const double w = (cs.mass_per_length() - env.fluid_density * cs.area) * env.gravity.norm();
  const bool grounded = std::abs(anchor.z() - env.seabed_elevation) < 1e-9;
  try {
    const CatenaryEnds c = elastic_catenary(anchor, fairlead, l.length, w, l.axial_stiffness, grounded);
    out.oracle_anchor = c.anchor_force.norm();
    out.oracle_fairlead = c.fairlead_force.norm();
  } catch (const SolverError&) {
    out.oracle_anchor = out.oracle_fairlead = std::nan("");
  }
  return out;
}

// Initializes all lines for a body pose; returns reports and fills the state.
std::vector<LineReport> place_lines(const Scenario& s, const LoadEnvironment& env,
                                    const InitOptions& opts, SimulationState& st) {
  std::vector<LineReport> reports;
  const std::vector<FairleadKinematics> fk = fairlead_kinematics(st.body);
  st.lines.clear();
  st.reactions.clear();
  for (std::size_t j = 0; j < s.lines.size(); ++j) {
    const LineSpec& l = s.lines[j];
    InitResult r;
    try {
      r = initialize_line(st.anchors[j], fk[j].position, properties(l), env, opts);
    } catch (const std::exception& e) {
      throw SolverError(l.name + ": " + e.what());
    }
    reports.push_back(report(l, r, st.anchors[j], fk[j].position, env));
    st.lines.push_back(std::move(r.state));
    st.reactions.push_back(r.reactions);
  }
  return reports;
}

unsigned thread_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* v = std::getenv("FVMOOR_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (end != v && *end == '\0' && n >= 1 && n <= 256) return static_cast<unsigned>(n);
    throw ValidationError("FVMOOR_THREADS: expected an integer in [1, 256], got '" +
                          std::string(v) + "'");
  }
  return 1;
}

}  // namespace

std::vector<LineReport> init_check(const Scenario& s, const InitOptions& opts) {
  s.validate();
  const LoadEnvironment env = make_environment(s);
  std::vector<LineReport> out;
  for (const LineSpec& l : s.lines) {
    const Vec3 a = vec(l.anchor), f = vec(l.fairlead);
    InitResult r;
    try {
      r = initialize_line(a, f, properties(l), env, opts);
    } catch (const std::exception& e) {
      throw SolverError(l.name + ": " + e.what());
    }
    out.push_back(report(l, r, a, f, env));
  }
  return out;
}

Simulation build_simulation(const Scenario& s, const InitOptions& opts) {
  s.validate();
  Simulation sim;
  sim.scenario = s;
  sim.env = make_environment(s);
  sim.config = make_coupling_config(s);

  const BodySpec& b = s.body;
  RigidBodyState body;
  body.mass = b.mass;
  body.position = vec(b.centre_of_gravity);
  body.inertia = vec(b.inertia).asDiagonal();
  body.added_mass = vec(b.added_mass);
  for (const LineSpec& l : s.lines) body.fairleads.push_back(vec(l.fairlead) - body.position);
  body.validate();

  if (s.wave) {
    StokesWave::Params wp;
    wp.height = s.wave->height;
    wp.period = s.wave->period;
    wp.depth = s.environment.water_depth;
    wp.phase = s.wave->phase;
    wp.gravity = sim.env.gravity.norm();
    wp.density = sim.env.fluid_density;
    wp.ramp = s.wave->ramp.value_or(-1.0);
    sim.wave.emplace(wp);
    if (s.environment.wave_kinematics_on_lines) {
      const StokesWave w = *sim.wave;
      sim.env.fluid_velocity = [w](const Vec3& x, double t) { return w.velocity(x, t); };
      sim.env.fluid_acceleration = [w](const Vec3& x, double t) { return w.acceleration(x, t); };
    }
  }

  BoxHydro::Params hp;
  hp.dimensions = vec(b.dimensions);
  // Box bottom at -draft below still water, centred on the vertical axis.
  const Vec3 box_centre(0.0, 0.0, -b.draft + 0.5 * b.dimensions[2]);
  hp.centre = box_centre - body.position;
  hp.density = sim.env.fluid_density;
  hp.gravity = sim.env.gravity.norm();
  hp.panels = s.hydro.panels;
  hp.damping = vec(s.hydro.damping);
  const bool waves_on_body = s.coupling.mode == ForcingMode::kCoupledHydro;
  const BoxHydro box(hp, waves_on_body ? sim.wave : std::nullopt);
  sim.hydro = box;

  if (s.motion) {
    sim.motion.amplitude = vec(s.motion->amplitude);
    sim.motion.frequency = s.motion->frequency;
    sim.motion.phase = vec(s.motion->phase);
    sim.motion.ramp = s.motion->ramp;
  }

  SimulationState& st = sim.initial;
  st.body = body;
  for (const LineSpec& l : s.lines) st.anchors.push_back(vec(l.anchor));
  sim.lines = place_lines(s, sim.env, opts, st);

  if (b.equilibrate && s.coupling.mode != ForcingMode::kPrescribedMotion) {
    const double k_heave = sim.env.fluid_density * hp.gravity * hp.dimensions.x() * hp.dimensions.y();
    const double weight = body.mass * sim.env.gravity.norm();
    for (int it = 0; it < 30; ++it) {
      const BodyLoads loads = aggregate_loads(st.body, fairlead_forces(st),
                                              box.pressure_loads(st.body, 0.0), sim.env.gravity);
      const double dz = loads.force.z() / k_heave;
      if (std::abs(loads.force.z()) < 1e-12 * weight) break;
      st.body.position.z() += dz;
      sim.equilibrium_shift += dz;
      sim.lines = place_lines(s, sim.env, opts, st);
      if (std::abs(dz) < 1e-12) break;
    }
  }
  sim.reference_body = st.body;

  const Vec6 offset = vec(b.initial_offset);
  if (s.coupling.mode == ForcingMode::kPrescribedMotion) {
    st.body = prescribed_body(sim.reference_body, sim.motion, 0.0);
    sim.lines = place_lines(s, sim.env, opts, st);
  } else if (offset.norm() > 0.0) {
    st.body.position += offset.head<3>();
    st.body.orientation = (quat_exp<double>(Vec3(offset.tail<3>())) * st.body.orientation).normalized();
    sim.lines = place_lines(s, sim.env, opts, st);
  }
  st.validate();
  return sim;
}

namespace {

struct Recorder {
  const Simulation& sim;
  RecordSet set;
  std::vector<std::size_t> probe_index;

  explicit Recorder(const Simulation& s) : sim(s) {
    const Scenario& sc = s.scenario;
    auto add = [&](const std::string& n) { set.channels.push_back(TimeSeries{n, {}, {}}); };
    if (sc.output.body) {
      for (const char* n : {"surge", "sway", "heave", "roll", "pitch", "yaw"}) add(n);
    }
    if (sc.output.tensions) {
      for (const LineSpec& l : sc.lines) {
        add(l.name + "_anchor_tension");
        add(l.name + "_fairlead_tension");
      }
    }
    for (const CellProbe& p : sc.output.cells) {
      const std::string base = sc.lines[static_cast<std::size_t>(p.line - 1)].name + "_cell" +
                               std::to_string(p.cell);
      for (const char* axis : {"_x", "_y", "_z"}) add(base + axis);
    }
    if (sc.output.wave_elevation && s.wave) add("wave_elevation");
  }

  void record(double t, const SimulationState& st) {
    const Scenario& sc = sim.scenario;
    std::size_t c = 0;
    auto put = [&](double v) { set.channels[c++].push(t, v); };
    if (sc.output.body) {
      const Vec3 d = st.body.position - sim.reference_body.position;
      const Vec3 r = quat_log<double>(st.body.orientation * sim.reference_body.orientation.conjugate());
      for (int k = 0; k < 3; ++k) put(d[k]);
      for (int k = 0; k < 3; ++k) put(r[k]);
    }
    if (sc.output.tensions) {
      for (const EndReactions& er : st.reactions) {
        put(er.anchor.norm());
        put(er.fairlead.norm());
      }
    }
    for (const CellProbe& p : sc.output.cells) {
      const Vec3& x = st.lines[static_cast<std::size_t>(p.line - 1)].position[static_cast<std::size_t>(p.cell - 1)];
      for (int k = 0; k < 3; ++k) put(x[k]);
    }
    if (sc.output.wave_elevation && sim.wave) {
      put(sim.wave->elevation(sim.reference_body.position.x(), t));
    }
  }
};

}  // namespace

RecordSet run_simulation(const Simulation& sim, unsigned threads) {
  const CouplingContext ctx{sim.config, sim.env, sim.hydro, sim.reference_body, sim.motion,
                            thread_count(threads)};
  Recorder rec(sim);
  SimulationState st = sim.initial;
  rec.record(0.0, st);
  const double interval = sim.scenario.output.interval;
  const double end = sim.config.end_time;
  const auto samples = static_cast<std::size_t>(std::floor(end / interval + 1e-9));
  for (std::size_t k = 1; k <= samples; ++k) {
    const double target = static_cast<double>(k) * interval;
    while (target - st.time > 1e-12 * std::max(1.0, target)) {
      double h = std::min(adaptive_step(st, ctx, sim.config.dt), target - st.time);
      // Avoid leaving a sliver before the output time.
      if (target - st.time - h < 1e-3 * h) h = target - st.time;
      // Failed steps are retried with half the step down to min_dt.
      for (;;) {
        try {
          st = coupling_step(st, ctx, h);
          break;
        } catch (const SolverError& e) {
          if (0.5 * h < sim.config.min_dt) throw SolverError(std::string("run: ") + e.what());
          h *= 0.5;
        }
      }
    }
    st.time = target;
    rec.record(target, st);
  }
  return std::move(rec.set);
}

RecordSet run_simulation(const Scenario& s, unsigned threads) {
  return run_simulation(build_simulation(s), threads);
}

std::pair<double, double> default_window(const std::string& channel) {
  if (channel == "wave_elevation") return {6.0, 14.0};
  return {8.0, 16.0};
}

}  // namespace fvmoor
