#include "fvmoor/coupling/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <sstream>

#include "fvmoor/rotation.hpp"

namespace fvmoor {

std::string to_string(ForcingMode m) {
  switch (m) {
    case ForcingMode::kPrescribedMotion: return "prescribed-motion";
    case ForcingMode::kCoupledHydro: return "coupled-hydro";
    case ForcingMode::kFreeDecay: return "free-decay";
  }
  return "free-decay";
}

ForcingMode forcing_mode_from_string(const std::string& s) {
  if (s == "prescribed-motion") return ForcingMode::kPrescribedMotion;
  if (s == "coupled-hydro") return ForcingMode::kCoupledHydro;
  if (s == "free-decay") return ForcingMode::kFreeDecay;
  throw ValidationError("unknown forcing mode '" + s + "'");
}

Vec6 MotionSignal::displacement(double t) const {
  const double w = 2.0 * std::numbers::pi * frequency;
  const double g = ramp > 0.0 ? std::clamp(t / ramp, 0.0, 1.0) : 1.0;
  Vec6 d;
  for (int k = 0; k < 6; ++k) d[k] = g * amplitude[k] * std::sin(w * t + phase[k]);
  return d;
}

Vec6 MotionSignal::rate(double t) const {
  const double w = 2.0 * std::numbers::pi * frequency;
  const bool ramping = ramp > 0.0 && t < ramp;
  const double g = ramp > 0.0 ? std::clamp(t / ramp, 0.0, 1.0) : 1.0;
  Vec6 v;
  for (int k = 0; k < 6; ++k) {
    v[k] = g * amplitude[k] * w * std::cos(w * t + phase[k]);
    if (ramping && t > 0.0) v[k] += amplitude[k] * std::sin(w * t + phase[k]) / ramp;
  }
  return v;
}

void CouplingConfig::validate() const {
  if (!(dt > 0.0)) throw ValidationError("coupling.dt: must be positive");
  if (outer_iterations < 1) throw ValidationError("coupling.outer_iterations: must be >= 1");
  if (!(relax > 0.0 && relax <= 1.0)) throw ValidationError("coupling.relax: must be in (0, 1]");
  if (end_time < 0.0) throw ValidationError("coupling.end_time: must be >= 0");
  if (!(max_fairlead_travel > 0.0)) throw ValidationError("coupling.max_fairlead_travel: must be positive");
  if (!(min_dt > 0.0) || min_dt > dt) throw ValidationError("coupling.min_dt: must be in (0, dt]");
}

void SimulationState::validate() const {
  if (lines.size() != anchors.size() || lines.size() != reactions.size()) {
    throw ValidationError("simulation: one anchor and reaction per line required");
  }
  if (lines.size() != body.fairleads.size()) {
    throw ValidationError("simulation: one fairlead per line required");
  }
}

RigidBodyState prescribed_body(const RigidBodyState& reference, const MotionSignal& motion,
                               double t) {
  const Vec6 d = motion.displacement(t);
  const Vec6 v = motion.rate(t);
  RigidBodyState b = reference;
  b.position = reference.position + d.head<3>();
  b.velocity = v.head<3>();
  // Small rotations about inertial axes composed as a rotation vector.
  const Quat dq = quat_exp<double>(Vec3(d.tail<3>()));
  b.orientation = (dq * reference.orientation).normalized();
  b.angular_velocity = b.rotation().transpose() * Vec3(v.tail<3>());
  return b;
}

std::vector<Vec3> fairlead_forces(const SimulationState& s) {
  std::vector<Vec3> f;
  f.reserve(s.reactions.size());
  // The support reaction acts on the line; the line pulls the body back.
  for (const EndReactions& r : s.reactions) f.push_back(-r.fairlead);
  return f;
}

namespace {

std::string where(double t, int iteration, int line) {
  std::ostringstream os;
  os << "t=" << t << " s, outer iteration " << iteration;
  if (line >= 0) os << ", line " << line + 1;
  os << ": ";
  return os.str();
}

struct LineSolve {
  StepResult result;
  std::exception_ptr error;
};

LineSolve solve_line(const SimulationState& start, std::size_t j, const FairleadKinematics& fk,
                     const CouplingContext& ctx, double dt, double t_new) {
  LineSolve out;
  try {
    BeamBC bc{EndCondition::pinned(start.anchors[j]), EndCondition::pinned(fk.position)};
    bc.fairlead.velocity = fk.velocity;
    out.result = advance_step(start.lines[j], ctx.env, bc, dt, t_new, ctx.config.newton);
  } catch (...) {
    out.error = std::current_exception();
  }
  return out;
}

}  // namespace

SimulationState coupling_step(const SimulationState& state, const CouplingContext& ctx,
                              double dt) {
  if (!(dt > 0.0)) throw ValidationError("coupling: time step must be positive");
  const double t_new = state.time + dt;
  const CouplingConfig& cfg = ctx.config;
  SimulationState next = state;
  next.time = t_new;
  RigidBodyState body = state.body;
  if (cfg.mode == ForcingMode::kPrescribedMotion) {
    body = prescribed_body(ctx.reference_body, ctx.motion, t_new);
  }
  std::optional<BodyAccelerations> previous;
  const std::size_t n = state.lines.size();
  for (int k = 1; k <= cfg.outer_iterations; ++k) {
    const std::vector<FairleadKinematics> fk = fairlead_kinematics(body);
    std::vector<LineSolve> solved(n);
    if (ctx.threads > 1 && n > 1) {
      std::vector<std::future<LineSolve>> jobs;
      for (std::size_t j = 0; j < n; ++j) {
        jobs.push_back(std::async(std::launch::async, solve_line, std::cref(state), j,
                                  std::cref(fk[j]), std::cref(ctx), dt, t_new));
      }
      for (std::size_t j = 0; j < n; ++j) solved[j] = jobs[j].get();
    } else {
      for (std::size_t j = 0; j < n; ++j) solved[j] = solve_line(state, j, fk[j], ctx, dt, t_new);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (solved[j].error) {
        try {
          std::rethrow_exception(solved[j].error);
        } catch (const std::exception& e) {
          throw SolverError(where(t_new, k, static_cast<int>(j)) + e.what());
        }
      }
      next.lines[j] = std::move(solved[j].result.state);
      next.reactions[j] = solved[j].result.reactions;
      next.newton_iterations += static_cast<std::size_t>(solved[j].result.iterations);
    }
    ++next.outer_iterations;
    // A replayed body does not depend on the line loads.
    if (cfg.mode == ForcingMode::kPrescribedMotion) break;
    try {
      const HydroLoads hydro = ctx.hydro ? ctx.hydro(body, t_new) : HydroLoads{};
      const BodyLoads loads = aggregate_loads(body, fairlead_forces(next), hydro, ctx.env.gravity);
      BodyStep bs = integrate_6dof(state.body, loads, dt, cfg.relax, previous);
      previous = bs.accelerations;
      body = std::move(bs.state);
    } catch (const std::exception& e) {
      throw SolverError(where(t_new, k, -1) + e.what());
    }
  }
  next.body = std::move(body);
  ++next.steps;
  return next;
}

double adaptive_step(const SimulationState& state, const CouplingContext& ctx, double dt_max) {
  const CouplingConfig& cfg = ctx.config;
  if (!cfg.adaptive_dt) return dt_max;
  double shortest = std::numeric_limits<double>::infinity();
  for (const BeamState& b : state.lines) {
    for (double l : b.cell_length) shortest = std::min(shortest, l);
  }
  RigidBodyState body = state.body;
  if (cfg.mode == ForcingMode::kPrescribedMotion) {
    body = prescribed_body(ctx.reference_body, ctx.motion, state.time);
  }
  double speed = 0.0;
  for (const FairleadKinematics& k : fairlead_kinematics(body)) {
    speed = std::max(speed, k.velocity.norm());
  }
  if (!(speed > 0.0)) return dt_max;
  return std::clamp(cfg.max_fairlead_travel * shortest / speed, cfg.min_dt, dt_max);
}

}  // namespace fvmoor
