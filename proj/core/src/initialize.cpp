#include "fvmoor/coupling/initialize.hpp"

#include "fvmoor/beam/strain.hpp"
#include "fvmoor/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace fvmoor {

namespace {

struct Stage {
  const LoadEnvironment& env;
  const InitOptions& opts;
  int relaxation_steps = 0;
};

BeamBC pins(const Vec3& a, const Vec3& b) {
  return {EndCondition::pinned(a), EndCondition::pinned(b)};
}

BeamState at_rest(BeamState s) {
  for (auto& v : s.velocity) v.setZero();
  for (auto& w : s.angular_velocity) w.setZero();
  return s;
}

std::optional<NewtonResult> try_static(const BeamState& guess, const LoadEnvironment& env,
                                       const BeamBC& bc, double tol, int max_it = 15) {
  NewtonOptions no;
  no.tolerance = tol;
  no.max_iterations = max_it;
  try {
    return newton_solve(guess, guess, env, bc, StepControl::statics(), no);
  } catch (const SolverError&) {
  } catch (const GeometryError&) {
  }
  return std::nullopt;
}

// Pseudo-transient continuation: one Newton step per pseudo-time level on
// the static residual augmented by the inertia of a line starting from rest.
// The pseudo step grows with the residual reduction ratio.
double static_norm(const BeamState& s, const LoadEnvironment& env, const BeamBC& bc) {
  try {
    return evaluate_residual(s, s, env, bc, StepControl::statics()).inf_norm;
  } catch (const GeometryError&) {
    return std::numeric_limits<double>::infinity();
  }
}

std::optional<NewtonResult> relax(BeamState s, const BeamBC& bc, Stage& st, double tol) {
  double dtau = st.opts.pseudo_dt;
  double norm = static_norm(s, st.env, bc);
  if (!std::isfinite(norm)) return std::nullopt;
  for (int k = 0; k < st.opts.pseudo_steps; ++k) {
    const BeamState rest = at_rest(s);
    BeamState trial;
    double trial_norm = std::numeric_limits<double>::infinity();
    try {
      const BlockTriDiagSystem sys =
          assemble_system(rest, rest, st.env, bc, StepControl::dynamic(dtau, 0.0));
      trial = apply_increment(rest, solve_block_tridiagonal(sys));
      trial_norm = static_norm(trial, st.env, bc);
    } catch (const SolverError&) {
    } catch (const GeometryError&) {
    }
    ++st.relaxation_steps;
    if (!std::isfinite(trial_norm) || trial_norm > 10.0 * norm) {
      dtau *= 0.25;
      if (dtau < 1e-9) return std::nullopt;
      continue;
    }
    dtau *= std::clamp(norm / trial_norm, 0.5, 2.0);
    s = std::move(trial);
    norm = trial_norm;
    if (norm < 1e-3 * tol || k % 8 == 7) {
      if (auto r = try_static(s, st.env, bc, tol, 8)) return r;
    }
  }
  return try_static(s, st.env, bc, tol);
}

bool admissible(const NewtonResult& r, double max_compression) {
  if (r.state.cells() < 2) return true;
  const StrainState s = compute_strain(r.state);
  for (const Vec3& g : s.shear) {
    if (g.x() < -max_compression) return false;
  }
  return true;
}

std::optional<NewtonResult> solve_stage(const BeamState& guess, const BeamBC& bc, Stage& st,
                                        double tol, bool allow_relax) {
  auto r = try_static(guess, st.env, bc, tol);
  if ((!r || !admissible(*r, st.opts.max_compression)) && allow_relax) {
    r = relax(guess, bc, st, tol);
  }
  if (r && !admissible(*r, st.opts.max_compression)) return std::nullopt;
  return r;
}

// Secant predictor along the ramp from the last two converged stages.
BeamState predict(const BeamState& cur, const BeamState* older, double ratio, const Vec3& shift,
                  double length) {
  BeamState g = cur;
  for (std::size_t i = 0; i < g.cells(); ++i) {
    if (older != nullptr) {
      g.position[i] += ratio * (cur.position[i] - older->position[i]);
      const Vec3 w = quat_log<double>(Quat(cur.orientation[i] * older->orientation[i].conjugate()));
      g.orientation[i] = (quat_exp<double>(Vec3(ratio * w)) * cur.orientation[i]).normalized();
    } else {
      g.position[i] += (g.arc_length[i] / length) * shift;
    }
  }
  return g;
}

}  // namespace

InitResult initialize_line(const Vec3& anchor, const Vec3& fairlead, const LineProperties& line,
                           const LoadEnvironment& env, const InitOptions& opts) {
  line.section.validate();
  env.validate();
  if (!(line.length > 0.0)) throw ValidationError("line: length must be positive");
  if (line.cells < 1) throw ValidationError("line: cells must be >= 1");
  const Vec3 chord = fairlead - anchor;
  if (!(chord.norm() > 0.0)) throw GeometryError("initialize: anchor and fairlead coincide");
  const Vec3 u = chord.normalized();

  const CrossSection& cs = line.section;
  const double net_weight =
      std::abs(cs.density - env.fluid_density) * cs.area * env.gravity.norm() * line.length;
  const double eps0 =
      opts.prestretch >= 0.0 ? opts.prestretch : 2.0 * net_weight / cs.axial_stiffness;
  BeamState state = BeamState::straight(cs, anchor, u, line.length, line.cells);
  for (std::size_t i = 0; i < state.cells(); ++i) {
    state.position[i] = anchor + (1.0 + eps0) * state.arc_length[i] * u;
  }
  const Vec3 start = anchor + (1.0 + eps0) * line.length * u;
  Stage st{env, opts};
  InitResult out;

  double lambda = 0.0;
  double step = opts.initial_increment;
  Vec3 end = start;
  std::optional<NewtonResult> last;
  std::optional<BeamState> older;
  double last_step = 0.0;
  while (true) {
    const bool final_stage = lambda >= 1.0;
    const double target = final_stage ? 1.0 : std::min(1.0, lambda + step);
    const Vec3 next_end = start + target * (fairlead - start);
    const BeamState guess =
        final_stage ? state
                    : predict(state, older ? &*older : nullptr,
                              last_step > 0.0 ? (target - lambda) / last_step : 0.0,
                              next_end - end, line.length);
    const BeamBC bc = pins(anchor, next_end);
    const double tol = final_stage ? opts.tolerance : opts.ramp_tolerance;
    const bool allow_relax = final_stage || step <= opts.relax_below;
    auto r = solve_stage(guess, bc, st, tol, allow_relax);
    if (!r) {
      if (final_stage) {
        std::ostringstream msg;
        msg << "initialize: final equilibrium polish failed";
        throw ConvergenceError(msg.str(), std::numeric_limits<double>::infinity());
      }
      step *= 0.5;
      if (step < opts.min_increment) {
        std::ostringstream msg;
        msg << "initialize: step-halving floor reached at ramp fraction " << lambda
            << " (end " << end.transpose() << ")";
        throw ConvergenceError(msg.str(), std::numeric_limits<double>::infinity());
      }
      continue;
    }
    if (!final_stage) {
      older = state;
      last_step = target - lambda;
    }
    state = at_rest(std::move(r->state));
    last = std::move(r);
    ++out.ramp_steps;
    if (final_stage) break;
    lambda = target;
    end = next_end;
    step = std::min(step * 1.5, 0.25);
  }

  out.reactions = last->reactions;
  out.state = std::move(state);
  out.pretension = out.reactions.anchor.norm();
  out.fairlead_tension = out.reactions.fairlead.norm();
  out.relaxation_steps = st.relaxation_steps;
  return out;
}

}  // namespace fvmoor
