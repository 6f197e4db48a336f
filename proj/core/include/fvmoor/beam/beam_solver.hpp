#pragma once

#include <vector>

#include "fvmoor/beam/beam_state.hpp"
#include "fvmoor/beam/block_tridiag.hpp"
#include "fvmoor/loads/environment.hpp"

namespace fvmoor {

/// Time level being solved for. A quasi-static step drops every inertial and
/// velocity-dependent term.
struct StepControl {
  double dt = 0.0;
  double time = 0.0;  // time of the new level
  bool quasi_static = true;

  static StepControl statics(double time = 0.0) { return {0.0, time, true}; }
  static StepControl dynamic(double dt, double time) { return {dt, time, false}; }
};

struct NewtonOptions {
  double tolerance = 1e-6;  // relative to reference_force()
  int max_iterations = 25;
  int max_line_search = 8;
};

/// Residual of every cell (force rows in N, moment rows in N m) and the
/// support reactions implied by the boundary faces.
struct ResidualEvaluation {
  std::vector<Vec6> residual;
  EndReactions reactions;
  double inf_norm = 0.0;
};

ResidualEvaluation evaluate_residual(const BeamState& state, const BeamState& prev,
                                     const LoadEnvironment& env, const BeamBC& bc,
                                     const StepControl& step);

/// Newton system at the current iterate: blocks hold dR/dX and the source is
/// -R, with X the per-cell (position increment, rotation-vector increment).
BlockTriDiagSystem assemble_system(const BeamState& state, const BeamState& prev,
                                   const LoadEnvironment& env, const BeamBC& bc,
                                   const StepControl& step);

/// r += dx.head(3); q = exp(dx.tail(3)) q, renormalised.
BeamState apply_increment(const BeamState& state, const std::vector<Vec6>& dx);

/// Force scale for convergence: max(rho A |g| L, largest end reaction, 1 N).
double reference_force(const BeamState& state, const EndReactions& reactions,
                       const LoadEnvironment& env);

struct NewtonResult {
  BeamState state;
  EndReactions reactions;
  int iterations = 0;
  double residual_norm = 0.0;
  double force_scale = 1.0;
};

/// Solve R(X) = 0 from `guess`. `prev` is the converged previous time level
/// (ignored for quasi-static steps except for its size). Throws
/// ConvergenceError after `max_iterations` and SolverError on blow-up.
NewtonResult newton_solve(BeamState guess, const BeamState& prev, const LoadEnvironment& env,
                          const BeamBC& bc, const StepControl& step,
                          const NewtonOptions& opts = {});

struct StepResult {
  BeamState state;
  EndReactions reactions;
  int iterations = 0;
};

/// Backward-Euler step from `state` to time `time_new = t + dt`.
StepResult advance_step(const BeamState& state, const LoadEnvironment& env, const BeamBC& bc,
                        double dt, double time_new, const NewtonOptions& opts = {});
/// Same, starting Newton from `guess` instead of the velocity predictor.
StepResult advance_step(const BeamState& state, const LoadEnvironment& env, const BeamBC& bc,
                        double dt, double time_new, const NewtonOptions& opts, BeamState guess);

/// External force per unit length at each cell centre.
std::vector<Vec3> cell_external_loads(const BeamState& state, const BeamState& prev,
                                      const LoadEnvironment& env, const BeamBC& bc,
                                      const StepControl& step);

/// Recompute the interpolated face positions and orientations.
void refresh_faces(BeamState& state, const BeamBC& bc, double time);

struct BeamEnergy {
  double elastic = 0.0;
  double kinetic = 0.0;
  double potential = 0.0;  // net weight and seabed penalty
  double total() const { return elastic + kinetic + potential; }
};

BeamEnergy beam_energy(const BeamState& state, const LoadEnvironment& env, const BeamBC& bc,
                       double time);

}  // namespace fvmoor
