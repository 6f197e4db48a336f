#pragma once

#include "fvmoor/beam/beam_solver.hpp"

namespace fvmoor {

struct LineProperties {
  CrossSection section;
  double length = 0.0;  // unstretched, m
  std::size_t cells = 60;
};

struct InitOptions {
  double initial_increment = 0.05;  // fraction of the end-point ramp per step
  double min_increment = 1e-5;      // halving floor
  double relax_below = 2e-3;        // pseudo-transient fallback once steps are this small
  double tolerance = 1e-10;         // final static polish, relative
  double ramp_tolerance = 1e-7;
  int pseudo_steps = 2000;          // cap on pseudo-time steps per ramp stage
  double pseudo_dt = 0.01;          // initial pseudo-time step, s
  /// Axial strain of the starting straight line; negative selects twice the
  /// strain at which the line carries its own net weight, so no cell starts
  /// in compression.
  double prestretch = -1.0;
  /// Stage solutions with any face compressed beyond this axial strain are
  /// rejected (unstable straight-column branch) and the ramp step is halved.
  double max_compression = 0.01;
};

struct InitResult {
  BeamState state;
  EndReactions reactions;
  double pretension = 0.0;         // anchor tension magnitude, N
  double fairlead_tension = 0.0;   // N
  int ramp_steps = 0;
  int relaxation_steps = 0;
};

/// Static equilibrium of one line pinned at `anchor` and `fairlead`, reached
/// from a straight line pointing from the anchor toward the fairlead by
/// ramping its far end onto the fairlead. Throws ConvergenceError with a
/// diagnostic when the step-halving floor is hit.
InitResult initialize_line(const Vec3& anchor, const Vec3& fairlead, const LineProperties& line,
                           const LoadEnvironment& env, const InitOptions& opts = {});

}  // namespace fvmoor
