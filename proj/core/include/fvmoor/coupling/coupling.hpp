#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fvmoor/beam/beam_solver.hpp"
#include "fvmoor/body/hydro.hpp"
#include "fvmoor/body/rigid_body.hpp"

namespace fvmoor {

enum class ForcingMode { kPrescribedMotion, kCoupledHydro, kFreeDecay };

std::string to_string(ForcingMode m);
ForcingMode forcing_mode_from_string(const std::string& s);

/// Sinusoidal motion of the body about its reference pose, one signal per
/// degree of freedom (surge, sway, heave in m; roll, pitch, yaw in rad).
struct MotionSignal {
  Vec6 amplitude = Vec6::Zero();
  double frequency = 0.5;  // Hz
  Vec6 phase = Vec6::Zero();
  double ramp = 0.0;       // linear amplitude ramp duration, s

  Vec6 displacement(double t) const;
  Vec6 rate(double t) const;
};

struct CouplingConfig {
  double dt = 0.01;
  bool adaptive_dt = false;
  /// Adaptive mode caps each step's fairlead travel at this fraction of the
  /// shortest cell.
  double max_fairlead_travel = 0.1;
  double min_dt = 1e-4;
  int outer_iterations = 3;
  double relax = 0.7;
  double end_time = 0.0;
  ForcingMode mode = ForcingMode::kFreeDecay;
  NewtonOptions newton;

  void validate() const;
};

struct SimulationState {
  double time = 0.0;
  RigidBodyState body;
  std::vector<BeamState> lines;
  std::vector<Vec3> anchors;           // one per line; line k ends at body fairlead k
  std::vector<EndReactions> reactions;
  std::size_t steps = 0;
  std::size_t outer_iterations = 0;
  std::size_t newton_iterations = 0;  // summed over lines

  void validate() const;
};

/// Everything a step needs besides the state.
struct CouplingContext {
  const CouplingConfig& config;
  const LoadEnvironment& env;
  HydroModel hydro;
  /// Reference pose for prescribed motion.
  RigidBodyState reference_body;
  MotionSignal motion;
  /// Worker threads for the per-line solves; results do not depend on it.
  unsigned threads = 1;
};

/// Pose and velocity of the body replaying `motion` about `reference` at t.
RigidBodyState prescribed_body(const RigidBodyState& reference, const MotionSignal& motion,
                               double t);

/// Force each line applies to the body at its fairlead.
std::vector<Vec3> fairlead_forces(const SimulationState& s);

/// One partitioned step of length dt. Failures are rethrown with the time,
/// outer iteration and line index prepended.
SimulationState coupling_step(const SimulationState& state, const CouplingContext& ctx,
                              double dt);

/// Suggested step so that no fairlead moves further than the travel cap.
double adaptive_step(const SimulationState& state, const CouplingContext& ctx, double dt_max);

}  // namespace fvmoor
