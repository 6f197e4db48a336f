#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fvmoor/body/hydro.hpp"
#include "fvmoor/body/waves.hpp"
#include "fvmoor/coupling/coupling.hpp"
#include "fvmoor/coupling/initialize.hpp"
#include "fvmoor/io/scenario.hpp"
#include "fvmoor/io/time_series.hpp"

namespace fvmoor {

struct LineReport {
  std::string name;
  double pretension = 0.0;        // anchor tension from the beam, N
  double fairlead_tension = 0.0;  // N
  double oracle_anchor = 0.0;     // elastic catenary, N
  double oracle_fairlead = 0.0;   // N
  int ramp_steps = 0;
};

/// Initializes every line between its anchor and the fairlead given in the
/// scenario and compares the end tensions with the catenary oracle.
std::vector<LineReport> init_check(const Scenario& s, const InitOptions& opts = {});

/// Ready-to-run simulation built from a scenario.
struct Simulation {
  Scenario scenario;
  LoadEnvironment env;
  CouplingConfig config;
  std::optional<StokesWave> wave;
  HydroModel hydro;
  MotionSignal motion;
  /// Pose the body is displaced from; outputs are relative to it.
  RigidBodyState reference_body;
  SimulationState initial;
  /// Heave correction applied by the static balance search, m.
  double equilibrium_shift = 0.0;
  std::vector<LineReport> lines;
};

/// Builds the body, hydro model and initialized lines. With body.equilibrate
/// the heave is adjusted until buoyancy balances weight and mooring pull.
Simulation build_simulation(const Scenario& s, const InitOptions& opts = {});

/// Runs to the end time and returns all requested channels sampled at
/// multiples of the output interval. `threads` = 0 reads FVMOOR_THREADS.
RecordSet run_simulation(const Simulation& sim, unsigned threads = 0);
RecordSet run_simulation(const Scenario& s, unsigned threads = 0);

/// Default post-processing window of a channel: [6, 14] s for the wave
/// elevation, [8, 16] s otherwise.
std::pair<double, double> default_window(const std::string& channel);

}  // namespace fvmoor
