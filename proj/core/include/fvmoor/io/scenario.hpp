#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fvmoor/coupling/coupling.hpp"
#include "fvmoor/loads/environment.hpp"

namespace fvmoor {

using Triple = std::array<double, 3>;
using Sextuple = std::array<double, 6>;

struct BodySpec {
  double mass = 0.0;
  Triple centre_of_gravity{};
  Triple inertia{};          // principal moments about the centre of gravity
  Triple dimensions{};       // box extents
  double draft = 0.0;        // bottom of the box below still water
  Sextuple added_mass{};
  Sextuple initial_offset{}; // displacement from the reference pose at t = 0
  bool equilibrate = true;   // adjust heave to static balance before the run

  bool operator==(const BodySpec&) const = default;
};

struct LineSpec {
  std::string name;
  Triple anchor{};
  Triple fairlead{};  // inertial position at the reference pose
  double length = 0.0;
  double diameter = 0.0;
  double axial_stiffness = 0.0;
  std::optional<double> shear_stiffness;
  std::optional<double> bending_stiffness;
  std::optional<double> torsional_stiffness;
  double mass_per_length = 0.0;
  int cells = 60;

  bool operator==(const LineSpec&) const = default;
};

struct EnvironmentSpec {
  double fluid_density = 1000.0;
  Triple gravity{0.0, 0.0, -9.81};
  double water_depth = 0.5;
  std::optional<double> seabed_elevation;  // defaults to -water_depth
  double seabed_stiffness = 1000.0;
  double seabed_damping = 1.0;
  double seabed_tangential_stiffness = 100.0;
  double friction_coefficient = 0.01;
  double drag_normal = 1.6;
  double drag_tangential = 0.5;
  double added_mass_normal = 1.6;
  double added_mass_tangential = 0.0;
  bool wave_kinematics_on_lines = false;

  bool operator==(const EnvironmentSpec&) const = default;
};

struct WaveSpec {
  double height = 0.0;
  double period = 1.0;
  double phase = 0.0;
  std::optional<double> ramp;  // defaults to one period

  bool operator==(const WaveSpec&) const = default;
};

struct MotionSpec {
  Sextuple amplitude{};
  double frequency = 0.5;
  Sextuple phase{};
  double ramp = 0.0;

  bool operator==(const MotionSpec&) const = default;
};

struct HydroSpec {
  int panels = 10;
  Sextuple damping{};

  bool operator==(const HydroSpec&) const = default;
};

struct CouplingSpec {
  ForcingMode mode = ForcingMode::kFreeDecay;
  double dt = 0.01;
  bool adaptive_dt = false;
  double max_fairlead_travel = 0.1;
  double min_dt = 1e-4;
  int outer_iterations = 3;
  double relax = 0.7;
  double end_time = 0.0;
  double newton_tolerance = 1e-6;
  int newton_max_iterations = 25;

  bool operator==(const CouplingSpec&) const = default;
};

struct CellProbe {
  int line = 1;  // 1-based
  int cell = 1;  // 1-based

  bool operator==(const CellProbe&) const = default;
};

struct OutputSpec {
  double interval = 0.05;
  bool body = true;
  bool tensions = true;
  bool wave_elevation = true;
  std::vector<CellProbe> cells;

  bool operator==(const OutputSpec&) const = default;
};

struct Scenario {
  std::string name;
  BodySpec body;
  std::vector<LineSpec> lines;
  EnvironmentSpec environment;
  std::optional<WaveSpec> wave;
  std::optional<MotionSpec> motion;
  HydroSpec hydro;
  CouplingSpec coupling;
  OutputSpec output;

  bool operator==(const Scenario&) const = default;

  /// Physical and structural checks; throws ValidationError naming the field.
  void validate() const;
};

/// Parses the YAML scenario format. Unknown keys, malformed values and
/// missing required fields raise ValidationError with line and column.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

/// Canonical text form; parse_scenario(render_scenario(s)) == s.
std::string render_scenario(const Scenario& s);

// Conversions used by the simulation driver.
LoadEnvironment make_environment(const Scenario& s);
CrossSection make_section(const LineSpec& l);
CouplingConfig make_coupling_config(const Scenario& s);

}  // namespace fvmoor
