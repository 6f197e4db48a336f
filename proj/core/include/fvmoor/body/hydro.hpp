#pragma once

#include <functional>
#include <optional>

#include "fvmoor/body/rigid_body.hpp"
#include "fvmoor/body/waves.hpp"

namespace fvmoor {

/// Hydrodynamic loads on the body at time t.
using HydroModel = std::function<HydroLoads(const RigidBodyState&, double)>;

HydroModel no_hydro();

/// Rectangular box: pressure of the undisturbed incident field (hydrostatic
/// plus optional Stokes wave) integrated over the wetted faces, plus linear
/// radiation damping.
class BoxHydro {
 public:
  struct Params {
    Vec3 dimensions = Vec3(0.2, 0.2, 0.132);  // body-frame extents, m
    Vec3 centre = Vec3::Zero();               // box centre relative to the centre of mass, body frame
    double density = 1000.0;
    double gravity = 9.81;
    int panels = 10;  // per face edge
    /// Damping on (surge, sway, heave) velocity in the inertial frame and
    /// (roll, pitch, yaw) rate in the body frame.
    Vec6 damping = Vec6::Zero();
  };

  BoxHydro(const Params& p, std::optional<StokesWave> wave = std::nullopt);

  HydroLoads operator()(const RigidBodyState& body, double t) const;

  /// Hydrostatic and incident-wave part only.
  HydroLoads pressure_loads(const RigidBodyState& body, double t) const;
  HydroLoads damping_loads(const RigidBodyState& body) const;

  /// Submerged volume below still water for the given pose, m^3.
  double still_water_volume(const RigidBodyState& body) const;

  const Params& params() const { return p_; }
  const std::optional<StokesWave>& wave() const { return wave_; }

 private:
  Params p_;
  std::optional<StokesWave> wave_;
};

}  // namespace fvmoor
