#pragma once

#include "fvmoor/types.hpp"

namespace fvmoor {

/// Regular second-order Stokes wave travelling along +x in water of finite
/// depth, still water level at z = 0 and bed at z = -depth.
class StokesWave {
 public:
  struct Params {
    double height = 0.0;   // H, m
    double period = 1.0;   // T, s
    double depth = 1.0;    // h, m
    double phase = 0.0;    // rad
    double gravity = 9.81;
    double density = 1000.0;
    /// Linear amplitude ramp duration; negative selects one period.
    double ramp = -1.0;
  };

  explicit StokesWave(const Params& p);

  const Params& params() const { return p_; }
  double wave_number() const { return k_; }
  double wavelength() const;
  double angular_frequency() const { return omega_; }
  /// Ramp factor in [0, 1].
  double ramp_factor(double t) const;

  double elevation(double x, double t) const;
  /// Dynamic pressure (total minus hydrostatic -rho g z), Pa. Points above
  /// still water use the still-water-level value.
  double dynamic_pressure(const Vec3& x, double t) const;
  Vec3 velocity(const Vec3& x, double t) const;
  Vec3 acceleration(const Vec3& x, double t) const;

 private:
  Params p_;
  double k_ = 0.0;
  double omega_ = 0.0;
};

/// Solves omega^2 = g k tanh(k h) for k.
double dispersion_wave_number(double period, double depth, double gravity = 9.81);

}  // namespace fvmoor
