#include "fvmoor/body/waves.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include <boost/math/tools/roots.hpp>

namespace fvmoor {

double dispersion_wave_number(double period, double depth, double gravity) {
  if (!(period > 0.0) || !(depth > 0.0) || !(gravity > 0.0)) {
    throw ValidationError("wave: period, depth and gravity must be positive");
  }
  const double omega = 2.0 * std::numbers::pi / period;
  const double k_deep = omega * omega / gravity;
  auto f = [&](double k) {
    const double th = std::tanh(k * depth);
    const double sech2 = 1.0 - th * th;
    return std::make_pair(gravity * k * th - omega * omega,
                          gravity * (th + k * depth * sech2));
  };
  // tanh(x) < min(1, x) bounds the root from below; tanh growth bounds it above.
  const double lo = std::max(k_deep, omega / std::sqrt(gravity * depth));
  const double hi = k_deep / std::tanh(k_deep * depth);
  std::uintmax_t iters = 100;
  return boost::math::tools::newton_raphson_iterate(f, 0.5 * (lo + hi), lo, hi, 52, iters);
}

StokesWave::StokesWave(const Params& p) : p_(p) {
  if (p_.height < 0.0) throw ValidationError("wave: height must be >= 0");
  if (!(p_.density > 0.0)) throw ValidationError("wave: density must be positive");
  k_ = dispersion_wave_number(p_.period, p_.depth, p_.gravity);
  omega_ = 2.0 * std::numbers::pi / p_.period;
  if (p_.ramp < 0.0) p_.ramp = p_.period;
}

double StokesWave::wavelength() const { return 2.0 * std::numbers::pi / k_; }

double StokesWave::ramp_factor(double t) const {
  if (p_.ramp <= 0.0) return 1.0;
  return std::clamp(t / p_.ramp, 0.0, 1.0);
}

double StokesWave::elevation(double x, double t) const {
  const double h = p_.depth;
  const double a = 0.5 * p_.height * ramp_factor(t);
  const double th = k_ * x - omega_ * t + p_.phase;
  const double kh = k_ * h;
  const double s = std::sinh(kh);
  const double second = 0.25 * k_ * a * a * std::cosh(kh) * (2.0 + std::cosh(2.0 * kh)) / (s * s * s);
  return a * std::cos(th) + second * std::cos(2.0 * th);
}

double StokesWave::dynamic_pressure(const Vec3& x, double t) const {
  const double h = p_.depth;
  const double a = 0.5 * p_.height * ramp_factor(t);
  const double z = std::min(x.z(), 0.0);
  const double th = k_ * x.x() - omega_ * t + p_.phase;
  const double kh = k_ * h;
  const double rg = p_.density * p_.gravity;
  const double kz = k_ * (z + h);
  const double first = rg * a * std::cosh(kz) / std::cosh(kh) * std::cos(th);
  const double s2 = std::sinh(2.0 * kh);
  const double sh = std::sinh(kh);
  const double c2 = std::cosh(2.0 * kz);
  const double second = 0.75 * rg * k_ * a * a / s2 * (c2 / (sh * sh) - 1.0 / 3.0) *
                            std::cos(2.0 * th) -
                        0.25 * rg * k_ * a * a / s2 * (c2 - 1.0);
  return first + second;
}

Vec3 StokesWave::velocity(const Vec3& x, double t) const {
  const double h = p_.depth;
  const double a = 0.5 * p_.height * ramp_factor(t);
  const double z = std::min(x.z(), 0.0);
  const double th = k_ * x.x() - omega_ * t + p_.phase;
  const double sh = std::sinh(k_ * h);
  const double kz = k_ * (z + h);
  const double c1 = a * omega_ / sh;
  const double c2 = 0.75 * omega_ * k_ * a * a / std::pow(sh, 4);
  return {c1 * std::cosh(kz) * std::cos(th) + c2 * std::cosh(2.0 * kz) * std::cos(2.0 * th), 0.0,
          c1 * std::sinh(kz) * std::sin(th) + c2 * std::sinh(2.0 * kz) * std::sin(2.0 * th)};
}

Vec3 StokesWave::acceleration(const Vec3& x, double t) const {
  // Local acceleration, ramp held constant.
  const double h = p_.depth;
  const double a = 0.5 * p_.height * ramp_factor(t);
  const double z = std::min(x.z(), 0.0);
  const double th = k_ * x.x() - omega_ * t + p_.phase;
  const double sh = std::sinh(k_ * h);
  const double kz = k_ * (z + h);
  const double c1 = a * omega_ * omega_ / sh;
  const double c2 = 1.5 * omega_ * omega_ * k_ * a * a / std::pow(sh, 4);
  return {c1 * std::cosh(kz) * std::sin(th) + c2 * std::cosh(2.0 * kz) * std::sin(2.0 * th), 0.0,
          -c1 * std::sinh(kz) * std::cos(th) - c2 * std::sinh(2.0 * kz) * std::cos(2.0 * th)};
}

}  // namespace fvmoor
