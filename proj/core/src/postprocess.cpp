#include "fvmoor/io/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include <fftw3.h>

namespace fvmoor {

namespace {

struct Samples {
  std::vector<double> t, v;
};

Samples select(const TimeSeries& s, double t0, double t1, bool half_open) {
  if (s.time.size() != s.value.size()) throw ValidationError("series: time/value size mismatch");
  Samples out;
  for (std::size_t i = 0; i < s.time.size(); ++i) {
    const double t = s.time[i];
    if (t >= t0 && (half_open ? t < t1 : t <= t1)) {
      out.t.push_back(t);
      out.v.push_back(s.value[i]);
    }
  }
  return out;
}

double uniform_step(const std::vector<double>& t) {
  const double dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (std::abs((t[i] - t[i - 1]) - dt) > 1e-6 * dt) {
      throw ValidationError("fft: non-uniform sampling");
    }
  }
  return dt;
}

std::vector<double> moving_average(const std::vector<double>& v, std::size_t half) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::size_t a = i >= half ? i - half : 0;
    const std::size_t b = std::min(v.size() - 1, i + half);
    out[i] = std::accumulate(v.begin() + a, v.begin() + b + 1, 0.0) / static_cast<double>(b - a + 1);
  }
  return out;
}

// Alternating extrema whose swing exceeds `threshold`.
std::vector<std::size_t> zigzag(const std::vector<double>& v, double threshold) {
  std::vector<std::size_t> ext;
  std::size_t lo = 0, hi = 0, cand = 0;
  int dir = 0;  // +1 tracking a maximum, -1 tracking a minimum
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (dir == 0) {
      if (v[i] > v[hi]) hi = i;
      if (v[i] < v[lo]) lo = i;
      if (v[hi] - v[i] > threshold) {
        if (lo < hi && v[hi] - v[lo] > threshold) ext.push_back(lo);
        ext.push_back(hi);
        cand = i;
        dir = -1;
      } else if (v[i] - v[lo] > threshold) {
        if (hi < lo && v[hi] - v[lo] > threshold) ext.push_back(hi);
        ext.push_back(lo);
        cand = i;
        dir = 1;
      }
    } else if (dir == 1) {
      if (v[i] > v[cand]) {
        cand = i;
      } else if (v[cand] - v[i] > threshold) {
        ext.push_back(cand);
        cand = i;
        dir = -1;
      }
    } else {
      if (v[i] < v[cand]) {
        cand = i;
      } else if (v[i] - v[cand] > threshold) {
        ext.push_back(cand);
        cand = i;
        dir = 1;
      }
    }
  }
  if (dir != 0) ext.push_back(cand);
  return ext;
}

// Least-squares quartic through samples near `centre`; returns the value at
// the stationary point closest to the centre sample.
double refined_extremum(const Samples& s, std::size_t centre, std::size_t half) {
  const std::size_t a = centre >= half ? centre - half : 0;
  const std::size_t b = std::min(s.t.size() - 1, centre + half);
  const std::size_t n = b - a + 1;
  const int degree = n >= 7 ? 4 : (n >= 3 ? 2 : 0);
  if (degree == 0) return s.v[centre];
  const double tc = s.t[centre];
  const double scale = std::max(s.t[b] - tc, tc - s.t[a]);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), degree + 1);
  Eigen::VectorXd y(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double x = (s.t[a + i] - tc) / scale;
    double p = 1.0;
    for (int k = 0; k <= degree; ++k) {
      m(static_cast<Eigen::Index>(i), k) = p;
      p *= x;
    }
    y(static_cast<Eigen::Index>(i)) = s.v[a + i];
  }
  const Eigen::VectorXd c = m.colPivHouseholderQr().solve(y);
  auto poly = [&](double x, int deriv) {
    double acc = 0.0;
    for (int k = degree; k >= deriv; --k) {
      double coef = c(k);
      for (int j = 0; j < deriv; ++j) coef *= (k - j);
      acc = acc * x + coef;
    }
    return acc;
  };
  double x = 0.0;
  for (int it = 0; it < 30; ++it) {
    const double d2 = poly(x, 2);
    if (d2 == 0.0) break;
    const double step = poly(x, 1) / d2;
    x -= step;
    if (std::abs(step) < 1e-14) break;
  }
  if (!(std::abs(x) <= 1.0)) return s.v[centre];
  return poly(x, 0);
}

}  // namespace

double amplitude_peak_to_trough(const TimeSeries& series, double t0, double t1,
                                const PeakToTroughOptions& opts) {
  const Samples s = select(series, t0, t1, false);
  if (s.v.size() < 5) throw ValidationError("peak-to-trough: fewer than one peak-trough pair");
  const auto [mn, mx] = std::minmax_element(s.v.begin(), s.v.end());
  const double range = *mx - *mn;
  if (!(range > 0.0)) throw ValidationError("peak-to-trough: fewer than one peak-trough pair");

  // Locate extrema on a lightly smoothed copy, sized from a first pass.
  std::vector<std::size_t> ext = zigzag(s.v, opts.prominence * range);
  if (ext.size() >= 3) {
    const double spacing = static_cast<double>(ext.back() - ext.front()) / (ext.size() - 1);
    const auto half = static_cast<std::size_t>(spacing / 8.0);
    if (half >= 1) {
      const std::vector<double> smooth = moving_average(s.v, half);
      const auto [smn, smx] = std::minmax_element(smooth.begin(), smooth.end());
      ext = zigzag(smooth, opts.prominence * (*smx - *smn));
    }
  }
  // Drop extrema sitting on the window edges.
  std::vector<std::size_t> inner;
  for (std::size_t i : ext) {
    if (i > 0 && i + 1 < s.v.size()) inner.push_back(i);
  }
  if (inner.size() < 2) throw ValidationError("peak-to-trough: fewer than one peak-trough pair");
  std::vector<double> values;
  for (std::size_t k = 0; k < inner.size(); ++k) {
    std::size_t gap = std::numeric_limits<std::size_t>::max();
    if (k > 0) gap = std::min(gap, inner[k] - inner[k - 1]);
    if (k + 1 < inner.size()) gap = std::min(gap, inner[k + 1] - inner[k]);
    values.push_back(refined_extremum(s, inner[k], std::max<std::size_t>(gap / 4, 1)));
  }
  double sum = 0.0;
  for (std::size_t k = 1; k < values.size(); ++k) sum += std::abs(values[k] - values[k - 1]);
  return 0.5 * sum / static_cast<double>(values.size() - 1);
}

SpectralPeak fft_dominant_amplitude(const TimeSeries& series, double t0, double t1) {
  const Samples s = select(series, t0, t1, true);
  const std::size_t n = s.v.size();
  if (n < 4) throw ValidationError("fft: need at least 4 samples in the window");
  const double dt = uniform_step(s.t);
  const double mean = std::accumulate(s.v.begin(), s.v.end(), 0.0) / static_cast<double>(n);

  std::vector<double> in(n);
  double gain = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * i / static_cast<double>(n)));
    in[i] = (s.v[i] - mean) * w;
    gain += w;
  }
  const std::size_t m = n / 2 + 1;
  std::vector<std::complex<double>> out(m);
  fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                        reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  std::size_t k = 1;
  for (std::size_t i = 1; i < m; ++i) {
    if (std::abs(out[i]) > std::abs(out[k])) k = i;
  }
  SpectralPeak p;
  p.bin = k;
  p.resolution = 1.0 / (static_cast<double>(n) * dt);
  p.frequency = static_cast<double>(k) * p.resolution;
  const double peak = std::abs(out[k]);
  double amp = 2.0 * peak / gain;
  // Scalloping correction from the larger neighbour.
  const double left = k > 0 ? std::abs(out[k - 1]) : 0.0;
  const double right = k + 1 < m ? std::abs(out[k + 1]) : 0.0;
  const double alpha = std::max(left, right) / peak;
  const double delta = std::clamp((2.0 * alpha - 1.0) / (1.0 + alpha), 0.0, 0.999);
  if (delta > 1e-12) {
    const double pd = std::numbers::pi * delta;
    amp *= pd * (1.0 - delta * delta) / std::sin(pd);
  }
  p.amplitude = amp;
  return p;
}

}  // namespace fvmoor
