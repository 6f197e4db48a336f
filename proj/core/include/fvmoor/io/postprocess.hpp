#pragma once

#include "fvmoor/io/time_series.hpp"

namespace fvmoor {

struct PeakToTroughOptions {
  /// Minimum swing between accepted extrema, as a fraction of the channel
  /// range inside the window.
  double prominence = 0.05;
};

/// Half the mean excursion between consecutive extrema of `series` inside
/// [t0, t1]. Extrema touching the window edges are ignored. Throws
/// ValidationError when fewer than one peak-trough pair remains.
double amplitude_peak_to_trough(const TimeSeries& series, double t0, double t1,
                                const PeakToTroughOptions& opts = {});

struct SpectralPeak {
  double frequency = 0.0;   // of the peak bin, Hz
  double amplitude = 0.0;   // taper- and scalloping-corrected
  double resolution = 0.0;  // bin width, Hz
  std::size_t bin = 0;
};

/// Hann-tapered DFT of the mean-removed samples with t0 <= t < t1. Throws
/// ValidationError for non-uniform sampling or fewer than 4 samples.
SpectralPeak fft_dominant_amplitude(const TimeSeries& series, double t0, double t1);

}  // namespace fvmoor
