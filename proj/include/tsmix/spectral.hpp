// Copyright (c) 2026, The tsmix Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tsmix/time_series.hpp"

namespace tsmix {

/// Frequency band [f_lo_hz, f_hi_hz). Checked against a signal's Nyquist
/// frequency only when evaluated.
class BandSpec {
 public:
  BandSpec(double f_lo_hz, double f_hi_hz);

  double f_lo_hz() const noexcept { return f_lo_; }
  double f_hi_hz() const noexcept { return f_hi_; }

  /// Membership of DFT bin `k` for a length-`n` signal at `sample_rate_hz`.
  /// Bin centers are tested against the half-open band; a band whose upper
  /// edge sits exactly on Nyquist also owns the Nyquist bin.
  bool contains_bin(std::size_t k, std::size_t n, double sample_rate_hz) const noexcept;

  /// Throws BandOutOfRange if the band reaches past Nyquist.
  void require_within(double sample_rate_hz) const;

  friend bool operator==(const BandSpec&, const BandSpec&) = default;

 private:
  double f_lo_;
  double f_hi_;
};

/// One-sided per-channel spectrum in polar form. Amplitudes are nonnegative,
/// phases live in (-pi, pi], and the DC / Nyquist phases are 0 or pi.
class Spectrum {
 public:
  Spectrum(std::size_t channels, std::size_t original_length, double sample_rate_hz);
  Spectrum(std::size_t channels, std::size_t original_length, double sample_rate_hz,
           std::vector<double> amplitude, std::vector<double> phase);

  std::size_t channels() const noexcept { return channels_; }
  std::size_t bins() const noexcept { return bins_; }
  std::size_t original_length() const noexcept { return original_length_; }
  double sample_rate_hz() const noexcept { return sample_rate_hz_; }

  std::span<const double> amplitude(std::size_t c) const;
  std::span<double> amplitude(std::size_t c);
  std::span<const double> phase(std::size_t c) const;
  std::span<double> phase(std::size_t c);

  /// True for bins whose DFT value is necessarily real (DC, even-length Nyquist).
  bool is_real_bin(std::size_t k) const noexcept;

  /// Full invariant check; throws NonFinite / InvalidSpec.
  void validate() const;

 private:
  std::size_t channels_;
  std::size_t original_length_;
  std::size_t bins_;
  double sample_rate_hz_;
  std::vector<double> amplitude_;
  std::vector<double> phase_;
};

Spectrum forward(const TimeSeries& signal);

TimeSeries inverse(const Spectrum& spectrum);

/// S[k] = |X_k|^2 / N per channel (one-sided storage, unweighted).
std::vector<std::vector<double>> power_spectrum(const TimeSeries& signal);

/// Number of times bin `k` appears in the two-sided spectrum of length `n`.
double two_sided_weight(std::size_t k, std::size_t n) noexcept;

double bin_frequency_hz(std::size_t k, std::size_t n, double sample_rate_hz) noexcept;

/// Two-sided spectral power inside `band`, summed over channels. With the
/// |X_k|^2/N estimator the full-band value equals the signal energy.
double band_power(const TimeSeries& signal, const BandSpec& band);

/// Fraction of total two-sided power inside `band`, pooled over channels.
double band_power_ratio(const TimeSeries& signal, const BandSpec& band);

}  // namespace tsmix
