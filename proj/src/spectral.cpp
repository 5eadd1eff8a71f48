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

#include "tsmix/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "tsmix/error.hpp"
#include "tsmix/fft.hpp"
#include "tsmix/phase.hpp"

namespace tsmix {

BandSpec::BandSpec(double f_lo_hz, double f_hi_hz) : f_lo_(f_lo_hz), f_hi_(f_hi_hz) {
  if (!std::isfinite(f_lo_hz) || !std::isfinite(f_hi_hz) || f_lo_hz < 0.0 || f_hi_hz <= f_lo_hz) {
    throw Error(ErrorCode::BandOutOfRange, "band needs 0 <= f_lo < f_hi, got [" +
                                               std::to_string(f_lo_hz) + ", " +
                                               std::to_string(f_hi_hz) + ")");
  }
}

bool BandSpec::contains_bin(std::size_t k, std::size_t n, double sample_rate_hz) const noexcept {
  const double f = bin_frequency_hz(k, n, sample_rate_hz);
  if (f >= f_lo_ && f < f_hi_) return true;
  return n % 2 == 0 && k == n / 2 && f_hi_ == sample_rate_hz / 2.0;
}

void BandSpec::require_within(double sample_rate_hz) const {
  if (f_hi_ > sample_rate_hz / 2.0) {
    throw Error(ErrorCode::BandOutOfRange, "band upper edge " + std::to_string(f_hi_) +
                                               " Hz exceeds Nyquist " +
                                               std::to_string(sample_rate_hz / 2.0) + " Hz");
  }
}

Spectrum::Spectrum(std::size_t channels, std::size_t original_length, double sample_rate_hz)
    : channels_(channels), original_length_(original_length),
      bins_(fft::half_size(original_length)), sample_rate_hz_(sample_rate_hz),
      amplitude_(channels * bins_, 0.0), phase_(channels * bins_, 0.0) {
  if (channels == 0 || original_length < TimeSeries::kMinLength) {
    throw Error(ErrorCode::ShapeMismatch, "spectrum needs >= 1 channel and length >= 4");
  }
}

Spectrum::Spectrum(std::size_t channels, std::size_t original_length, double sample_rate_hz,
                   std::vector<double> amplitude, std::vector<double> phase)
    : Spectrum(channels, original_length, sample_rate_hz) {
  if (amplitude.size() != amplitude_.size() || phase.size() != phase_.size()) {
    throw Error(ErrorCode::ShapeMismatch, "amplitude/phase buffers must both hold channels x bins values");
  }
  amplitude_ = std::move(amplitude);
  phase_ = std::move(phase);
  validate();
}

std::span<const double> Spectrum::amplitude(std::size_t c) const {
  return std::span<const double>(amplitude_).subspan(c * bins_, bins_);
}
std::span<double> Spectrum::amplitude(std::size_t c) {
  return std::span<double>(amplitude_).subspan(c * bins_, bins_);
}
std::span<const double> Spectrum::phase(std::size_t c) const {
  return std::span<const double>(phase_).subspan(c * bins_, bins_);
}
std::span<double> Spectrum::phase(std::size_t c) {
  return std::span<double>(phase_).subspan(c * bins_, bins_);
}

bool Spectrum::is_real_bin(std::size_t k) const noexcept {
  return k == 0 || (original_length_ % 2 == 0 && k == original_length_ / 2);
}

void Spectrum::validate() const {
  constexpr double pi = std::numbers::pi;
  for (std::size_t i = 0; i < amplitude_.size(); ++i) {
    const double a = amplitude_[i];
    const double p = phase_[i];
    if (!std::isfinite(a) || !std::isfinite(p)) {
      throw Error(ErrorCode::NonFinite, "spectrum entry " + std::to_string(i) + " is not finite");
    }
    if (a < 0.0) throw Error(ErrorCode::InvalidSpec, "negative amplitude at entry " + std::to_string(i));
    if (p <= -pi || p > pi) {
      throw Error(ErrorCode::InvalidSpec, "phase outside (-pi, pi] at entry " + std::to_string(i));
    }
    if (is_real_bin(i % bins_) && p != 0.0 && p != pi) {
      throw Error(ErrorCode::InvalidSpec, "real-valued bin with phase not in {0, pi}");
    }
  }
}

Spectrum forward(const TimeSeries& signal) {
  Spectrum spectrum(signal.channels(), signal.length(), signal.sample_rate_hz());
  for (std::size_t c = 0; c < signal.channels(); ++c) {
    const auto bins = fft::rfft(signal.channel(c));
    auto amp = spectrum.amplitude(c);
    auto phs = spectrum.phase(c);
    for (std::size_t k = 0; k < bins.size(); ++k) {
      amp[k] = std::abs(bins[k]);
      if (spectrum.is_real_bin(k)) {
        phs[k] = bins[k].real() < 0.0 ? std::numbers::pi : 0.0;
      } else {
        phs[k] = wrap(std::arg(bins[k]));
      }
    }
  }
  return spectrum;
}

TimeSeries inverse(const Spectrum& spectrum) {
  const std::size_t n = spectrum.original_length();
  TimeSeries out(spectrum.channels(), n, spectrum.sample_rate_hz());
  std::vector<std::complex<double>> half(spectrum.bins());
  for (std::size_t c = 0; c < spectrum.channels(); ++c) {
    const auto amp = spectrum.amplitude(c);
    const auto phs = spectrum.phase(c);
    for (std::size_t k = 0; k < half.size(); ++k) {
      half[k] = spectrum.is_real_bin(k) ? std::complex<double>(amp[k] * std::cos(phs[k]), 0.0)
                                        : std::polar(amp[k], phs[k]);
    }
    const auto samples = fft::irfft(half, n);
    std::copy(samples.begin(), samples.end(), out.channel(c).begin());
  }
  out.validate();
  return out;
}

std::vector<std::vector<double>> power_spectrum(const TimeSeries& signal) {
  const double n = static_cast<double>(signal.length());
  std::vector<std::vector<double>> out;
  out.reserve(signal.channels());
  for (std::size_t c = 0; c < signal.channels(); ++c) {
    const auto bins = fft::rfft(signal.channel(c));
    std::vector<double> s(bins.size());
    for (std::size_t k = 0; k < bins.size(); ++k) s[k] = std::norm(bins[k]) / n;
    out.push_back(std::move(s));
  }
  return out;
}

double two_sided_weight(std::size_t k, std::size_t n) noexcept {
  if (k == 0) return 1.0;
  if (n % 2 == 0 && k == n / 2) return 1.0;
  return 2.0;
}

double bin_frequency_hz(std::size_t k, std::size_t n, double sample_rate_hz) noexcept {
  return static_cast<double>(k) * sample_rate_hz / static_cast<double>(n);
}

namespace {

struct BandTotals {
  double in_band = 0.0;
  double total = 0.0;
};

BandTotals band_totals(const TimeSeries& signal, const BandSpec& band) {
  band.require_within(signal.sample_rate_hz());
  const std::size_t n = signal.length();
  BandTotals totals;
  for (const auto& s : power_spectrum(signal)) {
    for (std::size_t k = 0; k < s.size(); ++k) {
      const double p = two_sided_weight(k, n) * s[k];
      totals.total += p;
      if (band.contains_bin(k, n, signal.sample_rate_hz())) totals.in_band += p;
    }
  }
  return totals;
}

}  // namespace

double band_power(const TimeSeries& signal, const BandSpec& band) {
  return band_totals(signal, band).in_band;
}

double band_power_ratio(const TimeSeries& signal, const BandSpec& band) {
  const BandTotals totals = band_totals(signal, band);
  if (totals.total < 1e-30) throw Error(ErrorCode::ZeroSignal, "signal has no power");
  return totals.in_band / totals.total;
}

}  // namespace tsmix
