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

#include "tsmix/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tsmix/error.hpp"

namespace tsmix {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Interior DFT bins whose centre lies inside `band`.
std::vector<std::size_t> interior_bins(const BandSpec& band, std::size_t n, double fs) {
  std::vector<std::size_t> bins;
  for (std::size_t k = 1; 2 * k < n; ++k) {
    if (band.contains_bin(k, n, fs)) bins.push_back(k);
  }
  return bins;
}

}  // namespace

void SynthSpec::validate() const {
  if (n_classes < 2) throw Error(ErrorCode::InvalidSpec, "need at least two classes");
  if (class_bands.size() != n_classes) throw Error(ErrorCode::InvalidSpec, "need one band per class");
  if (length < TimeSeries::kMinLength || channels == 0) throw Error(ErrorCode::InvalidSpec, "bad signal shape");
  if (!(sample_rate_hz > 0.0)) throw Error(ErrorCode::InvalidSpec, "sample rate must be positive");
  if (n_harmonics == 0) throw Error(ErrorCode::InvalidSpec, "need at least one harmonic");
  if (!(harmonic_decay >= 0.0) || !(freq_jitter >= 0.0 && freq_jitter < 1.0) || !(phase_jitter >= 0.0) ||
      !(noise_sigma >= 0.0)) {
    throw Error(ErrorCode::InvalidSpec, "decay, jitters and noise must be nonnegative (freq_jitter < 1)");
  }
  for (std::size_t i = 0; i < class_bands.size(); ++i) {
    const BandSpec& band = class_bands[i];
    if (band.f_hi_hz() > sample_rate_hz / 2.0) {
      throw Error(ErrorCode::InvalidSpec, "class band " + std::to_string(i) + " exceeds Nyquist");
    }
    if (interior_bins(band, length, sample_rate_hz).empty()) {
      throw Error(ErrorCode::InvalidSpec, "class band " + std::to_string(i) + " contains no DFT bin");
    }
    for (std::size_t j = 0; j < i; ++j) {
      const BandSpec& other = class_bands[j];
      if (band.f_lo_hz() < other.f_hi_hz() && other.f_lo_hz() < band.f_hi_hz()) {
        throw Error(ErrorCode::InvalidSpec, "class bands " + std::to_string(j) + " and " + std::to_string(i) + " overlap");
      }
    }
  }
}

SynthSpec SynthSpec::four_class_default() {
  SynthSpec spec;
  spec.n_classes = 4;
  spec.class_bands = {BandSpec(1.0, 3.0), BandSpec(4.0, 6.5), BandSpec(8.0, 11.0), BandSpec(13.0, 18.0)};
  return spec;
}

LabeledDataset generate_labeled(const SynthSpec& spec, std::size_t n_per_class, Rng& rng) {
  spec.validate();
  const std::size_t n = spec.length;
  const double fs = spec.sample_rate_hz;
  const double nyquist = fs / 2.0;

  std::vector<std::vector<std::size_t>> candidate_bins;
  for (const auto& band : spec.class_bands) {
    auto bins = interior_bins(band, n, fs);
    // Keep the fundamental off the band edges so FM drift stays in band.
    const std::size_t margin = bins.size() / 5;
    candidate_bins.emplace_back(bins.begin() + static_cast<std::ptrdiff_t>(margin),
                                bins.end() - static_cast<std::ptrdiff_t>(margin));
  }

  LabeledDataset ds;
  ds.labels.emplace();
  const std::size_t total = n_per_class * spec.n_classes;
  ds.samples.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    const std::size_t label = i % spec.n_classes;
    const auto& bins = candidate_bins[label];
    const double f0 = bin_frequency_hz(bins[rng.index(bins.size())], n, fs);
    const double fm_rate = rng.uniform(0.5, 2.0);
    const double fm_offset = rng.uniform(0.0, kTwoPi);
    const double wobble_rate = rng.uniform(0.5, 2.0);
    const double wobble_offset = rng.uniform(0.0, kTwoPi);

    std::vector<double> data(spec.channels * n);
    for (std::size_t c = 0; c < spec.channels; ++c) {
      std::vector<double> harmonic_phase(spec.n_harmonics);
      for (double& p : harmonic_phase) p = rng.uniform(-std::numbers::pi, std::numbers::pi);
      double theta = 0.0;
      for (std::size_t t = 0; t < n; ++t) {
        const double progress = static_cast<double>(t) / static_cast<double>(n);
        const double wobble = spec.phase_jitter * std::sin(kTwoPi * wobble_rate * progress + wobble_offset);
        double value = 0.0;
        double gain = 1.0;
        for (std::size_t h = 1; h <= spec.n_harmonics; ++h) {
          if (static_cast<double>(h) * f0 >= nyquist) break;
          value += gain * std::cos(static_cast<double>(h) * (theta + wobble) + harmonic_phase[h - 1]);
          gain *= spec.harmonic_decay;
        }
        if (spec.noise_sigma > 0.0) value += spec.noise_sigma * rng.normal();
        data[c * n + t] = value;
        const double inst_freq = f0 * (1.0 + spec.freq_jitter * std::sin(kTwoPi * fm_rate * progress + fm_offset));
        theta += kTwoPi * inst_freq / fs;
      }
    }
    ds.samples.emplace_back(spec.channels, n, fs, std::move(data));
    ds.labels->push_back(static_cast<std::uint32_t>(label));
  }
  assign_sequential_ids(ds);
  return ds;
}

void AdversarialPairSpec::validate() const {
  if (!(lambda_target > 0.0 && lambda_target < 1.0)) {
    throw Error(ErrorCode::LambdaOutOfRange, "adversarial lambda must lie strictly inside (0, 1)");
  }
  if (!(base_freq_hz >= band.f_lo_hz() && base_freq_hz < band.f_hi_hz())) {
    throw Error(ErrorCode::InvalidSpec, "base frequency lies outside the band");
  }
}

std::pair<TimeSeries, TimeSeries> adversarial_pair(const AdversarialPairSpec& spec, std::size_t length,
                                                   double sample_rate_hz, Rng& rng) {
  spec.validate();
  spec.band.require_within(sample_rate_hz);
  const double k = spec.base_freq_hz * static_cast<double>(length) / sample_rate_hz;
  const double k_round = std::round(k);
  if (std::abs(k - k_round) > 1e-9 || k_round < 1.0 || 2.0 * k_round >= static_cast<double>(length)) {
    throw Error(ErrorCode::FrequencyNotOnBin, std::to_string(spec.base_freq_hz) +
                                                  " Hz is not an interior DFT bin for length " +
                                                  std::to_string(length));
  }
  const double phi = rng.uniform(-std::numbers::pi, std::numbers::pi);
  const double ratio = spec.lambda_target / (1.0 - spec.lambda_target);
  std::vector<double> anchor(length);
  std::vector<double> other(length);
  for (std::size_t t = 0; t < length; ++t) {
    anchor[t] = std::cos(kTwoPi * k_round * static_cast<double>(t) / static_cast<double>(length) + phi);
    other[t] = -ratio * anchor[t];
  }
  return {TimeSeries::mono(std::move(anchor), sample_rate_hz), TimeSeries::mono(std::move(other), sample_rate_hz)};
}

TimeSeries adversarial_partner(const TimeSeries& anchor, double lambda, const TimeSeries& distractor) {
  require_compatible(anchor, distractor);
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw Error(ErrorCode::LambdaOutOfRange, "adversarial lambda must lie strictly inside (0, 1)");
  }
  const double ratio = lambda / (1.0 - lambda);
  std::vector<double> data(anchor.data().size());
  const auto a = anchor.data();
  const auto d = distractor.data();
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = -ratio * a[i] + d[i];
  return TimeSeries(anchor.channels(), anchor.length(), anchor.sample_rate_hz(), std::move(data));
}

std::size_t dominant_band(const TimeSeries& signal, const std::vector<BandSpec>& bands) {
  if (bands.empty()) throw Error(ErrorCode::InvalidArgument, "no bands to compare");
  std::size_t best = 0;
  double best_power = -1.0;
  for (std::size_t i = 0; i < bands.size(); ++i) {
    const double p = band_power(signal, bands[i]);
    if (p > best_power) {
      best_power = p;
      best = i;
    }
  }
  return best;
}

}  // namespace tsmix
