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
#include <utility>
#include <vector>

#include "tsmix/dataset.hpp"
#include "tsmix/random.hpp"
#include "tsmix/spectral.hpp"
#include "tsmix/time_series.hpp"

namespace tsmix {

/// Quasi-periodic class-conditional generator. Class c places its fundamental
/// on a DFT bin inside class_bands[c]; harmonics decay geometrically. Slow
/// sinusoidal FM (freq_jitter, fraction of the fundamental) and a slow phase
/// wobble (phase_jitter, radians) make each realisation drift, and white
/// Gaussian noise of noise_sigma is added on top.
struct SynthSpec {
  std::size_t n_classes = 4;
  std::vector<BandSpec> class_bands;
  std::size_t length = 256;
  double sample_rate_hz = 50.0;
  std::size_t channels = 1;
  std::size_t n_harmonics = 3;
  double harmonic_decay = 0.05;
  double freq_jitter = 0.02;
  double phase_jitter = 0.3;
  double noise_sigma = 0.1;

  /// Throws InvalidSpec (class count, disjoint bands inside Nyquist, each band
  /// containing at least one interior DFT bin, nonnegative jitters).
  void validate() const;

  /// Four disjoint bands over a 50 Hz / 256-sample window.
  static SynthSpec four_class_default();
};

/// n_per_class samples of every class, interleaved by class (label i % n_classes).
LabeledDataset generate_labeled(const SynthSpec& spec, std::size_t n_per_class, Rng& rng);

/// Anti-phase pair that linear mixup at `lambda_target` cancels exactly.
struct AdversarialPairSpec {
  double lambda_target = 0.9;
  BandSpec band{1.0, 2.0};
  double base_freq_hz = 1.5;

  void validate() const;
};

/// anchor = cos(2 pi f n / fs + phi) with random phi; other = lambda/(1-lambda)
/// times the same tone shifted by pi. f must sit exactly on an interior DFT
/// bin (FrequencyNotOnBin otherwise).
std::pair<TimeSeries, TimeSeries> adversarial_pair(const AdversarialPairSpec& spec, std::size_t length,
                                                   double sample_rate_hz, Rng& rng);

/// Partner that makes linear mixup at `lambda` return (1 - lambda) * distractor:
/// -lambda/(1-lambda) * anchor + distractor.
TimeSeries adversarial_partner(const TimeSeries& anchor, double lambda, const TimeSeries& distractor);

/// Class whose band holds the most power (ties to the lower index).
std::size_t dominant_band(const TimeSeries& signal, const std::vector<BandSpec>& bands);

}  // namespace tsmix
