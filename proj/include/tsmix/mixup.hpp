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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "tsmix/random.hpp"
#include "tsmix/time_series.hpp"

namespace tsmix {

/// Which sampler produced a coefficient pair.
enum class CoefficientSource { Fixed, Close, Far, Supervised };

std::string_view to_string(CoefficientSource source);

/// Amplitude and phase mixing weights, both in (0, 1]. A weight of 1 keeps the
/// anchor's component untouched.
struct MixCoefficients {
  double lambda_a = 1.0;
  double lambda_p = 1.0;
  CoefficientSource source = CoefficientSource::Fixed;

  /// Throws LambdaOutOfRange unless both weights lie in (0, 1].
  void validate() const;
};

/// Scales `other` so its energy matches `target_energy`. A silent `other` is
/// returned unchanged.
TimeSeries match_power(const TimeSeries& other, double target_energy);

/// Frequency-domain mixup: amplitudes interpolate linearly, phases move from
/// the anchor toward the partner along the shorter arc. Every output bin
/// keeps at least lambda_a of the anchor's amplitude. DC and Nyquist keep the
/// anchor's sign. With `normalize_power` the partner is first rescaled to the
/// anchor's energy.
TimeSeries tailored_mix(const TimeSeries& anchor, const TimeSeries& other, const MixCoefficients& coef,
                        bool normalize_power = true);

/// Soft label produced by supervised mixing: weight_anchor on the anchor's
/// label, weight_other on the partner's.
struct LabelMix {
  std::uint32_t label_anchor = 0;
  std::uint32_t label_other = 0;
  double weight_anchor = 1.0;
  double weight_other = 0.0;

  /// The label carrying the larger weight (ties go to the anchor).
  std::uint32_t dominant() const noexcept { return weight_anchor >= weight_other ? label_anchor : label_other; }
};

struct SupervisedMix {
  TimeSeries signal;
  LabelMix labels;
};

/// Supervised-mode variant: the phase is anchored on whichever sample owns the
/// larger amplitude weight (anchor when lambda_a >= 0.5) and moved toward the
/// other one; labels mix as (lambda_a, 1 - lambda_a). No power normalization,
/// so swapping the operands together with lambda_a -> 1 - lambda_a gives the
/// same signal.
SupervisedMix supervised_mix(const TimeSeries& anchor, const TimeSeries& other,
                             std::uint32_t label_anchor, std::uint32_t label_other,
                             const MixCoefficients& coef);

// Baselines -----------------------------------------------------------------

/// lambda * anchor + (1 - lambda) * other, lambda in [0, 1].
TimeSeries linear_mix(const TimeSeries& anchor, const TimeSeries& other, double lambda);

enum class MaskKind { Bernoulli, Rectangle };

/// keep[i] != 0 takes the anchor's sample, otherwise the partner's. One mask
/// is shared by all channels.
struct MixMask {
  MaskKind kind = MaskKind::Bernoulli;
  std::vector<std::uint8_t> keep;
  double rho = 1.0;            // Bernoulli keep probability
  double start_fraction = 0.0; // rectangle b
  double length_fraction = 0.0;// rectangle a
  std::size_t start = 0;       // first replaced index
  std::size_t count = 0;       // replaced run length

  std::size_t kept() const noexcept;
};

MixMask bernoulli_mask(std::size_t length, double rho, Rng& rng);

/// Replaces round(a * length) entries starting at round(b * (length - run)).
MixMask rectangle_mask(std::size_t length, double start_fraction, double length_fraction);

TimeSeries apply_mask(const TimeSeries& anchor, const TimeSeries& other, const MixMask& mask);

/// Draws rho ~ U(rho_range) once, then an elementwise Bernoulli(rho) mask.
TimeSeries binary_mix(const TimeSeries& anchor, const TimeSeries& other, Interval rho_range, Rng& rng);

/// sign(anchor) * max(|anchor|, eps)^lambda * max(|other|, eps)^(1 - lambda).
TimeSeries geometric_mix(const TimeSeries& anchor, const TimeSeries& other, double lambda,
                         double eps_floor = 1e-8);

TimeSeries cut_mix_at(const TimeSeries& anchor, const TimeSeries& other, double start_fraction,
                      double length_fraction);
TimeSeries cut_mix(const TimeSeries& anchor, const TimeSeries& other, Interval start_range,
                   Interval length_range, Rng& rng);

/// Amplitude-only frequency mixup; phases stay the anchor's.
TimeSeries amplitude_mix(const TimeSeries& anchor, const TimeSeries& other, double lambda_a,
                         bool normalize_power = false);

/// Rectangular-window STFT layout. Frames do not overlap (hop == window) and
/// each frame is zero-padded to fft_length before transforming.
struct StftConfig {
  std::size_t fft_length = 0;
  std::size_t window_length = 0;
  std::size_t hop = 0;

  /// fft_length = L, window = hop = floor(L / 4).
  static StftConfig for_length(std::size_t length);

  /// Frames needed to cover `length` samples; the last one may be partial.
  std::size_t frames(std::size_t length) const noexcept;
  void validate() const;
};

/// Frame-major half spectra of one channel.
using Stft = std::vector<std::vector<std::complex<double>>>;

Stft stft(std::span<const double> channel, const StftConfig& cfg);

/// Inverts `stft` by transforming each frame back, cropping it to the samples
/// it covers and concatenating.
std::vector<double> istft(const Stft& frames, const StftConfig& cfg, std::size_t length);

TimeSeries spec_mix_at(const TimeSeries& anchor, const TimeSeries& other, double start_fraction,
                       double length_fraction, const StftConfig& cfg);
TimeSeries spec_mix(const TimeSeries& anchor, const TimeSeries& other, Interval start_range,
                    Interval length_range, const StftConfig& cfg, Rng& rng);

}  // namespace tsmix
