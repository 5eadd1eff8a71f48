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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsmix/mixup.hpp"
#include "tsmix/spectral.hpp"
#include "tsmix/time_series.hpp"

namespace tsmix {

/// Band-power bookkeeping for one mixed sample.
///
/// Band power stands in for label information: the audit never estimates
/// mutual information, it reports how much in-band power the mixed sample
/// keeps and whether the per-bin amplitude floor lambda_a * A(anchor) holds.
struct MixAudit {
  double anchor_band_power = 0.0;
  double other_band_power = 0.0;
  double mixed_band_power = 0.0;
  bool pointwise_bound_ok = false;
  double min_bound_margin = 0.0;  // min over channels/bins of A(mixed) - lambda_a * A(anchor)

  /// mixed_band_power / anchor_band_power (0 when the anchor has no in-band power).
  double retained_fraction() const noexcept;
  /// mixed_band_power >= lambda_a^2 * anchor_band_power - tolerance.
  bool band_bound_ok(double lambda_a, double tolerance = 1e-9) const noexcept;
};

inline constexpr double kBoundTolerance = 1e-9;

MixAudit audit_mix(const TimeSeries& anchor, const TimeSeries& other, const TimeSeries& mixed,
                   const MixCoefficients& coef, const BandSpec& band);

enum class SweepMethod { Linear, Tailored };

std::string_view to_string(SweepMethod method);

struct SweepCell {
  double phase_offset = 0.0;
  double amp_ratio = 1.0;
  double lambda = 1.0;
  SweepMethod method = SweepMethod::Linear;
  /// In-band power of the mixed sample relative to the anchor's in-band power.
  double band_power_ratio = 0.0;
};

/// Partner built from the anchor: every interior bin rotated by
/// `phase_offset` and all amplitudes scaled by `amp_ratio`.
TimeSeries rotated_partner(const TimeSeries& anchor, double phase_offset, double amp_ratio);

/// Evaluates linear and tailored mixup (lambda_a = lambda_p = lambda, power
/// normalization on) for every (offset, ratio, lambda) cell. Throws
/// InvalidGrid on empty axes, offsets outside (-pi, pi], nonpositive ratios
/// or lambdas outside (0, 1].
std::vector<SweepCell> destruction_sweep(const TimeSeries& anchor, std::span<const double> phase_offsets,
                                         std::span<const double> amplitude_ratios, std::span<const double> lambdas,
                                         const BandSpec& band);

/// CSV with header `phase_offset,amp_ratio,lambda,method,band_power_ratio`.
std::string sweep_csv(const std::vector<SweepCell>& cells);

}  // namespace tsmix
