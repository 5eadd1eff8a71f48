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

#include "tsmix/info_proxy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tsmix/error.hpp"
#include "tsmix/phase.hpp"

namespace tsmix {

double MixAudit::retained_fraction() const noexcept {
  return anchor_band_power > 0.0 ? mixed_band_power / anchor_band_power : 0.0;
}

bool MixAudit::band_bound_ok(double lambda_a, double tolerance) const noexcept {
  return mixed_band_power >= lambda_a * lambda_a * anchor_band_power - tolerance;
}

MixAudit audit_mix(const TimeSeries& anchor, const TimeSeries& other, const TimeSeries& mixed,
                   const MixCoefficients& coef, const BandSpec& band) {
  require_compatible(anchor, other);
  require_compatible(anchor, mixed);

  MixAudit audit;
  audit.anchor_band_power = band_power(anchor, band);
  audit.other_band_power = band_power(other, band);
  audit.mixed_band_power = band_power(mixed, band);

  const Spectrum a = forward(anchor);
  const Spectrum m = forward(mixed);
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < a.channels(); ++c) {
    const auto amp_a = a.amplitude(c);
    const auto amp_m = m.amplitude(c);
    for (std::size_t k = 0; k < amp_a.size(); ++k) margin = std::min(margin, amp_m[k] - coef.lambda_a * amp_a[k]);
  }
  audit.min_bound_margin = margin;
  audit.pointwise_bound_ok = margin >= -kBoundTolerance;
  return audit;
}

std::string_view to_string(SweepMethod method) {
  return method == SweepMethod::Linear ? "linear" : "tailored";
}

TimeSeries rotated_partner(const TimeSeries& anchor, double phase_offset, double amp_ratio) {
  Spectrum s = forward(anchor);
  for (std::size_t c = 0; c < s.channels(); ++c) {
    auto amp = s.amplitude(c);
    auto phs = s.phase(c);
    for (std::size_t k = 0; k < amp.size(); ++k) {
      amp[k] *= amp_ratio;
      if (!s.is_real_bin(k)) phs[k] = wrap(phs[k] + phase_offset);
    }
  }
  return inverse(s);
}

std::vector<SweepCell> destruction_sweep(const TimeSeries& anchor, std::span<const double> phase_offsets,
                                         std::span<const double> amplitude_ratios, std::span<const double> lambdas,
                                         const BandSpec& band) {
  if (phase_offsets.empty() || amplitude_ratios.empty() || lambdas.empty()) {
    throw Error(ErrorCode::InvalidGrid, "every sweep axis needs at least one value");
  }
  for (double o : phase_offsets) {
    if (!(o > -std::numbers::pi && o <= std::numbers::pi)) throw Error(ErrorCode::InvalidGrid, "phase offsets must lie in (-pi, pi]");
  }
  for (double r : amplitude_ratios) {
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::InvalidGrid, "amplitude ratios must be positive");
  }
  for (double l : lambdas) {
    if (!(l > 0.0 && l <= 1.0)) throw Error(ErrorCode::InvalidGrid, "lambdas must lie in (0, 1]");
  }
  band.require_within(anchor.sample_rate_hz());
  const double anchor_power = band_power(anchor, band);
  // Relative floor: below this the in-band part is FFT roundoff.
  if (anchor_power <= 1e-20 * anchor.energy() || anchor_power < 1e-30) throw Error(ErrorCode::ZeroSignal, "anchor has no power in the band");

  std::vector<SweepCell> cells;
  cells.reserve(phase_offsets.size() * amplitude_ratios.size() * lambdas.size() * 2);
  for (double offset : phase_offsets) {
    for (double ratio : amplitude_ratios) {
      const TimeSeries partner = rotated_partner(anchor, offset, ratio);
      for (double lambda : lambdas) {
        const TimeSeries linear = linear_mix(anchor, partner, lambda);
        const TimeSeries tailored = tailored_mix(anchor, partner, MixCoefficients{lambda, lambda});
        cells.push_back({offset, ratio, lambda, SweepMethod::Linear, band_power(linear, band) / anchor_power});
        cells.push_back({offset, ratio, lambda, SweepMethod::Tailored, band_power(tailored, band) / anchor_power});
      }
    }
  }
  return cells;
}

std::string sweep_csv(const std::vector<SweepCell>& cells) {
  std::ostringstream out;
  out.precision(17);
  out << "phase_offset,amp_ratio,lambda,method,band_power_ratio\n";
  for (const auto& c : cells) {
    out << c.phase_offset << ',' << c.amp_ratio << ',' << c.lambda << ',' << to_string(c.method) << ','
        << c.band_power_ratio << '\n';
  }
  return out.str();
}

}  // namespace tsmix
