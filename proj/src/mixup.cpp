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

#include "tsmix/mixup.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tsmix/error.hpp"
#include "tsmix/fft.hpp"
#include "tsmix/phase.hpp"
#include "tsmix/spectral.hpp"

namespace tsmix {

std::string_view to_string(CoefficientSource source) {
  switch (source) {
    case CoefficientSource::Fixed: return "fixed";
    case CoefficientSource::Close: return "close";
    case CoefficientSource::Far: return "far";
    case CoefficientSource::Supervised: return "supervised";
  }
  return "unknown";
}

void MixCoefficients::validate() const {
  if (!(lambda_a > 0.0 && lambda_a <= 1.0) || !(lambda_p > 0.0 && lambda_p <= 1.0)) {
    throw Error(ErrorCode::LambdaOutOfRange, "mixing coefficients must lie in (0, 1], got (" +
                                                 std::to_string(lambda_a) + ", " +
                                                 std::to_string(lambda_p) + ")");
  }
}

TimeSeries match_power(const TimeSeries& other, double target_energy) {
  const double energy = other.energy();
  if (energy < 1e-300) return other;
  const double gain = std::sqrt(target_energy / energy);
  std::vector<double> data(other.data().begin(), other.data().end());
  for (double& v : data) v *= gain;
  return TimeSeries(other.channels(), other.length(), other.sample_rate_hz(), std::move(data));
}

namespace {

enum class PhaseRule {
  KeepAnchor,        // amplitude-only mixing
  TowardOther,       // anchor's phase walks toward the partner
  TowardAnchor,      // partner's phase walks toward the anchor
};

/// Polar mixing of two spectra of identical shape. Real bins (DC, Nyquist)
/// take the sign of whichever side the phase rule anchors on.
Spectrum mix_polar(const Spectrum& anchor, const Spectrum& other, double lambda_a, double lambda_p,
                   PhaseRule rule) {
  Spectrum out(anchor.channels(), anchor.original_length(), anchor.sample_rate_hz());
  for (std::size_t c = 0; c < anchor.channels(); ++c) {
    const auto amp_a = anchor.amplitude(c);
    const auto amp_o = other.amplitude(c);
    auto amp = out.amplitude(c);
    for (std::size_t k = 0; k < amp.size(); ++k) {
      amp[k] = lambda_a * amp_a[k] + (1.0 - lambda_a) * amp_o[k];
    }

    auto phs = out.phase(c);
    switch (rule) {
      case PhaseRule::KeepAnchor: {
        const auto p = anchor.phase(c);
        std::copy(p.begin(), p.end(), phs.begin());
        break;
      }
      case PhaseRule::TowardOther:
      case PhaseRule::TowardAnchor: {
        const bool from_anchor = rule == PhaseRule::TowardOther;
        const auto base = from_anchor ? anchor.phase(c) : other.phase(c);
        const auto target = from_anchor ? other.phase(c) : anchor.phase(c);
        const auto moved = interpolate_phase(base, shortest_delta(base, target), lambda_p);
        for (std::size_t k = 0; k < phs.size(); ++k) phs[k] = out.is_real_bin(k) ? base[k] : moved[k];
        break;
      }
    }
  }
  return out;
}

void require_unit_lambda(double lambda, bool allow_zero, const char* name) {
  const bool ok = allow_zero ? (lambda >= 0.0 && lambda <= 1.0) : (lambda > 0.0 && lambda <= 1.0);
  if (!ok) {
    throw Error(ErrorCode::LambdaOutOfRange, std::string(name) + " = " + std::to_string(lambda) +
                                                 (allow_zero ? " outside [0, 1]" : " outside (0, 1]"));
  }
}

void require_fraction(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " must lie in [0, 1]");
  }
}

void require_interval(Interval range, const char* name) {
  if (!(range.lo >= 0.0 && range.lo <= range.hi && range.hi <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " must satisfy 0 <= lo <= hi <= 1");
  }
}

template <typename Op>
TimeSeries elementwise(const TimeSeries& anchor, const TimeSeries& other, Op op) {
  require_compatible(anchor, other);
  const auto a = anchor.data();
  const auto o = other.data();
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = op(a[i], o[i]);
  return TimeSeries(anchor.channels(), anchor.length(), anchor.sample_rate_hz(), std::move(out));
}

}  // namespace

TimeSeries tailored_mix(const TimeSeries& anchor, const TimeSeries& other, const MixCoefficients& coef,
                        bool normalize_power) {
  require_compatible(anchor, other);
  coef.validate();
  const TimeSeries partner = normalize_power ? match_power(other, anchor.energy()) : other;
  return inverse(mix_polar(forward(anchor), forward(partner), coef.lambda_a, coef.lambda_p,
                           PhaseRule::TowardOther));
}

SupervisedMix supervised_mix(const TimeSeries& anchor, const TimeSeries& other,
                             std::uint32_t label_anchor, std::uint32_t label_other,
                             const MixCoefficients& coef) {
  require_compatible(anchor, other);
  coef.validate();
  const PhaseRule rule = coef.lambda_a >= 0.5 ? PhaseRule::TowardOther : PhaseRule::TowardAnchor;
  TimeSeries mixed = inverse(mix_polar(forward(anchor), forward(other), coef.lambda_a, coef.lambda_p, rule));
  LabelMix labels{label_anchor, label_other, coef.lambda_a, 1.0 - coef.lambda_a};
  return SupervisedMix{std::move(mixed), labels};
}

TimeSeries linear_mix(const TimeSeries& anchor, const TimeSeries& other, double lambda) {
  require_unit_lambda(lambda, true, "lambda");
  return elementwise(anchor, other,
                     [lambda](double a, double o) { return lambda * a + (1.0 - lambda) * o; });
}

std::size_t MixMask::kept() const noexcept {
  return static_cast<std::size_t>(std::count_if(keep.begin(), keep.end(), [](std::uint8_t k) { return k != 0; }));
}

MixMask bernoulli_mask(std::size_t length, double rho, Rng& rng) {
  require_fraction(rho, "rho");
  MixMask mask;
  mask.kind = MaskKind::Bernoulli;
  mask.rho = rho;
  mask.keep.resize(length);
  for (auto& k : mask.keep) k = rng.bernoulli(rho) ? 1 : 0;
  mask.count = length - mask.kept();
  return mask;
}

MixMask rectangle_mask(std::size_t length, double start_fraction, double length_fraction) {
  require_fraction(start_fraction, "start fraction b");
  require_fraction(length_fraction, "length fraction a");
  MixMask mask;
  mask.kind = MaskKind::Rectangle;
  mask.start_fraction = start_fraction;
  mask.length_fraction = length_fraction;
  const double n = static_cast<double>(length);
  mask.count = std::min(length, static_cast<std::size_t>(std::llround(length_fraction * n)));
  mask.start = static_cast<std::size_t>(std::llround(start_fraction * static_cast<double>(length - mask.count)));
  mask.keep.assign(length, 1);
  std::fill_n(mask.keep.begin() + static_cast<std::ptrdiff_t>(mask.start), mask.count, std::uint8_t{0});
  return mask;
}

TimeSeries apply_mask(const TimeSeries& anchor, const TimeSeries& other, const MixMask& mask) {
  require_compatible(anchor, other);
  if (mask.keep.size() != anchor.length()) throw Error(ErrorCode::ShapeMismatch, "mask length differs from signal length");
  TimeSeries out = anchor;
  for (std::size_t c = 0; c < anchor.channels(); ++c) {
    auto dst = out.channel(c);
    const auto src = other.channel(c);
    for (std::size_t i = 0; i < dst.size(); ++i) {
      if (mask.keep[i] == 0) dst[i] = src[i];
    }
  }
  return out;
}

TimeSeries binary_mix(const TimeSeries& anchor, const TimeSeries& other, Interval rho_range, Rng& rng) {
  require_compatible(anchor, other);
  require_interval(rho_range, "rho range");
  const double rho = rng.uniform(rho_range);
  return apply_mask(anchor, other, bernoulli_mask(anchor.length(), rho, rng));
}

TimeSeries geometric_mix(const TimeSeries& anchor, const TimeSeries& other, double lambda, double eps_floor) {
  require_unit_lambda(lambda, false, "lambda");
  if (!(eps_floor > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps floor must be positive");
  return elementwise(anchor, other, [lambda, eps_floor](double a, double o) {
    const double sign = a < 0.0 ? -1.0 : 1.0;
    return sign * std::pow(std::max(std::abs(a), eps_floor), lambda) *
           std::pow(std::max(std::abs(o), eps_floor), 1.0 - lambda);
  });
}

TimeSeries cut_mix_at(const TimeSeries& anchor, const TimeSeries& other, double start_fraction,
                      double length_fraction) {
  require_compatible(anchor, other);
  return apply_mask(anchor, other, rectangle_mask(anchor.length(), start_fraction, length_fraction));
}

TimeSeries cut_mix(const TimeSeries& anchor, const TimeSeries& other, Interval start_range,
                   Interval length_range, Rng& rng) {
  require_interval(start_range, "start range");
  require_interval(length_range, "length range");
  const double b = rng.uniform(start_range);
  const double a = rng.uniform(length_range);
  return cut_mix_at(anchor, other, b, a);
}

TimeSeries amplitude_mix(const TimeSeries& anchor, const TimeSeries& other, double lambda_a,
                         bool normalize_power) {
  require_compatible(anchor, other);
  require_unit_lambda(lambda_a, false, "lambda_a");
  const TimeSeries partner = normalize_power ? match_power(other, anchor.energy()) : other;
  return inverse(mix_polar(forward(anchor), forward(partner), lambda_a, 1.0, PhaseRule::KeepAnchor));
}

StftConfig StftConfig::for_length(std::size_t length) {
  const std::size_t quarter = length / 4;
  return StftConfig{length, quarter, quarter};
}

std::size_t StftConfig::frames(std::size_t length) const noexcept {
  if (hop == 0) return 0;
  return (length + hop - 1) / hop;
}

void StftConfig::validate() const {
  if (window_length == 0) throw Error(ErrorCode::InvalidArgument, "STFT window must be non-empty");
  if (hop != window_length) throw Error(ErrorCode::InvalidArgument, "STFT frames must not overlap (hop == window)");
  if (fft_length < window_length) throw Error(ErrorCode::InvalidArgument, "fft_length must cover the window");
}

Stft stft(std::span<const double> channel, const StftConfig& cfg) {
  cfg.validate();
  const std::size_t n_frames = cfg.frames(channel.size());
  Stft frames;
  frames.reserve(n_frames);
  std::vector<double> buffer(cfg.fft_length);
  for (std::size_t m = 0; m < n_frames; ++m) {
    const std::size_t begin = m * cfg.hop;
    const std::size_t end = std::min(begin + cfg.window_length, channel.size());
    std::fill(buffer.begin(), buffer.end(), 0.0);
    std::copy(channel.begin() + static_cast<std::ptrdiff_t>(begin),
              channel.begin() + static_cast<std::ptrdiff_t>(end), buffer.begin());
    frames.push_back(fft::rfft(buffer));
  }
  return frames;
}

std::vector<double> istft(const Stft& frames, const StftConfig& cfg, std::size_t length) {
  cfg.validate();
  if (frames.size() != cfg.frames(length)) throw Error(ErrorCode::ShapeMismatch, "frame count does not match signal length");
  std::vector<double> out(length, 0.0);
  for (std::size_t m = 0; m < frames.size(); ++m) {
    const auto segment = fft::irfft(frames[m], cfg.fft_length);
    const std::size_t begin = m * cfg.hop;
    const std::size_t end = std::min(begin + cfg.window_length, length);
    std::copy_n(segment.begin(), end - begin, out.begin() + static_cast<std::ptrdiff_t>(begin));
  }
  return out;
}

TimeSeries spec_mix_at(const TimeSeries& anchor, const TimeSeries& other, double start_fraction,
                       double length_fraction, const StftConfig& cfg) {
  require_compatible(anchor, other);
  if (anchor.length() < 8) throw Error(ErrorCode::SignalTooShort, "SpecMix needs at least 8 samples");
  cfg.validate();
  if (cfg.window_length > anchor.length()) throw Error(ErrorCode::InvalidArgument, "STFT window longer than signal");

  const std::size_t n_frames = cfg.frames(anchor.length());
  const MixMask frame_mask = rectangle_mask(n_frames, start_fraction, length_fraction);

  TimeSeries out = anchor;
  for (std::size_t c = 0; c < anchor.channels(); ++c) {
    Stft mixed = stft(anchor.channel(c), cfg);
    const Stft replacement = stft(other.channel(c), cfg);
    for (std::size_t m = 0; m < n_frames; ++m) {
      if (frame_mask.keep[m] == 0) mixed[m] = replacement[m];
    }
    const auto samples = istft(mixed, cfg, anchor.length());
    std::copy(samples.begin(), samples.end(), out.channel(c).begin());
  }
  out.validate();
  return out;
}

TimeSeries spec_mix(const TimeSeries& anchor, const TimeSeries& other, Interval start_range,
                    Interval length_range, const StftConfig& cfg, Rng& rng) {
  require_interval(start_range, "start range");
  require_interval(length_range, "length range");
  const double b = rng.uniform(start_range);
  const double a = rng.uniform(length_range);
  return spec_mix_at(anchor, other, b, a, cfg);
}

}  // namespace tsmix
