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

namespace tsmix {

/// Real-valued multichannel signal, stored channel-major in one contiguous
/// buffer. Construction enforces the invariants (length >= 4, finite values,
/// positive sample rate), so every TimeSeries in flight is valid.
class TimeSeries {
 public:
  static constexpr std::size_t kMinLength = 4;

  TimeSeries(std::size_t channels, std::size_t length, double sample_rate_hz);
  TimeSeries(std::vector<std::vector<double>> channels, double sample_rate_hz);
  TimeSeries(std::size_t channels, std::size_t length, double sample_rate_hz,
             std::vector<double> data);

  static TimeSeries mono(std::vector<double> samples, double sample_rate_hz);

  std::size_t channels() const noexcept { return channels_; }
  std::size_t length() const noexcept { return length_; }
  double sample_rate_hz() const noexcept { return sample_rate_hz_; }

  std::span<const double> channel(std::size_t c) const;
  std::span<double> channel(std::size_t c);

  std::span<const double> data() const noexcept { return data_; }

  /// Re-checks finiteness after in-place edits through the mutable views.
  void validate() const;

  /// Total power summed over channels and samples (sum of squares).
  double energy() const noexcept;
  double max_abs() const noexcept;

  bool same_shape(const TimeSeries& other) const noexcept {
    return channels_ == other.channels_ && length_ == other.length_;
  }

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

 private:
  std::size_t channels_;
  std::size_t length_;
  double sample_rate_hz_;
  std::vector<double> data_;
};

/// Throws ShapeMismatch / SampleRateMismatch unless the pair can be mixed.
void require_compatible(const TimeSeries& a, const TimeSeries& b);

}  // namespace tsmix
