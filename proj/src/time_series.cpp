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

#include "tsmix/time_series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tsmix/error.hpp"

namespace tsmix {

namespace {

void check_header(std::size_t channels, std::size_t length, double sample_rate_hz) {
  if (channels == 0) throw Error(ErrorCode::ShapeMismatch, "time series needs at least one channel");
  if (length < TimeSeries::kMinLength) {
    throw Error(ErrorCode::TooShort,
                "length " + std::to_string(length) + " < " + std::to_string(TimeSeries::kMinLength));
  }
  if (!std::isfinite(sample_rate_hz) || sample_rate_hz <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "sample rate must be positive and finite");
  }
}

}  // namespace

TimeSeries::TimeSeries(std::size_t channels, std::size_t length, double sample_rate_hz)
    : channels_(channels), length_(length), sample_rate_hz_(sample_rate_hz),
      data_(channels * length, 0.0) {
  check_header(channels, length, sample_rate_hz);
}

TimeSeries::TimeSeries(std::size_t channels, std::size_t length, double sample_rate_hz,
                       std::vector<double> data)
    : channels_(channels), length_(length), sample_rate_hz_(sample_rate_hz),
      data_(std::move(data)) {
  check_header(channels, length, sample_rate_hz);
  if (data_.size() != channels * length) {
    throw Error(ErrorCode::ShapeMismatch, "buffer size does not match channels x length");
  }
  validate();
}

TimeSeries::TimeSeries(std::vector<std::vector<double>> channels, double sample_rate_hz)
    : channels_(channels.size()),
      length_(channels.empty() ? 0 : channels.front().size()),
      sample_rate_hz_(sample_rate_hz) {
  check_header(channels_, length_, sample_rate_hz);
  data_.reserve(channels_ * length_);
  for (const auto& ch : channels) {
    if (ch.size() != length_) throw Error(ErrorCode::ShapeMismatch, "channels differ in length");
    data_.insert(data_.end(), ch.begin(), ch.end());
  }
  validate();
}

TimeSeries TimeSeries::mono(std::vector<double> samples, double sample_rate_hz) {
  const std::size_t n = samples.size();
  return TimeSeries(1, n, sample_rate_hz, std::move(samples));
}

std::span<const double> TimeSeries::channel(std::size_t c) const {
  if (c >= channels_) throw Error(ErrorCode::InvalidArgument, "channel index out of range");
  return std::span<const double>(data_).subspan(c * length_, length_);
}

std::span<double> TimeSeries::channel(std::size_t c) {
  if (c >= channels_) throw Error(ErrorCode::InvalidArgument, "channel index out of range");
  return std::span<double>(data_).subspan(c * length_, length_);
}

void TimeSeries::validate() const {
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      throw Error(ErrorCode::NonFinite, "non-finite value at channel " +
                                            std::to_string(i / length_) + ", index " +
                                            std::to_string(i % length_));
    }
  }
}

double TimeSeries::energy() const noexcept {
  double sum = 0.0;
  for (double v : data_) sum += v * v;
  return sum;
}

double TimeSeries::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

void require_compatible(const TimeSeries& a, const TimeSeries& b) {
  if (!a.same_shape(b)) {
    throw Error(ErrorCode::ShapeMismatch,
                "shapes differ: " + std::to_string(a.channels()) + "x" + std::to_string(a.length()) +
                    " vs " + std::to_string(b.channels()) + "x" + std::to_string(b.length()));
  }
  if (a.sample_rate_hz() != b.sample_rate_hz()) {
    throw Error(ErrorCode::SampleRateMismatch, "sample rates differ");
  }
}

}  // namespace tsmix
