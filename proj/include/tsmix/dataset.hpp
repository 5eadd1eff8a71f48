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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "tsmix/time_series.hpp"

namespace tsmix {

/// Samples of identical shape with optional integer labels.
struct LabeledDataset {
  std::vector<TimeSeries> samples;
  std::optional<std::vector<std::uint32_t>> labels;
  std::vector<std::uint64_t> ids;

  std::size_t size() const noexcept { return samples.size(); }
  bool has_labels() const noexcept { return labels.has_value(); }

  /// Throws ShapeMismatch / InvalidArgument on ragged samples, label count
  /// mismatches or duplicate ids.
  void validate() const;
};

/// Assigns ids 0..n-1 when `ds.ids` is empty.
void assign_sequential_ids(LabeledDataset& ds);

// Binary layout, all little-endian:
//   "TSMX" | u32 version (1) | u32 n_samples | u32 n_channels | u32 length
//   | f64 sample_rate | u8 has_labels | f32 data[sample][channel][time]
//   | u32 labels[n_samples] (if has_labels)
// Ids are implicit (0..n-1).
inline constexpr std::uint32_t kBinaryVersion = 1;

void write_binary(const LabeledDataset& ds, const std::filesystem::path& path);
LabeledDataset read_binary(const std::filesystem::path& path);

/// CSV with header `id,label,channel,t0,t1,...` and one row per
/// (sample, channel). Rows are grouped by id in order of first appearance; the
/// label column may be blank for every sample.
LabeledDataset read_csv(const std::filesystem::path& path, double sample_rate_hz);
void write_csv(const LabeledDataset& ds, const std::filesystem::path& path);

/// Sliding windows of round(window_s * rate) samples advancing by
/// window * (1 - overlap_frac); a trailing partial window is dropped.
std::vector<TimeSeries> segment(const TimeSeries& signal, double window_s, double overlap_frac);

/// Per-channel zero mean, unit (population) standard deviation.
TimeSeries zscore(const TimeSeries& signal);

}  // namespace tsmix
