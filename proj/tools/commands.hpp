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
#include <ostream>
#include <string>
#include <vector>

#include "tsmix/coefficient_policy.hpp"
#include "tsmix/dataset.hpp"
#include "tsmix/spectral.hpp"

namespace tsmix::cli {

/// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitError = 2;

struct CommonOptions {
  std::uint64_t seed = 0;
  std::string profile = "activity";
  std::size_t threads = 1;
  double sample_rate_hz = 50.0;  // used only when reading CSV input
};

struct AugmentOptions {
  std::filesystem::path input;
  std::filesystem::path output;
  std::filesystem::path sidecar;  // defaults to <output>.json
  std::string method = "tailored";
  std::optional<double> lambda_a;
  std::optional<double> lambda_p;
  std::filesystem::path pairing;
  std::filesystem::path embeddings;
  std::size_t embedding_bands = 8;
  bool normalize_power = true;
};

struct DemoOptions {
  std::filesystem::path output_dir;
  std::size_t length = 256;
  double sample_rate_hz = 64.0;
  double base_freq_hz = 1.5;
  std::string band = "1:2";
  std::size_t n_offsets = 24;
  std::vector<double> ratios{0.25, 0.5, 1.0, 2.0, 4.0, 9.0, 19.0};
  std::vector<double> lambdas{0.5, 0.8, 0.9, 0.95};
  double example_lambda = 0.9;
};

struct ValidateOptions {
  std::filesystem::path input;
  std::filesystem::path sidecar;
  std::filesystem::path augmented;
  std::filesystem::path audit_csv;
  std::string band;  // "lo:hi"; empty means the full spectrum
};

struct GenSynthOptions {
  std::filesystem::path spec;
  std::filesystem::path output;
  std::filesystem::path pairing_out;
};

/// Names accepted by --method.
const std::vector<std::string>& method_names();

/// Parses "lo:hi" in Hz.
BandSpec parse_band(const std::string& text);

/// Chooses the on-disk format from the extension: .csv is text, anything
/// else is the binary format.
LabeledDataset load_dataset(const std::filesystem::path& path, double sample_rate_hz);
void save_dataset(const LabeledDataset& ds, const std::filesystem::path& path);

/// anchor_id,partner_id rows. Anchors missing from the file get a random
/// partner.
std::vector<std::pair<std::uint64_t, std::uint64_t>> read_pairing(const std::filesystem::path& path);

int augment(const CommonOptions& common, const AugmentOptions& opts, std::ostream& out);
int demo_destructive(const CommonOptions& common, const DemoOptions& opts, std::ostream& out);
int validate(const CommonOptions& common, const ValidateOptions& opts, std::ostream& out);
int gen_synth(const CommonOptions& common, const GenSynthOptions& opts, std::ostream& out);

}  // namespace tsmix::cli
