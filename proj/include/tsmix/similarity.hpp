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
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "tsmix/time_series.hpp"

namespace tsmix {

struct Embedding {
  std::uint64_t id = 0;
  std::vector<double> vector;
};

/// <a, b> / (|a| |b|), clamped to [-1, 1]. Throws DimensionMismatch or
/// ZeroVector (norm below 1e-12).
double cosine_similarity(std::span<const double> a, std::span<const double> b);
double cosine_similarity(const Embedding& a, const Embedding& b);

/// Resolves a sample id to its latent vector. Implementations are immutable
/// after construction and safe to query concurrently.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  /// Throws UnknownId when the provider has no vector for `id`.
  virtual const Embedding& embedding(std::uint64_t id) const = 0;
  virtual std::size_t dimension() const noexcept = 0;

  double similarity(std::uint64_t a, std::uint64_t b) const {
    return cosine_similarity(embedding(a), embedding(b));
  }
};

/// Provider over an explicit id -> vector table (e.g. externally trained
/// VAE latents).
class TableEmbeddingProvider final : public EmbeddingProvider {
 public:
  explicit TableEmbeddingProvider(std::vector<Embedding> rows);

  const Embedding& embedding(std::uint64_t id) const override;
  std::size_t dimension() const noexcept override { return dimension_; }
  std::size_t size() const noexcept { return rows_.size(); }

 private:
  std::map<std::uint64_t, Embedding> rows_;
  std::size_t dimension_ = 0;
};

/// Reads the embeddings CSV: a header line starting with `id` (an integer
/// second field declares the dimension), then `id,v1,...,vd` per row.
/// Errors carry the 1-based line number.
std::unique_ptr<TableEmbeddingProvider> load_embeddings(const std::filesystem::path& path);

/// Log band-power fingerprint: for each channel, the fraction of total power
/// in `n_bands` equal-width bands over [0, Nyquist]; log(1e-12 + fraction),
/// concatenated over channels and mean-centred.
Embedding spectral_embedding(const TimeSeries& signal, std::size_t n_bands, std::uint64_t id = 0);

}  // namespace tsmix
