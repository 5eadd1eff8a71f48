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

#include "tsmix/similarity.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

#include "tsmix/error.hpp"
#include "tsmix/spectral.hpp"

namespace tsmix {

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "embedding dimensions differ: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  const double dot = std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
  const double na = std::sqrt(std::inner_product(a.begin(), a.end(), a.begin(), 0.0));
  const double nb = std::sqrt(std::inner_product(b.begin(), b.end(), b.begin(), 0.0));
  if (na < 1e-12 || nb < 1e-12) throw Error(ErrorCode::ZeroVector, "embedding norm below 1e-12");
  return std::clamp(dot / (na * nb), -1.0, 1.0);
}

double cosine_similarity(const Embedding& a, const Embedding& b) { return cosine_similarity(a.vector, b.vector); }

TableEmbeddingProvider::TableEmbeddingProvider(std::vector<Embedding> rows) {
  for (auto& row : rows) {
    if (rows_.empty()) dimension_ = row.vector.size();
    if (row.vector.size() != dimension_) {
      throw Error(ErrorCode::DimensionMismatch, "embedding " + std::to_string(row.id) + " has dimension " +
                                                    std::to_string(row.vector.size()) + ", expected " +
                                                    std::to_string(dimension_));
    }
    for (double v : row.vector) {
      if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "embedding " + std::to_string(row.id) + " is not finite");
    }
    const std::uint64_t id = row.id;
    if (!rows_.emplace(id, std::move(row)).second) {
      throw Error(ErrorCode::ParseError, "duplicate embedding id " + std::to_string(id));
    }
  }
}

const Embedding& TableEmbeddingProvider::embedding(std::uint64_t id) const {
  auto it = rows_.find(id);
  if (it == rows_.end()) throw Error(ErrorCode::UnknownId, "no embedding for id " + std::to_string(id));
  return it->second;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

template <typename T>
bool parse_number(const std::string& text, T& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  if constexpr (std::is_floating_point_v<T>) {
    try {
      std::size_t used = 0;
      out = std::stod(t, &used);
      return used == t.size();
    } catch (const std::exception&) {
      return false;
    }
  } else {
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    return ec == std::errc() && ptr == t.data() + t.size();
  }
}

}  // namespace

std::unique_ptr<TableEmbeddingProvider> load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());

  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> declared_dim;
  bool header_seen = false;
  std::vector<Embedding> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    if (!header_seen) {
      if (fields.empty() || trim(fields[0]) != "id") {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected header starting with 'id'");
      }
      std::size_t dim = 0;
      if (fields.size() == 2 && parse_number(fields[1], dim)) declared_dim = dim;
      header_seen = true;
      continue;
    }
    Embedding row;
    if (fields.size() < 2 || !parse_number(fields[0], row.id)) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 'id,v1,...,vd'");
    }
    for (std::size_t i = 1; i < fields.size(); ++i) {
      double v = 0.0;
      if (!parse_number(fields[i], v)) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad value '" + fields[i] + "'");
      }
      row.vector.push_back(v);
    }
    const std::size_t expected = declared_dim ? *declared_dim : (rows.empty() ? row.vector.size() : rows.front().vector.size());
    if (row.vector.size() != expected) {
      throw Error(ErrorCode::DimensionMismatch, "line " + std::to_string(line_no) + ": dimension " +
                                                    std::to_string(row.vector.size()) + ", expected " +
                                                    std::to_string(expected));
    }
    rows.push_back(std::move(row));
  }
  if (!header_seen) throw Error(ErrorCode::ParseError, "line 1: missing header");
  try {
    return std::make_unique<TableEmbeddingProvider>(std::move(rows));
  } catch (const Error& e) {
    throw Error(e.code() == ErrorCode::DimensionMismatch ? e.code() : ErrorCode::ParseError, e.what());
  }
}

Embedding spectral_embedding(const TimeSeries& signal, std::size_t n_bands, std::uint64_t id) {
  if (n_bands < 2) throw Error(ErrorCode::InvalidArgument, "spectral embedding needs at least 2 bands");
  const std::size_t n = signal.length();
  const double nyquist = signal.sample_rate_hz() / 2.0;
  const auto spectra = power_spectrum(signal);

  double total = 0.0;
  for (const auto& s : spectra) {
    for (std::size_t k = 0; k < s.size(); ++k) total += two_sided_weight(k, n) * s[k];
  }
  if (total < 1e-30) throw Error(ErrorCode::ZeroSignal, "signal has no power");

  Embedding out;
  out.id = id;
  out.vector.reserve(signal.channels() * n_bands);
  std::vector<double> bands(n_bands);
  for (const auto& s : spectra) {
    std::fill(bands.begin(), bands.end(), 0.0);
    for (std::size_t k = 0; k < s.size(); ++k) {
      const double f = bin_frequency_hz(k, n, signal.sample_rate_hz());
      const auto band = std::min(n_bands - 1, static_cast<std::size_t>(f / nyquist * static_cast<double>(n_bands)));
      bands[band] += two_sided_weight(k, n) * s[k];
    }
    for (double p : bands) out.vector.push_back(std::log(1e-12 + p / total));
  }
  const double mean = std::accumulate(out.vector.begin(), out.vector.end(), 0.0) / static_cast<double>(out.vector.size());
  for (double& v : out.vector) v -= mean;
  return out;
}

}  // namespace tsmix
