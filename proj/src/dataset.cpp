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

#include "tsmix/dataset.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "tsmix/error.hpp"

namespace tsmix {

void LabeledDataset::validate() const {
  if (labels && labels->size() != samples.size()) {
    throw Error(ErrorCode::ShapeMismatch, "label count differs from sample count");
  }
  if (!ids.empty() && ids.size() != samples.size()) {
    throw Error(ErrorCode::ShapeMismatch, "id count differs from sample count");
  }
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!samples[i].same_shape(samples[0]) || samples[i].sample_rate_hz() != samples[0].sample_rate_hz()) {
      throw Error(ErrorCode::ShapeMismatch, "sample " + std::to_string(i) + " differs in shape or rate");
    }
  }
  std::set<std::uint64_t> seen;
  for (auto id : ids) {
    if (!seen.insert(id).second) throw Error(ErrorCode::InvalidArgument, "duplicate id " + std::to_string(id));
  }
}

void assign_sequential_ids(LabeledDataset& ds) {
  if (!ds.ids.empty()) return;
  ds.ids.resize(ds.samples.size());
  for (std::size_t i = 0; i < ds.ids.size(); ++i) ds.ids[i] = i;
}

namespace {

constexpr char kMagic[4] = {'T', 'S', 'M', 'X'};
constexpr std::size_t kHeaderBytes = 4 + 4 * 4 + 8 + 1;

class ByteWriter {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    buffer_.insert(buffer_.end(), p, p + n);
  }
  void u8(std::uint8_t v) { buffer_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buffer_.push_back(static_cast<unsigned char>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buffer_.push_back(static_cast<unsigned char>(v >> (8 * i)));
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  const std::vector<unsigned char>& buffer() const noexcept { return buffer_; }

 private:
  std::vector<unsigned char> buffer_;
};

class ByteReader {
 public:
  explicit ByteReader(std::vector<unsigned char> data) : data_(std::move(data)) {}

  void need(std::size_t n, const char* what) const {
    if (data_.size() - offset_ < n) {
      throw Error(ErrorCode::TruncatedFile, std::string("file ends while reading ") + what + " at byte offset " +
                                                std::to_string(offset_) + " (needed " + std::to_string(n) +
                                                " bytes, " + std::to_string(data_.size() - offset_) + " left)");
    }
  }
  std::uint8_t u8(const char* what) {
    need(1, what);
    return data_[offset_++];
  }
  std::uint32_t u32(const char* what) {
    need(4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(data_[offset_++]) << (8 * i);
    return v;
  }
  std::uint64_t u64(const char* what) {
    need(8, what);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(data_[offset_++]) << (8 * i);
    return v;
  }
  float f32(const char* what) { return std::bit_cast<float>(u32(what)); }
  double f64(const char* what) { return std::bit_cast<double>(u64(what)); }
  std::size_t offset() const noexcept { return offset_; }
  std::size_t size() const noexcept { return data_.size(); }
  const unsigned char* at() const noexcept { return data_.data() + offset_; }
  void skip(std::size_t n) { offset_ += n; }

 private:
  std::vector<unsigned char> data_;
  std::size_t offset_ = 0;
};

std::uint32_t narrow_u32(std::size_t v, const char* what) {
  if (v > 0xFFFFFFFFu) throw Error(ErrorCode::InvalidArgument, std::string(what) + " does not fit in u32");
  return static_cast<std::uint32_t>(v);
}

void write_file(const std::filesystem::path& path, const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

std::vector<unsigned char> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return std::vector<unsigned char>(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

void write_binary(const LabeledDataset& ds, const std::filesystem::path& path) {
  ds.validate();
  const std::size_t channels = ds.samples.empty() ? 0 : ds.samples[0].channels();
  const std::size_t length = ds.samples.empty() ? 0 : ds.samples[0].length();
  const double rate = ds.samples.empty() ? 0.0 : ds.samples[0].sample_rate_hz();

  ByteWriter w;
  w.bytes(kMagic, 4);
  w.u32(kBinaryVersion);
  w.u32(narrow_u32(ds.size(), "sample count"));
  w.u32(narrow_u32(channels, "channel count"));
  w.u32(narrow_u32(length, "length"));
  w.f64(rate);
  w.u8(ds.has_labels() ? 1 : 0);
  for (const auto& s : ds.samples) {
    for (double v : s.data()) w.f32(static_cast<float>(v));
  }
  if (ds.labels) {
    for (auto label : *ds.labels) w.u32(label);
  }
  write_file(path, w.buffer());
}

LabeledDataset read_binary(const std::filesystem::path& path) {
  ByteReader r(read_file(path));
  r.need(4, "magic");
  if (!std::equal(kMagic, kMagic + 4, r.at())) throw Error(ErrorCode::BadMagic, path.string() + " is not a TSMX file");
  r.skip(4);
  const std::uint32_t version = r.u32("version");
  if (version != kBinaryVersion) {
    throw Error(ErrorCode::VersionUnsupported, "TSMX version " + std::to_string(version) + " is not supported");
  }
  const std::uint32_t n_samples = r.u32("sample count");
  const std::uint32_t channels = r.u32("channel count");
  const std::uint32_t length = r.u32("length");
  const double rate = r.f64("sample rate");
  const std::uint8_t has_labels = r.u8("label flag");
  if (has_labels > 1) throw Error(ErrorCode::ParseError, "label flag must be 0 or 1");

  // Size check up front so a truncated file never yields a partial dataset.
  const std::uint64_t payload = static_cast<std::uint64_t>(n_samples) * channels * length * 4 +
                                (has_labels ? static_cast<std::uint64_t>(n_samples) * 4 : 0);
  if (r.size() - r.offset() < payload) {
    throw Error(ErrorCode::TruncatedFile, "payload needs " + std::to_string(payload) + " bytes after offset " +
                                              std::to_string(kHeaderBytes) + ", file ends at byte offset " +
                                              std::to_string(r.size()));
  }
  if (r.size() - r.offset() > payload) {
    throw Error(ErrorCode::ParseError, "unexpected trailing bytes at offset " + std::to_string(r.offset() + payload));
  }

  LabeledDataset ds;
  ds.samples.reserve(n_samples);
  for (std::uint32_t i = 0; i < n_samples; ++i) {
    std::vector<double> data(static_cast<std::size_t>(channels) * length);
    for (double& v : data) v = static_cast<double>(r.f32("sample data"));
    ds.samples.emplace_back(channels, length, rate, std::move(data));
  }
  if (has_labels) {
    ds.labels.emplace(n_samples);
    for (auto& label : *ds.labels) label = r.u32("labels");
  }
  assign_sequential_ids(ds);
  return ds;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  for (auto& f : fields) {
    while (!f.empty() && std::isspace(static_cast<unsigned char>(f.back()))) f.pop_back();
    std::size_t lead = 0;
    while (lead < f.size() && std::isspace(static_cast<unsigned char>(f[lead]))) ++lead;
    f.erase(0, lead);
  }
  return fields;
}

template <typename T>
T parse_int(const std::string& text, std::size_t line_no, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad " + what + " '" + text + "'");
  }
  return value;
}

double parse_real(const std::string& text, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad value '" + text + "'");
}

struct CsvSample {
  std::optional<std::uint32_t> label;
  std::size_t first_line = 0;
  std::map<std::size_t, std::vector<double>> channels;
};

}  // namespace

LabeledDataset read_csv(const std::filesystem::path& path, double sample_rate_hz) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "line 1: missing header");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_fields(line);
  if (header.size() < 4 || header[0] != "id" || header[1] != "label" || header[2] != "channel") {
    throw Error(ErrorCode::ParseError, "line 1: header must start with id,label,channel,t0");
  }
  const std::size_t length = header.size() - 3;

  std::vector<std::uint64_t> order;
  std::map<std::uint64_t, CsvSample> by_id;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::RaggedRows, "line " + std::to_string(line_no) + ": " + std::to_string(fields.size()) +
                                             " fields, header has " + std::to_string(header.size()));
    }
    const auto id = parse_int<std::uint64_t>(fields[0], line_no, "id");
    std::optional<std::uint32_t> label;
    if (!fields[1].empty()) label = parse_int<std::uint32_t>(fields[1], line_no, "label");
    const auto channel = parse_int<std::size_t>(fields[2], line_no, "channel");

    auto [it, inserted] = by_id.try_emplace(id);
    CsvSample& sample = it->second;
    if (inserted) {
      order.push_back(id);
      sample.label = label;
      sample.first_line = line_no;
    } else if (sample.label != label) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": label disagrees with earlier rows of id " +
                                             std::to_string(id));
    }
    std::vector<double> values(length);
    for (std::size_t t = 0; t < length; ++t) values[t] = parse_real(fields[3 + t], line_no);
    if (!sample.channels.emplace(channel, std::move(values)).second) {
      throw Error(ErrorCode::DuplicateChannel, "line " + std::to_string(line_no) + ": channel " +
                                                   std::to_string(channel) + " repeated for id " + std::to_string(id));
    }
  }

  LabeledDataset ds;
  std::optional<std::size_t> n_channels;
  std::size_t labelled = 0;
  for (auto id : order) {
    CsvSample& sample = by_id.at(id);
    const std::size_t c = sample.channels.size();
    if (sample.channels.rbegin()->first != c - 1) {
      throw Error(ErrorCode::RaggedRows, "id " + std::to_string(id) + " (line " + std::to_string(sample.first_line) +
                                             ") has non-contiguous channel indices");
    }
    if (n_channels && *n_channels != c) {
      throw Error(ErrorCode::RaggedRows, "id " + std::to_string(id) + " (line " + std::to_string(sample.first_line) +
                                             ") has " + std::to_string(c) + " channels, expected " +
                                             std::to_string(*n_channels));
    }
    n_channels = c;
    std::vector<std::vector<double>> channels;
    for (auto& [index, values] : sample.channels) channels.push_back(std::move(values));
    ds.samples.emplace_back(std::move(channels), sample_rate_hz);
    ds.ids.push_back(id);
    if (sample.label) ++labelled;
  }
  if (labelled == order.size() && !order.empty()) {
    ds.labels.emplace();
    for (auto id : order) ds.labels->push_back(*by_id.at(id).label);
  } else if (labelled != 0) {
    throw Error(ErrorCode::ParseError, "labels must be given for every sample or for none");
  }
  ds.validate();
  return ds;
}

void write_csv(const LabeledDataset& ds, const std::filesystem::path& path) {
  ds.validate();
  std::ostringstream out;
  out << std::setprecision(17);
  const std::size_t length = ds.samples.empty() ? 0 : ds.samples[0].length();
  out << "id,label,channel";
  for (std::size_t t = 0; t < length; ++t) out << ",t" << t;
  out << '\n';
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto& s = ds.samples[i];
    for (std::size_t c = 0; c < s.channels(); ++c) {
      out << (ds.ids.empty() ? i : ds.ids[i]) << ',';
      if (ds.labels) out << (*ds.labels)[i];
      out << ',' << c;
      for (double v : s.channel(c)) out << ',' << v;
      out << '\n';
    }
  }
  const std::string text = out.str();
  write_file(path, std::vector<unsigned char>(text.begin(), text.end()));
}

std::vector<TimeSeries> segment(const TimeSeries& signal, double window_s, double overlap_frac) {
  if (!(overlap_frac >= 0.0 && overlap_frac < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "overlap must lie in [0, 1)");
  }
  if (!(window_s > 0.0) || !std::isfinite(window_s)) throw Error(ErrorCode::InvalidArgument, "window must be positive");
  const auto window = static_cast<std::size_t>(std::llround(window_s * signal.sample_rate_hz()));
  if (window > signal.length()) {
    throw Error(ErrorCode::WindowTooLong, "window of " + std::to_string(window) + " samples exceeds signal length " +
                                              std::to_string(signal.length()));
  }
  const auto stride = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(static_cast<double>(window) * (1.0 - overlap_frac))));
  const std::size_t count = (signal.length() - window) / stride + 1;

  std::vector<TimeSeries> out;
  out.reserve(count);
  for (std::size_t w = 0; w < count; ++w) {
    std::vector<double> data;
    data.reserve(signal.channels() * window);
    for (std::size_t c = 0; c < signal.channels(); ++c) {
      const auto ch = signal.channel(c).subspan(w * stride, window);
      data.insert(data.end(), ch.begin(), ch.end());
    }
    out.emplace_back(signal.channels(), window, signal.sample_rate_hz(), std::move(data));
  }
  return out;
}

TimeSeries zscore(const TimeSeries& signal) {
  TimeSeries out = signal;
  const double n = static_cast<double>(signal.length());
  for (std::size_t c = 0; c < signal.channels(); ++c) {
    auto ch = out.channel(c);
    double mean = 0.0;
    for (double v : ch) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : ch) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / n);
    if (!(sd > 1e-12)) throw Error(ErrorCode::ConstantChannel, "channel " + std::to_string(c) + " is constant");
    for (double& v : ch) v = (v - mean) / sd;
  }
  return out;
}

}  // namespace tsmix
