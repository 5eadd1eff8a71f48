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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <nlohmann/json.hpp>

#include "tsmix/error.hpp"
#include "tsmix/info_proxy.hpp"
#include "tsmix/mixup.hpp"
#include "tsmix/similarity.hpp"
#include "tsmix/synthgen.hpp"

namespace tsmix::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

bool is_csv(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".csv";
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  file << text;
  if (!file) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

/// Runs fn(i) for every i, striding indices over `threads` workers. The first
/// failure by index is rethrown, so errors do not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn fn) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  std::vector<std::exception_ptr> errors(n);
  auto worker = [&](std::size_t start) {
    for (std::size_t i = start; i < n; i += threads) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

Profile require_profile(const std::string& name) {
  auto profile = find_profile(name);
  if (!profile) throw Error(ErrorCode::InvalidArgument, "unknown profile '" + name + "'");
  return *profile;
}

std::map<std::uint64_t, std::size_t> index_by_id(const LabeledDataset& ds) {
  std::map<std::uint64_t, std::size_t> index;
  for (std::size_t i = 0; i < ds.size(); ++i) index[ds.ids[i]] = i;
  return index;
}

std::string mask_string(const MixMask& mask) {
  std::string s(mask.keep.size(), '1');
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = mask.keep[i] ? '1' : '0';
  return s;
}

MixMask mask_from_string(const std::string& text, std::size_t length) {
  if (text.size() != length || text.find_first_not_of("01") != std::string::npos) {
    throw Error(ErrorCode::ParseError, "sidecar mask does not match the signal length");
  }
  MixMask mask;
  mask.keep.resize(length);
  for (std::size_t i = 0; i < length; ++i) mask.keep[i] = text[i] == '1';
  mask.count = length - mask.kept();
  return mask;
}

/// What one augmented sample needs to be replayed.
struct Record {
  std::uint64_t id = 0;
  std::uint64_t partner = 0;
  std::string method;
  std::string branch;
  std::optional<double> lambda_a;
  std::optional<double> lambda_p;
  std::optional<double> similarity;
  std::optional<double> start_fraction;
  std::optional<double> length_fraction;
  std::string mask;
  std::optional<LabelMix> labels;
};

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json to_json(const Record& r) {
  Json j;
  j["id"] = r.id;
  j["partner"] = r.partner;
  j["lambda_a"] = optional_number(r.lambda_a);
  j["lambda_p"] = optional_number(r.lambda_p);
  j["branch"] = r.branch;
  j["method"] = r.method;
  if (r.similarity) j["similarity"] = *r.similarity;
  if (r.start_fraction) j["start_fraction"] = *r.start_fraction;
  if (r.length_fraction) j["length_fraction"] = *r.length_fraction;
  if (!r.mask.empty()) j["mask"] = r.mask;
  if (r.labels) {
    j["label_anchor"] = r.labels->label_anchor;
    j["label_other"] = r.labels->label_other;
    j["weight_anchor"] = r.labels->weight_anchor;
  }
  return j;
}

std::optional<double> read_optional(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

Record from_json(const Json& j) {
  Record r;
  r.id = j.at("id").get<std::uint64_t>();
  r.partner = j.at("partner").get<std::uint64_t>();
  r.method = j.at("method").get<std::string>();
  r.branch = j.at("branch").get<std::string>();
  r.lambda_a = read_optional(j, "lambda_a");
  r.lambda_p = read_optional(j, "lambda_p");
  r.similarity = read_optional(j, "similarity");
  r.start_fraction = read_optional(j, "start_fraction");
  r.length_fraction = read_optional(j, "length_fraction");
  if (j.contains("mask")) r.mask = j.at("mask").get<std::string>();
  if (j.contains("label_anchor")) {
    const double w = j.at("weight_anchor").get<double>();
    r.labels = LabelMix{j.at("label_anchor").get<std::uint32_t>(), j.at("label_other").get<std::uint32_t>(), w,
                        1.0 - w};
  }
  return r;
}

double need(const std::optional<double>& v, const Record& r, const char* what) {
  if (!v) throw Error(ErrorCode::ParseError, "sidecar entry for id " + std::to_string(r.id) + " lacks " + what);
  return *v;
}

/// Recomputes a mixed sample from its record alone; no randomness involved.
TimeSeries replay(const Record& r, const TimeSeries& anchor, const TimeSeries& other, bool normalize_power) {
  if (r.method == "tailored") {
    return tailored_mix(anchor, other, {need(r.lambda_a, r, "lambda_a"), need(r.lambda_p, r, "lambda_p")},
                        normalize_power);
  }
  if (r.method == "supervised") {
    return supervised_mix(anchor, other, 0, 0, {need(r.lambda_a, r, "lambda_a"), need(r.lambda_p, r, "lambda_p")})
        .signal;
  }
  if (r.method == "linear") return linear_mix(anchor, other, need(r.lambda_a, r, "lambda_a"));
  if (r.method == "geometric") return geometric_mix(anchor, other, need(r.lambda_a, r, "lambda_a"));
  if (r.method == "amplitude") return amplitude_mix(anchor, other, need(r.lambda_a, r, "lambda_a"));
  if (r.method == "binary") return apply_mask(anchor, other, mask_from_string(r.mask, anchor.length()));
  if (r.method == "cutmix") {
    return cut_mix_at(anchor, other, need(r.start_fraction, r, "start_fraction"),
                      need(r.length_fraction, r, "length_fraction"));
  }
  if (r.method == "specmix") {
    return spec_mix_at(anchor, other, need(r.start_fraction, r, "start_fraction"),
                       need(r.length_fraction, r, "length_fraction"), StftConfig::for_length(anchor.length()));
  }
  throw Error(ErrorCode::ParseError, "sidecar names unknown method '" + r.method + "'");
}

/// The coefficient the pointwise bound is checked against.
double audit_lambda(const Record& r) {
  if (r.method == "binary") return need(r.lambda_a, r, "lambda_a");
  if (r.method == "cutmix" || r.method == "specmix") return 1.0 - need(r.length_fraction, r, "length_fraction");
  return need(r.lambda_a, r, "lambda_a");
}

std::string format_double(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

std::string waveform_csv(const TimeSeries& x) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "time_s";
  for (std::size_t c = 0; c < x.channels(); ++c) out << ",ch" << c;
  out << '\n';
  for (std::size_t t = 0; t < x.length(); ++t) {
    out << static_cast<double>(t) / x.sample_rate_hz();
    for (std::size_t c = 0; c < x.channels(); ++c) out << ',' << x.channel(c)[t];
    out << '\n';
  }
  return out.str();
}

}  // namespace

const std::vector<std::string>& method_names() {
  static const std::vector<std::string> names{"tailored", "linear",    "binary",  "geometric",
                                              "cutmix",   "amplitude", "specmix", "supervised"};
  return names;
}

BandSpec parse_band(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(ErrorCode::InvalidArgument, "band must look like lo:hi, got '" + text + "'");
  try {
    std::size_t used_lo = 0;
    std::size_t used_hi = 0;
    const std::string lo = text.substr(0, colon);
    const std::string hi = text.substr(colon + 1);
    const double f_lo = std::stod(lo, &used_lo);
    const double f_hi = std::stod(hi, &used_hi);
    if (used_lo == lo.size() && used_hi == hi.size()) return BandSpec(f_lo, f_hi);
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorCode::InvalidArgument, "band must look like lo:hi, got '" + text + "'");
}

LabeledDataset load_dataset(const fs::path& path, double sample_rate_hz) {
  LabeledDataset ds = is_csv(path) ? read_csv(path, sample_rate_hz) : read_binary(path);
  ds.validate();
  for (const auto& s : ds.samples) s.validate();
  return ds;
}

void save_dataset(const LabeledDataset& ds, const fs::path& path) {
  if (is_csv(path)) {
    write_csv(ds, path);
  } else {
    write_binary(ds, path);
  }
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> read_pairing(const fs::path& path) {
  std::istringstream in(read_text(path));
  std::string line;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line.rfind("anchor_id", 0) == 0) continue;
    std::istringstream row(line);
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    char comma = 0;
    if (!(row >> a >> comma >> b) || comma != ',' || !(row >> std::ws).eof()) {
      throw Error(ErrorCode::ParseError, path.string() + " line " + std::to_string(line_no) +
                                             ": expected anchor_id,partner_id");
    }
    pairs.emplace_back(a, b);
  }
  return pairs;
}

int augment(const CommonOptions& common, const AugmentOptions& opts, std::ostream& out) {
  const Profile profile = require_profile(common.profile);
  const std::string& method = opts.method;
  if (std::find(method_names().begin(), method_names().end(), method) == method_names().end()) {
    throw Error(ErrorCode::InvalidArgument, "unknown method '" + method + "'");
  }
  if (method == "tailored" && opts.lambda_a.has_value() != opts.lambda_p.has_value()) {
    throw Error(ErrorCode::InvalidArgument, "tailored mixing takes --lambda-a and --lambda-p together");
  }
  if (opts.lambda_a && !(*opts.lambda_a >= 0.0 && *opts.lambda_a <= 1.0)) {
    throw Error(ErrorCode::LambdaOutOfRange, "--lambda-a must lie in [0, 1]");
  }
  if (opts.lambda_p && !(*opts.lambda_p > 0.0 && *opts.lambda_p <= 1.0)) {
    throw Error(ErrorCode::LambdaOutOfRange, "--lambda-p must lie in (0, 1]");
  }

  const LabeledDataset ds = load_dataset(opts.input, common.sample_rate_hz);
  const std::size_t n = ds.size();
  if (method == "supervised" && !ds.has_labels()) {
    throw Error(ErrorCode::InvalidArgument, "supervised mixing needs a labelled dataset");
  }
  if (method == "specmix" && n > 0 && ds.samples[0].length() < 8) {
    throw Error(ErrorCode::SignalTooShort, "specmix needs at least 8 samples per signal");
  }
  const auto by_id = index_by_id(ds);

  std::vector<std::optional<std::size_t>> forced(n);
  if (!opts.pairing.empty()) {
    for (const auto& [a, b] : read_pairing(opts.pairing)) {
      const auto ia = by_id.find(a);
      const auto ib = by_id.find(b);
      if (ia == by_id.end() || ib == by_id.end()) {
        throw Error(ErrorCode::UnknownId, "pairing " + std::to_string(a) + "," + std::to_string(b) +
                                              " names an id missing from the input");
      }
      forced[ia->second] = ib->second;
    }
  }
  if (n == 1 && !forced[0]) throw Error(ErrorCode::InvalidArgument, "random pairing needs at least two samples");

  const bool needs_similarity = method == "tailored" && !opts.lambda_a;
  std::unique_ptr<TableEmbeddingProvider> provider;
  std::vector<Embedding> spectral(needs_similarity && opts.embeddings.empty() ? n : 0);
  if (needs_similarity && !opts.embeddings.empty()) {
    provider = load_embeddings(opts.embeddings);
    for (auto id : ds.ids) provider->embedding(id);  // fail early on missing ids
  }
  parallel_for(spectral.size(), common.threads,
               [&](std::size_t i) { spectral[i] = spectral_embedding(ds.samples[i], opts.embedding_bands, ds.ids[i]); });

  std::vector<std::optional<TimeSeries>> mixed(n);
  std::vector<Record> records(n);
  parallel_for(n, common.threads, [&](std::size_t i) {
    Rng rng = Rng::stream(common.seed, i);
    std::size_t j = 0;
    if (forced[i]) {
      j = *forced[i];
    } else {
      j = rng.index(n - 1);
      if (j >= i) ++j;
    }
    const TimeSeries& a = ds.samples[i];
    const TimeSeries& b = ds.samples[j];
    Record& r = records[i];
    r.id = ds.ids[i];
    r.partner = ds.ids[j];
    r.method = method;
    r.branch = "baseline";

    if (method == "tailored") {
      MixCoefficients coef;
      if (opts.lambda_a) {
        coef = {*opts.lambda_a, *opts.lambda_p, CoefficientSource::Fixed};
      } else {
        const double sim = provider ? provider->similarity(r.id, r.partner) : cosine_similarity(spectral[i], spectral[j]);
        r.similarity = sim;
        coef = choose_coefficients(sim, profile.policy, rng);
      }
      r.branch = std::string(to_string(coef.source));
      r.lambda_a = coef.lambda_a;
      r.lambda_p = coef.lambda_p;
      mixed[i] = tailored_mix(a, b, coef, opts.normalize_power);
    } else if (method == "supervised") {
      const double la = opts.lambda_a ? *opts.lambda_a : rng.beta(profile.supervised_alpha, profile.supervised_alpha);
      const double lp = opts.lambda_p ? *opts.lambda_p : rng.uniform(profile.supervised_lambda_p);
      const MixCoefficients coef{std::max(la, std::numeric_limits<double>::min()), lp, CoefficientSource::Supervised};
      auto result = supervised_mix(a, b, (*ds.labels)[i], (*ds.labels)[j], coef);
      r.branch = "supervised";
      r.lambda_a = coef.lambda_a;
      r.lambda_p = coef.lambda_p;
      r.labels = result.labels;
      mixed[i] = std::move(result.signal);
    } else if (method == "linear") {
      r.lambda_a = opts.lambda_a ? *opts.lambda_a : rng.uniform(profile.linear_lambda);
      mixed[i] = linear_mix(a, b, *r.lambda_a);
    } else if (method == "geometric") {
      r.lambda_a = opts.lambda_a ? *opts.lambda_a : rng.uniform(profile.geometric_lambda);
      mixed[i] = geometric_mix(a, b, *r.lambda_a);
    } else if (method == "amplitude") {
      r.lambda_a = opts.lambda_a ? *opts.lambda_a : rng.uniform(profile.amplitude_lambda);
      mixed[i] = amplitude_mix(a, b, *r.lambda_a);
    } else if (method == "binary") {
      r.lambda_a = opts.lambda_a ? *opts.lambda_a : rng.uniform(profile.binary_rho);
      const MixMask mask = bernoulli_mask(a.length(), *r.lambda_a, rng);
      r.mask = mask_string(mask);
      mixed[i] = apply_mask(a, b, mask);
    } else {
      const bool cut = method == "cutmix";
      r.start_fraction = rng.uniform(cut ? profile.cutmix_start : profile.specmix_start);
      r.length_fraction = rng.uniform(cut ? profile.cutmix_length : profile.specmix_length);
      mixed[i] = cut ? cut_mix_at(a, b, *r.start_fraction, *r.length_fraction)
                     : spec_mix_at(a, b, *r.start_fraction, *r.length_fraction, StftConfig::for_length(a.length()));
    }
    mixed[i]->validate();
  });

  LabeledDataset result;
  result.ids = ds.ids;
  result.samples.reserve(n);
  for (auto& m : mixed) result.samples.push_back(std::move(*m));
  if (ds.labels) {
    result.labels.emplace(n);
    for (std::size_t i = 0; i < n; ++i) (*result.labels)[i] = records[i].labels ? records[i].labels->dominant() : (*ds.labels)[i];
  }

  Json sidecar;
  sidecar["seed"] = common.seed;
  sidecar["method"] = method;
  sidecar["profile"] = profile.name;
  sidecar["normalize_power"] = opts.normalize_power;
  sidecar["samples"] = Json::array();
  for (const auto& r : records) sidecar["samples"].push_back(to_json(r));

  const fs::path sidecar_path = opts.sidecar.empty() ? fs::path(opts.output.string() + ".json") : opts.sidecar;
  save_dataset(result, opts.output);
  write_text(sidecar_path, sidecar.dump(2) + "\n");
  out << "augmented " << n << " samples with " << method << " -> " << opts.output.string() << '\n';
  return kExitOk;
}

int demo_destructive(const CommonOptions& common, const DemoOptions& opts, std::ostream& out) {
  if (opts.n_offsets == 0) throw Error(ErrorCode::InvalidGrid, "need at least one phase offset");
  if (!(opts.example_lambda > 0.0 && opts.example_lambda < 1.0)) {
    throw Error(ErrorCode::LambdaOutOfRange, "example lambda must lie strictly inside (0, 1)");
  }
  AdversarialPairSpec pair_spec;
  pair_spec.band = parse_band(opts.band);
  pair_spec.base_freq_hz = opts.base_freq_hz;
  pair_spec.lambda_target = opts.example_lambda;
  Rng rng(common.seed);
  const TimeSeries anchor = adversarial_pair(pair_spec, opts.length, opts.sample_rate_hz, rng).first;

  // Evenly spaced over (-pi, pi], always ending on pi.
  std::vector<double> offsets(opts.n_offsets);
  for (std::size_t j = 0; j < offsets.size(); ++j) {
    offsets[j] = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(j + 1) / static_cast<double>(offsets.size());
  }
  offsets.back() = std::numbers::pi;
  const auto cells = destruction_sweep(anchor, offsets, opts.ratios, opts.lambdas, pair_spec.band);

  const double lambda = opts.example_lambda;
  const TimeSeries partner = rotated_partner(anchor, std::numbers::pi, lambda / (1.0 - lambda));
  const TimeSeries linear = linear_mix(anchor, partner, lambda);
  const TimeSeries tailored = tailored_mix(anchor, partner, {lambda, lambda});

  fs::create_directories(opts.output_dir);
  write_text(opts.output_dir / "sweep.csv", sweep_csv(cells));
  write_text(opts.output_dir / "anchor.csv", waveform_csv(anchor));
  write_text(opts.output_dir / "linear_mixed.csv", waveform_csv(linear));
  write_text(opts.output_dir / "tailored_mixed.csv", waveform_csv(tailored));

  double worst_linear = std::numeric_limits<double>::infinity();
  double worst_tailored_margin = std::numeric_limits<double>::infinity();
  for (const auto& c : cells) {
    if (c.method == SweepMethod::Linear) {
      worst_linear = std::min(worst_linear, c.band_power_ratio);
    } else {
      worst_tailored_margin = std::min(worst_tailored_margin, c.band_power_ratio - c.lambda * c.lambda);
    }
  }
  out << cells.size() << " sweep cells -> " << (opts.output_dir / "sweep.csv").string() << '\n'
      << "lowest linear band-power ratio:   " << format_double(worst_linear) << '\n'
      << "lowest tailored ratio - lambda^2: " << format_double(worst_tailored_margin) << '\n';
  return kExitOk;
}

int validate(const CommonOptions& common, const ValidateOptions& opts, std::ostream& out) {
  const LabeledDataset ds = load_dataset(opts.input, common.sample_rate_hz);
  Json sidecar;
  try {
    sidecar = Json::parse(read_text(opts.sidecar));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, opts.sidecar.string() + ": " + e.what());
  }
  std::vector<Record> records;
  bool normalize_power = true;
  try {
    normalize_power = sidecar.value("normalize_power", true);
    for (const auto& entry : sidecar.at("samples")) records.push_back(from_json(entry));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, opts.sidecar.string() + ": " + e.what());
  }

  const auto by_id = index_by_id(ds);
  auto lookup = [&](std::uint64_t id) -> std::size_t {
    const auto it = by_id.find(id);
    if (it == by_id.end()) throw Error(ErrorCode::UnknownId, "sidecar names id " + std::to_string(id) + " missing from the input");
    return it->second;
  };
  for (const auto& r : records) {
    lookup(r.id);
    lookup(r.partner);
  }
  std::optional<LabeledDataset> stored;
  if (!opts.augmented.empty()) {
    stored = load_dataset(opts.augmented, common.sample_rate_hz);
    if (stored->size() != records.size()) {
      throw Error(ErrorCode::ShapeMismatch, "augmented file holds " + std::to_string(stored->size()) +
                                                " samples but the sidecar lists " + std::to_string(records.size()));
    }
  }
  const BandSpec band = opts.band.empty()
                            ? BandSpec(0.0, ds.size() ? ds.samples[0].sample_rate_hz() / 2.0 : 1.0)
                            : parse_band(opts.band);

  std::vector<MixAudit> audits(records.size());
  std::vector<double> stored_error(records.size(), 0.0);
  parallel_for(records.size(), common.threads, [&](std::size_t i) {
    const Record& r = records[i];
    const TimeSeries& a = ds.samples[lookup(r.id)];
    const TimeSeries& b = ds.samples[lookup(r.partner)];
    const TimeSeries mixed = replay(r, a, b, normalize_power);
    audits[i] = audit_mix(a, b, mixed, {audit_lambda(r), 1.0}, band);
    if (stored) {
      const auto s = stored->samples[i].data();
      const auto m = mixed.data();
      if (s.size() != m.size()) throw Error(ErrorCode::ShapeMismatch, "augmented sample " + std::to_string(i) + " has the wrong shape");
      double err = 0.0;
      for (std::size_t k = 0; k < s.size(); ++k) err = std::max(err, std::abs(s[k] - m[k]));
      stored_error[i] = err / std::max(1.0, mixed.max_abs());
    }
  });

  // Stored outputs are single precision; anything past that is a mismatch.
  constexpr double kStoredTolerance = 1e-6;
  struct Summary {
    std::size_t pairs = 0;
    std::size_t pointwise_violations = 0;
    std::size_t band_violations = 0;
    std::size_t stored_mismatches = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    double min_retained = std::numeric_limits<double>::infinity();
  };
  std::map<std::string, Summary> summary;
  std::ostringstream csv;
  csv << std::setprecision(17);
  csv << "id,partner,method,lambda,anchor_band_power,other_band_power,mixed_band_power,retained_fraction,"
         "min_bound_margin,pointwise_bound_ok,band_bound_ok\n";
  bool failed = false;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const Record& r = records[i];
    const MixAudit& audit = audits[i];
    const double lambda = audit_lambda(r);
    const bool band_ok = audit.band_bound_ok(lambda, kBoundTolerance);
    Summary& s = summary[r.method];
    ++s.pairs;
    s.pointwise_violations += audit.pointwise_bound_ok ? 0 : 1;
    s.band_violations += band_ok ? 0 : 1;
    s.stored_mismatches += stored_error[i] > kStoredTolerance ? 1 : 0;
    s.min_margin = std::min(s.min_margin, audit.min_bound_margin);
    s.min_retained = std::min(s.min_retained, audit.retained_fraction());
    failed = failed || !audit.pointwise_bound_ok || stored_error[i] > kStoredTolerance;
    csv << r.id << ',' << r.partner << ',' << r.method << ',' << lambda << ',' << audit.anchor_band_power << ','
        << audit.other_band_power << ',' << audit.mixed_band_power << ',' << audit.retained_fraction() << ','
        << audit.min_bound_margin << ',' << (audit.pointwise_bound_ok ? 1 : 0) << ',' << (band_ok ? 1 : 0) << '\n';
  }
  if (!opts.audit_csv.empty()) write_text(opts.audit_csv, csv.str());

  out << std::left << std::setw(12) << "method" << std::right << std::setw(8) << "pairs" << std::setw(12)
      << "pointwise" << std::setw(8) << "band" << std::setw(8) << "stored" << std::setw(16) << "min_margin"
      << std::setw(16) << "min_retained" << '\n';
  for (const auto& [method, s] : summary) {
    out << std::left << std::setw(12) << method << std::right << std::setw(8) << s.pairs << std::setw(12)
        << s.pointwise_violations << std::setw(8) << s.band_violations << std::setw(8) << s.stored_mismatches
        << std::setw(16) << std::setprecision(6) << s.min_margin << std::setw(16) << s.min_retained << '\n';
  }
  out << (failed ? "FAIL" : "OK") << ": " << records.size() << " pairs audited in band [" << band.f_lo_hz() << ", "
      << band.f_hi_hz() << ") Hz\n";
  return failed ? kExitViolation : kExitOk;
}

namespace {

std::vector<BandSpec> parse_band_list(const std::string& text) {
  std::vector<BandSpec> bands;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) bands.push_back(parse_band(item));
  }
  return bands;
}

template <typename T>
T ini_value(const boost::property_tree::ptree& tree, const std::string& key, T fallback) {
  const auto node = tree.get_child_optional(key);
  if (!node) return fallback;
  const auto v = node->get_value_optional<T>();
  if (!v) throw Error(ErrorCode::InvalidSpec, "spec key '" + key + "' has a malformed value '" + node->data() + "'");
  return *v;
}

void reject_unknown_keys(const boost::property_tree::ptree& tree) {
  static const std::map<std::string, std::set<std::string>> known{
      {"synth",
       {"n_classes", "bands", "length", "sample_rate_hz", "channels", "n_harmonics", "harmonic_decay", "freq_jitter",
        "phase_jitter", "noise_sigma", "n_per_class"}},
      {"adversarial", {"enabled", "lambda"}},
  };
  for (const auto& [section, body] : tree) {
    const auto it = known.find(section);
    if (it == known.end()) throw Error(ErrorCode::InvalidSpec, "unknown spec section [" + section + "]");
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) throw Error(ErrorCode::InvalidSpec, "unknown key '" + key + "' in [" + section + "]");
    }
  }
}

}  // namespace

int gen_synth(const CommonOptions& common, const GenSynthOptions& opts, std::ostream& out) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(opts.spec.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  reject_unknown_keys(tree);

  SynthSpec spec = SynthSpec::four_class_default();
  spec.n_classes = ini_value<std::size_t>(tree, "synth.n_classes", spec.n_classes);
  if (const auto bands = tree.get_optional<std::string>("synth.bands")) spec.class_bands = parse_band_list(*bands);
  spec.length = ini_value<std::size_t>(tree, "synth.length", spec.length);
  spec.sample_rate_hz = ini_value<double>(tree, "synth.sample_rate_hz", spec.sample_rate_hz);
  spec.channels = ini_value<std::size_t>(tree, "synth.channels", spec.channels);
  spec.n_harmonics = ini_value<std::size_t>(tree, "synth.n_harmonics", spec.n_harmonics);
  spec.harmonic_decay = ini_value<double>(tree, "synth.harmonic_decay", spec.harmonic_decay);
  spec.freq_jitter = ini_value<double>(tree, "synth.freq_jitter", spec.freq_jitter);
  spec.phase_jitter = ini_value<double>(tree, "synth.phase_jitter", spec.phase_jitter);
  spec.noise_sigma = ini_value<double>(tree, "synth.noise_sigma", spec.noise_sigma);
  const auto n_per_class = ini_value<std::size_t>(tree, "synth.n_per_class", 200);
  const bool adversarial = ini_value<bool>(tree, "adversarial.enabled", false);
  const double lambda = ini_value<double>(tree, "adversarial.lambda", 0.9);
  spec.validate();
  if (adversarial && !(lambda > 0.0 && lambda < 1.0)) {
    throw Error(ErrorCode::LambdaOutOfRange, "adversarial lambda must lie strictly inside (0, 1)");
  }
  if (!opts.pairing_out.empty() && !adversarial) {
    throw Error(ErrorCode::InvalidArgument, "--pairing-out needs [adversarial] enabled = true");
  }

  Rng rng(common.seed);
  LabeledDataset ds = generate_labeled(spec, n_per_class, rng);
  std::ostringstream pairing;
  if (adversarial && ds.size() > 0) {
    // Each anchor i gets a partner n + i that cancels it under linear mixup
    // and leaves the next sample (a different class) behind.
    const std::size_t n = ds.size();
    pairing << "anchor_id,partner_id\n";
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t d = (i + 1) % n;
      ds.samples.push_back(adversarial_partner(ds.samples[i], lambda, ds.samples[d]));
      ds.labels->push_back((*ds.labels)[d]);
      pairing << i << ',' << n + i << '\n';
    }
    ds.ids.clear();
    assign_sequential_ids(ds);
  }
  save_dataset(ds, opts.output);
  if (!opts.pairing_out.empty()) write_text(opts.pairing_out, pairing.str());
  out << "generated " << ds.size() << " samples -> " << opts.output.string() << '\n';
  return kExitOk;
}

}  // namespace tsmix::cli
