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

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <memory>

#include "commands.hpp"
#include "tsmix/coefficient_policy.hpp"
#include "tsmix/error.hpp"

namespace tsmix::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"tsmix: frequency-domain mixup for time series", "tsmix"};
  app.config_formatter(std::make_shared<CLI::ConfigINI>());
  app.set_config("--config", "", "INI file; top-level keys set common flags, [command] sections set command flags");
  app.fallthrough();
  app.require_subcommand(1);

  CommonOptions common;
  app.add_option("--seed", common.seed, "Seed for every random draw")->capture_default_str();
  app.add_option("--profile", common.profile, "Coefficient profile")
      ->check(CLI::IsMember(profile_names()))
      ->capture_default_str();
  app.add_option("--threads", common.threads, "Worker threads; results do not depend on it")
      ->check(CLI::Range(std::size_t{1}, std::size_t{256}))
      ->capture_default_str();
  app.add_option("--sample-rate", common.sample_rate_hz, "Sample rate assumed for CSV input, Hz")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  AugmentOptions aug;
  double lambda_a = 0.0;
  double lambda_p = 0.0;
  bool no_normalize = false;
  auto* augment_cmd = app.add_subcommand("augment", "Mix every sample with a partner from the same file");
  augment_cmd->add_option("--input,-i", aug.input, "Input dataset (.csv or binary)")->required();
  augment_cmd->add_option("--output,-o", aug.output, "Output dataset (.csv or binary)")->required();
  augment_cmd->add_option("--sidecar", aug.sidecar, "Metadata JSON (default: <output>.json)");
  augment_cmd->add_option("--method,-m", aug.method, "Mixing method")
      ->check(CLI::IsMember(method_names()))
      ->capture_default_str();
  auto* la_opt = augment_cmd->add_option("--lambda-a", lambda_a, "Fixed amplitude (or baseline) coefficient");
  auto* lp_opt = augment_cmd->add_option("--lambda-p", lambda_p, "Fixed phase coefficient");
  augment_cmd->add_option("--pairing", aug.pairing, "CSV of anchor_id,partner_id overriding random pairing")
      ->check(CLI::ExistingFile);
  augment_cmd->add_option("--embeddings", aug.embeddings, "CSV of per-id embeddings used for similarity")
      ->check(CLI::ExistingFile);
  augment_cmd->add_option("--embedding-bands", aug.embedding_bands, "Bands of the built-in spectral embedding")
      ->capture_default_str();
  augment_cmd->add_flag("--no-normalize", no_normalize, "Skip matching the partner's energy to the anchor's");

  DemoOptions demo;
  auto* demo_cmd = app.add_subcommand("demo-destructive", "Sweep phase offset and amplitude ratio for linear vs tailored mixup");
  demo_cmd->add_option("--output-dir,-o", demo.output_dir, "Directory for the CSV files")->required();
  demo_cmd->add_option("--length", demo.length, "Anchor length in samples")->capture_default_str();
  demo_cmd->add_option("--rate", demo.sample_rate_hz, "Anchor sample rate, Hz")->capture_default_str();
  demo_cmd->add_option("--freq", demo.base_freq_hz, "Anchor tone frequency, Hz (must sit on a DFT bin)")
      ->capture_default_str();
  demo_cmd->add_option("--band", demo.band, "Band of interest lo:hi, Hz")->capture_default_str();
  demo_cmd->add_option("--offsets", demo.n_offsets, "Number of phase offsets spread over (-pi, pi]")
      ->capture_default_str();
  demo_cmd->add_option("--ratios", demo.ratios, "Partner/anchor amplitude ratios")->delimiter(',');
  demo_cmd->add_option("--lambdas", demo.lambdas, "Mixing coefficients")->delimiter(',');
  demo_cmd->add_option("--example-lambda", demo.example_lambda, "Coefficient for the waveform examples")
      ->capture_default_str();

  ValidateOptions val;
  auto* validate_cmd = app.add_subcommand("validate", "Replay a sidecar and audit the amplitude bound of every pair");
  validate_cmd->add_option("--input,-i", val.input, "Dataset the sidecar was produced from")->required();
  validate_cmd->add_option("--sidecar,-s", val.sidecar, "Metadata JSON written by augment")->required();
  validate_cmd->add_option("--augmented,-a", val.augmented, "Stored augmented dataset to cross-check");
  validate_cmd->add_option("--band", val.band, "Band of interest lo:hi, Hz (default: full spectrum)");
  validate_cmd->add_option("--audit-csv", val.audit_csv, "Per-pair audit table");

  GenSynthOptions gen;
  auto* gen_cmd = app.add_subcommand("gen-synth", "Generate a labelled synthetic dataset");
  gen_cmd->add_option("--spec", gen.spec, "INI file with [synth] and optional [adversarial] sections")
      ->required()
      ->check(CLI::ExistingFile);
  gen_cmd->add_option("--output,-o", gen.output, "Output dataset (.csv or binary)")->required();
  gen_cmd->add_option("--pairing-out", gen.pairing_out, "Write the adversarial pairing CSV here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*augment_cmd) {
      if (*la_opt) aug.lambda_a = lambda_a;
      if (*lp_opt) aug.lambda_p = lambda_p;
      aug.normalize_power = !no_normalize;
      return augment(common, aug, out);
    }
    if (*demo_cmd) return demo_destructive(common, demo, out);
    if (*validate_cmd) return validate(common, val, out);
    if (*gen_cmd) return gen_synth(common, gen, out);
  } catch (const Error& e) {
    err << "tsmix: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "tsmix: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace tsmix::cli
