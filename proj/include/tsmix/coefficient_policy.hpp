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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsmix/mixup.hpp"
#include "tsmix/random.hpp"

namespace tsmix {

/// U(lo, hi) with 0 < lo <= hi <= 1.
struct UniformSpec {
  double lo = 0.7;
  double hi = 1.0;

  void validate() const;
};

/// Normal(mu, sigma) conditioned on [lo, hi].
struct TruncNormalSpec {
  double mu = 1.0;
  double sigma = 0.1;
  double lo = 0.9;
  double hi = 1.0;

  void validate() const;
};

double sample_uniform(const UniformSpec& spec, Rng& rng);

/// Rejection sampling from the parent normal while the acceptance mass is at
/// least 1e-4; inverse-CDF sampling in the tails below that.
double sample_trunc_normal(const TruncNormalSpec& spec, Rng& rng);

/// P(lo <= X <= hi) for X ~ Normal(mu, sigma).
double trunc_normal_mass(const TruncNormalSpec& spec);

/// Similarity-gated sampler. Pairs with cosine similarity >= threshold are
/// mixed aggressively (uniform draws); the rest get the truncated normal,
/// which concentrates near 1.
struct CoefficientPolicy {
  double similarity_threshold = 0.7;
  UniformSpec close_a{0.7, 1.0};
  UniformSpec close_p{0.9, 1.0};
  TruncNormalSpec far_a{0.9, 0.1, 0.9, 1.0};
  TruncNormalSpec far_p{0.9, 0.1, 0.9, 1.0};

  /// Throws InvalidPolicy if any draw could leave (0, 1].
  void validate() const;
};

/// Branch is decided by (similarity, threshold) alone; lambda_a is drawn
/// before lambda_p.
MixCoefficients choose_coefficients(double similarity, const CoefficientPolicy& policy, Rng& rng);

/// Per-task parameter set: the gated policy plus the uniform ranges used by
/// each baseline mixup.
struct Profile {
  std::string name;
  CoefficientPolicy policy;
  Interval linear_lambda;
  Interval binary_rho;
  Interval geometric_lambda;
  Interval cutmix_start;
  Interval cutmix_length;
  Interval amplitude_lambda;
  Interval specmix_start;
  Interval specmix_length;
  Interval supervised_lambda_p{0.9, 1.0};
  double supervised_alpha = 0.2;
};

/// Shipped presets: "activity", "heart_rate", "cvd".
std::optional<Profile> find_profile(std::string_view name);
std::vector<std::string> profile_names();

}  // namespace tsmix
