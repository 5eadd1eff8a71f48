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

#include "tsmix/coefficient_policy.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include "tsmix/error.hpp"

namespace tsmix {

namespace {

constexpr double kMinAcceptance = 1e-4;
constexpr int kMaxRejections = 1'000'000;

bool finite_all(std::initializer_list<double> values) {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

// Inverse-CDF draw, worked in whichever tail keeps precision.
double inverse_cdf_draw(const TruncNormalSpec& spec, Rng& rng) {
  const boost::math::normal_distribution<double> unit(0.0, 1.0);
  const double a = (spec.lo - spec.mu) / spec.sigma;
  const double b = (spec.hi - spec.mu) / spec.sigma;
  const double u = rng.uniform();
  double z = 0.0;
  if (a >= 0.0) {
    const double qa = boost::math::cdf(boost::math::complement(unit, a));
    const double qb = boost::math::cdf(boost::math::complement(unit, b));
    const double q = qa - u * (qa - qb);
    z = q > 0.0 ? boost::math::quantile(boost::math::complement(unit, q)) : a;
  } else {
    const double pa = boost::math::cdf(unit, a);
    const double pb = boost::math::cdf(unit, b);
    const double p = pa + u * (pb - pa);
    z = p > 0.0 && p < 1.0 ? boost::math::quantile(unit, p) : (p <= 0.0 ? a : b);
  }
  return std::clamp(spec.mu + spec.sigma * z, spec.lo, spec.hi);
}

}  // namespace

void UniformSpec::validate() const {
  if (!finite_all({lo, hi}) || !(lo > 0.0 && lo <= hi && hi <= 1.0)) {
    throw Error(ErrorCode::InvalidSpec, "uniform spec needs 0 < lo <= hi <= 1, got [" +
                                            std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

void TruncNormalSpec::validate() const {
  if (!finite_all({mu, sigma, lo, hi}) || !(sigma > 0.0) || !(lo < hi)) {
    throw Error(ErrorCode::InvalidSpec, "truncated normal needs sigma > 0 and lo < hi");
  }
}

double sample_uniform(const UniformSpec& spec, Rng& rng) {
  spec.validate();
  return rng.uniform(spec.lo, spec.hi);
}

double trunc_normal_mass(const TruncNormalSpec& spec) {
  spec.validate();
  const boost::math::normal_distribution<double> unit(0.0, 1.0);
  const double a = (spec.lo - spec.mu) / spec.sigma;
  const double b = (spec.hi - spec.mu) / spec.sigma;
  if (a >= 0.0) {
    return boost::math::cdf(boost::math::complement(unit, a)) -
           boost::math::cdf(boost::math::complement(unit, b));
  }
  return boost::math::cdf(unit, b) - boost::math::cdf(unit, a);
}

double sample_trunc_normal(const TruncNormalSpec& spec, Rng& rng) {
  if (trunc_normal_mass(spec) >= kMinAcceptance) {
    for (int i = 0; i < kMaxRejections; ++i) {
      const double x = spec.mu + spec.sigma * rng.normal();
      if (x >= spec.lo && x <= spec.hi) return x;
    }
  }
  return inverse_cdf_draw(spec, rng);
}

void CoefficientPolicy::validate() const {
  if (!std::isfinite(similarity_threshold) || similarity_threshold < -1.0 || similarity_threshold > 1.0) {
    throw Error(ErrorCode::InvalidPolicy, "similarity threshold must lie in [-1, 1]");
  }
  try {
    close_a.validate();
    close_p.validate();
    far_a.validate();
    far_p.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidPolicy, e.what());
  }
  for (const auto* far : {&far_a, &far_p}) {
    if (!(far->lo > 0.0) || far->hi > 1.0) {
      throw Error(ErrorCode::InvalidPolicy, "truncated-normal bounds must sit inside (0, 1]");
    }
  }
}

MixCoefficients choose_coefficients(double similarity, const CoefficientPolicy& policy, Rng& rng) {
  policy.validate();
  if (!std::isfinite(similarity) || similarity < -1.0 || similarity > 1.0) {
    throw Error(ErrorCode::InvalidArgument, "similarity must lie in [-1, 1]");
  }
  MixCoefficients coef;
  if (similarity >= policy.similarity_threshold) {
    coef.source = CoefficientSource::Close;
    coef.lambda_a = sample_uniform(policy.close_a, rng);
    coef.lambda_p = sample_uniform(policy.close_p, rng);
  } else {
    coef.source = CoefficientSource::Far;
    coef.lambda_a = sample_trunc_normal(policy.far_a, rng);
    coef.lambda_p = sample_trunc_normal(policy.far_p, rng);
  }
  return coef;
}

namespace {

Profile make_profile(std::string name, double threshold, double far_mu, Interval linear, Interval binary,
                     Interval cut_length, Interval amplitude) {
  Profile p;
  p.name = std::move(name);
  p.policy.similarity_threshold = threshold;
  p.policy.close_a = {0.7, 1.0};
  p.policy.close_p = {0.9, 1.0};
  // N^t(mu, 0.1, 0.9): third argument read as the lower bound, cap at 1.
  p.policy.far_a = {far_mu, 0.1, 0.9, 1.0};
  p.policy.far_p = {far_mu, 0.1, 0.9, 1.0};
  p.linear_lambda = linear;
  p.binary_rho = binary;
  p.geometric_lambda = {0.9, 1.0};
  p.cutmix_start = {0.0, 1.0};
  p.cutmix_length = cut_length;
  p.amplitude_lambda = amplitude;
  p.specmix_start = {0.0, 1.0};
  p.specmix_length = cut_length;
  return p;
}

}  // namespace

std::optional<Profile> find_profile(std::string_view name) {
  if (name == "activity") {
    return make_profile("activity", 0.7, 0.9, {0.9, 1.0}, {0.8, 1.0}, {0.1, 0.4}, {0.9, 1.0});
  }
  if (name == "heart_rate") {
    return make_profile("heart_rate", 0.8, 1.0, {0.9, 1.0}, {0.9, 1.0}, {0.1, 0.3}, {0.9, 1.0});
  }
  if (name == "cvd") {
    return make_profile("cvd", 0.7, 1.0, {0.85, 1.0}, {0.9, 1.0}, {0.1, 0.3}, {0.8, 1.0});
  }
  return std::nullopt;
}

std::vector<std::string> profile_names() { return {"activity", "heart_rate", "cvd"}; }

}  // namespace tsmix
