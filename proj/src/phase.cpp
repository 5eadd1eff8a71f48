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

#include "tsmix/phase.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tsmix/error.hpp"

namespace tsmix {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_lambda(double lambda_p) {
  if (!(lambda_p > 0.0 && lambda_p <= 1.0)) {
    throw Error(ErrorCode::LambdaOutOfRange, "lambda_p must lie in (0, 1], got " + std::to_string(lambda_p));
  }
}

}  // namespace

double wrap(double angle) {
  if (!std::isfinite(angle)) throw Error(ErrorCode::NonFinite, "angle is not finite");
  double r = std::remainder(angle, kTwoPi);  // [-pi, pi]
  if (r <= -kPi) r += kTwoPi;
  return r;
}

double shortest_delta(double anchor_phase, double other_phase) {
  if (!std::isfinite(anchor_phase) || !std::isfinite(other_phase)) {
    throw Error(ErrorCode::NonFinite, "phase is not finite");
  }
  double theta = std::fmod(anchor_phase - other_phase, kTwoPi);
  if (theta < 0.0) theta += kTwoPi;
  return theta > kPi ? theta - kTwoPi : theta;
}

PhaseDelta shortest_delta(std::span<const double> anchor_phase, std::span<const double> other_phase) {
  if (anchor_phase.size() != other_phase.size()) {
    throw Error(ErrorCode::ShapeMismatch, "phase arrays differ in size");
  }
  PhaseDelta delta;
  delta.values.resize(anchor_phase.size());
  for (std::size_t k = 0; k < anchor_phase.size(); ++k) {
    delta.values[k] = shortest_delta(anchor_phase[k], other_phase[k]);
  }
  return delta;
}

double interpolate_phase(double anchor_phase, double delta, double lambda_p) {
  require_lambda(lambda_p);
  const double step = std::abs(delta) * (1.0 - lambda_p);
  return wrap(delta > 0.0 ? anchor_phase - step : anchor_phase + step);
}

std::vector<double> interpolate_phase(std::span<const double> anchor_phase, const PhaseDelta& delta,
                                      double lambda_p) {
  require_lambda(lambda_p);
  if (anchor_phase.size() != delta.values.size()) {
    throw Error(ErrorCode::ShapeMismatch, "phase and delta arrays differ in size");
  }
  std::vector<double> out(anchor_phase.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = interpolate_phase(anchor_phase[k], delta.values[k], lambda_p);
  }
  return out;
}

}  // namespace tsmix
