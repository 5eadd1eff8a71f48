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

#include <span>
#include <vector>

namespace tsmix {

/// Wraps a finite angle into (-pi, pi]. Throws NonFinite otherwise.
double wrap(double angle);

/// Signed shortest angular difference from `other` to `anchor`, i.e. the
/// anchor phase minus the other phase reduced mod 2*pi and folded into
/// (-pi, pi]. A separation of exactly pi yields +pi.
double shortest_delta(double anchor_phase, double other_phase);

/// Per-bin shortest differences; the sign records on which side of the
/// anchor the other phasor sits.
struct PhaseDelta {
  std::vector<double> values;
};

PhaseDelta shortest_delta(std::span<const double> anchor_phase, std::span<const double> other_phase);

/// Moves each anchor phase toward the other sample by |delta| * (1 - lambda_p),
/// clockwise when delta > 0 and counterclockwise otherwise. lambda_p = 1
/// returns the anchor unchanged; lambda_p -> 0 lands on the other phase.
double interpolate_phase(double anchor_phase, double delta, double lambda_p);

std::vector<double> interpolate_phase(std::span<const double> anchor_phase, const PhaseDelta& delta,
                                      double lambda_p);

}  // namespace tsmix
