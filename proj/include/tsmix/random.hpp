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
#include <random>

namespace tsmix {

/// Closed interval used for uniformly drawn augmentation parameters.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Seedable random source handed explicitly to every stochastic operation.
///
/// Batch code derives one independent stream per sample with
/// `Rng::stream(seed, index)`, so results never depend on scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng stream(std::uint64_t seed, std::uint64_t index);

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on [lo, hi); returns lo when lo == hi.
  double uniform(double lo, double hi);
  double uniform(Interval range) { return uniform(range.lo, range.hi); }
  double normal();
  double beta(double alpha, double beta);
  /// Uniform index in [0, n).
  std::size_t index(std::size_t n);
  bool bernoulli(double p) { return uniform() < p; }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tsmix
