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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "tsmix/error.hpp"
#include "tsmix/phase.hpp"

using namespace tsmix;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("phase_math") {
  TEST_CASE("wrap") {
    CHECK(wrap(3 * kPi / 2) == Approx(-kPi / 2));
    CHECK(wrap(-kPi) == kPi);
    CHECK(wrap(kPi) == kPi);
    CHECK(wrap(0.0) == 0.0);
    CHECK(wrap(7 * kPi) == Approx(kPi));
    CHECK_THROWS_AS(wrap(INFINITY), Error);
  }

  TEST_CASE("shortest_delta examples") {
    CHECK(shortest_delta(3 * kPi / 4, -3 * kPi / 4) == Approx(-kPi / 2));
    CHECK(shortest_delta(1.234, 1.234) == 0.0);
    CHECK(shortest_delta(0.0, kPi / 3) == Approx(-kPi / 3));
    // Exact half-turn: the formula keeps +pi.
    CHECK(shortest_delta(kPi / 2, -kPi / 2) == kPi);
    CHECK(shortest_delta(-kPi / 2, kPi / 2) == kPi);
  }

  TEST_CASE("array form checks shapes") {
    const std::vector<double> a{0.0, 1.0};
    const std::vector<double> b{0.0};
    try {
      shortest_delta(a, b);
      FAIL("expected ShapeMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ShapeMismatch);
    }
  }

  TEST_CASE("interpolate_phase examples") {
    CHECK(interpolate_phase(0.7, -2.0, 1.0) == 0.7);
    CHECK(interpolate_phase(0.0, -kPi / 2, 0.5) == Approx(kPi / 4));
    // lambda_p -> 0 walks all the way onto the other sample (phase 0).
    const double anchor = kPi / 2;
    const double other = 0.0;
    const double delta = shortest_delta(anchor, other);
    CHECK(delta == Approx(kPi / 2));
    CHECK(oracle::angular_distance(interpolate_phase(anchor, delta, 1e-12), other) < 1e-11);
    try {
      interpolate_phase(0.0, 1.0, 0.0);
      FAIL("expected LambdaOutOfRange");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::LambdaOutOfRange);
    }
    CHECK_THROWS_AS(interpolate_phase(0.0, 1.0, 1.5), Error);
  }

  TEST_CASE("properties: minimality, antisymmetry, monotone approach") {
    Rng rng(2024);
    for (int i = 0; i < 2000; ++i) {
      const double a = wrap(rng.uniform(-kPi, kPi));
      const double b = wrap(rng.uniform(-kPi, kPi));
      const double d = shortest_delta(a, b);
      CHECK(d > -kPi);
      CHECK(d <= kPi);
      CHECK(std::abs(d) == Approx(oracle::angular_distance(a, b)).epsilon(1e-12));
      if (std::abs(d) < kPi - 1e-12) CHECK(shortest_delta(b, a) == Approx(wrap(-d)).epsilon(1e-12));

      double previous = oracle::angular_distance(interpolate_phase(a, d, 1.0), b);
      for (double lambda = 0.9; lambda > 0.0; lambda -= 0.1) {
        const double dist = oracle::angular_distance(interpolate_phase(a, d, lambda), b);
        CHECK(dist <= previous + 1e-12);
        // Never overshoots: remaining distance is exactly lambda * |delta|.
        CHECK(dist == Approx(lambda * std::abs(d)).epsilon(1e-9));
        previous = dist;
      }
    }
  }
}
