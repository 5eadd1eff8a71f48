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
#include "tsmix/info_proxy.hpp"
#include "tsmix/synthgen.hpp"

using namespace tsmix;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// Anchor with all its energy in [1, 2) Hz.
TimeSeries band_anchor() { return TimeSeries::mono(oracle::tone(256, 6, 0.4), 64.0); }

const BandSpec kBand{1.0, 2.0};

const SweepCell& find_cell(const std::vector<SweepCell>& cells, double offset, double ratio, double lambda,
                           SweepMethod method) {
  for (const auto& c : cells) {
    if (c.phase_offset == offset && c.amp_ratio == ratio && c.lambda == lambda && c.method == method) return c;
  }
  throw std::runtime_error("cell not found");
}

}  // namespace

TEST_SUITE("info_proxy") {
  TEST_CASE("audit of a tailored mix holds the pointwise bound") {
    Rng rng(1);
    for (int trial = 0; trial < 100; ++trial) {
      const auto a = oracle::random_signal(rng, 2, 64);
      const auto b = oracle::random_signal(rng, 2, 64);
      const MixCoefficients coef{rng.uniform(0.05, 1.0), rng.uniform(0.05, 1.0)};
      const auto mixed = tailored_mix(a, b, coef);
      const auto audit = audit_mix(a, b, mixed, coef, BandSpec(0.0, 50.0));
      CHECK(audit.pointwise_bound_ok);
      CHECK(audit.min_bound_margin >= -1e-9);
      CHECK(audit.band_bound_ok(coef.lambda_a));
      CHECK(audit.anchor_band_power >= 0.0);
      CHECK(audit.other_band_power >= 0.0);
    }
  }

  TEST_CASE("audit of a linear mix on an adversarial pair") {
    Rng rng(2);
    const auto [anchor, other] = adversarial_pair(AdversarialPairSpec{}, 256, 64.0, rng);
    const auto mixed = linear_mix(anchor, other, 0.9);
    const auto audit = audit_mix(anchor, other, mixed, {0.9, 0.9}, kBand);
    CHECK(audit.mixed_band_power < 1e-10 * audit.anchor_band_power);
    CHECK_FALSE(audit.pointwise_bound_ok);
    CHECK_FALSE(audit.band_bound_ok(0.9));
  }

  TEST_CASE("self-mix keeps band power") {
    const auto a = band_anchor();
    const MixCoefficients coef{0.6, 0.8};
    const auto audit = audit_mix(a, a, tailored_mix(a, a, coef), coef, kBand);
    CHECK(audit.mixed_band_power == Approx(audit.anchor_band_power).epsilon(1e-6));
    CHECK(audit.retained_fraction() == Approx(1.0).epsilon(1e-6));
  }

  TEST_CASE("audit shape errors") {
    const auto a = band_anchor();
    const auto short_one = TimeSeries::mono(oracle::tone(128, 3, 0.0), 64.0);
    CHECK_THROWS_AS(audit_mix(a, short_one, a, {}, kBand), Error);
  }

  TEST_CASE("sweep at zero offset is constructive") {
    const auto a = band_anchor();
    const std::vector<double> offsets{0.0};
    const std::vector<double> ratios{0.5, 1.0, 3.0};
    const std::vector<double> lambdas{0.5, 0.9};
    const auto cells = destruction_sweep(a, offsets, ratios, lambdas, kBand);
    CHECK(cells.size() == 12);
    for (const auto& c : cells) {
      if (c.method == SweepMethod::Tailored) {
        CHECK(c.band_power_ratio == Approx(1.0).epsilon(1e-9));
      } else {
        const double gain = c.lambda + (1.0 - c.lambda) * c.amp_ratio;
        CHECK(c.band_power_ratio == Approx(gain * gain).epsilon(1e-9));
      }
    }
    CHECK(find_cell(cells, 0.0, 1.0, 0.9, SweepMethod::Linear).band_power_ratio == Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("sweep at pi with the cancelling ratio") {
    const auto a = band_anchor();
    for (double lambda : {0.5, 0.8, 0.9, 0.95}) {
      const double ratio = lambda / (1.0 - lambda);
      const std::vector<double> offsets{kPi};
      const std::vector<double> ratios{ratio};
      const std::vector<double> lambdas{lambda};
      const auto cells = destruction_sweep(a, offsets, ratios, lambdas, kBand);
      CHECK(find_cell(cells, kPi, ratio, lambda, SweepMethod::Linear).band_power_ratio < 1e-6);
      CHECK(find_cell(cells, kPi, ratio, lambda, SweepMethod::Tailored).band_power_ratio >= lambda * lambda - 1e-9);
    }
  }

  TEST_CASE("linear sweep is monotone in offset and symmetric") {
    const auto a = band_anchor();
    const double lambda = 0.8;
    const double ratio = lambda / (1.0 - lambda);
    std::vector<double> offsets;
    for (int i = 0; i <= 16; ++i) offsets.push_back(kPi * i / 16.0);
    std::vector<double> both = offsets;
    for (int i = 1; i < 16; ++i) both.push_back(-kPi * i / 16.0);
    const std::vector<double> ratios{ratio};
    const std::vector<double> lambdas{lambda};
    const auto cells = destruction_sweep(a, both, ratios, lambdas, kBand);
    double prev = 1e300;
    for (double o : offsets) {
      const double v = find_cell(cells, o, ratio, lambda, SweepMethod::Linear).band_power_ratio;
      // closed form |lambda + (1 - lambda) r e^{j o}|^2
      const double re = lambda + (1.0 - lambda) * ratio * std::cos(o);
      const double im = (1.0 - lambda) * ratio * std::sin(o);
      CHECK(v == Approx(re * re + im * im).epsilon(1e-9).scale(1.0));
      CHECK(v <= prev + 1e-12);
      prev = v;
    }
    for (int i = 1; i < 16; ++i) {
      const double o = kPi * i / 16.0;
      for (auto m : {SweepMethod::Linear, SweepMethod::Tailored}) {
        CHECK(find_cell(cells, o, ratio, lambda, m).band_power_ratio ==
              Approx(find_cell(cells, -o, ratio, lambda, m).band_power_ratio).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("tailored sweep cells stay above lambda squared") {
    Rng rng(3);
    const auto a = oracle::random_signal(rng, 1, 128, 64.0);
    const std::vector<double> offsets{-2.5, -1.0, 0.0, 0.7, 2.0, kPi};
    const std::vector<double> ratios{0.1, 1.0, 4.0, 19.0};
    const std::vector<double> lambdas{0.3, 0.5, 0.9, 1.0};
    for (const auto& c : destruction_sweep(a, offsets, ratios, lambdas, BandSpec(2.0, 10.0))) {
      if (c.method == SweepMethod::Tailored) CHECK(c.band_power_ratio >= c.lambda * c.lambda - 1e-9);
    }
  }

  TEST_CASE("sweep grid errors") {
    const auto a = band_anchor();
    const std::vector<double> ok{0.5};
    const std::vector<double> none;
    const std::vector<double> bad_offset{-kPi};
    const std::vector<double> bad_ratio{0.0};
    const std::vector<double> bad_lambda{1.5};
    auto code = [&](auto&& fn) {
      try {
        fn();
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::Io;
    };
    CHECK(code([&] { destruction_sweep(a, none, ok, ok, kBand); }) == ErrorCode::InvalidGrid);
    CHECK(code([&] { destruction_sweep(a, bad_offset, ok, ok, kBand); }) == ErrorCode::InvalidGrid);
    CHECK(code([&] { destruction_sweep(a, ok, bad_ratio, ok, kBand); }) == ErrorCode::InvalidGrid);
    CHECK(code([&] { destruction_sweep(a, ok, ok, bad_lambda, kBand); }) == ErrorCode::InvalidGrid);
    CHECK(code([&] { destruction_sweep(a, ok, ok, ok, BandSpec(20.0, 30.0)); }) == ErrorCode::ZeroSignal);
  }

  TEST_CASE("sweep csv layout") {
    const std::vector<SweepCell> cells{{0.5, 2.0, 0.9, SweepMethod::Tailored, 0.25}};
    CHECK(sweep_csv(cells) == "phase_offset,amp_ratio,lambda,method,band_power_ratio\n0.5,2,0.90000000000000002,tailored,0.25\n");
  }
}
