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
#include "tsmix/spectral.hpp"

using namespace tsmix;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("spectral_core") {
  TEST_CASE("constant signal is DC only") {
    const auto s = forward(TimeSeries::mono({1, 1, 1, 1}, 4.0));
    REQUIRE(s.bins() == 3);
    CHECK(s.amplitude(0)[0] == Approx(4.0));
    CHECK(s.amplitude(0)[1] == Approx(0.0));
    CHECK(s.amplitude(0)[2] == Approx(0.0));
    for (double p : s.phase(0)) CHECK(p == 0.0);
  }

  TEST_CASE("cosine and sine land on bin 1 with the expected phase") {
    const auto cos8 = forward(TimeSeries::mono(oracle::tone(8, 1, 0.0), 8.0));
    CHECK(cos8.amplitude(0)[1] == Approx(4.0));
    CHECK(cos8.phase(0)[1] == Approx(0.0));
    for (std::size_t k : {0u, 2u, 3u, 4u}) CHECK(cos8.amplitude(0)[k] < 1e-12);

    const auto sin8 = forward(TimeSeries::mono(oracle::tone(8, 1, -kPi / 2), 8.0));
    CHECK(sin8.phase(0)[1] == Approx(-kPi / 2));
  }

  TEST_CASE("negative DC and Nyquist project to phase pi") {
    const auto s = forward(TimeSeries::mono({-1, 0, -1, 0}, 4.0));  // X0 = -2, X2 = -2
    CHECK(s.phase(0)[0] == kPi);
    CHECK(s.phase(0)[2] == kPi);
    CHECK_NOTHROW(s.validate());
  }

  TEST_CASE("forward rejects bad input") {
    CHECK_THROWS_AS(TimeSeries::mono({1, 2, 3}, 1.0), Error);
    try {
      TimeSeries::mono({1, NAN, 3, 4}, 1.0);
      FAIL("expected NonFinite");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonFinite);
    }
    try {
      TimeSeries::mono({1, 2, 3}, 1.0);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::TooShort);
    }
  }

  TEST_CASE("inverse recovers the cosine and zero spectra") {
    const auto x = TimeSeries::mono(oracle::tone(8, 1, 0.0), 8.0);
    CHECK(oracle::max_abs_diff(inverse(forward(x)), x) < 1e-9);

    const Spectrum zero(2, 16, 10.0);
    const auto z = inverse(zero);
    CHECK(z.max_abs() == 0.0);
    CHECK(z.channels() == 2);
  }

  TEST_CASE("inverse rejects mismatched amplitude/phase buffers") {
    try {
      Spectrum s(1, 8, 1.0, std::vector<double>(5, 1.0), std::vector<double>(4, 0.0));
      FAIL("expected ShapeMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ShapeMismatch);
    }
  }

  TEST_CASE("forward matches direct DFT on odd and even lengths") {
    Rng rng(11);
    for (std::size_t n : {4u, 5u, 7u, 16u, 33u, 64u}) {
      const auto x = oracle::random_signal(rng, 2, n);
      const auto s = forward(x);
      for (std::size_t c = 0; c < 2; ++c) {
        const auto ref = oracle::direct_dft(x.channel(c));
        for (std::size_t k = 0; k < ref.size(); ++k) {
          const auto got = std::polar(s.amplitude(c)[k], s.phase(c)[k]);
          CHECK(std::abs(got - ref[k]) < 1e-9);
        }
      }
    }
  }

  TEST_CASE("power spectrum of the unit cosine and of silence") {
    const auto s = power_spectrum(TimeSeries::mono(oracle::tone(8, 1, 0.0), 8.0));
    CHECK(s[0][1] == Approx(2.0));
    CHECK(s[0][0] == Approx(0.0));
    CHECK(s[0][4] == Approx(0.0));
    const auto z = power_spectrum(TimeSeries(1, 8, 8.0));
    for (double v : z[0]) CHECK(v == 0.0);
  }

  TEST_CASE("Parseval against the time-domain sum") {
    Rng rng(5);
    for (std::size_t n : {9u, 10u, 128u, 257u}) {
      const auto x = oracle::random_signal(rng, 1, n);
      const auto s = power_spectrum(x)[0];
      double total = 0.0;
      for (std::size_t k = 0; k < s.size(); ++k) total += two_sided_weight(k, n) * s[k];
      const double ref = oracle::sum_squares(x.data());
      CHECK(std::abs(total - ref) <= 1e-9 * ref);
    }
  }

  TEST_CASE("band_power_ratio for in-band, out-of-band and two-tone signals") {
    const double fs = 64.0;
    const std::size_t n = 64;  // 1 Hz bins
    const auto in_band = TimeSeries::mono(oracle::tone(n, 5, 0.3), fs);
    CHECK(band_power_ratio(in_band, BandSpec(4.0, 6.0)) == Approx(1.0).epsilon(1e-9));
    CHECK(band_power_ratio(in_band, BandSpec(10.0, 20.0)) < 1e-20);

    // Equal-power two-tone: expected fraction from the time-domain energy of
    // each component.
    const auto a = oracle::tone(n, 5, 0.1);
    const auto b = oracle::tone(n, 12, 1.2);
    std::vector<double> sum(n);
    for (std::size_t t = 0; t < n; ++t) sum[t] = a[t] + b[t];
    const double expected = oracle::sum_squares(a) / oracle::sum_squares(sum);
    CHECK(expected == Approx(0.5).epsilon(1e-12));
    CHECK(band_power_ratio(TimeSeries::mono(sum, fs), BandSpec(4.0, 6.0)) == Approx(expected).epsilon(1e-6));
  }

  TEST_CASE("band membership is half-open and Nyquist-aware") {
    const BandSpec band(4.0, 6.0);
    CHECK(band.contains_bin(4, 64, 64.0));
    CHECK(band.contains_bin(5, 64, 64.0));
    CHECK_FALSE(band.contains_bin(6, 64, 64.0));
    CHECK(BandSpec(30.0, 32.0).contains_bin(32, 64, 64.0));
  }

  TEST_CASE("band errors") {
    const auto x = TimeSeries::mono(oracle::tone(16, 2, 0.0), 16.0);
    try {
      band_power_ratio(x, BandSpec(1.0, 9.0));
      FAIL("expected BandOutOfRange");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BandOutOfRange);
    }
    try {
      band_power_ratio(TimeSeries(1, 16, 16.0), BandSpec(1.0, 2.0));
      FAIL("expected ZeroSignal");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ZeroSignal);
    }
    CHECK_THROWS_AS(BandSpec(3.0, 3.0), Error);
  }

  TEST_CASE("properties: roundtrip and scale-invariant band ratio") {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = 4 + rng.index(300);
      const auto x = oracle::random_signal(rng, 1 + rng.index(3), n, 50.0);
      const auto back = inverse(forward(x));
      CHECK(oracle::max_abs_diff(back, x) <= 1e-9 * x.max_abs());

      const BandSpec band(rng.uniform(0.0, 10.0), rng.uniform(12.0, 25.0));
      const double r = band_power_ratio(x, band);
      std::vector<double> scaled(x.data().begin(), x.data().end());
      const double gain = rng.uniform(0.01, 100.0);
      for (double& v : scaled) v *= gain;
      const TimeSeries y(x.channels(), x.length(), x.sample_rate_hz(), scaled);
      CHECK(band_power_ratio(y, band) == Approx(r).epsilon(1e-12));
    }
  }
}
