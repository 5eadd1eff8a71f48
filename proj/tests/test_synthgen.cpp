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

#include "oracles.hpp"
#include "tsmix/error.hpp"
#include "tsmix/info_proxy.hpp"
#include "tsmix/mixup.hpp"
#include "tsmix/synthgen.hpp"

using namespace tsmix;
using doctest::Approx;

TEST_SUITE("synthgen") {
  TEST_CASE("noise-free samples concentrate in their class band") {
    SynthSpec spec = SynthSpec::four_class_default();
    spec.noise_sigma = 0.0;
    spec.freq_jitter = 0.0;
    spec.phase_jitter = 0.0;
    Rng rng(11);
    const auto ds = generate_labeled(spec, 25, rng);
    REQUIRE(ds.size() == 100);
    std::vector<std::size_t> counts(4, 0);
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const auto label = (*ds.labels)[i];
      ++counts[label];
      CHECK(band_power_ratio(ds.samples[i], spec.class_bands[label]) > 0.99);
      CHECK_NOTHROW(ds.samples[i].validate());
    }
    for (auto c : counts) CHECK(c == 25);
    CHECK(ds.ids.front() == 0);
    CHECK(ds.ids.back() == 99);
  }

  TEST_CASE("dominant band matches the label under default noise") {
    const SynthSpec spec = SynthSpec::four_class_default();
    Rng rng(12);
    const auto ds = generate_labeled(spec, 100, rng);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (dominant_band(ds.samples[i], spec.class_bands) == (*ds.labels)[i]) ++hits;
    }
    CHECK(static_cast<double>(hits) / static_cast<double>(ds.size()) >= 0.99);
  }

  TEST_CASE("determinism under seed") {
    const SynthSpec spec = SynthSpec::four_class_default();
    Rng a(5);
    Rng b(5);
    Rng c(6);
    const auto da = generate_labeled(spec, 3, a);
    const auto db = generate_labeled(spec, 3, b);
    const auto dc = generate_labeled(spec, 3, c);
    for (std::size_t i = 0; i < da.size(); ++i) CHECK(da.samples[i] == db.samples[i]);
    bool differs = false;
    for (std::size_t i = 0; i < da.size(); ++i) differs = differs || !(da.samples[i] == dc.samples[i]);
    CHECK(differs);
  }

  TEST_CASE("multichannel and harmonics above Nyquist") {
    SynthSpec spec = SynthSpec::four_class_default();
    spec.channels = 3;
    spec.n_harmonics = 5;  // 5 * 18 Hz is beyond 25 Hz; those are skipped
    Rng rng(7);
    const auto ds = generate_labeled(spec, 2, rng);
    CHECK(ds.samples[0].channels() == 3);
    for (const auto& s : ds.samples) CHECK_NOTHROW(s.validate());
  }

  TEST_CASE("spec validation") {
    SynthSpec spec = SynthSpec::four_class_default();
    spec.class_bands.pop_back();
    CHECK_THROWS_AS(spec.validate(), Error);
    spec = SynthSpec::four_class_default();
    spec.class_bands[1] = BandSpec(2.0, 5.0);  // overlaps class 0
    CHECK_THROWS_AS(spec.validate(), Error);
    spec = SynthSpec::four_class_default();
    spec.class_bands[3] = BandSpec(13.0, 30.0);
    CHECK_THROWS_AS(spec.validate(), Error);
    spec = SynthSpec::four_class_default();
    spec.noise_sigma = -1.0;
    CHECK_THROWS_AS(spec.validate(), Error);
  }

  TEST_CASE("adversarial pair at lambda 0.5 cancels exactly") {
    Rng rng(1);
    AdversarialPairSpec spec;
    spec.lambda_target = 0.5;
    const auto [anchor, other] = adversarial_pair(spec, 256, 64.0, rng);
    for (std::size_t t = 0; t < 256; ++t) CHECK(other.channel(0)[t] == -anchor.channel(0)[t]);
    const auto mixed = linear_mix(anchor, other, 0.5);
    CHECK(mixed.max_abs() == 0.0);
  }

  TEST_CASE("adversarial pair at lambda 0.9") {
    Rng rng(2);
    const AdversarialPairSpec spec;  // 1.5 Hz inside [1, 2)
    const auto [anchor, other] = adversarial_pair(spec, 256, 64.0, rng);
    CHECK(other.max_abs() == Approx(9.0 * anchor.max_abs()).epsilon(1e-12));
    const auto mixed = linear_mix(anchor, other, 0.9);
    CHECK(band_power(mixed, spec.band) < 1e-10);
    CHECK(band_power_ratio(anchor, spec.band) == Approx(1.0).epsilon(1e-12));

    const auto tailored = tailored_mix(anchor, other, {0.9, 0.9});
    const auto a = forward(anchor);
    const auto m = forward(tailored);
    for (std::size_t k = 0; k < a.amplitude(0).size(); ++k) {
      CHECK(m.amplitude(0)[k] >= 0.9 * a.amplitude(0)[k] - 1e-9);
    }
  }

  TEST_CASE("adversarial pair rejects off-bin frequencies") {
    Rng rng(3);
    AdversarialPairSpec spec;
    spec.base_freq_hz = 1.3;  // 1.3 * 256 / 64 = 5.2
    try {
      adversarial_pair(spec, 256, 64.0, rng);
      FAIL("expected FrequencyNotOnBin");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::FrequencyNotOnBin);
    }
    spec = AdversarialPairSpec{};
    spec.lambda_target = 1.0;
    CHECK_THROWS_AS(adversarial_pair(spec, 256, 64.0, rng), Error);
  }

  TEST_CASE("adversarial partner cancels the anchor under linear mix") {
    const SynthSpec spec = SynthSpec::four_class_default();
    Rng rng(4);
    const auto ds = generate_labeled(spec, 1, rng);
    const auto& anchor = ds.samples[0];
    const auto& distractor = ds.samples[2];
    const auto partner = adversarial_partner(anchor, 0.9, distractor);
    const auto mixed = linear_mix(anchor, partner, 0.9);
    std::vector<double> expected(anchor.length());
    for (std::size_t t = 0; t < expected.size(); ++t) expected[t] = 0.1 * distractor.channel(0)[t];
    CHECK(oracle::max_abs_diff(mixed.channel(0), expected) < 1e-12);
    CHECK(dominant_band(mixed, spec.class_bands) == 2);
  }
}
