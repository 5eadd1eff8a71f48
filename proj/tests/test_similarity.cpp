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

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "tsmix/error.hpp"
#include "tsmix/similarity.hpp"

using namespace tsmix;
using doctest::Approx;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_SUITE("similarity") {
  TEST_CASE("cosine similarity basics") {
    const std::vector<double> a{1.0, 2.0, -0.5};
    const std::vector<double> neg{-1.0, -2.0, 0.5};
    CHECK(cosine_similarity(a, a) == Approx(1.0));
    CHECK(cosine_similarity(a, neg) == Approx(-1.0));
    CHECK(cosine_similarity(std::vector<double>{1, 0}, std::vector<double>{0, 1}) == 0.0);
    try {
      cosine_similarity(a, std::vector<double>{1.0});
      FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
    try {
      cosine_similarity(a, std::vector<double>{0.0, 0.0, 0.0});
      FAIL("expected ZeroVector");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ZeroVector);
    }
  }

  TEST_CASE("cosine similarity is symmetric and scale invariant") {
    Rng rng(1);
    for (int i = 0; i < 200; ++i) {
      std::vector<double> a(10);
      std::vector<double> b(10);
      for (double& v : a) v = rng.normal();
      for (double& v : b) v = rng.normal();
      const double s = cosine_similarity(a, b);
      CHECK(cosine_similarity(b, a) == Approx(s).epsilon(1e-14));
      std::vector<double> scaled = a;
      const double alpha = rng.uniform(0.01, 50.0);
      for (double& v : scaled) v *= alpha;
      CHECK(cosine_similarity(scaled, b) == Approx(s).epsilon(1e-12));
    }
  }

  TEST_CASE("embedding file loading") {
    const auto path = write_temp("tsmix_emb_ok.csv", "id,dim\n0,1.0,0.0\n1,0.0,1.0\n2,1.0,1.0\n");
    const auto provider = load_embeddings(path);
    CHECK(provider->dimension() == 2);
    CHECK(provider->similarity(0, 1) == Approx(0.0));
    CHECK(provider->similarity(0, 2) == Approx(std::sqrt(0.5)));
    try {
      provider->embedding(9);
      FAIL("expected UnknownId");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnknownId);
    }

    const auto declared = load_embeddings(write_temp("tsmix_emb_dim.csv", "id,3\n4,1,2,3\n"));
    CHECK(declared->embedding(4).vector.size() == 3);
  }

  TEST_CASE("embedding file errors carry line numbers") {
    try {
      load_embeddings(write_temp("tsmix_emb_bad.csv", "id,dim\n0,1.0,2.0\n1,abc,2.0\n"));
      FAIL("expected ParseError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    try {
      load_embeddings(write_temp("tsmix_emb_ragged.csv", "id,dim\n0,1.0,2.0\n1,1.0\n"));
      FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DimensionMismatch);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(load_embeddings(write_temp("tsmix_emb_dup.csv", "id,dim\n0,1\n0,2\n")), Error);
    CHECK_THROWS_AS(load_embeddings(write_temp("tsmix_emb_nohdr.csv", "0,1\n")), Error);
  }

  TEST_CASE("spectral embedding") {
    const double fs = 64.0;
    const std::size_t n = 128;
    const auto low_a = TimeSeries::mono(oracle::tone(n, 6, 0.1), fs);
    const auto low_b = TimeSeries::mono(oracle::tone(n, 8, 1.3), fs);
    const auto high = TimeSeries::mono(oracle::tone(n, 50, 0.5), fs);
    const auto ea = spectral_embedding(low_a, 8);
    CHECK(ea.vector.size() == 8);
    CHECK(cosine_similarity(ea, spectral_embedding(low_a, 8)) == Approx(1.0));
    const double same_band = cosine_similarity(ea, spectral_embedding(low_b, 8));
    const double diff_band = cosine_similarity(ea, spectral_embedding(high, 8));
    CHECK(diff_band < same_band);

    Rng rng(2);
    const auto x = oracle::random_signal(rng, 2, n, fs);
    std::vector<double> scaled(x.data().begin(), x.data().end());
    for (double& v : scaled) v *= 5.0;
    const TimeSeries x5(2, n, fs, scaled);
    CHECK(cosine_similarity(spectral_embedding(x, 6), spectral_embedding(x5, 6)) == Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(spectral_embedding(x, 1), Error);
    CHECK_THROWS_AS(spectral_embedding(TimeSeries(1, 16, fs), 4), Error);
  }

  TEST_CASE("spectral embedding is permutation covariant in channels") {
    Rng rng(3);
    const auto x = oracle::random_signal(rng, 2, 64);
    const auto swapped = TimeSeries(
        std::vector<std::vector<double>>{{x.channel(1).begin(), x.channel(1).end()},
                                         {x.channel(0).begin(), x.channel(0).end()}},
        x.sample_rate_hz());
    const auto e = spectral_embedding(x, 4);
    const auto s = spectral_embedding(swapped, 4);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(e.vector[i] == Approx(s.vector[4 + i]).epsilon(1e-12));
      CHECK(e.vector[4 + i] == Approx(s.vector[i]).epsilon(1e-12));
    }
  }
}
