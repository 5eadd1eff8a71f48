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

#include "tsmix/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "tsmix/error.hpp"

namespace tsmix::fft {

namespace {

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

template <typename T>
using AlignedBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
AlignedBuffer<T> allocate(std::size_t count) {
  auto* raw = static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(count, 1)));
  if (raw == nullptr) throw std::bad_alloc();
  return AlignedBuffer<T>(raw);
}

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, plans] : plans_) {
      fftw_destroy_plan(plans.forward);
      fftw_destroy_plan(plans.backward);
    }
  }

  PlanPair get(std::size_t n) {
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(n); it != plans_.end()) return it->second;

    // Planning scratch; FFTW_ESTIMATE never touches the contents.
    auto real = allocate<double>(n);
    auto cplx = allocate<fftw_complex>(half_size(n));
    const int len = static_cast<int>(n);
    PlanPair plans;
    plans.forward = fftw_plan_dft_r2c_1d(len, real.get(), cplx.get(), FFTW_ESTIMATE);
    plans.backward = fftw_plan_dft_c2r_1d(len, cplx.get(), real.get(), FFTW_ESTIMATE);
    if (plans.forward == nullptr || plans.backward == nullptr) {
      throw Error(ErrorCode::InvalidArgument, "FFTW could not plan length " + std::to_string(n));
    }
    plans_.emplace(n, plans);
    return plans;
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

std::size_t half_size(std::size_t n) noexcept { return n / 2 + 1; }

std::vector<std::complex<double>> rfft(std::span<const double> signal) {
  const std::size_t n = signal.size();
  if (n == 0) throw Error(ErrorCode::TooShort, "empty signal");
  const PlanPair plans = cache().get(n);

  auto in = allocate<double>(n);
  auto out = allocate<fftw_complex>(half_size(n));
  std::copy(signal.begin(), signal.end(), in.get());
  fftw_execute_dft_r2c(plans.forward, in.get(), out.get());

  std::vector<std::complex<double>> result(half_size(n));
  for (std::size_t k = 0; k < result.size(); ++k) result[k] = {out[k][0], out[k][1]};
  return result;
}

std::vector<double> irfft(std::span<const std::complex<double>> half_spectrum, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::TooShort, "empty signal");
  if (half_spectrum.size() != half_size(n)) {
    throw Error(ErrorCode::ShapeMismatch, "half spectrum has " + std::to_string(half_spectrum.size()) +
                                              " bins, expected " + std::to_string(half_size(n)));
  }
  const PlanPair plans = cache().get(n);

  auto in = allocate<fftw_complex>(half_size(n));
  auto out = allocate<double>(n);
  for (std::size_t k = 0; k < half_spectrum.size(); ++k) {
    in[k][0] = half_spectrum[k].real();
    in[k][1] = half_spectrum[k].imag();
  }
  // Real bins must carry no imaginary part; FFTW's c2r assumes as much.
  in[0][1] = 0.0;
  if (n % 2 == 0) in[n / 2][1] = 0.0;
  fftw_execute_dft_c2r(plans.backward, in.get(), out.get());

  std::vector<double> result(out.get(), out.get() + n);
  const double scale = 1.0 / static_cast<double>(n);
  for (double& v : result) v *= scale;
  return result;
}

}  // namespace tsmix::fft
