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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

/// Thin wrapper over FFTW's real-to-half-complex transforms.
///
/// Conventions: forward is unnormalized (X_k = sum_n x_n e^{-j 2 pi k n / N}),
/// the inverse carries the 1/N factor. Both directions work on the one-sided
/// spectrum of N/2 + 1 bins; the inverse ignores the imaginary parts of the
/// DC and (even N) Nyquist bins, so its output is real by construction.
///
/// Plans are cached per length behind a mutex; execution is lock-free and
/// deterministic for a given length.
namespace tsmix::fft {

std::size_t half_size(std::size_t n) noexcept;

std::vector<std::complex<double>> rfft(std::span<const double> signal);

std::vector<double> irfft(std::span<const std::complex<double>> half_spectrum, std::size_t n);

}  // namespace tsmix::fft
