// Copyright 2026 The fibermi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>

#include "fibermi/core.hpp"

namespace fibermi {

/// In-place complex FFT of fixed length backed by FFTW. Plans are created with
/// FFTW_ESTIMATE on 64-byte aligned scratch, so execution is deterministic and
/// valid on any ComplexArray. One instance per thread; execution is reentrant
/// across instances.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;
  Fft(Fft&& other) noexcept;
  Fft& operator=(Fft&& other) noexcept;

  std::size_t size() const { return n_; }

  /// out_k = sum_j x_j exp(-2 pi i j k / n), in place.
  void forward(std::span<cplx> x) const;
  /// out_k = sum_j x_j exp(+2 pi i j k / n), in place (unnormalized).
  void backward(std::span<cplx> x) const;

 private:
  std::size_t n_ = 0;
  void* forward_plan_ = nullptr;
  void* backward_plan_ = nullptr;
};

/// Spectrum of an undaggered field, X(Omega) = int x(t) exp(+i Omega t) dt,
/// realized as a tau-scaled DFT on the grid's time samples (FFT bin order).
ComplexArray field_spectrum(std::span<const cplx> field, const Grid& grid, const Fft& fft);

/// Spectrum of a daggered field with the conjugate kernel,
/// X^dag(Omega) = int x^dag(t) exp(-i Omega t) dt, so that x^dag = conj(x)
/// gives X^dag = conj(X) and X^dag X is the energy spectral density.
ComplexArray dagger_spectrum(std::span<const cplx> field, const Grid& grid, const Fft& fft);

/// Inverse operations of the two above.
ComplexArray field_from_spectrum(std::span<const cplx> spectrum, const Grid& grid, const Fft& fft);
ComplexArray dagger_from_spectrum(std::span<const cplx> spectrum, const Grid& grid, const Fft& fft);

}  // namespace fibermi
