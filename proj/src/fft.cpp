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

#include "fibermi/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <utility>

#include "fibermi/error.hpp"

namespace fibermi {
namespace {

// FFTW's planner is not thread safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::span<cplx> x) { return reinterpret_cast<fftw_complex*>(x.data()); }

// exp(i Omega_k t_j) with t_j = (j - n/2) tau reduces to (-1)^k exp(2 pi i j k / n).
double bin_sign(std::size_t k) { return (k & 1u) ? -1.0 : 1.0; }

}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
  if (n == 0) throw InvalidArgument("FFT length must be positive");
  std::lock_guard lock(planner_mutex());
  ComplexArray scratch(n);
  auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
  const int len = static_cast<int>(n);
  forward_plan_ = fftw_plan_dft_1d(len, p, p, FFTW_FORWARD, FFTW_ESTIMATE);
  backward_plan_ = fftw_plan_dft_1d(len, p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!forward_plan_ || !backward_plan_) throw InvalidArgument("FFTW planning failed");
}

Fft::~Fft() {
  if (!forward_plan_ && !backward_plan_) return;
  std::lock_guard lock(planner_mutex());
  if (forward_plan_) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  if (backward_plan_) fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
}

Fft::Fft(Fft&& other) noexcept
    : n_(other.n_),
      forward_plan_(std::exchange(other.forward_plan_, nullptr)),
      backward_plan_(std::exchange(other.backward_plan_, nullptr)) {}

Fft& Fft::operator=(Fft&& other) noexcept {
  if (this != &other) {
    std::swap(n_, other.n_);
    std::swap(forward_plan_, other.forward_plan_);
    std::swap(backward_plan_, other.backward_plan_);
  }
  return *this;
}

void Fft::forward(std::span<cplx> x) const {
  fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), as_fftw(x), as_fftw(x));
}

void Fft::backward(std::span<cplx> x) const {
  fftw_execute_dft(static_cast<fftw_plan>(backward_plan_), as_fftw(x), as_fftw(x));
}

ComplexArray field_spectrum(std::span<const cplx> field, const Grid& grid, const Fft& fft) {
  ComplexArray s(field.begin(), field.end());
  fft.backward(s);
  for (std::size_t k = 0; k < s.size(); ++k) s[k] *= grid.tau * bin_sign(k);
  return s;
}

ComplexArray dagger_spectrum(std::span<const cplx> field, const Grid& grid, const Fft& fft) {
  ComplexArray s(field.begin(), field.end());
  fft.forward(s);
  for (std::size_t k = 0; k < s.size(); ++k) s[k] *= grid.tau * bin_sign(k);
  return s;
}

ComplexArray field_from_spectrum(std::span<const cplx> spectrum, const Grid& grid, const Fft& fft) {
  ComplexArray x(spectrum.begin(), spectrum.end());
  for (std::size_t k = 0; k < x.size(); ++k) x[k] *= bin_sign(k) / grid.window;
  fft.forward(x);
  return x;
}

ComplexArray dagger_from_spectrum(std::span<const cplx> spectrum, const Grid& grid, const Fft& fft) {
  ComplexArray x(spectrum.begin(), spectrum.end());
  for (std::size_t k = 0; k < x.size(); ++k) x[k] *= bin_sign(k) / grid.window;
  fft.backward(x);
  return x;
}

}  // namespace fibermi
