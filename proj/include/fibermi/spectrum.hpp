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
#include <cstdint>
#include <span>
#include <vector>

#include "fibermi/core.hpp"
#include "fibermi/fft.hpp"

namespace fibermi {

/// Ensemble-averaged energy spectral density S_E = <X^dag X> per axis, on an
/// ascending detuning axis, in W s^2 so that
/// (1/2 pi) int S_E dW is the pulse energy.
struct EnsembleSpectrum {
  std::vector<double> omega;  // ascending detuning [rad/s]
  std::vector<double> s_e_x, s_e_y, s_e_total;
  /// Imaginary part of the mean of X^dag X (total). Pure noise; kept for the
  /// magnitude check, then discarded from every observable.
  std::vector<double> im_residue_total;
  /// Per-bin standard error of s_e_total (zero for a single realization).
  std::vector<double> s_e_total_stderr;
  std::vector<double> n_x, n_y, n_total;  // filled by fill_photons_per_mode
  std::size_t n_realizations = 0;
  std::uint64_t master_seed = 0;
  double z = 0.0;

  std::size_t size() const { return omega.size(); }
  double d_omega() const { return omega.size() > 1 ? omega[1] - omega[0] : 0.0; }
  /// Index of the bin nearest to a detuning.
  std::size_t index_of(double w) const;
};

/// Running sum of per-realization spectra. Realizations must be added in a
/// fixed order for bit-reproducible results.
class SpectrumAccumulator {
 public:
  explicit SpectrumAccumulator(const Grid& grid);

  /// Per-realization spectra in FFT bin order.
  struct Sample {
    std::vector<cplx> x, y;
  };
  Sample sample(const FieldState& s, const Fft& fft) const;
  void add(const Sample& sample);
  void add(const FieldState& s, const Fft& fft) { add(sample(s, fft)); }

  std::size_t count() const { return count_; }
  EnsembleSpectrum result(double z, std::uint64_t seed) const;

 private:
  Grid grid_;
  std::size_t count_ = 0;
  std::vector<cplx> sum_x_, sum_y_;
  std::vector<double> sum_sq_total_;
};

/// S_E(W) = (1/N) sum_n X^dag_n(W) X_n(W) with X(W) = int A(t) exp(i W t) dt.
EnsembleSpectrum energy_spectral_density(std::span<const FieldState> states, const Grid& grid);

/// n(W) = S_E(W) sigma_omega / (hbar omega0).
std::vector<double> photons_per_mode(std::span<const double> s_e, const PulseSpec& pulse, double omega0);
void fill_photons_per_mode(EnsembleSpectrum& spec, const PulseSpec& pulse, double omega0);

/// max |Im <X^dag X>| / max Re <X^dag X> over all bins.
double imaginary_residue_ratio(const EnsembleSpectrum& spec);

/// Mean of the given values over bins whose detuning lies in [lo, hi].
double band_mean(const EnsembleSpectrum& spec, std::span<const double> values, double lo, double hi);

}  // namespace fibermi
