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

#include <cstdint>
#include <span>
#include <vector>

#include "fibermi/core.hpp"
#include "fibermi/rng.hpp"

namespace fibermi {

enum class ClassicalNoiseModel { none, phase, gaussian };

struct NoiseSpec {
  bool quantum_enabled = true;
  ClassicalNoiseModel classical_model = ClassicalNoiseModel::none;
  /// Spectral amplitude added to every frequency bin at z = 0 [W^(1/2) s].
  double classical_amplitude = 0.0;
  std::uint64_t master_seed = 0;
};

/// One spatial step worth of discretized white noise: zeta[k][j] ~ N(0, 1/(h tau)).
struct NoiseDraw {
  std::size_t n_time = 0;
  std::size_t n_channels = 0;
  std::vector<double> zeta;  // channel-major, n_channels * n_time

  std::span<const double> channel(std::size_t k) const {
    return {zeta.data() + k * n_time, n_time};
  }
};

/// Draws `n_channels` (2 for the scalar equation, 4 for the coupled one)
/// independent channels for step `step`. Channel k of a 2-channel draw is
/// identical to channel k of a 4-channel draw.
NoiseDraw quantum_noise_draw(const Grid& grid, const RealizationRng& rng, std::uint64_t step,
                             std::size_t n_channels = 4);
void quantum_noise_draw(const Grid& grid, const RealizationRng& rng, std::uint64_t step, NoiseDraw& out);

/// Adds amplitude * exp(i pi zeta(Omega)) to each bin of a spectrum (in place).
void classical_phase_noise(std::span<cplx> spectrum, double amplitude, const NormalStream& zeta);

/// Adds (amplitude / sqrt 2) (zeta1 + i zeta2) to each bin (in place).
void classical_gaussian_noise(std::span<cplx> spectrum, double amplitude, const NormalStream& zeta_re,
                              const NormalStream& zeta_im);

/// Spectral amplitude whose flat energy spectral density corresponds to
/// `photons_per_hz` photons per Hz of bandwidth: amplitude^2 = q hbar omega0.
double amplitude_from_photons_per_hz(double photons_per_hz, double omega0);

/// Spectral amplitude whose energy spectral density gives `photons_per_mode`
/// photons per Heisenberg box of width sigma_omega: amplitude^2 = n hbar omega0 / sigma_omega.
double amplitude_from_photons_per_mode(double photons_per_mode, double omega0, double sigma_omega);

}  // namespace fibermi
