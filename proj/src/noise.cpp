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

#include "fibermi/noise.hpp"

#include <cmath>

#include "fibermi/error.hpp"
#include "fibermi/units.hpp"

namespace fibermi {

void quantum_noise_draw(const Grid& grid, const RealizationRng& rng, std::uint64_t step, NoiseDraw& out) {
  if (out.n_channels == 0) out.n_channels = 4;
  out.n_time = grid.n_time;
  out.zeta.resize(out.n_channels * grid.n_time);
  const double sd = 1.0 / std::sqrt(grid.h * grid.tau);
  for (std::size_t k = 0; k < out.n_channels; ++k) {
    double* dst = out.zeta.data() + k * grid.n_time;
    rng.step_stream(step, channel::quantum_base + static_cast<std::uint32_t>(k)).fill(dst, grid.n_time);
    for (std::size_t j = 0; j < grid.n_time; ++j) dst[j] *= sd;
  }
}

NoiseDraw quantum_noise_draw(const Grid& grid, const RealizationRng& rng, std::uint64_t step,
                             std::size_t n_channels) {
  NoiseDraw d;
  d.n_channels = n_channels;
  quantum_noise_draw(grid, rng, step, d);
  return d;
}

void classical_phase_noise(std::span<cplx> spectrum, double amplitude, const NormalStream& zeta) {
  if (!(amplitude >= 0.0)) throw InvalidArgument("classical noise amplitude must be non-negative");
  std::vector<double> z(spectrum.size());
  zeta.fill(z.data(), z.size());
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    spectrum[k] += std::polar(amplitude, constants::pi * z[k]);
  }
}

void classical_gaussian_noise(std::span<cplx> spectrum, double amplitude, const NormalStream& zeta_re,
                              const NormalStream& zeta_im) {
  if (!(amplitude >= 0.0)) throw InvalidArgument("classical noise amplitude must be non-negative");
  std::vector<double> re(spectrum.size()), im(spectrum.size());
  zeta_re.fill(re.data(), re.size());
  zeta_im.fill(im.data(), im.size());
  const double a = amplitude / std::sqrt(2.0);
  for (std::size_t k = 0; k < spectrum.size(); ++k) spectrum[k] += cplx(a * re[k], a * im[k]);
}

double amplitude_from_photons_per_hz(double photons_per_hz, double omega0) {
  if (!(photons_per_hz >= 0.0)) throw InvalidArgument("photon level must be non-negative");
  return std::sqrt(photons_per_hz * constants::hbar * omega0);
}

double amplitude_from_photons_per_mode(double photons_per_mode, double omega0, double sigma_omega) {
  if (!(photons_per_mode >= 0.0)) throw InvalidArgument("photon level must be non-negative");
  return std::sqrt(photons_per_mode * constants::hbar * omega0 / sigma_omega);
}

}  // namespace fibermi
