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

#include "fibermi/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "fibermi/error.hpp"
#include "fibermi/units.hpp"

namespace fibermi {

std::size_t EnsembleSpectrum::index_of(double w) const {
  if (omega.empty()) throw InvalidArgument("empty spectrum");
  const auto it = std::lower_bound(omega.begin(), omega.end(), w);
  if (it == omega.begin()) return 0;
  if (it == omega.end()) return omega.size() - 1;
  const std::size_t k = static_cast<std::size_t>(it - omega.begin());
  return (omega[k] - w) < (w - omega[k - 1]) ? k : k - 1;
}

SpectrumAccumulator::SpectrumAccumulator(const Grid& grid)
    : grid_(grid),
      sum_x_(grid.n_time, cplx{}),
      sum_y_(grid.n_time, cplx{}),
      sum_sq_total_(grid.n_time, 0.0) {}

SpectrumAccumulator::Sample SpectrumAccumulator::sample(const FieldState& s, const Fft& fft) const {
  if (s.size() != grid_.n_time) throw InvalidArgument("field size does not match the spectrum grid");
  Sample out;
  auto product = [&](const ComplexArray& a, const ComplexArray& a_dag) {
    const ComplexArray f = field_spectrum(a, grid_, fft);
    const ComplexArray fd = dagger_spectrum(a_dag, grid_, fft);
    std::vector<cplx> p(grid_.n_time);
    for (std::size_t k = 0; k < grid_.n_time; ++k) p[k] = fd[k] * f[k];
    return p;
  };
  out.x = product(s.ax, s.ax_dag);
  out.y = product(s.ay, s.ay_dag);
  return out;
}

void SpectrumAccumulator::add(const Sample& sample) {
  for (std::size_t k = 0; k < grid_.n_time; ++k) {
    sum_x_[k] += sample.x[k];
    sum_y_[k] += sample.y[k];
    const double t = sample.x[k].real() + sample.y[k].real();
    sum_sq_total_[k] += t * t;
  }
  ++count_;
}

EnsembleSpectrum SpectrumAccumulator::result(double z, std::uint64_t seed) const {
  if (count_ == 0) throw InvalidArgument("no realizations accumulated");
  EnsembleSpectrum spec;
  spec.n_realizations = count_;
  spec.master_seed = seed;
  spec.z = z;
  const auto order = grid_.ascending_bins();
  const double inv = 1.0 / static_cast<double>(count_);
  const std::size_t n = order.size();
  spec.omega.resize(n);
  spec.s_e_x.resize(n);
  spec.s_e_y.resize(n);
  spec.s_e_total.resize(n);
  spec.im_residue_total.resize(n);
  spec.s_e_total_stderr.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = order[i];
    spec.omega[i] = grid_.omega(k);
    const cplx mx = sum_x_[k] * inv;
    const cplx my = sum_y_[k] * inv;
    spec.s_e_x[i] = mx.real();
    spec.s_e_y[i] = my.real();
    spec.s_e_total[i] = mx.real() + my.real();
    spec.im_residue_total[i] = mx.imag() + my.imag();
    if (count_ > 1) {
      const double mean = spec.s_e_total[i];
      const double var = std::max(0.0, (sum_sq_total_[k] * inv - mean * mean)) *
                         static_cast<double>(count_) / static_cast<double>(count_ - 1);
      spec.s_e_total_stderr[i] = std::sqrt(var * inv);
    }
  }
  return spec;
}

EnsembleSpectrum energy_spectral_density(std::span<const FieldState> states, const Grid& grid) {
  if (states.empty()) throw InvalidArgument("at least one realization is required");
  Fft fft(grid.n_time);
  SpectrumAccumulator acc(grid);
  for (const auto& s : states) {
    if (s.size() != grid.n_time) throw InvalidArgument("realizations are on mismatched grids");
    acc.add(s, fft);
  }
  return acc.result(states.front().z, 0);
}

std::vector<double> photons_per_mode(std::span<const double> s_e, const PulseSpec& pulse, double omega0) {
  const double scale = pulse.sigma_omega() / (constants::hbar * omega0);
  std::vector<double> n(s_e.size());
  for (std::size_t i = 0; i < s_e.size(); ++i) n[i] = s_e[i] * scale;
  return n;
}

void fill_photons_per_mode(EnsembleSpectrum& spec, const PulseSpec& pulse, double omega0) {
  spec.n_x = photons_per_mode(spec.s_e_x, pulse, omega0);
  spec.n_y = photons_per_mode(spec.s_e_y, pulse, omega0);
  spec.n_total = photons_per_mode(spec.s_e_total, pulse, omega0);
}

double imaginary_residue_ratio(const EnsembleSpectrum& spec) {
  double im = 0.0, re = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    im = std::max(im, std::abs(spec.im_residue_total[i]));
    re = std::max(re, spec.s_e_total[i]);
  }
  return re > 0.0 ? im / re : 0.0;
}

double band_mean(const EnsembleSpectrum& spec, std::span<const double> values, double lo, double hi) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (spec.omega[i] >= lo && spec.omega[i] <= hi) {
      sum += values[i];
      ++count;
    }
  }
  if (count == 0) throw InvalidArgument("band contains no frequency bins");
  return sum / static_cast<double>(count);
}

}  // namespace fibermi
