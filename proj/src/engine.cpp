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

#include "fibermi/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fibermi/error.hpp"
#include "fibermi/units.hpp"

namespace fibermi {
namespace {

void rotate(ComplexArray& a, cplx phase) {
  for (auto& v : a) v *= phase;
}

void apply_multiplier(ComplexArray& field, const ComplexArray& m, const Fft& fft, bool dagger) {
  // Undaggered fields use the exp(+i W t) kernel, daggered ones exp(-i W t).
  if (!dagger) {
    fft.backward(field);
    for (std::size_t k = 0; k < field.size(); ++k) field[k] *= m[k];
    fft.forward(field);
  } else {
    fft.forward(field);
    for (std::size_t k = 0; k < field.size(); ++k) field[k] *= std::conj(m[k]);
    fft.backward(field);
  }
}

bool finite(const ComplexArray& a) {
  for (const auto& v : a) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

}  // namespace

Model auto_model(const FiberParams& fiber, const PulseSpec& pulse) {
  return fiber.isotropic() && pulse.theta == 0.0 ? Model::scalar : Model::vector;
}

LinearOperator LinearOperator::build(const Grid& grid, const FiberParams& fiber, double dz) {
  LinearOperator op;
  op.dz = dz;
  op.x.resize(grid.n_time);
  op.y.resize(grid.n_time);
  const double inv_n = 1.0 / static_cast<double>(grid.n_time);
  for (std::size_t k = 0; k < grid.n_time; ++k) {
    const double w = grid.omega(k);
    const double disp = 0.5 * fiber.beta2 * w * w * dz;
    const double skew = 0.5 * (fiber.delta_beta1 * w + fiber.delta_beta0) * dz;
    op.x[k] = std::polar(inv_n, disp + skew);
    op.y[k] = std::polar(inv_n, disp - skew);
  }
  return op;
}

void to_corotating_frame(FieldState& s, double delta_beta0) {
  if (delta_beta0 == 0.0) return;
  const cplx p = std::polar(1.0, 0.5 * delta_beta0 * s.z);
  rotate(s.ax, p);
  rotate(s.ax_dag, std::conj(p));
  rotate(s.ay, std::conj(p));
  rotate(s.ay_dag, p);
}

void from_corotating_frame(FieldState& s, double delta_beta0) {
  if (delta_beta0 == 0.0) return;
  const cplx p = std::polar(1.0, -0.5 * delta_beta0 * s.z);
  rotate(s.ax, p);
  rotate(s.ax_dag, std::conj(p));
  rotate(s.ay, std::conj(p));
  rotate(s.ay_dag, p);
}

void linear_step(FieldState& s, const LinearOperator& op, const Fft& fft, Model model) {
  apply_multiplier(s.ax, op.x, fft, false);
  apply_multiplier(s.ax_dag, op.x, fft, true);
  if (model == Model::vector) {
    apply_multiplier(s.ay, op.y, fft, false);
    apply_multiplier(s.ay_dag, op.y, fft, true);
  }
  s.z += op.dz;
}

void nonlinear_step_scalar(FieldState& s, double gamma, double h) {
  const double gh = gamma * h;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const cplx n = s.ax_dag[j] * s.ax[j];
    // exp(i g h n) with complex n: modulus exp(-g h Im n).
    const cplx e = std::exp(cplx(-gh * n.imag(), gh * n.real()));
    s.ax[j] *= e;
    s.ax_dag[j] /= e;
  }
}

void nonlinear_step_vector(FieldState& s, double gamma, double b, double h) {
  const double r = std::numbers::sqrt2 / 2.0;
  const cplx i1(0.0, 1.0);
  const double gh = gamma * h;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const cplx x = s.ax[j], y = s.ay[j], xd = s.ax_dag[j], yd = s.ay_dag[j];
    cplx p = r * (x + i1 * y);
    cplx m = r * (x - i1 * y);
    cplx pd = r * (xd - i1 * yd);
    cplx md = r * (xd + i1 * yd);
    const cplx np = pd * p;
    const cplx nm = md * m;
    const cplx phi_p = gh * ((1.0 - b) * np + (1.0 + b) * nm);
    const cplx phi_m = gh * ((1.0 - b) * nm + (1.0 + b) * np);
    const cplx ep = std::exp(i1 * phi_p);
    const cplx em = std::exp(i1 * phi_m);
    p *= ep;
    pd /= ep;
    m *= em;
    md /= em;
    s.ax[j] = r * (p + m);
    s.ay[j] = -i1 * r * (p - m);
    s.ax_dag[j] = r * (pd + md);
    s.ay_dag[j] = i1 * r * (pd - md);
  }
}

void stochastic_step(FieldState& s, double gamma, double b, double omega0, double h,
                     const NoiseDraw& draw, Model model) {
  const std::size_t need = model == Model::vector ? 4 : 2;
  if (draw.n_time != s.size() || draw.n_channels < need) {
    throw InvalidArgument("noise draw does not match the field grid");
  }
  const double amp = std::sqrt(gamma * constants::hbar * omega0) * h;
  const cplx cp = std::polar(amp, std::numbers::pi / 4.0);
  const cplx cm = std::conj(cp);
  const auto z1 = draw.channel(0);
  const auto z2 = draw.channel(1);
  if (model == Model::scalar) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      s.ax[j] += cp * z1[j] * s.ax[j];
      s.ax_dag[j] += cm * z2[j] * s.ax_dag[j];
    }
    return;
  }
  const double sb = std::sqrt(b);
  const auto z3 = draw.channel(2);
  const auto z4 = draw.channel(3);
  for (std::size_t j = 0; j < s.size(); ++j) {
    const cplx x = s.ax[j], y = s.ay[j], xd = s.ax_dag[j], yd = s.ay_dag[j];
    s.ax[j] = x + cp * (z1[j] * x + sb * z3[j] * y);
    s.ax_dag[j] = xd + cm * (z2[j] * xd + sb * z4[j] * yd);
    s.ay[j] = y + cp * (z1[j] * y - sb * z3[j] * x);
    s.ay_dag[j] = yd + cm * (z2[j] * yd - sb * z4[j] * xd);
  }
}

bool all_finite(const FieldState& s) {
  return finite(s.ax) && finite(s.ax_dag) && finite(s.ay) && finite(s.ay_dag);
}

void apply_classical_noise(FieldState& s, const Grid& grid, const NoiseSpec& noise,
                           const RealizationRng& rng, const Fft& fft, Model model) {
  if (noise.classical_model == ClassicalNoiseModel::none) return;
  if (!(noise.classical_amplitude >= 0.0)) throw InvalidArgument("classical noise amplitude must be non-negative");
  auto add = [&](ComplexArray& a, ComplexArray& a_dag, std::uint32_t ch_re, std::uint32_t ch_im) {
    ComplexArray spec = field_spectrum(a, grid, fft);
    ComplexArray noise_spec(grid.n_time, cplx{});
    if (noise.classical_model == ClassicalNoiseModel::phase) {
      classical_phase_noise(noise_spec, noise.classical_amplitude, rng.initial_stream(ch_re));
    } else {
      classical_gaussian_noise(noise_spec, noise.classical_amplitude, rng.initial_stream(ch_re),
                               rng.initial_stream(ch_im));
    }
    ComplexArray spec_dag = dagger_spectrum(a_dag, grid, fft);
    for (std::size_t k = 0; k < grid.n_time; ++k) {
      spec[k] += noise_spec[k];
      spec_dag[k] += std::conj(noise_spec[k]);
    }
    a = field_from_spectrum(spec, grid, fft);
    a_dag = dagger_from_spectrum(spec_dag, grid, fft);
  };
  add(s.ax, s.ax_dag, channel::classical_re, channel::classical_im);
  if (model == Model::vector) add(s.ay, s.ay_dag, channel::classical_y_re, channel::classical_y_im);
}

PropagationResult propagate_realization(const FieldState& state0, const FiberParams& fiber,
                                        const Grid& grid, const NoiseSpec& noise,
                                        std::uint32_t realization_index, const PropagationOptions& opts,
                                        const Fft& fft) {
  if (state0.size() != grid.n_time || fft.size() != grid.n_time) {
    throw InvalidArgument("field and FFT sizes must match the grid");
  }
  const Model model = opts.model;
  const double h = grid.h;
  const double b = fiber.coupling_b;
  const LinearOperator half = LinearOperator::build(grid, fiber, 0.5 * h);
  const LinearOperator full = LinearOperator::build(grid, fiber, h);
  const RealizationRng rng = derive_realization_rng(noise.master_seed, realization_index);

  std::vector<std::size_t> marks = opts.snapshot_steps;
  marks.push_back(grid.n_steps);
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
  if (marks.front() == 0 || marks.back() > grid.n_steps) {
    throw InvalidArgument("snapshot steps must lie in 1..n_steps");
  }

  PropagationResult out;
  out.snapshot_steps = marks;
  FieldState s = state0;
  s.z = 0.0;
  NoiseDraw draw;
  draw.n_channels = model == Model::vector ? 4 : 2;
  std::size_t next_mark = 0;
  const std::size_t check = std::max<std::size_t>(opts.finite_check_interval, 1);

  // Frame phases are functions of s.z only, so the linear half steps that
  // advance z keep the state consistent with the co-rotating frame.
  linear_step(s, half, fft, model);
  for (std::size_t step = 1; step <= grid.n_steps; ++step) {
    if (model == Model::vector) {
      nonlinear_step_vector(s, fiber.gamma, b, h);
    } else {
      nonlinear_step_scalar(s, fiber.gamma, h);
    }
    if (noise.quantum_enabled) {
      quantum_noise_draw(grid, rng, step - 1, draw);
      stochastic_step(s, fiber.gamma, b, fiber.omega0, h, draw, model);
    }
    const bool at_mark = step == marks[next_mark];
    if (at_mark) {
      linear_step(s, half, fft, model);
      if (!all_finite(s)) throw NumericError("non-finite field value", step);
      FieldState snap = s;
      snap.z = static_cast<double>(step) * h;
      from_corotating_frame(snap, fiber.delta_beta0);
      out.snapshots.push_back(std::move(snap));
      ++next_mark;
      if (step < grid.n_steps) linear_step(s, half, fft, model);
    } else {
      linear_step(s, full, fft, model);
      if (step % check == 0 && !all_finite(s)) throw NumericError("non-finite field value", step);
    }
  }
  return out;
}

}  // namespace fibermi
