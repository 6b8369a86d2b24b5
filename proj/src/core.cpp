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

#include "fibermi/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fibermi/error.hpp"
#include "fibermi/units.hpp"

namespace fibermi {

double Grid::time(std::size_t j) const {
  return (static_cast<double>(j) - static_cast<double>(n_time / 2)) * tau;
}

double Grid::omega(std::size_t k) const {
  const auto n = static_cast<long long>(n_time);
  auto kk = static_cast<long long>(k);
  if (kk >= n / 2) kk -= n;
  return static_cast<double>(kk) * d_omega();
}

double Grid::d_omega() const { return 2.0 * constants::pi / window; }

double Grid::nyquist() const { return constants::pi / tau; }

std::vector<double> Grid::omega_axis() const {
  std::vector<double> out(n_time);
  for (std::size_t k = 0; k < n_time; ++k) out[k] = omega(k);
  return out;
}

std::vector<std::size_t> Grid::ascending_bins() const {
  std::vector<std::size_t> out(n_time);
  for (std::size_t i = 0; i < n_time; ++i) out[i] = (i + n_time / 2) % n_time;
  return out;
}

std::size_t Grid::bin_of(double w) const {
  const auto n = static_cast<long long>(n_time);
  auto k = static_cast<long long>(std::llround(w / d_omega()));
  k = std::clamp(k, -n / 2, n / 2 - 1);
  return static_cast<std::size_t>(k < 0 ? k + n : k);
}

Grid build_grid(std::size_t n_time, double window, std::size_t n_steps, double length) {
  if (n_time < 2 || (n_time & (n_time - 1)) != 0) {
    throw InvalidArgument("n_time must be a power of two >= 2, got " + std::to_string(n_time));
  }
  if (!(window > 0.0) || !std::isfinite(window)) throw InvalidArgument("time window must be positive");
  if (n_steps == 0) throw InvalidArgument("n_steps must be positive");
  if (!(length > 0.0) || !std::isfinite(length)) throw InvalidArgument("fiber length must be positive");
  Grid g;
  g.n_time = n_time;
  g.window = window;
  g.tau = window / static_cast<double>(n_time);
  g.n_steps = n_steps;
  g.length = length;
  g.h = length / static_cast<double>(n_steps);
  return g;
}

FiberParams make_fiber(double lambda0, double beta2, double gamma, double delta_beta0,
                       double delta_beta1, double length, double coupling_b) {
  if (!(lambda0 > 0.0)) throw InvalidArgument("carrier wavelength must be positive");
  if (!(gamma >= 0.0)) throw InvalidArgument("nonlinearity gamma must be non-negative");
  if (!(coupling_b >= 0.0 && coupling_b <= 1.0)) {
    throw InvalidArgument("coupling B must lie in [0, 1]");
  }
  if (!(length > 0.0)) throw InvalidArgument("fiber length must be positive");
  if (!std::isfinite(beta2) || !std::isfinite(delta_beta0) || !std::isfinite(delta_beta1)) {
    throw InvalidArgument("fiber parameters must be finite");
  }
  FiberParams f;
  f.lambda0 = lambda0;
  f.omega0 = omega_from_wavelength(lambda0);
  f.beta2 = beta2;
  f.gamma = gamma;
  f.delta_beta0 = delta_beta0;
  f.delta_beta1 = delta_beta1;
  f.coupling_b = coupling_b;
  f.length = length;
  return f;
}

double gamma_from_material(const MaterialParams& mat, double omega0) {
  if (!(mat.chi_xxxx > 0.0) || !(mat.n0 > 0.0) || !(mat.a_eff > 0.0) || !(omega0 > 0.0)) {
    throw InvalidArgument("material parameters and omega0 must be strictly positive");
  }
  using namespace constants;
  return 3.0 * omega0 * mat.chi_xxxx / (4.0 * epsilon0 * mat.n0 * mat.n0 * c * c * mat.a_eff);
}

double PulseSpec::sigma_t() const { return t_fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0))); }

double PulseSpec::energy() const { return p0 * sigma_t() * std::sqrt(2.0 * constants::pi); }

FieldState FieldState::zeros(std::size_t n) {
  FieldState s;
  s.ax.assign(n, cplx{});
  s.ax_dag.assign(n, cplx{});
  s.ay.assign(n, cplx{});
  s.ay_dag.assign(n, cplx{});
  return s;
}

FieldState make_gaussian_pump(const PulseSpec& pulse, const Grid& grid) {
  if (!(pulse.p0 >= 0.0) || !(pulse.t_fwhm > 0.0)) {
    throw InvalidArgument("pump peak power must be >= 0 and duration > 0");
  }
  const double sigma = pulse.sigma_t();
  if (grid.window < 8.0 * sigma) {
    std::ostringstream msg;
    msg << "time window " << grid.window << " s is shorter than 8 sigma_t = " << 8.0 * sigma
        << " s; the pulse would not vanish at the window edges";
    throw PhysicsError(msg.str());
  }
  FieldState s = FieldState::zeros(grid.n_time);
  const double cx = std::cos(pulse.theta);
  const double sy = std::sin(pulse.theta);
  // Exact zeros on the axis orthogonal to the pump for theta = 0 or 90 degrees.
  const bool x_empty = std::abs(cx) < 1e-15;
  const bool y_empty = std::abs(sy) < 1e-15;
  for (std::size_t j = 0; j < grid.n_time; ++j) {
    const double t = grid.time(j);
    const double amp = std::sqrt(pulse.p0) * std::exp(-t * t / (4.0 * sigma * sigma));
    s.ax[j] = x_empty ? 0.0 : amp * cx;
    s.ay[j] = y_empty ? 0.0 : amp * sy;
    s.ax_dag[j] = std::conj(s.ax[j]);
    s.ay_dag[j] = std::conj(s.ay[j]);
  }
  s.z = 0.0;
  return s;
}

cplx field_energy(const FieldState& s, double tau) {
  cplx sum{};
  for (std::size_t j = 0; j < s.size(); ++j) sum += s.ax_dag[j] * s.ax[j] + s.ay_dag[j] * s.ay[j];
  return sum * tau;
}

double required_window(const FiberParams& fiber, const PulseSpec& pulse, double length) {
  const double walkoff_rate = std::sqrt(8.0 * std::abs(fiber.beta2 * fiber.delta_beta0));
  return 8.0 * pulse.sigma_t() + std::abs(fiber.delta_beta1) * length + walkoff_rate * length;
}

double required_bandwidth(const FiberParams& fiber, const PulseSpec& pulse, bool vector_model) {
  const double pump_lobe = 10.0 * pulse.sigma_omega();
  double need = pump_lobe;
  if (fiber.beta2 < 0.0) {
    // Upper edge of the scalar gain band, sqrt(2) * Omega_max.
    need = std::max(need, 2.0 * std::sqrt(fiber.gamma * pulse.p0 / -fiber.beta2));
  }
  if (vector_model && fiber.beta2 != 0.0) {
    // Group-velocity matched (incoherent) vector sidebands.
    need = std::max(need, 1.2 * std::abs(fiber.delta_beta1) / std::abs(fiber.beta2));
  }
  return need;
}

double recommended_bandwidth(const FiberParams& fiber, const PulseSpec& pulse, bool vector_model) {
  double need = required_bandwidth(fiber, pulse, vector_model);
  if (vector_model && fiber.beta2 != 0.0) {
    // Phase-matched coherent coupling, beta2 W^2 ~ 2 dbeta0.
    need = std::max(need, 1.2 * std::sqrt(2.0 * std::abs(fiber.delta_beta0) / std::abs(fiber.beta2)));
  }
  return need;
}

std::vector<std::string> grid_warnings(const Grid& grid, const FiberParams& fiber, const PulseSpec& pulse,
                                       bool vector_model) {
  std::vector<std::string> out;
  const double rec = recommended_bandwidth(fiber, pulse, vector_model);
  if (grid.nyquist() <= rec) {
    std::ostringstream msg;
    msg << "Nyquist detuning " << grid.nyquist() * 1e-12 << " rad/ps is below the coherent-coupling "
        << "sideband estimate " << rec * 1e-12 << " rad/ps; those sidebands are not represented";
    out.push_back(msg.str());
  }
  return out;
}

void check_grid(const Grid& grid, const FiberParams& fiber, const PulseSpec& pulse, bool vector_model) {
  const double w_need = required_window(fiber, pulse, grid.length);
  if (grid.window < w_need) {
    std::ostringstream msg;
    msg << "time window " << grid.window * 1e12 << " ps is below the required " << w_need * 1e12
        << " ps (8 sigma_t + group-velocity mismatch drift + sideband walk-off over L)";
    throw PhysicsError(msg.str());
  }
  const double b_need = required_bandwidth(fiber, pulse, vector_model);
  if (grid.nyquist() <= b_need) {
    std::ostringstream msg;
    msg << "Nyquist detuning pi/tau = " << grid.nyquist() * 1e-12 << " rad/ps does not cover the "
        << "expected sideband band up to " << b_need * 1e-12 << " rad/ps; reduce tau";
    throw PhysicsError(msg.str());
  }
}

}  // namespace fibermi
