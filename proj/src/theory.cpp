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

#include "fibermi/theory.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fibermi/error.hpp"
#include "fibermi/units.hpp"

namespace fibermi {

ScalarMIPrediction scalar_mi_gain(double gamma, double p0, double beta2) {
  if (!(beta2 < 0.0)) {
    std::ostringstream msg;
    msg << "beta2 = " << beta2 << " s^2/m is not anomalous; scalar MI needs beta2 < 0";
    throw PhysicsError(msg.str());
  }
  if (!(gamma > 0.0) || !(p0 > 0.0)) throw InvalidArgument("gamma and p0 must be positive");
  ScalarMIPrediction p;
  p.omega_max = std::sqrt(2.0 * gamma * p0 / -beta2);
  p.gain_per_length = 2.0 * gamma * p0;
  p.gain_band_upper = std::sqrt(2.0) * p.omega_max;
  return p;
}

double mi_gain_rate(double gamma, double p0, double beta2, double omega) {
  const double gp = gamma * p0;
  const double k = 0.5 * beta2 * omega * omega + gp;
  const double g2 = gp * gp - k * k;
  return g2 >= 0.0 ? std::sqrt(g2) : -std::sqrt(-g2);
}

double vacuum_sideband_photons(double gamma, double p0, double beta2, double length, double omega) {
  const double gp = gamma * p0;
  const double g = mi_gain_rate(gamma, p0, beta2, omega);
  const double x = std::abs(g) * length;
  if (x < 1e-8) return gp * gp * length * length;
  const double r = gp / std::abs(g);
  const double s = g > 0.0 ? std::sinh(x) : std::sin(x);
  return r * r * s * s;
}

namespace {
void check_seeds(double ns0, double na0) {
  if (!(ns0 >= 0.0) || !(na0 >= 0.0)) throw InvalidArgument("seed photon numbers must be non-negative");
}
}  // namespace

std::pair<double, double> mi_growth_classical(double ns0, double na0, double gpl) {
  check_seeds(ns0, na0);
  const double c2 = std::pow(std::cosh(gpl), 2);
  const double s2 = std::pow(std::sinh(gpl), 2);
  return {ns0 * c2 + na0 * s2, na0 * c2 + ns0 * s2};
}

std::pair<double, double> mi_growth_quantum(double ns0, double na0, double gpl) {
  check_seeds(ns0, na0);
  const double c2 = std::pow(std::cosh(gpl), 2);
  const double s2 = std::pow(std::sinh(gpl), 2);
  return {ns0 * c2 + (na0 + 1.0) * s2, na0 * c2 + (ns0 + 1.0) * s2};
}

double half_photon_rescale(double n_cl, double n0) {
  if (n0 == 0.0) throw InvalidArgument("n0 must be nonzero");
  return n_cl / (2.0 * n0) - 0.5;
}

double eta_ratio(double n_qu, double n_cl, double n0) {
  const double d = half_photon_rescale(n_cl, n0);
  if (!(d > 0.0)) {
    std::ostringstream msg;
    msg << "rescaled classical photon number " << d << " is not positive (no growth yet)";
    throw PhysicsError(msg.str());
  }
  return 10.0 * std::log10(n_qu / d);
}

Birefringence biref_from_beat_length(double l_b, double lambda0) {
  if (!(l_b > 0.0)) throw InvalidArgument("beat length must be positive");
  return {2.0 * constants::pi / l_b, lambda0 / (constants::c * l_b)};
}

Walkoff walkoff(double beta2, double delta_beta0, double length, double t_fwhm) {
  const double prod = beta2 * delta_beta0;
  if (prod < 0.0) throw PhysicsError("walk-off needs beta2 * delta_beta0 >= 0");
  Walkoff w;
  w.rate = std::sqrt(8.0 * prod);
  w.total = w.rate * length;
  w.coherent_length = w.rate > 0.0 ? t_fwhm / w.rate : std::numeric_limits<double>::infinity();
  return w;
}

std::vector<double> convolved_sideband_prediction(double gamma, double p0, double beta2, double length,
                                                  const PulseSpec& pulse, double omega0,
                                                  std::span<const double> omega) {
  scalar_mi_gain(gamma, p0, beta2);  // validates the regime
  const double sw = pulse.sigma_omega();
  const double t_eff = std::sqrt(constants::pi) * pulse.sigma_t();
  // Trapezoid over +-6 sigma of the normalized Gaussian kernel.
  constexpr int half = 96;
  const double du = 6.0 / half;
  std::vector<double> weight(2 * half + 1);
  double wsum = 0.0;
  for (int i = -half; i <= half; ++i) {
    const double u = i * du;
    weight[i + half] = std::exp(-0.5 * u * u) * ((i == -half || i == half) ? 0.5 : 1.0);
    wsum += weight[i + half];
  }
  std::vector<double> out(omega.size());
  for (std::size_t k = 0; k < omega.size(); ++k) {
    double acc = 0.0;
    for (int i = -half; i <= half; ++i) {
      acc += weight[i + half] * vacuum_sideband_photons(gamma, p0, beta2, length, omega[k] - i * du * sw);
    }
    out[k] = constants::hbar * omega0 * t_eff * acc / wsum;
  }
  return out;
}

}  // namespace fibermi
