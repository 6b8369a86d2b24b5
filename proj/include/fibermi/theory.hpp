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

#include <span>
#include <utility>
#include <vector>

#include "fibermi/core.hpp"

namespace fibermi {

struct ScalarMIPrediction {
  double omega_max = 0.0;        // sqrt(2 gamma P0 / |beta2|)
  double gain_per_length = 0.0;  // power gain rate at the peak, 2 gamma P0
  double gain_band_upper = 0.0;  // sqrt(2) omega_max
};

/// Throws PhysicsError for normal dispersion (beta2 >= 0): no scalar MI.
ScalarMIPrediction scalar_mi_gain(double gamma, double p0, double beta2);

/// Parametric amplitude gain g(W) with g^2 = (gP)^2 - (beta2 W^2/2 + gP)^2.
/// Negative when g^2 < 0 (returns -sqrt(-g^2) so callers can tell the regimes apart).
double mi_gain_rate(double gamma, double p0, double beta2, double omega);

/// Photons per mode after length L for a vacuum-seeded continuous pump,
/// (gP/g)^2 sinh^2(g L), continued analytically outside the gain band.
/// Equals sinh^2(gP L) at the peak.
double vacuum_sideband_photons(double gamma, double p0, double beta2, double length, double omega);

/// (ns, na) grown from incoherent seeds, classical theory.
std::pair<double, double> mi_growth_classical(double ns0, double na0, double gpl);
/// Quantum counterpart: vacuum adds one photon to each seed before growth.
std::pair<double, double> mi_growth_quantum(double ns0, double na0, double gpl);

/// n_cl / (2 n0) - 1/2. Throws for n0 == 0.
double half_photon_rescale(double n_cl, double n0);

/// 10 log10(n_qu / half_photon_rescale(n_cl, n0)). Throws PhysicsError when
/// the rescaled classical value is not positive.
double eta_ratio(double n_qu, double n_cl, double n0);

struct Birefringence {
  double delta_beta0 = 0.0;  // 2 pi / L_B
  double delta_beta1 = 0.0;  // lambda0 / (c L_B)
};
Birefringence biref_from_beat_length(double l_b, double lambda0);

struct Walkoff {
  double rate = 0.0;              // sqrt(8 beta2 dbeta0) [s/m]
  double total = 0.0;             // rate * L [s]
  double coherent_length = 0.0;   // t_fwhm / rate [m], +inf for zero rate
};
Walkoff walkoff(double beta2, double delta_beta0, double length, double t_fwhm);

/// Predicted energy spectral density of vacuum-seeded MI driven by a Gaussian
/// pulse: the continuous-pump photon spectrum, convolved with the pump's
/// Gaussian spectral shape (width sigma_omega), times hbar omega0 and the
/// duration T_eff = int P^2 dt / P0^2 = sqrt(pi) sigma_t over which the
/// four-wave-mixing drive acts. Evaluated at the given detunings.
std::vector<double> convolved_sideband_prediction(double gamma, double p0, double beta2, double length,
                                                  const PulseSpec& pulse, double omega0,
                                                  std::span<const double> omega);

}  // namespace fibermi
