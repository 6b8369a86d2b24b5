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

#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "fibermi/error.hpp"
#include "fibermi/theory.hpp"
#include "fibermi/units.hpp"

using namespace fibermi;

namespace {

// Sideband pair a(W), b = a(-W)^dag under a CW pump, pump phase removed:
//   da/dz = i K a + i g P b,  db/dz = -i g P a - i K b,  K = beta2 W^2 / 2 + g P.
// From vacuum the generated photon number is |nu|^2 with (a, b)(0) = (0, 1).
double bogoliubov_photons(double gamma, double p0, double beta2, double length, double w, int steps = 4000) {
  using c = std::complex<double>;
  const c i(0, 1);
  const double k = 0.5 * beta2 * w * w + gamma * p0, q = gamma * p0;
  auto f = [&](c a, c b) { return std::pair{i * k * a + i * q * b, -i * q * a - i * k * b}; };
  c a = 0, b = 1;
  const double h = length / steps;
  for (int s = 0; s < steps; ++s) {
    const auto [a1, b1] = f(a, b);
    const auto [a2, b2] = f(a + 0.5 * h * a1, b + 0.5 * h * b1);
    const auto [a3, b3] = f(a + 0.5 * h * a2, b + 0.5 * h * b2);
    const auto [a4, b4] = f(a + h * a3, b + h * b3);
    a += h / 6 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
    b += h / 6 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
  }
  return std::norm(a);
}

}  // namespace

TEST_CASE("scalar MI peak and band edge for the anomalous regime") {
  const double gamma = 2e-3, p0 = 2.0, beta2 = -17e-27;
  const auto p = scalar_mi_gain(gamma, p0, beta2);
  CHECK(p.omega_max == doctest::Approx(0.686e12).epsilon(1e-3));
  CHECK(p.gain_per_length == doctest::Approx(8e-3));
  // Scan for the maximum of the amplitude gain.
  double best = 0, best_w = 0;
  for (int k = 1; k < 20000; ++k) {
    const double w = k * 1e8;
    const double g = mi_gain_rate(gamma, p0, beta2, w);
    if (g > best) best = g, best_w = w;
  }
  CHECK(best == doctest::Approx(gamma * p0).epsilon(1e-8));
  CHECK(best_w == doctest::Approx(p.omega_max).epsilon(2e-4));
  CHECK(std::abs(mi_gain_rate(gamma, p0, beta2, p.gain_band_upper)) < 1e-3 * gamma * p0);
  CHECK(mi_gain_rate(gamma, p0, beta2, 1.5 * p.gain_band_upper) < 0.0);
  CHECK_THROWS_AS(scalar_mi_gain(gamma, p0, 60e-27), PhysicsError);
  CHECK_THROWS_AS(scalar_mi_gain(gamma, p0, 0.0), PhysicsError);
}

TEST_CASE("vacuum sideband photons match the linearized pair equations") {
  const double gamma = 2e-3, p0 = 2.0, beta2 = -17e-27, length = 1000.0;
  const double wm = scalar_mi_gain(gamma, p0, beta2).omega_max;
  for (double f : {0.05, 0.4, 1.0, 1.3, 1.6, 2.5}) {
    const double w = f * wm;
    const double ref = bogoliubov_photons(gamma, p0, beta2, length, w);
    CHECK(vacuum_sideband_photons(gamma, p0, beta2, length, w) == doctest::Approx(ref).epsilon(1e-7));
  }
  // At the peak it reduces to sinh^2(gamma P0 L).
  CHECK(vacuum_sideband_photons(gamma, p0, beta2, length, wm) == doctest::Approx(std::pow(std::sinh(4.0), 2)));
  CHECK(vacuum_sideband_photons(gamma, p0, beta2, 0.0, wm) == 0.0);
}

TEST_CASE("growth from seeds: quantum adds exactly sinh^2 to each side") {
  for (double G : {0.0, 0.5, 2.0, 5.0}) {
    const auto [cs, ca] = mi_growth_classical(3.0, 1.0, G);
    const auto [qs, qa] = mi_growth_quantum(3.0, 1.0, G);
    const double s2 = std::pow(std::sinh(G), 2);
    CHECK(qs - cs == doctest::Approx(s2));
    CHECK(qa - ca == doctest::Approx(s2));
    // Manley-Rowe: the difference of the two sides is conserved.
    CHECK(cs - ca == doctest::Approx(2.0));
    CHECK(qs - qa == doctest::Approx(2.0));
    const auto [vs, va] = mi_growth_quantum(0.0, 0.0, G);
    CHECK(vs == doctest::Approx(s2));
    CHECK(va == doctest::Approx(s2));
  }
  CHECK_THROWS_AS(mi_growth_classical(-1.0, 0.0, 1.0), InvalidArgument);
}

TEST_CASE("half-photon classical seeding reproduces the quantum result") {
  // Seeding both sides classically with n0 and rescaling gives sinh^2, so eta = 0 dB.
  for (double n0 : {0.5, 1e-3, 7.0}) {
    for (double G : {0.3, 1.0, 4.0}) {
      const double ncl = mi_growth_classical(n0, n0, G).first;
      const double nqu = mi_growth_quantum(0.0, 0.0, G).first;
      CHECK(half_photon_rescale(ncl, n0) == doctest::Approx(nqu).epsilon(1e-10));
      CHECK(eta_ratio(nqu, ncl, n0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-8));
    }
  }
  CHECK(eta_ratio(2.0 * std::pow(std::sinh(2.0), 2), mi_growth_classical(0.5, 0.5, 2.0).first, 0.5) ==
        doctest::Approx(10 * std::log10(2.0)));
  CHECK_THROWS_AS(half_photon_rescale(1.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(eta_ratio(1.0, 0.5, 0.5), PhysicsError);  // no growth: rescaled value is 0
}

TEST_CASE("birefringence from beat length") {
  // Reference values: 3.006 m at 1550 nm and 1 cm at 1064 nm.
  const auto b1 = biref_from_beat_length(2 * constants::pi / 2.09, 1550e-9);
  CHECK(b1.delta_beta0 == doctest::Approx(2.09));
  CHECK(b1.delta_beta1 == doctest::Approx(1.72e-15).epsilon(2e-3));
  const auto b2 = biref_from_beat_length(0.01, 1064e-9);
  CHECK(b2.delta_beta0 == doctest::Approx(628.3185).epsilon(1e-6));
  CHECK(b2.delta_beta1 == doctest::Approx(354.91e-15).epsilon(1e-4));
  // delta_beta1 = delta_beta0 / omega0 for a wavelength-independent index difference.
  CHECK(b2.delta_beta1 == doctest::Approx(b2.delta_beta0 / omega_from_wavelength(1064e-9)));
  CHECK_THROWS_AS(biref_from_beat_length(0.0, 1550e-9), InvalidArgument);
}

TEST_CASE("vector MI walk-off") {
  const double beta2 = 60e-27, lb = 0.2;
  const double db0 = 2 * constants::pi / lb;
  const auto w = walkoff(beta2, db0, 40.0, 100e-12);
  // Group delay difference between sidebands at W^2 = 2 db0 / beta2: d(beta2 W^2/2)/dW * 2 = 2 beta2 W.
  const double w_side = std::sqrt(2.0 * db0 / beta2);
  CHECK(w.rate == doctest::Approx(2.0 * beta2 * w_side));
  CHECK(w.total == doctest::Approx(40.0 * w.rate));
  CHECK(w.coherent_length == doctest::Approx(100e-12 / w.rate));
  CHECK(std::isinf(walkoff(beta2, 0.0, 1.0, 1e-12).coherent_length));
  CHECK_THROWS_AS(walkoff(-beta2, db0, 1.0, 1e-12), PhysicsError);
}

TEST_CASE("convolved pulsed prediction") {
  const double gamma = 2e-3, p0 = 2.0, beta2 = -17e-27, length = 500.0;
  const double w0 = omega_from_wavelength(1550e-9);
  const PulseSpec pulse{p0, 1e-9, 0.0};
  const double sw = pulse.sigma_omega(), st = pulse.sigma_t();
  const double wm = scalar_mi_gain(gamma, p0, beta2).omega_max;
  const std::vector<double> omega{0.5 * wm, wm, 1.2 * wm};
  const auto pred = convolved_sideband_prediction(gamma, p0, beta2, length, pulse, w0, omega);
  for (std::size_t k = 0; k < omega.size(); ++k) {
    // Independent Simpson rule over +-8 sigma.
    const int m = 4000;
    const double a = -8 * sw, h = 16 * sw / m;
    double acc = 0;
    for (int i = 0; i <= m; ++i) {
      const double u = a + i * h;
      const double wgt = (i == 0 || i == m) ? 1 : (i % 2 ? 4 : 2);
      acc += wgt * std::exp(-u * u / (2 * sw * sw)) * vacuum_sideband_photons(gamma, p0, beta2, length, omega[k] + u);
    }
    acc *= h / 3 / (std::sqrt(2 * constants::pi) * sw);
    const double ref = constants::hbar * w0 * std::sqrt(constants::pi) * st * acc;
    CHECK(pred[k] == doctest::Approx(ref).epsilon(1e-6));
  }
  // A very long pulse barely smears the CW curve.
  const PulseSpec wide{p0, 1e-6, 0.0};
  const auto narrow = convolved_sideband_prediction(gamma, p0, beta2, length, wide, w0, omega);
  CHECK(narrow[1] / (constants::hbar * w0 * std::sqrt(constants::pi) * wide.sigma_t()) ==
        doctest::Approx(vacuum_sideband_photons(gamma, p0, beta2, length, wm)).epsilon(1e-6));
}
