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
#include <numbers>

#include "fibermi/core.hpp"
#include "fibermi/error.hpp"
#include "fibermi/theory.hpp"
#include "fibermi/units.hpp"

using namespace fibermi;

TEST_CASE("grid derives tau and h by exact division") {
  const Grid g = build_grid(4096, 8e-9, 1500, 1500.0);
  CHECK(g.tau == 8e-9 / 4096);
  CHECK(g.tau == doctest::Approx(1.953125e-12));
  CHECK(g.h == 1.0);
  CHECK(g.h * static_cast<double>(g.n_steps) == g.length);
  CHECK(g.d_omega() == doctest::Approx(2 * std::numbers::pi / 8e-9));
}

TEST_CASE("two-point grid has the FFT ordered axis {0, -pi}") {
  const Grid g = build_grid(2, 2.0, 1, 1.0);
  CHECK(g.tau == 1.0);
  CHECK(g.omega(0) == 0.0);
  CHECK(g.omega(1) == doctest::Approx(-std::numbers::pi));
  const auto asc = g.ascending_bins();
  CHECK(asc[0] == 1);
  CHECK(asc[1] == 0);
}

TEST_CASE("frequency axis spans [-pi/tau, pi/tau) in 2 pi/window steps") {
  const Grid g = build_grid(64, 6.4e-12, 1, 1.0);
  const auto asc = g.ascending_bins();
  CHECK(g.omega(asc.front()) == doctest::Approx(-std::numbers::pi / g.tau));
  CHECK(g.omega(asc.back()) == doctest::Approx(std::numbers::pi / g.tau - g.d_omega()));
  for (std::size_t i = 1; i < asc.size(); ++i) {
    CHECK(g.omega(asc[i]) - g.omega(asc[i - 1]) == doctest::Approx(g.d_omega()));
  }
  CHECK(g.bin_of(std::numbers::pi / g.tau * 0.5) == 16);
}

TEST_CASE("grid rejects bad inputs") {
  CHECK_THROWS_AS(build_grid(1000, 1e-9, 10, 10.0), InvalidArgument);
  CHECK_THROWS_AS(build_grid(0, 1e-9, 10, 10.0), InvalidArgument);
  CHECK_THROWS_AS(build_grid(1024, -1e-9, 10, 10.0), InvalidArgument);
  CHECK_THROWS_AS(build_grid(1024, 1e-9, 0, 10.0), InvalidArgument);
  CHECK_THROWS_AS(build_grid(1024, 1e-9, 10, 0.0), InvalidArgument);
}

TEST_CASE("Nyquist coverage of the scalar-scenario gain band needs tau below 3.24 ps") {
  const auto p = scalar_mi_gain(2e-3, 2.0, -17e-27);
  const double tau_max = std::numbers::pi / (std::sqrt(2.0) * p.omega_max);
  CHECK(tau_max == doctest::Approx(3.24e-12).epsilon(2e-3));
  const FiberParams f = make_fiber(1550e-9, -17e-27, 2e-3, 0, 0, 1500);
  PulseSpec pulse{2.0, 1e-9, 0.0};
  CHECK_NOTHROW(check_grid(build_grid(2048, 4.096e-9, 1500, 1500), f, pulse, false));
  // 4.096 ns / 1024 = 4 ps > 3.24 ps
  CHECK_THROWS_AS(check_grid(build_grid(1024, 4.096e-9, 1500, 1500), f, pulse, false), PhysicsError);
}

TEST_CASE("gamma from material parameters") {
  const double w0 = omega_from_wavelength(1550e-9);
  // Invert the formula for gamma = 2 /W/km, then re-apply.
  MaterialParams m{0.0, 1.45, 80e-12};
  const double eps0 = constants::epsilon0, c = constants::c;
  m.chi_xxxx = 2e-3 * 4.0 * eps0 * m.n0 * m.n0 * c * c * m.a_eff / (3.0 * w0);
  CHECK(gamma_from_material(m, w0) == doctest::Approx(2e-3).epsilon(1e-13));

  MaterialParams m2 = m;
  m2.a_eff *= 2.0;
  CHECK(gamma_from_material(m2, w0) == doctest::Approx(1e-3).epsilon(1e-13));
  CHECK(gamma_from_material(m, 2.0 * w0) == doctest::Approx(4e-3).epsilon(1e-13));
  m2.n0 = 0.0;
  CHECK_THROWS_AS(gamma_from_material(m2, w0), InvalidArgument);
}

TEST_CASE("fiber validation") {
  CHECK_THROWS_AS(make_fiber(1550e-9, -17e-27, 2e-3, 0, 0, 100, 1.5), InvalidArgument);
  CHECK_THROWS_AS(make_fiber(-1.0, -17e-27, 2e-3, 0, 0, 100), InvalidArgument);
  const auto f = make_fiber(1550e-9, -17e-27, 2e-3, 0, 0, 100);
  CHECK(f.coupling_b == doctest::Approx(1.0 / 3.0));
  CHECK(f.isotropic());
  CHECK(f.omega0 == doctest::Approx(2 * std::numbers::pi * constants::c / 1550e-9));
}

TEST_CASE("pulse widths satisfy sigma_t sigma_omega = 1/2") {
  PulseSpec p{2.0, 1e-9, 0.0};
  CHECK(p.sigma_t() == doctest::Approx(1e-9 / (2.0 * std::sqrt(2.0 * std::log(2.0)))));
  CHECK(p.sigma_t() * p.sigma_omega() == 0.5);
}

TEST_CASE("Gaussian pump: peak, symmetry and conjugate daggers") {
  const Grid g = build_grid(2048, 4.096e-9, 10, 10.0);
  PulseSpec p{2.0, 1e-9, 0.0};
  const FieldState s = make_gaussian_pump(p, g);
  const std::size_t mid = g.n_time / 2;
  CHECK(g.time(mid) == 0.0);
  CHECK(std::norm(s.ax[mid]) + std::norm(s.ay[mid]) == doctest::Approx(2.0));
  for (std::size_t j = 0; j < g.n_time; ++j) {
    CHECK(s.ax_dag[j] == std::conj(s.ax[j]));
    CHECK(s.ay[j] == 0.0);
    CHECK(s.ax[j].imag() == 0.0);
  }
  // Deterministic construction.
  const FieldState s2 = make_gaussian_pump(p, g);
  CHECK(s2.ax == s.ax);
}

TEST_CASE("theta = 45 deg splits power evenly, 90 deg empties x") {
  const Grid g = build_grid(1024, 2e-9, 10, 10.0);
  PulseSpec p{300.0, 0.2e-9, std::numbers::pi / 4};
  const FieldState s = make_gaussian_pump(p, g);
  for (std::size_t j = 0; j < g.n_time; ++j) {
    const double t = g.time(j);
    const double pt = 300.0 * std::exp(-t * t / (2 * p.sigma_t() * p.sigma_t()));
    CHECK(std::norm(s.ax[j]) == doctest::Approx(pt / 2).epsilon(1e-12));
    CHECK(std::norm(s.ay[j]) == doctest::Approx(pt / 2).epsilon(1e-12));
  }
  p.theta = std::numbers::pi / 2;
  const FieldState s90 = make_gaussian_pump(p, g);
  for (const auto& v : s90.ax) CHECK(v == 0.0);
}

TEST_CASE("discrete pulse energy converges to p0 sigma_t sqrt(2 pi)") {
  PulseSpec p{2.0, 1e-9, 0.0};
  const double exact = p.energy();
  CHECK(exact == doctest::Approx(2.0 * p.sigma_t() * std::sqrt(2 * std::numbers::pi)));
  const Grid g = build_grid(4096, 8e-9, 1, 1.0);
  const cplx e = field_energy(make_gaussian_pump(p, g), g.tau);
  CHECK(e.real() == doctest::Approx(exact).epsilon(1e-12));
  CHECK(e.imag() == 0.0);
}

TEST_CASE("pump too wide for the window is a physics error") {
  PulseSpec p{2.0, 1e-9, 0.0};
  CHECK_THROWS_AS(make_gaussian_pump(p, build_grid(1024, 2e-9, 1, 1.0)), PhysicsError);
}

TEST_CASE("window rule includes group-velocity drift and sideband walk-off") {
  const auto f = make_fiber(1550e-9, 60e-27, 2e-3, 10.0, 1e-15, 40.0);
  PulseSpec p{400.0, 100e-12, 0.0};
  const double expect = 8 * p.sigma_t() + 1e-15 * 40 + std::sqrt(8 * 60e-27 * 10.0) * 40;
  CHECK(required_window(f, p, 40.0) == doctest::Approx(expect));
  CHECK_THROWS_AS(check_grid(build_grid(4096, 0.3e-9, 40, 40.0), f, p, true), PhysicsError);
}
