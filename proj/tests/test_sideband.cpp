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
#include <vector>

#include "fibermi/error.hpp"
#include "fibermi/rng.hpp"
#include "fibermi/sideband.hpp"
#include "fibermi/theory.hpp"

using namespace fibermi;

namespace {

EnsembleSpectrum axis(std::size_t n, double dw) {
  EnsembleSpectrum s;
  for (std::size_t i = 0; i < n; ++i) s.omega.push_back((static_cast<double>(i) - static_cast<double>(n / 2)) * dw);
  s.s_e_total.assign(n, 0.0);
  return s;
}

double lorentz(double w, double c, double width) { return 1.0 / (1.0 + std::pow((w - c) / width, 2)); }

}  // namespace

TEST_CASE("single sideband peak is located to the bin") {
  auto s = axis(801, 1.0);
  for (std::size_t i = 0; i < s.size(); ++i) s.s_e_total[i] = lorentz(s.omega[i], 123.0, 20.0) + lorentz(s.omega[i], 0, 3) * 100;
  const auto r = sideband_peak(s, 30.0, 390.0);
  CHECK(r.peak_detuning == doctest::Approx(123.0));
  CHECK(r.structure == PeakStructure::single);
  CHECK_FALSE(r.secondary_detuning.has_value());
  CHECK(to_string(r.structure) == "single");
  // Mirrored band works on the Stokes side.
  const auto l = sideband_peak(s, -390.0, -30.0);
  CHECK(l.peak_value < r.peak_value);
}

TEST_CASE("two separated lobes are classified as a double peak") {
  auto s = axis(801, 1.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    s.s_e_total[i] = lorentz(s.omega[i], 100, 10) + 0.7 * lorentz(s.omega[i], 220, 10);
  }
  const auto r = sideband_peak(s, 20, 390);
  CHECK(r.structure == PeakStructure::double_peak);
  CHECK(r.peak_detuning == doctest::Approx(100));
  REQUIRE(r.secondary_detuning.has_value());
  CHECK(*r.secondary_detuning == doctest::Approx(220));
  CHECK(to_string(r.structure) == "double");
  // A weak shoulder does not count.
  for (std::size_t i = 0; i < s.size(); ++i) {
    s.s_e_total[i] = lorentz(s.omega[i], 100, 10) + 0.2 * lorentz(s.omega[i], 220, 10);
  }
  CHECK(sideband_peak(s, 20, 390).structure == PeakStructure::single);
  // Two lobes without a real dip between them are a single broad peak.
  for (std::size_t i = 0; i < s.size(); ++i) {
    s.s_e_total[i] = lorentz(s.omega[i], 100, 40) + 0.9 * lorentz(s.omega[i], 130, 40);
  }
  CHECK(sideband_peak(s, 20, 390).structure == PeakStructure::single);
}

TEST_CASE("smoothing suppresses bin noise without shifting the peak") {
  auto s = axis(2001, 1.0);
  std::vector<double> z(s.size());
  NormalStream(4, 0, 0, 0).fill(z.data(), z.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    // Exponentially distributed speckle, as in a single-realization spectrum.
    const double u = 0.5 * (std::erf(z[i] / std::sqrt(2.0)) + 1.0);
    s.s_e_total[i] = lorentz(s.omega[i], 400, 60) * -std::log(std::max(1e-300, 1.0 - u));
  }
  SidebandOptions opts;
  opts.smoothing_bins = 25;
  const auto r = sideband_peak(s, 100, 990, opts);
  CHECK(std::abs(r.peak_detuning - 400) < 30);
  CHECK(r.structure == PeakStructure::single);

  const std::vector<double> v{1, 2, 3, 4, 5};
  const auto m = smooth(v, 1);
  CHECK(m[0] == doctest::Approx(1.5));
  CHECK(m[2] == doctest::Approx(3.0));
  CHECK(m[4] == doctest::Approx(4.5));
  CHECK(smooth(v, 0) == v);
}

TEST_CASE("band validation") {
  auto s = axis(101, 1.0);
  SidebandOptions opts;
  opts.pump_sigma_omega = 5.0;
  CHECK_THROWS_AS(sideband_peak(s, 10, 40, opts), InvalidArgument);  // 10 < 15
  CHECK_NOTHROW(sideband_peak(s, 16, 40, opts));
  CHECK_NOTHROW(sideband_peak(s, -40, -16, opts));
  CHECK_THROWS_AS(sideband_peak(s, 400, 500), InvalidArgument);
  const std::vector<double> short_values(3);
  CHECK_THROWS_AS(sideband_peak(s, short_values, 1, 10), InvalidArgument);
  // Reversed limits are accepted.
  CHECK(sideband_peak(s, 40, 16).band_lo == 16);
}

TEST_CASE("quantum versus classical comparison") {
  auto q = axis(201, 1.0), c = axis(201, 1.0);
  const double n0 = 0.5, G = 2.0;
  q.n_total.resize(201);
  c.n_total.resize(201);
  for (std::size_t i = 0; i < 201; ++i) {
    const double shape = lorentz(q.omega[i], 50, 10);
    const double g = G * shape;
    q.n_total[i] = mi_growth_quantum(0, 0, g).first;
    c.n_total[i] = mi_growth_classical(n0, n0, g).first;
  }
  CHECK(compare_quantum_classical(q, c, n0, 10, 90) == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
  auto other = axis(101, 1.0);
  other.n_total.assign(101, 1.0);
  CHECK_THROWS_AS(compare_quantum_classical(q, other, n0, 10, 90), InvalidArgument);
  auto empty = axis(201, 1.0);
  CHECK_THROWS_AS(compare_quantum_classical(q, empty, n0, 10, 90), InvalidArgument);
}
