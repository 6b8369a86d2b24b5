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

#include "fibermi/sideband.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fibermi/error.hpp"
#include "fibermi/theory.hpp"

namespace fibermi {

std::string to_string(PeakStructure s) { return s == PeakStructure::single ? "single" : "double"; }

std::vector<double> smooth(std::span<const double> values, std::size_t half) {
  std::vector<double> out(values.begin(), values.end());
  if (half == 0 || values.empty()) return out;
  const std::size_t n = values.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = i >= half ? i - half : 0;
    const std::size_t b = std::min(n - 1, i + half);
    double sum = 0.0;
    for (std::size_t k = a; k <= b; ++k) sum += values[k];
    out[i] = sum / static_cast<double>(b - a + 1);
  }
  return out;
}

SidebandReport sideband_peak(const EnsembleSpectrum& spec, std::span<const double> values, double lo,
                             double hi, const SidebandOptions& opts) {
  if (values.size() != spec.size()) throw InvalidArgument("values do not match the spectrum axis");
  if (lo > hi) std::swap(lo, hi);
  if (opts.pump_sigma_omega > 0.0) {
    const double guard = 3.0 * opts.pump_sigma_omega;
    if (!(lo > guard || hi < -guard)) {
      std::ostringstream msg;
      msg << "sideband band [" << lo << ", " << hi << "] rad/s overlaps the pump lobe (3 sigma_omega = "
          << guard << " rad/s)";
      throw InvalidArgument(msg.str());
    }
  }
  std::size_t first = spec.size(), last = 0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (spec.omega[i] >= lo && spec.omega[i] <= hi) {
      first = std::min(first, i);
      last = i;
    }
  }
  if (first > last) throw InvalidArgument("sideband band contains no frequency bins");

  // Smooth inside the band only so the pump lobe never leaks in.
  const std::vector<double> v = smooth(values.subspan(first, last - first + 1), opts.smoothing_bins);
  const std::size_t n = v.size();
  const std::size_t imax = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());

  SidebandReport r;
  r.band_lo = lo;
  r.band_hi = hi;
  r.peak_index = first + imax;
  r.peak_detuning = spec.omega[r.peak_index];
  r.peak_value = v[imax];

  // Strongest other local maximum separated from the primary by a real dip.
  double best = -1.0;
  std::size_t best_i = 0;
  // Band edges are not peaks: a tail rising into the band is not a lobe.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (i == imax) continue;
    const bool left_ok = v[i] >= v[i - 1];
    const bool right_ok = v[i] > v[i + 1];
    if (!left_ok || !right_ok) continue;
    if (v[i] < opts.secondary_fraction * v[imax]) continue;
    const std::size_t a = std::min(i, imax), b = std::max(i, imax);
    const double dip = *std::min_element(v.begin() + static_cast<std::ptrdiff_t>(a),
                                         v.begin() + static_cast<std::ptrdiff_t>(b) + 1);
    if (dip < opts.dip_fraction * std::min(v[i], v[imax]) && v[i] > best) {
      best = v[i];
      best_i = i;
    }
  }
  if (best > 0.0) {
    r.structure = PeakStructure::double_peak;
    r.secondary_detuning = spec.omega[first + best_i];
  }
  return r;
}

SidebandReport sideband_peak(const EnsembleSpectrum& spec, double lo, double hi, const SidebandOptions& opts) {
  return sideband_peak(spec, spec.s_e_total, lo, hi, opts);
}

double compare_quantum_classical(const EnsembleSpectrum& run_qu, const EnsembleSpectrum& run_cl, double n0,
                                 double lo, double hi, const SidebandOptions& opts) {
  if (run_qu.omega != run_cl.omega) throw InvalidArgument("quantum and classical runs use different grids");
  if (run_qu.n_total.empty() || run_cl.n_total.empty()) {
    throw InvalidArgument("photons per mode not filled in");
  }
  const double nq = sideband_peak(run_qu, run_qu.n_total, lo, hi, opts).peak_value;
  const double nc = sideband_peak(run_cl, run_cl.n_total, lo, hi, opts).peak_value;
  return eta_ratio(nq, nc, n0);
}

}  // namespace fibermi
