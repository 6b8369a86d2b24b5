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

#include <optional>
#include <span>
#include <string>

#include "fibermi/spectrum.hpp"

namespace fibermi {

enum class PeakStructure { single, double_peak };
std::string to_string(PeakStructure s);

struct SidebandOptions {
  /// Moving-average half width in bins applied before peak search (0 = raw).
  std::size_t smoothing_bins = 0;
  /// A second local maximum counts when it reaches this fraction of the primary...
  double secondary_fraction = 0.5;
  /// ...and the minimum between the two is below this fraction of the smaller one.
  double dip_fraction = 0.8;
  /// When positive, the band must stay 3 sigma_omega clear of the pump lobe.
  double pump_sigma_omega = 0.0;
};

struct SidebandReport {
  double peak_detuning = 0.0;
  double peak_value = 0.0;  // of the (smoothed) input values
  std::size_t peak_index = 0;
  double band_lo = 0.0, band_hi = 0.0;
  PeakStructure structure = PeakStructure::single;
  std::optional<double> secondary_detuning;
};

/// Maximum of `values` (indexed like spec.omega) over detunings in [lo, hi].
/// Throws InvalidArgument for an empty band or one overlapping the pump lobe.
SidebandReport sideband_peak(const EnsembleSpectrum& spec, std::span<const double> values, double lo,
                             double hi, const SidebandOptions& opts = {});
/// Uses s_e_total.
SidebandReport sideband_peak(const EnsembleSpectrum& spec, double lo, double hi,
                             const SidebandOptions& opts = {});

/// Centered moving average with half width `half` bins (truncated at the ends).
std::vector<double> smooth(std::span<const double> values, std::size_t half);

/// eta in dB between the photons-per-mode peaks of a quantum run and a
/// classical run seeded with n0 photons per mode (half-photon rescaled).
double compare_quantum_classical(const EnsembleSpectrum& run_qu, const EnsembleSpectrum& run_cl, double n0,
                                 double lo, double hi, const SidebandOptions& opts = {});

}  // namespace fibermi
