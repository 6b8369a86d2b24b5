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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fibermi/core.hpp"
#include "fibermi/engine.hpp"
#include "fibermi/noise.hpp"
#include "fibermi/spectrum.hpp"

namespace fibermi {

/// Detuning interval [lo, hi] in rad/s.
struct Band {
  double lo = 0.0;
  double hi = 0.0;
};

struct EnsembleConfig {
  FiberParams fiber;
  PulseSpec pulse;
  Grid grid;
  NoiseSpec noise;
  Model model = Model::scalar;
  std::size_t n_realizations = 50;
  std::size_t threads = 1;
  /// Extra lengths (as step counts) to record besides z = L.
  std::vector<std::size_t> snapshot_steps;
  /// Bands whose per-realization mean total S_E is kept for error analysis.
  std::vector<Band> probes;
};

struct EnsembleResult {
  std::vector<EnsembleSpectrum> spectra;  // one per snapshot, ascending z
  std::vector<std::size_t> snapshot_steps;
  std::size_t n_requested = 0;
  std::size_t discarded = 0;
  std::vector<std::uint32_t> discarded_indices;
  /// probe_values[snapshot][probe][kept realization]
  std::vector<std::vector<std::vector<double>>> probe_values;
  /// Total A^dag A energy per kept realization at z = 0 and at each snapshot.
  std::vector<cplx> energy_in;
  std::vector<std::vector<cplx>> energy_out;
};

/// Runs n_realizations independent trajectories and averages their spectra.
/// Realizations are evaluated in batches of `threads` and reduced in index
/// order, so the result is bit-identical for any thread count. Diverging
/// trajectories are discarded and counted; NumericError if none survive.
EnsembleResult run_ensemble(const EnsembleConfig& config);

}  // namespace fibermi
