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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fibermi/config.hpp"
#include "fibermi/ensemble.hpp"
#include "fibermi/sideband.hpp"

namespace fibermi {

/// A scenario with every derived quantity fixed: grid, model, noise
/// amplitude, output steps and analysis band.
struct ResolvedRun {
  ScenarioConfig config;  // with the resolved grid written back
  FiberParams fiber;
  PulseSpec pulse;
  Grid grid;
  Model model = Model::scalar;
  NoiseSpec noise;
  std::vector<std::size_t> output_steps;  // one per config.lengths entry
  Band band;                              // positive-detuning sideband band
  SidebandOptions sideband;
  std::vector<std::string> warnings;
};

/// Sizes the grid where the config leaves it open, converts the classical
/// noise level and checks the window and Nyquist rules (PhysicsError).
ResolvedRun resolve(const ScenarioConfig& cfg);

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> realizations;
  std::size_t threads = 1;
  std::string out_dir;  // empty: nothing is written
};

/// Both sides of the spectrum analysed over the configured band.
struct LengthReport {
  double z = 0.0;
  SidebandReport anti_stokes;  // positive detuning
  SidebandReport stokes;       // negative detuning
  double anti_stokes_n = 0.0, stokes_n = 0.0;
  /// (1/2 pi) int S_E dW over the band, per axis and side.
  double x_stokes = 0.0, x_anti_stokes = 0.0, y_stokes = 0.0, y_anti_stokes = 0.0;
};

struct ScenarioOutcome {
  ResolvedRun run;
  EnsembleResult ensemble;
  std::vector<LengthReport> reports;
  double scatter_db = 0.0;
  double wall_seconds = 0.0;
  std::vector<std::string> files;
};

ScenarioOutcome run_scenario(const ScenarioConfig& cfg, const RunOptions& opts);

struct SweepRow {
  double value = 0.0;
  double delta_beta0 = 0.0;
  double peak_s_e = 0.0;
  double peak_n = 0.0;
  double peak_detuning = 0.0;
  PeakStructure structure = PeakStructure::single;
};

struct SweepOutcome {
  std::vector<SweepRow> rows;
  std::vector<ScenarioOutcome> runs;  // one per value (a single run for fiber_length)
  std::vector<std::string> files;
};

SweepOutcome run_sweep(const ScenarioConfig& cfg, const RunOptions& opts);

/// Fixed column order, ascending detuning, %.16e.
std::string spectrum_csv(const EnsembleSpectrum& spec);
std::string sweep_csv(SweepParameter parameter, const std::vector<SweepRow>& rows);
LengthReport analyse_length(const EnsembleSpectrum& spec, const ResolvedRun& run);

}  // namespace fibermi
