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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fibermi/core.hpp"
#include "fibermi/noise.hpp"
#include "fibermi/units.hpp"

namespace fibermi {

/// Raw `[section] key = value` text with source line numbers.
struct ConfigEntry {
  std::string value;
  std::size_t line = 0;
};

struct ConfigDocument {
  std::map<std::string, std::map<std::string, ConfigEntry>> sections;

  /// Line-oriented format. '#' starts a comment anywhere on a line.
  static ConfigDocument parse_text(std::string_view text);
  /// {"section": {"key": "value with unit" | number | bool | [..]}}. A run
  /// manifest is accepted too: its "config" member is used.
  static ConfigDocument parse_json(std::string_view text);
  /// Picks the format from the first non-blank character.
  static ConfigDocument parse(std::string_view text);
  static ConfigDocument load(const std::string& path);

  const ConfigEntry* find(const std::string& section, const std::string& key) const;
};

enum class ModelChoice { automatic, scalar, vector };

enum class ClassicalLevel { none, amplitude, photons_per_ghz, photons_per_mode };

enum class SweepParameter {
  beat_length,
  fiber_length,
  classical_photons_per_ghz,
  classical_photons_per_mode,
  t_fwhm,
};
std::string to_string(SweepParameter p);

/// Grid entries may be left out; they are then sized from the window and
/// Nyquist rules (and the step from the nonlinear and beat lengths).
struct GridSpec {
  std::optional<std::size_t> n_time;
  std::optional<double> window;
  std::optional<double> step;
};

struct AnalysisSpec {
  std::optional<double> band_lo, band_hi;  // signed detuning [rad/s]
  std::size_t smoothing_bins = 0;
  double secondary_fraction = 0.5;
  double dip_fraction = 0.8;
};

struct SweepSpec {
  SweepParameter parameter = SweepParameter::beat_length;
  std::vector<double> values;  // SI, or photon levels
};

struct ScenarioConfig {
  std::string name = "scenario";
  FiberParams fiber;
  std::optional<double> beat_length;  // replaces delta_beta0/1 when set
  PulseSpec pulse;
  GridSpec grid;

  bool quantum_noise = true;
  ClassicalNoiseModel classical_model = ClassicalNoiseModel::none;
  ClassicalLevel classical_level = ClassicalLevel::none;
  double classical_value = 0.0;
  std::uint64_t seed = 0;

  ModelChoice model = ModelChoice::automatic;
  std::size_t n_realizations = 50;
  std::vector<double> lengths;  // output lengths [m]; default {fiber.length}
  AnalysisSpec analysis;
  std::optional<SweepSpec> sweep;
};

/// Builds a scenario; every physical value must carry a unit of the right
/// dimension. Throws ConfigError naming the offending line.
ScenarioConfig parse_scenario(const ConfigDocument& doc);
ScenarioConfig load_scenario(const std::string& path);

/// Fully resolved configuration (SI units, 17 significant digits). Parsing
/// it back yields the same scenario.
ConfigDocument to_document(const ScenarioConfig& cfg);
std::string to_config_text(const ConfigDocument& doc);

/// Parses a quantity and checks its dimension; messages name `what`.
double parse_checked(std::string_view text, const Dimension& dim, const std::string& what, std::size_t line);

}  // namespace fibermi
