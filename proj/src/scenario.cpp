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

#include "fibermi/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fibermi/error.hpp"
#include "fibermi/theory.hpp"
#include "fibermi/units.hpp"

namespace fibermi {
namespace {

constexpr double kLengthTol = 1e-9;

constexpr std::size_t kMaxAutoSamples = std::size_t{1} << 14;

std::size_t next_pow2(double x) {
  std::size_t n = 1;
  while (static_cast<double>(n) < x) n <<= 1;
  return n;
}

bool integral(double x) { return std::abs(x - std::round(x)) <= kLengthTol * std::max(1.0, std::abs(x)); }

// Largest spatial step that resolves the nonlinear length and, with
// birefringence, a beat length (steps near L_B/2 multiples alias the
// coherent coupling terms).
double max_step(const FiberParams& fiber, const PulseSpec& pulse, Model model) {
  double h = 0.01 / (fiber.gamma * pulse.p0);
  if (model == Model::vector && fiber.delta_beta0 != 0.0) {
    h = std::min(h, 2.0 * constants::pi / std::abs(fiber.delta_beta0) / 7.0);
  }
  return h;
}

std::string fmt_e(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string length_tag(double z) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "L%gm", z);
  return buf;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorCategory::invalid_argument, "cannot write " + p.string());
  out << text;
  if (!out) throw Error(ErrorCategory::invalid_argument, "failed writing " + p.string());
}

nlohmann::json side_json(const SidebandReport& r, double n) {
  nlohmann::json j;
  j["peak_detuning_rad_per_s"] = r.peak_detuning;
  j["peak_detuning_GHz"] = r.peak_detuning / (2.0 * constants::pi) * 1e-9;
  j["peak_s_e"] = r.peak_value;
  j["peak_n"] = n;
  j["band_rad_per_s"] = {r.band_lo, r.band_hi};
  j["structure"] = to_string(r.structure);
  if (r.secondary_detuning) j["secondary_detuning_rad_per_s"] = *r.secondary_detuning;
  return j;
}

nlohmann::json document_json(const ConfigDocument& doc) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [sec, keys] : doc.sections) {
    for (const auto& [k, e] : keys) j[sec][k] = e.value;
  }
  return j;
}

// Median relative standard error of S_E over the sideband band, in dB.
double scatter_estimate(const EnsembleSpectrum& s, const Band& band) {
  std::vector<double> rel;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double w = std::abs(s.omega[i]);
    if (w >= band.lo && w <= band.hi && s.s_e_total[i] > 0.0) {
      rel.push_back(10.0 * std::log10(1.0 + s.s_e_total_stderr[i] / s.s_e_total[i]));
    }
  }
  if (rel.empty()) return 0.0;
  std::nth_element(rel.begin(), rel.begin() + static_cast<std::ptrdiff_t>(rel.size() / 2), rel.end());
  return rel[rel.size() / 2];
}

}  // namespace

ResolvedRun resolve(const ScenarioConfig& cfg) {
  ResolvedRun r;
  r.config = cfg;
  r.fiber = cfg.fiber;
  r.pulse = cfg.pulse;
  switch (cfg.model) {
    case ModelChoice::automatic: r.model = auto_model(r.fiber, r.pulse); break;
    case ModelChoice::scalar: r.model = Model::scalar; break;
    case ModelChoice::vector: r.model = Model::vector; break;
  }
  if (r.model == Model::scalar && (!r.fiber.isotropic() || r.pulse.theta != 0.0)) {
    throw PhysicsError("the scalar model needs an isotropic fiber and a pump on the x axis");
  }
  const bool vec = r.model == Model::vector;
  const double length = r.fiber.length;

  // Window, then sampling, then step.
  // Automatic windows add 4 sigma_t to the minimum: at 4 sigma_t from the
  // centre the field edge is ~1e-2 and its kink leaks into the sideband band,
  // at 6 sigma_t it is ~1e-4.
  const double min_window = required_window(r.fiber, r.pulse, length);
  double window = cfg.grid.window.value_or(min_window + 4.0 * r.pulse.sigma_t());
  std::size_t n_time = 0;
  if (cfg.grid.n_time) {
    n_time = *cfg.grid.n_time;
  } else {
    const double bw = recommended_bandwidth(r.fiber, r.pulse, vec);
    n_time = std::max<std::size_t>(64, next_pow2(window * bw / constants::pi));
    if (n_time > kMaxAutoSamples) {
      // Over budget: give back window margin before giving up bandwidth.
      n_time = kMaxAutoSamples;
      if (!cfg.grid.window) {
        window = std::max(min_window, std::min(window, static_cast<double>(n_time) * constants::pi / bw));
      }
    }
  }
  std::size_t n_steps = 0;
  if (cfg.grid.step) {
    const double ratio = length / *cfg.grid.step;
    if (!integral(ratio) || std::round(ratio) < 1.0) {
      throw ConfigError("grid.step does not divide fiber.length into a whole number of steps");
    }
    n_steps = static_cast<std::size_t>(std::llround(ratio));
  } else {
    n_steps = static_cast<std::size_t>(std::ceil(length / max_step(r.fiber, r.pulse, r.model) - 1e-9));
    n_steps = std::max<std::size_t>(n_steps, 1);
    // Every output length has to land on a step boundary.
    for (std::size_t tries = 0;; ++n_steps, ++tries) {
      bool ok = true;
      for (double l : cfg.lengths) ok = ok && integral(l / length * static_cast<double>(n_steps));
      if (ok) break;
      if (tries > 1000000) throw ConfigError("cannot find a step that divides all run.lengths; set grid.step");
    }
  }
  try {
    r.grid = build_grid(n_time, window, n_steps, length);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("[grid] ") + e.what());
  }
  check_grid(r.grid, r.fiber, r.pulse, vec);
  if (r.grid.window < 8.0 * r.pulse.sigma_t()) throw PhysicsError("window shorter than 8 sigma_t");
  r.warnings = grid_warnings(r.grid, r.fiber, r.pulse, vec);
  r.config.grid = {r.grid.n_time, r.grid.window, r.grid.h};

  for (double l : cfg.lengths) {
    const double k = l / r.grid.h;
    if (!integral(k)) {
      std::ostringstream msg;
      msg << "output length " << l << " m is not a multiple of the step " << r.grid.h << " m";
      throw ConfigError(msg.str());
    }
    r.output_steps.push_back(static_cast<std::size_t>(std::llround(k)));
  }

  // Noise.
  r.noise.quantum_enabled = cfg.quantum_noise;
  r.noise.master_seed = cfg.seed;
  r.noise.classical_model = cfg.classical_model;
  switch (cfg.classical_level) {
    case ClassicalLevel::none: r.noise.classical_amplitude = 0.0; break;
    case ClassicalLevel::amplitude: r.noise.classical_amplitude = cfg.classical_value; break;
    case ClassicalLevel::photons_per_ghz:
      r.noise.classical_amplitude = amplitude_from_photons_per_hz(cfg.classical_value * 1e-9, r.fiber.omega0);
      break;
    case ClassicalLevel::photons_per_mode:
      r.noise.classical_amplitude =
          amplitude_from_photons_per_mode(cfg.classical_value, r.fiber.omega0, r.pulse.sigma_omega());
      break;
  }

  // Sideband band.
  const double nyq = r.grid.nyquist();
  if (cfg.analysis.band_lo) {
    r.band = {std::abs(*cfg.analysis.band_lo), std::abs(*cfg.analysis.band_hi)};
    if (r.band.lo > r.band.hi) std::swap(r.band.lo, r.band.hi);
  } else {
    double estimate = 0.0;
    double hi = 0.98 * nyq;
    if (r.fiber.beta2 < 0.0) {
      const auto p = scalar_mi_gain(r.fiber.gamma, r.pulse.p0, r.fiber.beta2);
      estimate = p.omega_max;
      hi = std::min(hi, 1.3 * p.gain_band_upper);
    }
    if (vec && r.fiber.beta2 != 0.0) {
      const double b2 = std::abs(r.fiber.beta2);
      for (double e : {std::abs(r.fiber.delta_beta1) / b2, std::sqrt(2.0 * std::abs(r.fiber.delta_beta0) / b2)}) {
        if (e < nyq && e > 10.0 * r.pulse.sigma_omega()) estimate = std::max(estimate, e);
      }
    }
    const double spm = r.fiber.gamma * r.pulse.p0 * length / r.pulse.sigma_t();
    r.band.lo = std::max({10.0 * r.pulse.sigma_omega(), 0.2 * estimate, 3.0 * spm});
    r.band.hi = hi;
    if (!(r.band.lo < r.band.hi)) {
      throw PhysicsError("no sideband band clear of the pump lobe fits below the Nyquist detuning; "
                         "set analysis.band_lo/band_hi or refine the grid");
    }
  }
  r.sideband.smoothing_bins = cfg.analysis.smoothing_bins;
  r.sideband.secondary_fraction = cfg.analysis.secondary_fraction;
  r.sideband.dip_fraction = cfg.analysis.dip_fraction;
  r.sideband.pump_sigma_omega = r.pulse.sigma_omega();
  return r;
}

LengthReport analyse_length(const EnsembleSpectrum& spec, const ResolvedRun& run) {
  LengthReport rep;
  rep.z = spec.z;
  rep.anti_stokes = sideband_peak(spec, run.band.lo, run.band.hi, run.sideband);
  rep.stokes = sideband_peak(spec, -run.band.hi, -run.band.lo, run.sideband);
  const double to_n = run.pulse.sigma_omega() / (constants::hbar * run.fiber.omega0);
  rep.anti_stokes_n = rep.anti_stokes.peak_value * to_n;
  rep.stokes_n = rep.stokes.peak_value * to_n;
  const double dw = spec.d_omega() / (2.0 * constants::pi);
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double w = spec.omega[i];
    if (std::abs(w) < run.band.lo || std::abs(w) > run.band.hi) continue;
    if (w > 0.0) {
      rep.x_anti_stokes += spec.s_e_x[i] * dw;
      rep.y_anti_stokes += spec.s_e_y[i] * dw;
    } else {
      rep.x_stokes += spec.s_e_x[i] * dw;
      rep.y_stokes += spec.s_e_y[i] * dw;
    }
  }
  return rep;
}

std::string spectrum_csv(const EnsembleSpectrum& s) {
  std::string out = "detuning_rad_per_s,detuning_GHz,s_e_x,s_e_y,s_e_total,n_x,n_y,n_total\n";
  out.reserve(out.size() + s.size() * 8 * 24);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double cols[] = {s.omega[i], s.omega[i] / (2.0 * constants::pi) * 1e-9, s.s_e_x[i], s.s_e_y[i],
                           s.s_e_total[i], s.n_x[i], s.n_y[i], s.n_total[i]};
    for (std::size_t c = 0; c < 8; ++c) {
      out += fmt_e(cols[c]);
      out += c + 1 < 8 ? ',' : '\n';
    }
  }
  return out;
}

std::string sweep_csv(SweepParameter parameter, const std::vector<SweepRow>& rows) {
  std::string out = to_string(parameter) +
                    ",delta_beta0_per_m,peak_s_e,peak_n,peak_detuning_rad_per_s,structure\n";
  for (const auto& r : rows) {
    out += fmt_e(r.value) + "," + fmt_e(r.delta_beta0) + "," + fmt_e(r.peak_s_e) + "," + fmt_e(r.peak_n) + "," +
           fmt_e(r.peak_detuning) + "," + to_string(r.structure) + "\n";
  }
  return out;
}

ScenarioOutcome run_scenario(const ScenarioConfig& cfg_in, const RunOptions& opts) {
  ScenarioConfig cfg = cfg_in;
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.realizations) {
    if (*opts.realizations == 0) throw InvalidArgument("realizations must be at least 1");
    cfg.n_realizations = *opts.realizations;
  }
  ScenarioOutcome out;
  out.run = resolve(cfg);
  const auto t0 = std::chrono::steady_clock::now();

  EnsembleConfig ec;
  ec.fiber = out.run.fiber;
  ec.pulse = out.run.pulse;
  ec.grid = out.run.grid;
  ec.noise = out.run.noise;
  ec.model = out.run.model;
  ec.n_realizations = cfg.n_realizations;
  ec.threads = std::max<std::size_t>(1, opts.threads);
  ec.snapshot_steps = out.run.output_steps;
  out.ensemble = run_ensemble(ec);
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  // Only the requested lengths are reported (z = L is always simulated).
  std::vector<const EnsembleSpectrum*> wanted;
  for (std::size_t step : out.run.output_steps) {
    const auto it = std::find(out.ensemble.snapshot_steps.begin(), out.ensemble.snapshot_steps.end(), step);
    wanted.push_back(&out.ensemble.spectra[static_cast<std::size_t>(it - out.ensemble.snapshot_steps.begin())]);
  }
  for (const auto* s : wanted) out.reports.push_back(analyse_length(*s, out.run));
  out.scatter_db = scatter_estimate(*wanted.back(), out.run.band);

  if (opts.out_dir.empty()) return out;
  namespace fs = std::filesystem;
  const fs::path dir(opts.out_dir);
  fs::create_directories(dir);
  nlohmann::json reports = nlohmann::json::array();
  for (std::size_t i = 0; i < wanted.size(); ++i) {
    const auto& s = *wanted[i];
    const auto& rep = out.reports[i];
    const std::string tag = length_tag(out.run.config.lengths[i]);
    const std::string csv_name = "spectrum_" + tag + ".csv";
    write_file(dir / csv_name, spectrum_csv(s));
    nlohmann::json j;
    j["z_m"] = s.z;
    j["n_realizations"] = s.n_realizations;
    j["anti_stokes"] = side_json(rep.anti_stokes, rep.anti_stokes_n);
    j["stokes"] = side_json(rep.stokes, rep.stokes_n);
    j["band_energy_J"] = {{"x_stokes", rep.x_stokes},
                          {"x_anti_stokes", rep.x_anti_stokes},
                          {"y_stokes", rep.y_stokes},
                          {"y_anti_stokes", rep.y_anti_stokes}};
    if (out.run.fiber.beta2 < 0.0) {
      j["omega_max_theory_rad_per_s"] =
          scalar_mi_gain(out.run.fiber.gamma, out.run.pulse.p0, out.run.fiber.beta2).omega_max;
    }
    const std::string rep_name = "sideband_" + tag + ".json";
    write_file(dir / rep_name, j.dump(2) + "\n");
    out.files.push_back(csv_name);
    out.files.push_back(rep_name);
    reports.push_back(j);
  }

  nlohmann::json m;
  m["tool"] = "fibermi";
  m["command"] = "run";
  m["config"] = document_json(to_document(out.run.config));
  m["master_seed"] = cfg.seed;
  m["realizations_requested"] = cfg.n_realizations;
  m["realizations_used"] = cfg.n_realizations - out.ensemble.discarded;
  m["discarded_realizations"] = out.ensemble.discarded;
  m["discarded_indices"] = out.ensemble.discarded_indices;
  m["model"] = out.run.model == Model::scalar ? "scalar" : "vector";
  m["grid"] = {{"n_time", out.run.grid.n_time},
               {"window_s", out.run.grid.window},
               {"tau_s", out.run.grid.tau},
               {"n_steps", out.run.grid.n_steps},
               {"h_m", out.run.grid.h}};
  m["classical_amplitude_W05s"] = out.run.noise.classical_amplitude;
  m["scatter_estimate_db"] = out.scatter_db;
  m["warnings"] = out.run.warnings;
  m["threads"] = opts.threads;
  m["wall_time_s"] = out.wall_seconds;
  m["outputs"] = out.files;
  write_file(dir / "manifest.json", m.dump(2) + "\n");
  out.files.push_back("manifest.json");
  return out;
}

SweepOutcome run_sweep(const ScenarioConfig& cfg_in, const RunOptions& opts) {
  if (!cfg_in.sweep) throw ConfigError("the configuration has no [sweep] section");
  const SweepSpec sweep = *cfg_in.sweep;
  SweepOutcome out;
  RunOptions inner = opts;
  inner.out_dir.clear();

  auto row_from = [](double value, const ResolvedRun& run, const LengthReport& rep) {
    SweepRow row;
    row.value = value;
    row.delta_beta0 = run.fiber.delta_beta0;
    const bool as = rep.anti_stokes.peak_value >= rep.stokes.peak_value;
    const SidebandReport& best = as ? rep.anti_stokes : rep.stokes;
    row.peak_s_e = best.peak_value;
    row.peak_n = as ? rep.anti_stokes_n : rep.stokes_n;
    row.peak_detuning = best.peak_detuning;
    row.structure = best.structure;
    return row;
  };

  if (sweep.parameter == SweepParameter::fiber_length) {
    // One ensemble, recorded at every swept length.
    ScenarioConfig c = cfg_in;
    c.sweep.reset();
    c.lengths = sweep.values;
    std::sort(c.lengths.begin(), c.lengths.end());
    auto run = run_scenario(c, inner);
    for (std::size_t i = 0; i < run.reports.size(); ++i) {
      out.rows.push_back(row_from(run.run.config.lengths[i], run.run, run.reports[i]));
    }
    out.runs.push_back(std::move(run));
  } else {
    for (double v : sweep.values) {
      ScenarioConfig c = cfg_in;
      c.sweep.reset();
      switch (sweep.parameter) {
        case SweepParameter::beat_length: {
          c.beat_length = v;
          const auto b = biref_from_beat_length(v, c.fiber.lambda0);
          c.fiber.delta_beta0 = b.delta_beta0;
          c.fiber.delta_beta1 = b.delta_beta1;
          break;
        }
        case SweepParameter::classical_photons_per_ghz:
          c.classical_level = ClassicalLevel::photons_per_ghz;
          c.classical_value = v;
          if (c.classical_model == ClassicalNoiseModel::none) c.classical_model = ClassicalNoiseModel::phase;
          break;
        case SweepParameter::classical_photons_per_mode:
          c.classical_level = ClassicalLevel::photons_per_mode;
          c.classical_value = v;
          if (c.classical_model == ClassicalNoiseModel::none) c.classical_model = ClassicalNoiseModel::phase;
          break;
        case SweepParameter::t_fwhm:
          c.pulse.t_fwhm = v;
          break;
        case SweepParameter::fiber_length:
          break;
      }
      auto run = run_scenario(c, inner);
      out.rows.push_back(row_from(v, run.run, run.reports.back()));
      out.runs.push_back(std::move(run));
    }
  }

  if (opts.out_dir.empty()) return out;
  namespace fs = std::filesystem;
  const fs::path dir(opts.out_dir);
  fs::create_directories(dir);
  write_file(dir / "sweep_summary.csv", sweep_csv(sweep.parameter, out.rows));
  out.files.push_back("sweep_summary.csv");
  nlohmann::json runs = nlohmann::json::array();
  for (std::size_t i = 0; i < out.runs.size(); ++i) {
    const auto& run = out.runs[i];
    for (std::size_t k = 0; k < run.reports.size(); ++k) {
      const std::size_t idx = std::find(run.ensemble.snapshot_steps.begin(), run.ensemble.snapshot_steps.end(),
                                        run.run.output_steps[k]) -
                              run.ensemble.snapshot_steps.begin();
      char name[64];
      if (out.runs.size() == 1 || run.reports.size() == 1) {
        std::snprintf(name, sizeof name, "spectrum_%03zu.csv", out.runs.size() == 1 ? k : i);
      } else {
        std::snprintf(name, sizeof name, "spectrum_%03zu_%03zu.csv", i, k);
      }
      write_file(dir / name, spectrum_csv(run.ensemble.spectra[idx]));
      out.files.push_back(name);
    }
    nlohmann::json r;
    r["config"] = document_json(to_document(run.run.config));
    r["grid"] = {{"n_time", run.run.grid.n_time},
                 {"window_s", run.run.grid.window},
                 {"n_steps", run.run.grid.n_steps},
                 {"h_m", run.run.grid.h}};
    r["discarded_realizations"] = run.ensemble.discarded;
    r["scatter_estimate_db"] = run.scatter_db;
    r["warnings"] = run.run.warnings;
    r["wall_time_s"] = run.wall_seconds;
    runs.push_back(r);
  }
  ScenarioConfig base = cfg_in;
  if (opts.seed) base.seed = *opts.seed;
  if (opts.realizations) base.n_realizations = *opts.realizations;
  nlohmann::json m;
  m["tool"] = "fibermi";
  m["command"] = "sweep";
  m["config"] = document_json(to_document(base));
  m["master_seed"] = base.seed;
  m["sweep_parameter"] = to_string(sweep.parameter);
  m["runs"] = runs;
  m["threads"] = opts.threads;
  m["outputs"] = out.files;
  write_file(dir / "manifest.json", m.dump(2) + "\n");
  out.files.push_back("manifest.json");
  return out;
}

}  // namespace fibermi
