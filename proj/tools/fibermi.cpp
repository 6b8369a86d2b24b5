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

// fibermi: run a scenario or a parameter sweep from a configuration file.
//
//   fibermi run   --config FILE [--seed N] [--realizations N] [--threads N] --out DIR
//   fibermi sweep --config FILE [--seed N] [--realizations N] [--threads N] --out DIR
//
// The thread count falls back to $FIBERMI_THREADS, then to the hardware
// concurrency. Exit codes: 0 ok, 1 usage or I/O, 2 config, 3 physics, 4 numeric.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "fibermi/config.hpp"
#include "fibermi/error.hpp"
#include "fibermi/scenario.hpp"

namespace {

std::size_t resolve_threads(std::optional<std::size_t> flag) {
  if (flag) return std::max<std::size_t>(1, *flag);
  if (const char* env = std::getenv("FIBERMI_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
    std::fprintf(stderr, "fibermi: ignoring invalid FIBERMI_THREADS=\"%s\"\n", env);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic nonlinear Schroedinger equation simulator for quantum-noise-seeded modulation instability"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> realizations, threads;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Scenario file (text or JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "Master seed (overrides the config)");
    sub->add_option("--realizations", realizations, "Ensemble size (overrides the config)");
    sub->add_option("--threads", threads, "Worker threads");
    sub->add_option("--out", out_dir, "Output directory")->required();
  };
  CLI::App* run = app.add_subcommand("run", "Run one scenario");
  CLI::App* sweep = app.add_subcommand("sweep", "Run the [sweep] section of a scenario");
  add_common(run);
  add_common(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    const fibermi::ScenarioConfig cfg = fibermi::load_scenario(config_path);
    fibermi::RunOptions opts;
    opts.seed = seed;
    opts.realizations = realizations;
    opts.threads = resolve_threads(threads);
    opts.out_dir = out_dir;
    if (run->parsed()) {
      const auto res = fibermi::run_scenario(cfg, opts);
      for (const auto& w : res.run.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
      for (const auto& r : res.reports) {
        std::printf("z = %g m  anti-Stokes peak %.4g rad/ps (n = %.4g, %s)  Stokes peak %.4g rad/ps (n = %.4g, %s)\n",
                    r.z, r.anti_stokes.peak_detuning * 1e-12, r.anti_stokes_n,
                    fibermi::to_string(r.anti_stokes.structure).c_str(), r.stokes.peak_detuning * 1e-12, r.stokes_n,
                    fibermi::to_string(r.stokes.structure).c_str());
      }
      if (res.ensemble.discarded) {
        std::fprintf(stderr, "warning: %zu realizations diverged and were discarded\n", res.ensemble.discarded);
      }
      std::printf("wrote %zu files to %s (%.1f s)\n", res.files.size(), out_dir.c_str(), res.wall_seconds);
    } else {
      if (!cfg.sweep) throw fibermi::ConfigError("the configuration has no [sweep] section");
      const auto res = fibermi::run_sweep(cfg, opts);
      for (const auto& row : res.rows) {
        std::printf("%s = %.6g  delta_beta0 = %.4g /m  peak S_E = %.4g  n = %.4g at %.4g rad/ps (%s)\n",
                    fibermi::to_string(cfg.sweep->parameter).c_str(), row.value, row.delta_beta0, row.peak_s_e,
                    row.peak_n, row.peak_detuning * 1e-12, fibermi::to_string(row.structure).c_str());
      }
      std::printf("wrote %zu files to %s\n", res.files.size(), out_dir.c_str());
    }
  } catch (const fibermi::Error& e) {
    std::fprintf(stderr, "fibermi: %s\n", e.what());
    return static_cast<int>(e.category());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "fibermi: %s\n", e.what());
    return 1;
  }
  return 0;
}
