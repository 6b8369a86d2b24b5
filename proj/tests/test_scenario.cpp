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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fibermi/config.hpp"
#include "fibermi/error.hpp"
#include "fibermi/scenario.hpp"

using namespace fibermi;
namespace fs = std::filesystem;

namespace {

const char* kSmall = R"([scenario]
name = cli_small
[fiber]
lambda0 = 1550 nm
beta2 = -17 ps^2/km
gamma = 2 /W/km
length = 200 m
[pulse]
peak_power = 2 W
t_fwhm = 100 ps
[noise]
seed = 21
[run]
realizations = 4
lengths = 100 m, 200 m
)";

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("fibermi_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path write(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int cli(const std::string& args) {
  const std::string cmd = std::string("\"") + FIBERMI_CLI + "\" " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST_CASE("run writes spectra, sideband reports and a manifest") {
  const fs::path dir = scratch("run");
  const fs::path cfg = write(dir / "small.cfg", kSmall);
  REQUIRE(cli("run --config " + cfg.string() + " --out " + (dir / "a").string() + " --threads 1") == 0);
  for (const char* f : {"spectrum_L100m.csv", "spectrum_L200m.csv", "sideband_L100m.json", "sideband_L200m.json",
                        "manifest.json"}) {
    CAPTURE(f);
    CHECK(fs::exists(dir / "a" / f));
  }
  const std::string csv = slurp(dir / "a" / "spectrum_L200m.csv");
  CHECK(csv.rfind("detuning_rad_per_s,detuning_GHz,s_e_x,s_e_y,s_e_total,n_x,n_y,n_total\n", 0) == 0);
  const auto manifest = nlohmann::json::parse(slurp(dir / "a" / "manifest.json"));
  const auto resolved = resolve(parse_scenario(ConfigDocument::parse_text(kSmall)));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(resolved.grid.n_time) + 1);
  CHECK(manifest["master_seed"] == 21);
  CHECK(manifest["realizations_used"] == 4);
  CHECK(manifest["discarded_realizations"] == 0);
  CHECK(manifest.contains("wall_time_s"));
  CHECK(manifest.contains("scatter_estimate_db"));
  CHECK(manifest["config"]["grid"].contains("n_time"));
  const auto side = nlohmann::json::parse(slurp(dir / "a" / "sideband_L200m.json"));
  CHECK(side.contains("anti_stokes"));

  // The manifest alone reproduces the run.
  REQUIRE(cli("run --config " + (dir / "a" / "manifest.json").string() + " --out " + (dir / "b").string() +
              " --threads 1") == 0);
  CHECK(slurp(dir / "a" / "spectrum_L200m.csv") == slurp(dir / "b" / "spectrum_L200m.csv"));
  CHECK(slurp(dir / "a" / "sideband_L100m.json") == slurp(dir / "b" / "sideband_L100m.json"));
}

TEST_CASE("outputs are byte-identical across thread counts and seeds matter") {
  const fs::path dir = scratch("threads");
  const fs::path cfg = write(dir / "small.cfg", kSmall);
  REQUIRE(cli("run --config " + cfg.string() + " --out " + (dir / "t1").string() + " --threads 1") == 0);
  REQUIRE(cli("run --config " + cfg.string() + " --out " + (dir / "t3").string() + " --threads 3") == 0);
  REQUIRE(setenv("FIBERMI_THREADS", "2", 1) == 0);
  REQUIRE(cli("run --config " + cfg.string() + " --out " + (dir / "env").string()) == 0);
  unsetenv("FIBERMI_THREADS");
  for (const char* f : {"spectrum_L100m.csv", "spectrum_L200m.csv", "sideband_L200m.json"}) {
    CAPTURE(f);
    CHECK(slurp(dir / "t1" / f) == slurp(dir / "t3" / f));
    CHECK(slurp(dir / "t1" / f) == slurp(dir / "env" / f));
  }
  REQUIRE(cli("run --config " + cfg.string() + " --out " + (dir / "s").string() + " --seed 22 --threads 1") == 0);
  CHECK(slurp(dir / "t1" / "spectrum_L200m.csv") != slurp(dir / "s" / "spectrum_L200m.csv"));
  const auto manifest = nlohmann::json::parse(slurp(dir / "s" / "manifest.json"));
  CHECK(manifest["master_seed"] == 22);
}

TEST_CASE("exit codes follow the error category") {
  const fs::path dir = scratch("codes");
  std::string bad_unit(kSmall);
  bad_unit.replace(bad_unit.find("2 W"), 3, "2 m");
  CHECK(cli("run --config " + write(dir / "unit.cfg", bad_unit).string() + " --out " + dir.string()) == 2);
  std::string coarse(kSmall);
  coarse += "[grid]\nn_time = 64\nwindow = 2 ns\n";
  CHECK(cli("run --config " + write(dir / "coarse.cfg", coarse).string() + " --out " + dir.string()) == 3);
  CHECK(cli("run --config " + (dir / "missing.cfg").string() + " --out " + dir.string()) == 1);
  CHECK(cli("frobnicate") == 1);
  CHECK(cli("sweep --config " + write(dir / "nosweep.cfg", kSmall).string() + " --out " + dir.string()) == 2);
}

TEST_CASE("sweep writes a summary row per value") {
  const fs::path dir = scratch("sweep");
  const std::string text = std::string(kSmall) + "[sweep]\nparameter = fiber_length\nvalues = 50 m, 100 m, 200 m\n";
  REQUIRE(cli("sweep --config " + write(dir / "s.cfg", text).string() + " --out " + (dir / "o").string() +
              " --threads 1") == 0);
  const std::string csv = slurp(dir / "o" / "sweep_summary.csv");
  CHECK(csv.rfind("fiber_length,delta_beta0_per_m,peak_s_e,peak_n,peak_detuning_rad_per_s,structure\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(fs::exists(dir / "o" / "spectrum_002.csv"));
  CHECK(fs::exists(dir / "o" / "manifest.json"));
}

TEST_CASE("in-process scenario: sidebands grow with length on both sides") {
  auto cfg = parse_scenario(ConfigDocument::parse_text(kSmall));
  RunOptions opts;
  opts.realizations = 6;
  const auto out = run_scenario(cfg, opts);
  REQUIRE(out.reports.size() == 2);
  CHECK(out.reports[1].anti_stokes_n > out.reports[0].anti_stokes_n);
  CHECK(out.reports[1].stokes_n > out.reports[0].stokes_n);
  CHECK(out.reports[0].stokes.peak_detuning < 0.0);
  CHECK(out.reports[0].anti_stokes.peak_detuning > 0.0);
  CHECK(out.files.empty());
  CHECK(out.ensemble.spectra.back().n_realizations == 6);
}
