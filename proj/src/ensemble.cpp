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

#include "fibermi/ensemble.hpp"

#include <algorithm>
#include <exception>
#include <optional>
#include <thread>

#include "fibermi/error.hpp"

namespace fibermi {
namespace {

struct RealizationOutput {
  bool ok = false;
  std::exception_ptr failure;  // non-numeric errors are rethrown
  std::vector<SpectrumAccumulator::Sample> samples;
  std::vector<std::vector<double>> probes;  // [snapshot][probe]
  cplx energy_in{};
  std::vector<cplx> energy_out;
};

double probe_mean(const SpectrumAccumulator::Sample& s, const Grid& grid, const Band& band) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < grid.n_time; ++k) {
    const double w = grid.omega(k);
    if (w >= band.lo && w <= band.hi) {
      sum += s.x[k].real() + s.y[k].real();
      ++count;
    }
  }
  return count ? sum / static_cast<double>(count) : 0.0;
}

RealizationOutput run_one(const EnsembleConfig& cfg, std::uint32_t index, const Fft& fft,
                          const SpectrumAccumulator& shape) {
  RealizationOutput out;
  try {
    FieldState s = make_gaussian_pump(cfg.pulse, cfg.grid);
    const RealizationRng rng = derive_realization_rng(cfg.noise.master_seed, index);
    apply_classical_noise(s, cfg.grid, cfg.noise, rng, fft, cfg.model);
    out.energy_in = field_energy(s, cfg.grid.tau);
    PropagationOptions opts;
    opts.model = cfg.model;
    opts.snapshot_steps = cfg.snapshot_steps;
    const PropagationResult r = propagate_realization(s, cfg.fiber, cfg.grid, cfg.noise, index, opts, fft);
    for (const auto& snap : r.snapshots) {
      auto sample = shape.sample(snap, fft);
      std::vector<double> pv;
      for (const auto& band : cfg.probes) pv.push_back(probe_mean(sample, cfg.grid, band));
      out.probes.push_back(std::move(pv));
      out.samples.push_back(std::move(sample));
      out.energy_out.push_back(field_energy(snap, cfg.grid.tau));
    }
    out.ok = true;
  } catch (const NumericError&) {
    out.ok = false;
  } catch (...) {
    out.failure = std::current_exception();
  }
  return out;
}

}  // namespace

EnsembleResult run_ensemble(const EnsembleConfig& cfg) {
  if (cfg.n_realizations == 0) throw InvalidArgument("n_realizations must be at least 1");
  const std::size_t threads = std::clamp<std::size_t>(cfg.threads, 1, cfg.n_realizations);

  std::vector<std::size_t> marks = cfg.snapshot_steps;
  marks.push_back(cfg.grid.n_steps);
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

  std::vector<Fft> ffts;
  ffts.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) ffts.emplace_back(cfg.grid.n_time);

  std::vector<SpectrumAccumulator> acc(marks.size(), SpectrumAccumulator(cfg.grid));
  EnsembleResult res;
  res.n_requested = cfg.n_realizations;
  res.snapshot_steps = marks;
  res.probe_values.assign(marks.size(), std::vector<std::vector<double>>(cfg.probes.size()));
  res.energy_out.assign(marks.size(), {});

  std::vector<RealizationOutput> batch(threads);
  for (std::size_t start = 0; start < cfg.n_realizations; start += threads) {
    const std::size_t count = std::min(threads, cfg.n_realizations - start);
    if (count == 1) {
      batch[0] = run_one(cfg, static_cast<std::uint32_t>(start), ffts[0], acc[0]);
    } else {
      std::vector<std::thread> workers;
      workers.reserve(count);
      for (std::size_t t = 0; t < count; ++t) {
        workers.emplace_back([&, t] {
          batch[t] = run_one(cfg, static_cast<std::uint32_t>(start + t), ffts[t], acc[0]);
        });
      }
      for (auto& w : workers) w.join();
    }
    // Reduction in realization order.
    for (std::size_t t = 0; t < count; ++t) {
      auto& r = batch[t];
      if (r.failure) std::rethrow_exception(r.failure);
      if (!r.ok) {
        ++res.discarded;
        res.discarded_indices.push_back(static_cast<std::uint32_t>(start + t));
        continue;
      }
      for (std::size_t m = 0; m < marks.size(); ++m) {
        acc[m].add(r.samples[m]);
        for (std::size_t p = 0; p < cfg.probes.size(); ++p) res.probe_values[m][p].push_back(r.probes[m][p]);
        res.energy_out[m].push_back(r.energy_out[m]);
      }
      res.energy_in.push_back(r.energy_in);
      r = RealizationOutput{};
    }
  }
  if (res.discarded == cfg.n_realizations) {
    throw NumericError("every realization diverged", 0);
  }
  for (std::size_t m = 0; m < marks.size(); ++m) {
    auto spec = acc[m].result(static_cast<double>(marks[m]) * cfg.grid.h, cfg.noise.master_seed);
    fill_photons_per_mode(spec, cfg.pulse, cfg.fiber.omega0);
    res.spectra.push_back(std::move(spec));
  }
  return res;
}

}  // namespace fibermi
