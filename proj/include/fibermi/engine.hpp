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
#include <functional>
#include <vector>

#include "fibermi/core.hpp"
#include "fibermi/fft.hpp"
#include "fibermi/noise.hpp"

namespace fibermi {

/// Scalar integrates only the x fields (single polarization);
/// vector integrates the four coupled fields.
enum class Model { scalar, vector };

/// Isotropic fiber with the pump on one axis reduces to the scalar equation.
Model auto_model(const FiberParams& fiber, const PulseSpec& pulse);

/// Per-bin spectral multipliers for a propagation distance dz, in FFT order,
/// already divided by n_time so that transform -> multiply -> inverse is exact.
/// x: exp(i (beta2/2) W^2 dz + i (dbeta1/2) W dz + i (dbeta0/2) dz)
/// y: exp(i (beta2/2) W^2 dz - i (dbeta1/2) W dz - i (dbeta0/2) dz)
/// The daggered fields use the complex conjugates.
struct LinearOperator {
  ComplexArray x, y;
  double dz = 0.0;

  static LinearOperator build(const Grid& grid, const FiberParams& fiber, double dz);
};

/// Lab-frame fields to the co-rotating frame at position s.z and back.
void to_corotating_frame(FieldState& s, double delta_beta0);
void from_corotating_frame(FieldState& s, double delta_beta0);

void linear_step(FieldState& s, const LinearOperator& op, const Fft& fft, Model model);

/// Exact Kerr flow: A *= exp(i g A^dag A h), A^dag *= exp(-i g A^dag A h).
void nonlinear_step_scalar(FieldState& s, double gamma, double h);

/// Exact Kerr flow of the coupled equations in the co-rotating frame, solved
/// in the circular basis where both circular intensities are invariant.
void nonlinear_step_vector(FieldState& s, double gamma, double b, double h);

/// Euler-Maruyama increment of the multiplicative vacuum noise. The scalar
/// model uses channels 0 and 1 only.
void stochastic_step(FieldState& s, double gamma, double b, double omega0, double h,
                     const NoiseDraw& draw, Model model);

struct PropagationOptions {
  Model model = Model::scalar;
  /// Step counts (1..n_steps) at which a lab-frame copy is recorded. The final
  /// step is always recorded.
  std::vector<std::size_t> snapshot_steps;
  /// Check for non-finite values every this many steps (and at every snapshot).
  std::size_t finite_check_interval = 32;
};

struct PropagationResult {
  std::vector<FieldState> snapshots;  // ascending z, last one at z = L
  std::vector<std::size_t> snapshot_steps;
};

/// Strang-split propagation over grid.n_steps steps of size grid.h:
/// half linear, then per step nonlinear, noise, linear, with consecutive
/// half steps merged. `state0` is the lab-frame input at z = 0.
/// Throws NumericError with the offending step on non-finite values.
PropagationResult propagate_realization(const FieldState& state0, const FiberParams& fiber,
                                        const Grid& grid, const NoiseSpec& noise,
                                        std::uint32_t realization_index, const PropagationOptions& opts,
                                        const Fft& fft);

/// Adds the configured classical spectral noise to a z = 0 state (both axes
/// in the vector model). The daggered spectra receive the conjugate noise.
void apply_classical_noise(FieldState& s, const Grid& grid, const NoiseSpec& noise,
                           const RealizationRng& rng, const Fft& fft, Model model);

bool all_finite(const FieldState& s);

}  // namespace fibermi
