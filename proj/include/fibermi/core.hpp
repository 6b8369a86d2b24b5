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

#include <complex>
#include <cstddef>
#include <cstdlib>
#include <new>
#include <string>
#include <vector>

namespace fibermi {

using cplx = std::complex<double>;

/// 64-byte aligned storage so FFT plans made for one buffer execute on any field array.
template <typename T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::size_t alignment = 64;

  AlignedAllocator() noexcept = default;
  template <typename U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    const std::size_t bytes = ((n * sizeof(T) + alignment - 1) / alignment) * alignment;
    void* p = std::aligned_alloc(alignment, bytes == 0 ? alignment : bytes);
    if (!p) throw std::bad_alloc();
    return static_cast<T*>(p);
  }
  void deallocate(T* p, std::size_t) noexcept { std::free(p); }

  template <typename U>
  bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

using ComplexArray = std::vector<cplx, AlignedAllocator<cplx>>;

// ---------------------------------------------------------------------------
// Discretization
// ---------------------------------------------------------------------------

/// Uniform time window (periodic) and propagation axis. All values SI.
///
/// Time samples sit at t_j = (j - n_time/2) tau. Frequency bins are stored in
/// FFT order: bin k holds detuning 2 pi k'/window with k' = k for k < n/2 and
/// k - n otherwise, so the axis covers [-pi/tau, pi/tau).
struct Grid {
  std::size_t n_time = 0;
  double window = 0.0;
  double tau = 0.0;
  std::size_t n_steps = 0;
  double length = 0.0;
  double h = 0.0;

  double time(std::size_t j) const;
  double omega(std::size_t k) const;
  double d_omega() const;
  double nyquist() const;
  /// Detuning in FFT order.
  std::vector<double> omega_axis() const;
  /// Bin indices ordered by increasing detuning (fftshift).
  std::vector<std::size_t> ascending_bins() const;
  /// Nearest bin to a detuning.
  std::size_t bin_of(double omega) const;
};

Grid build_grid(std::size_t n_time, double window, std::size_t n_steps, double length);

// ---------------------------------------------------------------------------
// Fiber and material
// ---------------------------------------------------------------------------

/// x is the slow axis: delta_beta0 = beta0x - beta0y, delta_beta1 = 1/v_gx - 1/v_gy.
struct FiberParams {
  double lambda0 = 1550e-9;
  double omega0 = 0.0;
  double beta2 = 0.0;
  double gamma = 0.0;
  double delta_beta0 = 0.0;
  double delta_beta1 = 0.0;
  double coupling_b = 1.0 / 3.0;
  double length = 0.0;

  bool isotropic() const { return delta_beta0 == 0.0 && delta_beta1 == 0.0; }
};

/// Fills omega0 from lambda0 and validates ranges.
FiberParams make_fiber(double lambda0, double beta2, double gamma, double delta_beta0,
                       double delta_beta1, double length, double coupling_b = 1.0 / 3.0);

struct MaterialParams {
  double chi_xxxx = 0.0;  // m^2/V^2
  double n0 = 0.0;
  double a_eff = 0.0;     // m^2
};

/// gamma = 3 omega0 chi_xxxx / (4 eps0 n0^2 c^2 A_eff).
double gamma_from_material(const MaterialParams& mat, double omega0);

// ---------------------------------------------------------------------------
// Pump
// ---------------------------------------------------------------------------

/// Unchirped Gaussian pump, P(t) = p0 exp(-t^2 / 2 sigma_t^2).
struct PulseSpec {
  double p0 = 0.0;
  double t_fwhm = 0.0;
  double theta = 0.0;  // angle to the slow (x) axis

  double sigma_t() const;
  double sigma_omega() const { return 0.5 / sigma_t(); }
  double energy() const;
};

/// The four positive-P amplitudes [W^(1/2)] at position z. The daggered arrays
/// are independent fields, not conjugates, once quantum noise has acted.
struct FieldState {
  ComplexArray ax, ax_dag, ay, ay_dag;
  double z = 0.0;

  static FieldState zeros(std::size_t n);
  std::size_t size() const { return ax.size(); }
};

FieldState make_gaussian_pump(const PulseSpec& pulse, const Grid& grid);

/// Total sum_j (A^dag A) tau over both axes; complex in general.
cplx field_energy(const FieldState& s, double tau);

// ---------------------------------------------------------------------------
// Grid admissibility
// ---------------------------------------------------------------------------

/// Window needed to keep the pulse and walked-off sidebands inside the
/// periodic box over `length`: 8 sigma_t + |delta_beta1| L + sqrt(8 |beta2 delta_beta0|) L.
double required_window(const FiberParams& fiber, const PulseSpec& pulse, double length);

/// Highest detuning the grid must resolve: the pump lobe, the scalar gain
/// band and the group-velocity matched vector sidebands. The Nyquist
/// frequency pi/tau has to exceed it.
double required_bandwidth(const FiberParams& fiber, const PulseSpec& pulse, bool vector_model);

/// Adds the phase-matched coherent-coupling band sqrt(2 dbeta0/|beta2|) of
/// the vector model. Walk-off usually suppresses it at high birefringence,
/// so falling short only produces a warning.
double recommended_bandwidth(const FiberParams& fiber, const PulseSpec& pulse, bool vector_model);

std::vector<std::string> grid_warnings(const Grid& grid, const FiberParams& fiber, const PulseSpec& pulse,
                                       bool vector_model);

/// Throws PhysicsError with an explanatory message if the grid violates the
/// window or Nyquist rule.
void check_grid(const Grid& grid, const FiberParams& fiber, const PulseSpec& pulse, bool vector_model);

}  // namespace fibermi
