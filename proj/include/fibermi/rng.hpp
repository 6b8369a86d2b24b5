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

#include <array>
#include <cstdint>

namespace fibermi {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). A block of
/// four 32-bit words is a pure function of (key, counter).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter ctr, Key key);
};

/// Sequence of standard normal deviates addressed by (seed, realization,
/// step, channel). Two normals are produced per Philox block via Box-Muller,
/// so sample i depends only on its address, never on how many were drawn before.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint32_t realization, std::uint64_t step, std::uint32_t channel);

  /// Fills out[0..n) with N(0,1) deviates for sample indices [0, n).
  void fill(double* out, std::size_t n) const;

  /// Pair of deviates for pair index `pair` (samples 2*pair and 2*pair+1).
  std::array<double, 2> pair(std::uint32_t pair) const;

 private:
  Philox4x32::Key key_;
  std::uint32_t realization_;
  std::uint32_t step_lo_;
  std::uint32_t channel_word_;
};

/// Channels in the per-step counter space.
namespace channel {
inline constexpr std::uint32_t quantum_base = 0;  // zeta_1..zeta_4 -> 0..3
inline constexpr std::uint32_t classical_re = 16;
inline constexpr std::uint32_t classical_im = 17;
inline constexpr std::uint32_t classical_y_re = 18;
inline constexpr std::uint32_t classical_y_im = 19;
}  // namespace channel

/// Deterministic per-realization generator handle. Cheap value type; any
/// realization may be evaluated on any thread in any order.
struct RealizationRng {
  std::uint64_t master_seed = 0;
  std::uint32_t realization = 0;

  NormalStream step_stream(std::uint64_t step, std::uint32_t channel) const {
    return NormalStream(master_seed, realization, step, channel);
  }
  /// Stream used for one-off draws at z = 0 (classical input noise).
  NormalStream initial_stream(std::uint32_t channel) const {
    return NormalStream(master_seed, realization, kInitialStep, channel);
  }

  static constexpr std::uint64_t kInitialStep = 0xFFFFFFFFull;
};

RealizationRng derive_realization_rng(std::uint64_t master_seed, std::uint32_t realization_index);

}  // namespace fibermi
