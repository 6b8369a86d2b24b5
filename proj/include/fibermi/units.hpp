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
#include <numbers>
#include <string>
#include <string_view>

namespace fibermi {

namespace constants {
inline constexpr double c = 299'792'458.0;            // m/s, exact
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double epsilon0 = 8.8541878128e-12;  // F/m
inline constexpr double pi = std::numbers::pi;
}  // namespace constants

/// Exponents of (time, length, power) for a composite SI unit. Angles are dimensionless.
struct Dimension {
  std::array<double, 3> exponent{0.0, 0.0, 0.0};

  friend bool operator==(const Dimension&, const Dimension&) = default;

  static constexpr Dimension of(double time, double length, double power) {
    return Dimension{{time, length, power}};
  }
};

namespace dims {
inline constexpr Dimension none = Dimension::of(0, 0, 0);
inline constexpr Dimension time = Dimension::of(1, 0, 0);
inline constexpr Dimension length = Dimension::of(0, 1, 0);
inline constexpr Dimension power = Dimension::of(0, 0, 1);
inline constexpr Dimension frequency = Dimension::of(-1, 0, 0);
inline constexpr Dimension inverse_length = Dimension::of(0, -1, 0);
inline constexpr Dimension time_per_length = Dimension::of(1, -1, 0);
inline constexpr Dimension dispersion = Dimension::of(2, -1, 0);       // s^2/m
inline constexpr Dimension nonlinearity = Dimension::of(0, -1, -1);    // 1/(W m)
inline constexpr Dimension spectral_amplitude = Dimension::of(1, 0, 0.5);  // W^(1/2) s
}  // namespace dims

struct Quantity {
  double value = 0.0;  // SI
  Dimension dim;
};

/// Parses a unit expression such as "ps^2/km", "W^-1 km^-1", "1/(W km)" is not
/// supported; use "/W/km". Returns the SI scale factor and dimension.
/// Throws InvalidArgument on unknown symbols.
Quantity parse_unit(std::string_view unit);

/// Parses "<number> [unit]" into SI. An empty unit means dimensionless.
Quantity parse_quantity(std::string_view text);

std::string to_string(const Dimension& d);

/// Carrier angular frequency 2 pi c / lambda0.
inline double omega_from_wavelength(double lambda0) { return 2.0 * constants::pi * constants::c / lambda0; }

}  // namespace fibermi
