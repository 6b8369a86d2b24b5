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

#include "fibermi/units.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>

#include "fibermi/error.hpp"

namespace fibermi {
namespace {

struct BaseUnit {
  std::string_view symbol;
  double scale;
  Dimension dim;
};

constexpr BaseUnit kBaseUnits[] = {
    {"s", 1.0, dims::time},
    {"m", 1.0, dims::length},
    {"W", 1.0, dims::power},
    {"J", 1.0, Dimension::of(1, 0, 1)},
    {"Hz", 1.0, dims::frequency},
    {"rad", 1.0, dims::none},
    {"deg", constants::pi / 180.0, dims::none},
};

struct Prefix {
  std::string_view symbol;
  double scale;
};

constexpr Prefix kPrefixes[] = {
    {"f", 1e-15}, {"p", 1e-12}, {"n", 1e-9}, {"u", 1e-6}, {"\xC2\xB5", 1e-6},
    {"m", 1e-3},  {"c", 1e-2},  {"k", 1e3},  {"M", 1e6},  {"G", 1e9},  {"T", 1e12},
};

bool lookup_symbol(std::string_view sym, double& scale, Dimension& dim) {
  for (const auto& b : kBaseUnits) {
    if (sym == b.symbol) {
      scale = b.scale;
      dim = b.dim;
      return true;
    }
  }
  for (const auto& p : kPrefixes) {
    if (sym.size() > p.symbol.size() && sym.substr(0, p.symbol.size()) == p.symbol) {
      const auto rest = sym.substr(p.symbol.size());
      for (const auto& b : kBaseUnits) {
        if (rest == b.symbol && b.symbol != "deg" && b.symbol != "rad") {
          scale = p.scale * b.scale;
          dim = b.dim;
          return true;
        }
      }
    }
  }
  return false;
}

bool is_symbol_char(char ch) {
  return std::isalpha(static_cast<unsigned char>(ch)) || (static_cast<unsigned char>(ch) >= 0x80);
}

}  // namespace

Quantity parse_unit(std::string_view unit) {
  Quantity q{1.0, dims::none};
  std::size_t i = 0;
  int sign = +1;
  bool expect_term = true;
  while (i < unit.size()) {
    const char ch = unit[i];
    if (ch == ' ' || ch == '*' || ch == '\t') {
      ++i;
      continue;
    }
    if (ch == '/') {
      sign = -1;
      ++i;
      expect_term = true;
      continue;
    }
    if (ch == '1' && (i + 1 == unit.size() || !std::isdigit(static_cast<unsigned char>(unit[i + 1])))) {
      ++i;  // "1/..." placeholder
      continue;
    }
    if (!is_symbol_char(ch)) {
      throw InvalidArgument("unexpected character '" + std::string(1, ch) + "' in unit \"" +
                            std::string(unit) + "\"");
    }
    std::size_t j = i;
    while (j < unit.size() && is_symbol_char(unit[j])) ++j;
    const auto sym = unit.substr(i, j - i);
    double scale = 1.0;
    Dimension dim;
    if (!lookup_symbol(sym, scale, dim)) {
      throw InvalidArgument("unknown unit symbol \"" + std::string(sym) + "\" in \"" +
                            std::string(unit) + "\"");
    }
    double power = 1.0;
    if (j < unit.size() && unit[j] == '^') {
      ++j;
      std::size_t k = j;
      while (k < unit.size() && (std::isdigit(static_cast<unsigned char>(unit[k])) || unit[k] == '-' ||
                                 unit[k] == '+' || unit[k] == '.')) {
        ++k;
      }
      const std::string exp_text(unit.substr(j, k - j));
      char* end = nullptr;
      power = std::strtod(exp_text.c_str(), &end);
      if (exp_text.empty() || end != exp_text.c_str() + exp_text.size()) {
        throw InvalidArgument("bad exponent in unit \"" + std::string(unit) + "\"");
      }
      j = k;
    }
    power *= sign;
    q.value *= std::pow(scale, power);
    for (int d = 0; d < 3; ++d) q.dim.exponent[d] += dim.exponent[d] * power;
    // A '/' applies to the single following term: "W^-1/km" and "/W/km" both work.
    sign = +1;
    expect_term = false;
    i = j;
  }
  if (expect_term && !unit.empty() && unit.find('/') != std::string_view::npos) {
    throw InvalidArgument("dangling '/' in unit \"" + std::string(unit) + "\"");
  }
  return q;
}

Quantity parse_quantity(std::string_view text) {
  std::size_t b = 0;
  while (b < text.size() && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  const std::string s(text.substr(b));
  char* end = nullptr;
  const double number = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) {
    throw InvalidArgument("expected a number in \"" + std::string(text) + "\"");
  }
  std::string_view rest(end);
  while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.back()))) rest.remove_suffix(1);
  auto unit = parse_unit(rest);
  unit.value *= number;
  return unit;
}

std::string to_string(const Dimension& d) {
  static constexpr const char* names[] = {"s", "m", "W"};
  std::string out;
  for (int i = 0; i < 3; ++i) {
    if (d.exponent[i] == 0.0) continue;
    if (!out.empty()) out += ' ';
    out += names[i];
    if (d.exponent[i] != 1.0) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "^%g", d.exponent[i]);
      out += buf;
    }
  }
  return out.empty() ? "dimensionless" : out;
}

}  // namespace fibermi
