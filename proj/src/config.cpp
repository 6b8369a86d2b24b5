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

#include "fibermi/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fibermi/error.hpp"

namespace fibermi {
namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    auto t = trim(cur);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Hands out entries and remembers which were used, so leftovers can be
// reported as unknown keys.
class Reader {
 public:
  explicit Reader(const ConfigDocument& doc) : doc_(doc) {}

  const ConfigEntry* get(const std::string& section, const std::string& key) {
    const auto* e = doc_.find(section, key);
    if (e) used_.insert(section + "." + key);
    return e;
  }

  double quantity(const std::string& section, const std::string& key, const Dimension& dim,
                  std::optional<double> fallback = std::nullopt) {
    const auto* e = get(section, key);
    if (!e) {
      if (fallback) return *fallback;
      throw ConfigError("missing required key [" + section + "] " + key);
    }
    return parse_checked(e->value, dim, section + "." + key, e->line);
  }

  std::optional<double> optional_quantity(const std::string& section, const std::string& key,
                                          const Dimension& dim) {
    const auto* e = get(section, key);
    if (!e) return std::nullopt;
    return parse_checked(e->value, dim, section + "." + key, e->line);
  }

  double number(const std::string& section, const std::string& key, double fallback) {
    const auto* e = get(section, key);
    if (!e) return fallback;
    return parse_checked(e->value, dims::none, section + "." + key, e->line);
  }

  std::optional<std::uint64_t> integer(const std::string& section, const std::string& key) {
    const auto* e = get(section, key);
    if (!e) return std::nullopt;
    const std::string t = trim(e->value);
    std::uint64_t v = 0;
    std::size_t pos = 0;
    try {
      if (t.empty() || t[0] == '-') throw std::invalid_argument("negative");
      v = std::stoull(t, &pos, 0);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != t.size()) {
      throw ConfigError(section + "." + key + ": expected a non-negative integer, got \"" + t + "\"", e->line);
    }
    return v;
  }

  std::optional<std::string> word(const std::string& section, const std::string& key) {
    const auto* e = get(section, key);
    if (!e) return std::nullopt;
    return lower(trim(e->value));
  }

  std::size_t line(const std::string& section, const std::string& key) const {
    const auto* e = doc_.find(section, key);
    return e ? e->line : 0;
  }

  void reject_unknown() const {
    for (const auto& [sec, keys] : doc_.sections) {
      for (const auto& [key, entry] : keys) {
        if (!used_.count(sec + "." + key)) {
          throw ConfigError("unknown key [" + sec + "] " + key, entry.line);
        }
      }
    }
  }

 private:
  const ConfigDocument& doc_;
  std::set<std::string> used_;
};

bool parse_bool(const std::string& v, const std::string& what, std::size_t line) {
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw ConfigError(what + ": expected true or false, got \"" + v + "\"", line);
}

Dimension sweep_dimension(SweepParameter p) {
  switch (p) {
    case SweepParameter::beat_length:
    case SweepParameter::fiber_length:
      return dims::length;
    case SweepParameter::t_fwhm:
      return dims::time;
    default:
      return dims::none;
  }
}

}  // namespace

// ---------------------------------------------------------------------------

const ConfigEntry* ConfigDocument::find(const std::string& section, const std::string& key) const {
  const auto s = sections.find(section);
  if (s == sections.end()) return nullptr;
  const auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

ConfigDocument ConfigDocument::parse_text(std::string_view text) {
  ConfigDocument doc;
  std::string section;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string line(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
      section = lower(trim(std::string_view(line).substr(1, line.size() - 2)));
      if (section.empty()) throw ConfigError("empty section name", line_no);
      doc.sections[section];
    } else {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line_no);
      if (section.empty()) throw ConfigError("key outside of any [section]", line_no);
      const std::string key = lower(trim(std::string_view(line).substr(0, eq)));
      const std::string value = trim(std::string_view(line).substr(eq + 1));
      if (key.empty()) throw ConfigError("empty key", line_no);
      if (value.empty()) throw ConfigError("empty value for '" + key + "'", line_no);
      auto& keys = doc.sections[section];
      if (keys.count(key)) throw ConfigError("duplicate key '" + key + "' in [" + section + "]", line_no);
      keys[key] = {value, line_no};
    }
    if (end == text.size()) break;
  }
  return doc;
}

ConfigDocument ConfigDocument::parse_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (j.is_object() && j.contains("config")) j = j["config"];
  if (!j.is_object()) throw ConfigError("JSON configuration must be an object of sections");
  ConfigDocument doc;
  auto scalar = [](const nlohmann::json& v, const std::string& where) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_number()) return fmt(v.get<double>());
    throw ConfigError(where + ": unsupported JSON value");
  };
  for (const auto& [sec, body] : j.items()) {
    if (!body.is_object()) throw ConfigError("section '" + sec + "' must be an object");
    auto& keys = doc.sections[lower(sec)];
    for (const auto& [key, v] : body.items()) {
      const std::string where = sec + "." + key;
      std::string value;
      if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) value += (i ? ", " : "") + scalar(v[i], where);
      } else {
        value = scalar(v, where);
      }
      keys[lower(key)] = {value, 0};
    }
  }
  return doc;
}

ConfigDocument ConfigDocument::parse(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? parse_json(text) : parse_text(text);
  }
  return parse_text(text);
}

ConfigDocument ConfigDocument::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open configuration file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

double parse_checked(std::string_view text, const Dimension& dim, const std::string& what, std::size_t line) {
  Quantity q;
  try {
    q = parse_quantity(text);
  } catch (const InvalidArgument& e) {
    throw ConfigError(what + ": " + e.what(), line);
  }
  if (!(q.dim == dim)) {
    throw ConfigError(what + ": expected a value in " + to_string(dim) + ", got \"" + std::string(trim(text)) +
                          "\" (" + to_string(q.dim) + ")",
                      line);
  }
  if (!std::isfinite(q.value)) throw ConfigError(what + ": value is not finite", line);
  return q.value;
}

std::string to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::beat_length: return "beat_length";
    case SweepParameter::fiber_length: return "fiber_length";
    case SweepParameter::classical_photons_per_ghz: return "classical_photons_per_GHz";
    case SweepParameter::classical_photons_per_mode: return "classical_photons_per_mode";
    case SweepParameter::t_fwhm: return "t_fwhm";
  }
  return "?";
}

ScenarioConfig parse_scenario(const ConfigDocument& doc) {
  Reader rd(doc);
  ScenarioConfig c;
  if (const auto* e = rd.get("scenario", "name")) c.name = trim(e->value);

  // Fiber
  const double lambda0 = rd.quantity("fiber", "lambda0", dims::length);
  const double beta2 = rd.quantity("fiber", "beta2", dims::dispersion);
  const double gamma = rd.quantity("fiber", "gamma", dims::nonlinearity);
  const double length = rd.quantity("fiber", "length", dims::length);
  const double b = rd.number("fiber", "coupling_b", 1.0 / 3.0);
  auto db0 = rd.optional_quantity("fiber", "delta_beta0", dims::inverse_length);
  auto db1 = rd.optional_quantity("fiber", "delta_beta1", dims::time_per_length);
  c.beat_length = rd.optional_quantity("fiber", "beat_length", dims::length);
  if (c.beat_length && (db0 || db1)) {
    throw ConfigError("beat_length and delta_beta0/delta_beta1 are mutually exclusive",
                      rd.line("fiber", "beat_length"));
  }
  if (c.beat_length && !(*c.beat_length > 0.0)) {
    throw ConfigError("beat_length must be positive", rd.line("fiber", "beat_length"));
  }
  double d0 = db0.value_or(0.0), d1 = db1.value_or(0.0);
  if (c.beat_length) {
    d0 = 2.0 * constants::pi / *c.beat_length;
    d1 = lambda0 / (constants::c * *c.beat_length);
  }
  try {
    c.fiber = make_fiber(lambda0, beta2, gamma, d0, d1, length, b);
  } catch (const Error& e) {
    throw ConfigError(std::string("[fiber] ") + e.what());
  }

  // Pulse
  c.pulse.p0 = rd.quantity("pulse", "peak_power", dims::power);
  c.pulse.t_fwhm = rd.quantity("pulse", "t_fwhm", dims::time);
  c.pulse.theta = rd.quantity("pulse", "theta", dims::none, 0.0);
  if (!(c.pulse.p0 > 0.0)) throw ConfigError("peak_power must be positive", rd.line("pulse", "peak_power"));
  if (!(c.pulse.t_fwhm > 0.0)) throw ConfigError("t_fwhm must be positive", rd.line("pulse", "t_fwhm"));

  // Grid
  if (auto n = rd.integer("grid", "n_time")) c.grid.n_time = static_cast<std::size_t>(*n);
  c.grid.window = rd.optional_quantity("grid", "window", dims::time);
  c.grid.step = rd.optional_quantity("grid", "step", dims::length);

  // Noise
  if (auto q = rd.word("noise", "quantum")) c.quantum_noise = parse_bool(*q, "noise.quantum", rd.line("noise", "quantum"));
  if (auto m = rd.word("noise", "classical")) {
    if (*m == "none") {
      c.classical_model = ClassicalNoiseModel::none;
    } else if (*m == "phase") {
      c.classical_model = ClassicalNoiseModel::phase;
    } else if (*m == "gaussian") {
      c.classical_model = ClassicalNoiseModel::gaussian;
    } else {
      throw ConfigError("noise.classical must be none, phase or gaussian", rd.line("noise", "classical"));
    }
  }
  int levels = 0;
  if (auto v = rd.optional_quantity("noise", "classical_photons_per_ghz", dims::none)) {
    c.classical_level = ClassicalLevel::photons_per_ghz;
    c.classical_value = *v;
    ++levels;
  }
  if (auto v = rd.optional_quantity("noise", "classical_photons_per_mode", dims::none)) {
    c.classical_level = ClassicalLevel::photons_per_mode;
    c.classical_value = *v;
    ++levels;
  }
  if (auto v = rd.optional_quantity("noise", "classical_amplitude", dims::spectral_amplitude)) {
    c.classical_level = ClassicalLevel::amplitude;
    c.classical_value = *v;
    ++levels;
  }
  if (levels > 1) throw ConfigError("give at most one classical noise level");
  if (c.classical_value < 0.0) throw ConfigError("classical noise level must be non-negative");
  if (c.classical_model != ClassicalNoiseModel::none && levels == 0) {
    throw ConfigError("noise.classical is set but no classical noise level is given",
                      rd.line("noise", "classical"));
  }
  // A level without a model means the default spectral phase noise.
  if (c.classical_model == ClassicalNoiseModel::none && levels == 1) c.classical_model = ClassicalNoiseModel::phase;
  if (auto s = rd.integer("noise", "seed")) c.seed = *s;

  // Run
  if (auto m = rd.word("run", "model")) {
    if (*m == "auto") {
      c.model = ModelChoice::automatic;
    } else if (*m == "scalar") {
      c.model = ModelChoice::scalar;
    } else if (*m == "vector") {
      c.model = ModelChoice::vector;
    } else {
      throw ConfigError("run.model must be auto, scalar or vector", rd.line("run", "model"));
    }
  }
  if (auto n = rd.integer("run", "realizations")) {
    if (*n == 0) throw ConfigError("run.realizations must be at least 1", rd.line("run", "realizations"));
    c.n_realizations = static_cast<std::size_t>(*n);
  }
  if (const auto* e = rd.get("run", "lengths")) {
    for (const auto& item : split_list(e->value)) {
      const double l = parse_checked(item, dims::length, "run.lengths", e->line);
      if (!(l > 0.0) || l > length * (1.0 + 1e-12)) {
        throw ConfigError("run.lengths entries must lie in (0, fiber.length]", e->line);
      }
      c.lengths.push_back(l);
    }
    std::sort(c.lengths.begin(), c.lengths.end());
  }
  if (c.lengths.empty()) c.lengths.push_back(length);

  // Analysis
  c.analysis.band_lo = rd.optional_quantity("analysis", "band_lo", dims::frequency);
  c.analysis.band_hi = rd.optional_quantity("analysis", "band_hi", dims::frequency);
  if (c.analysis.band_lo.has_value() != c.analysis.band_hi.has_value()) {
    throw ConfigError("analysis.band_lo and band_hi must be given together");
  }
  if (auto n = rd.integer("analysis", "smoothing_bins")) c.analysis.smoothing_bins = static_cast<std::size_t>(*n);
  c.analysis.secondary_fraction = rd.number("analysis", "secondary_fraction", 0.5);
  c.analysis.dip_fraction = rd.number("analysis", "dip_fraction", 0.8);

  // Sweep
  if (auto p = rd.word("sweep", "parameter")) {
    SweepSpec sw;
    const std::size_t pl = rd.line("sweep", "parameter");
    if (*p == "beat_length") {
      sw.parameter = SweepParameter::beat_length;
    } else if (*p == "fiber_length") {
      sw.parameter = SweepParameter::fiber_length;
    } else if (*p == "classical_photons_per_ghz") {
      sw.parameter = SweepParameter::classical_photons_per_ghz;
    } else if (*p == "classical_photons_per_mode") {
      sw.parameter = SweepParameter::classical_photons_per_mode;
    } else if (*p == "t_fwhm") {
      sw.parameter = SweepParameter::t_fwhm;
    } else {
      throw ConfigError("unknown sweep parameter '" + *p + "'", pl);
    }
    const auto* e = rd.get("sweep", "values");
    if (!e) throw ConfigError("sweep.values is required", pl);
    for (const auto& item : split_list(e->value)) {
      const double v = parse_checked(item, sweep_dimension(sw.parameter), "sweep.values", e->line);
      if (v < 0.0 || (v == 0.0 && sw.parameter != SweepParameter::classical_photons_per_ghz &&
                      sw.parameter != SweepParameter::classical_photons_per_mode)) {
        throw ConfigError("sweep.values must be positive", e->line);
      }
      sw.values.push_back(v);
    }
    if (sw.values.empty()) throw ConfigError("sweep.values is empty", e->line);
    if (sw.parameter == SweepParameter::beat_length && (db0 || db1)) {
      throw ConfigError("a beat_length sweep cannot be combined with explicit delta_beta0/delta_beta1", pl);
    }
    if (sw.parameter == SweepParameter::fiber_length) {
      for (double v : sw.values) {
        if (v > length * (1.0 + 1e-12)) throw ConfigError("fiber_length sweep values must not exceed fiber.length", e->line);
      }
    }
    c.sweep = sw;
  } else if (rd.get("sweep", "values")) {
    throw ConfigError("sweep.values given without sweep.parameter", rd.line("sweep", "values"));
  }

  rd.reject_unknown();
  return c;
}

ScenarioConfig load_scenario(const std::string& path) { return parse_scenario(ConfigDocument::load(path)); }

ConfigDocument to_document(const ScenarioConfig& c) {
  ConfigDocument d;
  auto put = [&](const std::string& s, const std::string& k, const std::string& v) { d.sections[s][k] = {v, 0}; };
  put("scenario", "name", c.name);
  put("fiber", "lambda0", fmt(c.fiber.lambda0) + " m");
  put("fiber", "beta2", fmt(c.fiber.beta2) + " s^2/m");
  put("fiber", "gamma", fmt(c.fiber.gamma) + " /W/m");
  if (c.beat_length) {
    put("fiber", "beat_length", fmt(*c.beat_length) + " m");
  } else {
    put("fiber", "delta_beta0", fmt(c.fiber.delta_beta0) + " /m");
    put("fiber", "delta_beta1", fmt(c.fiber.delta_beta1) + " s/m");
  }
  put("fiber", "coupling_b", fmt(c.fiber.coupling_b));
  put("fiber", "length", fmt(c.fiber.length) + " m");
  put("pulse", "peak_power", fmt(c.pulse.p0) + " W");
  put("pulse", "t_fwhm", fmt(c.pulse.t_fwhm) + " s");
  put("pulse", "theta", fmt(c.pulse.theta) + " rad");
  if (c.grid.n_time) put("grid", "n_time", std::to_string(*c.grid.n_time));
  if (c.grid.window) put("grid", "window", fmt(*c.grid.window) + " s");
  if (c.grid.step) put("grid", "step", fmt(*c.grid.step) + " m");
  put("noise", "quantum", c.quantum_noise ? "true" : "false");
  const char* model_name[] = {"none", "phase", "gaussian"};
  put("noise", "classical", model_name[static_cast<int>(c.classical_model)]);
  switch (c.classical_level) {
    case ClassicalLevel::none: break;
    case ClassicalLevel::amplitude: put("noise", "classical_amplitude", fmt(c.classical_value) + " W^0.5 s"); break;
    case ClassicalLevel::photons_per_ghz: put("noise", "classical_photons_per_ghz", fmt(c.classical_value)); break;
    case ClassicalLevel::photons_per_mode: put("noise", "classical_photons_per_mode", fmt(c.classical_value)); break;
  }
  put("noise", "seed", std::to_string(c.seed));
  const char* choice[] = {"auto", "scalar", "vector"};
  put("run", "model", choice[static_cast<int>(c.model)]);
  put("run", "realizations", std::to_string(c.n_realizations));
  std::string ls;
  for (std::size_t i = 0; i < c.lengths.size(); ++i) ls += (i ? ", " : "") + fmt(c.lengths[i]) + " m";
  put("run", "lengths", ls);
  if (c.analysis.band_lo) {
    put("analysis", "band_lo", fmt(*c.analysis.band_lo) + " rad/s");
    put("analysis", "band_hi", fmt(*c.analysis.band_hi) + " rad/s");
  }
  put("analysis", "smoothing_bins", std::to_string(c.analysis.smoothing_bins));
  put("analysis", "secondary_fraction", fmt(c.analysis.secondary_fraction));
  put("analysis", "dip_fraction", fmt(c.analysis.dip_fraction));
  if (c.sweep) {
    put("sweep", "parameter", lower(to_string(c.sweep->parameter)));
    const Dimension dim = sweep_dimension(c.sweep->parameter);
    const char* unit = dim == dims::length ? " m" : dim == dims::time ? " s" : "";
    std::string vs;
    for (std::size_t i = 0; i < c.sweep->values.size(); ++i) vs += (i ? ", " : "") + fmt(c.sweep->values[i]) + unit;
    put("sweep", "values", vs);
  }
  return d;
}

std::string to_config_text(const ConfigDocument& doc) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [sec, keys] : doc.sections) {
    if (!first) out << '\n';
    first = false;
    out << '[' << sec << "]\n";
    for (const auto& [k, e] : keys) out << k << " = " << e.value << '\n';
  }
  return out.str();
}

}  // namespace fibermi
