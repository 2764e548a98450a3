// Copyright 2026 The alab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ALAB_BENCH_CONFIG_HPP
#define ALAB_BENCH_CONFIG_HPP

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "alab/csv.hpp"
#include "alab/errors.hpp"

namespace alab::bench {

inline constexpr std::string_view kVersion = "0.1.0";

/// Invalid configuration text or values; the CLI maps it to exit code 2.
class config_error : public precondition_error {
  using precondition_error::precondition_error;
};

enum class ExperimentKind {
  two_level,
  decoupled,
  exact_cover,
  scramble_spectrum,
  bounds_check,
  s_diagnostic,
  perm_ensemble,
};

inline constexpr std::array<std::pair<ExperimentKind, std::string_view>, 7> kKindNames{{
    {ExperimentKind::two_level, "two-level"},
    {ExperimentKind::decoupled, "decoupled"},
    {ExperimentKind::exact_cover, "exact-cover"},
    {ExperimentKind::scramble_spectrum, "scramble-spectrum"},
    {ExperimentKind::bounds_check, "bounds-check"},
    {ExperimentKind::s_diagnostic, "s-diagnostic"},
    {ExperimentKind::perm_ensemble, "perm-ensemble"},
}};

inline std::string_view kind_name(ExperimentKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "?";
}

inline ExperimentKind parse_kind(std::string_view text) {
  for (const auto& [k, name] : kKindNames)
    if (name == text) return k;
  throw config_error("unknown experiment kind '" + std::string(text) + "'");
}

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::exact_cover;
  /// Bit counts, in order. Accepts `8`, `6..12`, or `4,8,16`.
  std::vector<int> n{6, 7, 8, 9, 10, 11, 12};
  int instances = 50;
  std::uint64_t seed = 1;
  /// Projector energy; unset means n/2.
  std::optional<double> energy;
  double window_lo = 0.2;
  double window_hi = 0.21;
  double t_min = 0.25;
  double t_max = 4096.0;
  double steps_per_unit = 400.0;
  /// Run times for the two-level, bounds-check, s-diagnostic and perm-ensemble sweeps.
  std::vector<double> times{};
  /// Target success for the decoupled sweep; success threshold b elsewhere.
  double target = 0.2;
  /// s samples per spectral curve.
  int samples = 101;
  std::string out = "alab_out";
  /// 0 picks the hardware concurrency.
  int workers = 0;

  bool operator==(const ExperimentConfig&) const = default;
};

inline std::vector<double> default_times(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::two_level: return {20, 40, 80, 160};
    case ExperimentKind::bounds_check: return {0.5, 1, 2, 5, 10, 20, 50};
    case ExperimentKind::s_diagnostic: return {1, 2, 4};
    case ExperimentKind::perm_ensemble: return {0.5, 1, 2};
    default: return {};
  }
}

/// Defaults for `kind` where they differ from the exact-cover sweep.
inline ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig c;
  c.kind = kind;
  c.times = default_times(kind);
  switch (kind) {
    case ExperimentKind::two_level: c.n = {1}; break;
    case ExperimentKind::decoupled: c.n = {4, 8, 16, 32, 64}; c.t_max = 60.0; break;
    case ExperimentKind::scramble_spectrum: c.n = {6, 8, 10}; c.instances = 5; break;
    case ExperimentKind::bounds_check: c.n = {4, 6, 8, 10}; c.instances = 1; break;
    case ExperimentKind::s_diagnostic: c.n = {3}; break;
    case ExperimentKind::perm_ensemble: c.n = {2}; break;
    default: break;
  }
  return c;
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  T value{};
  const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || res.ec != std::errc{} || res.ptr != t.data() + t.size())
    throw config_error("bad value for " + std::string(key) + ": '" + t + "'");
  return value;
}

inline std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(trim(text.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::vector<int> parse_n(std::string_view text) {
  const std::string t = trim(text);
  std::vector<int> out;
  if (const auto dots = t.find(".."); dots != std::string::npos) {
    const int lo = parse_number<int>("n", std::string_view(t).substr(0, dots));
    const int hi = parse_number<int>("n", std::string_view(t).substr(dots + 2));
    if (hi < lo) throw config_error("n range is empty: " + t);
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  } else {
    for (const auto& part : split(t, ',')) out.push_back(parse_number<int>("n", part));
  }
  return out;
}

template <class T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_floating_point_v<T>)
      out += format_double(values[i]);
    else
      out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace detail

/// Sets one key. Unknown keys and malformed values raise config_error.
inline void apply_setting(ExperimentConfig& c, std::string_view key_in, std::string_view value) {
  using detail::parse_number;
  const std::string key = detail::trim(key_in);
  if (key == "kind") {
    c.kind = parse_kind(detail::trim(value));
  } else if (key == "n") {
    c.n = detail::parse_n(value);
  } else if (key == "instances") {
    c.instances = parse_number<int>(key, value);
  } else if (key == "seed") {
    c.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "E") {
    const std::string v = detail::trim(value);
    if (v == "auto")
      c.energy.reset();
    else
      c.energy = parse_number<double>(key, v);
  } else if (key == "window") {
    const auto parts = detail::split(value, ',');
    if (parts.size() != 2) throw config_error("window needs two values lo,hi");
    c.window_lo = parse_number<double>(key, parts[0]);
    c.window_hi = parse_number<double>(key, parts[1]);
  } else if (key == "t_min") {
    c.t_min = parse_number<double>(key, value);
  } else if (key == "t_max") {
    c.t_max = parse_number<double>(key, value);
  } else if (key == "steps_per_unit") {
    c.steps_per_unit = parse_number<double>(key, value);
  } else if (key == "times") {
    c.times.clear();
    if (!detail::trim(value).empty())
      for (const auto& part : detail::split(value, ',')) c.times.push_back(parse_number<double>(key, part));
  } else if (key == "target") {
    c.target = parse_number<double>(key, value);
  } else if (key == "samples") {
    c.samples = parse_number<int>(key, value);
  } else if (key == "out") {
    c.out = detail::trim(value);
  } else if (key == "workers") {
    c.workers = parse_number<int>(key, value);
  } else {
    throw config_error("unknown config key '" + key + "'");
  }
}

/// Range checks; raises config_error on the first violation.
inline void validate(const ExperimentConfig& c) {
  auto need = [](bool ok, const std::string& msg) {
    if (!ok) throw config_error(msg);
  };
  need(!c.n.empty(), "n must name at least one bit count");
  for (int v : c.n) need(v >= 1 && v <= 64, "n values must lie in [1, 64]");
  need(c.instances >= 1 && c.instances <= 100000, "instances must lie in [1, 100000]");
  need(!c.energy || *c.energy > 0.0, "E must be positive");
  need(c.window_lo > 0.0 && c.window_lo < c.window_hi && c.window_hi < 1.0,
       "window must satisfy 0 < lo < hi < 1");
  need(c.t_min > 0.0 && c.t_min <= c.t_max, "need 0 < t_min <= t_max");
  need(c.steps_per_unit > 0.0, "steps_per_unit must be positive");
  for (double t : c.times) need(t > 0.0, "times must be positive");
  need(c.target > 0.0 && c.target < 1.0, "target must lie in (0, 1)");
  need(c.samples >= 2, "samples must be >= 2");
  need(!c.out.empty(), "out must be a directory path");
  need(c.workers >= 0, "workers must be >= 0");

  const int hi = *std::max_element(c.n.begin(), c.n.end());
  const int lo = *std::min_element(c.n.begin(), c.n.end());
  switch (c.kind) {
    case ExperimentKind::exact_cover:
      need(lo >= 4 && hi <= 22, "exact-cover needs n in [4, 22]");
      break;
    case ExperimentKind::scramble_spectrum:
    case ExperimentKind::bounds_check:
      need(hi <= 20, "n must be <= 20 for state-vector runs");
      break;
    case ExperimentKind::s_diagnostic:
      need(hi <= 5, "s-diagnostic needs N = 2^n <= 32");
      break;
    case ExperimentKind::perm_ensemble:
      need(hi <= 2, "perm-ensemble needs N = 2^n <= 5");
      break;
    case ExperimentKind::two_level:
      need(!c.times.empty(), "two-level needs at least one time");
      break;
    case ExperimentKind::decoupled:
      need(c.n.size() >= 2, "decoupled needs at least two bit counts");
      break;
  }
}

/// Flat `key=value` lines; '#' starts a comment.
inline ExperimentConfig parse_config(std::istream& is, ExperimentConfig base = {}) {
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (detail::trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("line " + std::to_string(line_no) + ": expected key=value");
    apply_setting(base, std::string_view(line).substr(0, eq), std::string_view(line).substr(eq + 1));
  }
  return base;
}

inline ExperimentConfig parse_config(const std::string& text, ExperimentConfig base = {}) {
  std::istringstream is(text);
  return parse_config(is, std::move(base));
}

inline std::string to_text(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "kind=" << kind_name(c.kind) << '\n'
     << "n=" << detail::join(c.n) << '\n'
     << "instances=" << c.instances << '\n'
     << "seed=" << c.seed << '\n'
     << "E=" << (c.energy ? format_double(*c.energy) : std::string("auto")) << '\n'
     << "window=" << format_double(c.window_lo) << ',' << format_double(c.window_hi) << '\n'
     << "t_min=" << format_double(c.t_min) << '\n'
     << "t_max=" << format_double(c.t_max) << '\n'
     << "steps_per_unit=" << format_double(c.steps_per_unit) << '\n'
     << "times=" << detail::join(c.times) << '\n'
     << "target=" << format_double(c.target) << '\n'
     << "samples=" << c.samples << '\n'
     << "out=" << c.out << '\n'
     << "workers=" << c.workers << '\n';
  return os.str();
}

}  // namespace alab::bench

#endif  // ALAB_BENCH_CONFIG_HPP
