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

// alab: command-line front end for the experiment runner.
//
//   alab <experiment> [--config FILE] [overrides...]
//
// Exit status: 0 success, 2 configuration error, 3 computation error.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "alab/bench/config.hpp"
#include "alab/bench/runner.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitComputation = 3;

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) lines.push_back(line);
  return lines;
}

std::string defaults_text() {
  namespace bench = alab::bench;
  const auto base = lines_of(bench::to_text(bench::default_config(bench::ExperimentKind::exact_cover)));
  std::ostringstream os;
  os << "\nConfig file: key=value lines, '#' comments. Defaults (exact-cover):\n";
  for (const auto& line : base)
    if (line.rfind("kind=", 0) != 0) os << "  " << line << '\n';
  os << "Per-experiment differences:\n";
  for (const auto& [kind, name] : bench::kKindNames) {
    if (kind == bench::ExperimentKind::exact_cover) continue;
    os << "  " << name << ':';
    for (const auto& line : lines_of(bench::to_text(bench::default_config(kind))))
      if (line.rfind("kind=", 0) != 0 && std::find(base.begin(), base.end(), line) == base.end()) os << ' ' << line;
    os << '\n';
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  namespace bench = alab::bench;

  CLI::App app{"Adiabatic algorithm experiment runner"};
  app.footer(defaults_text());
  app.set_version_flag("--version", std::string(bench::kVersion));

  std::vector<std::string> kinds;
  for (const auto& [kind, name] : bench::kKindNames) kinds.emplace_back(name);
  std::string experiment;
  app.add_option("experiment", experiment, "Experiment to run")->required()->check(CLI::IsMember(kinds));

  std::string config_file;
  app.add_option("--config", config_file, "key=value configuration file")->check(CLI::ExistingFile);

  // Flag -> config key. Values are parsed by the same code as the file.
  const std::vector<std::tuple<std::string, std::string, std::string>> flags{
      {"--n", "n", "Bit counts: 8, 6..12 or 4,8,16"},
      {"--seed", "seed", "Master seed"},
      {"--instances", "instances", "Instances (or permutation seeds) per n"},
      {"--E", "E", "Projector energy, or 'auto' for n/2"},
      {"--window", "window", "Success window lo,hi"},
      {"--tmin", "t_min", "Smallest probed run time"},
      {"--tmax", "t_max", "Largest probed run time"},
      {"--steps-per-unit", "steps_per_unit", "RK4 steps per unit time"},
      {"--times", "times", "Comma-separated run times"},
      {"--target", "target", "Target success probability"},
      {"--samples", "samples", "s samples per spectral curve"},
      {"--out", "out", "Output directory"},
      {"--workers", "workers", "Worker threads (0 = all cores)"},
  };
  std::vector<std::string> values(flags.size());
  for (std::size_t i = 0; i < flags.size(); ++i)
    app.add_option(std::get<0>(flags[i]), values[i], std::get<2>(flags[i]));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  bench::ExperimentConfig config;
  try {
    const auto kind = bench::parse_kind(experiment);
    config = bench::default_config(kind);
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) throw bench::config_error("cannot read " + config_file);
      config = bench::parse_config(in, config);
      if (config.kind != kind)
        throw bench::config_error("config file names experiment '" +
                                  std::string(bench::kind_name(config.kind)) + "', not '" + experiment + "'");
    }
    for (std::size_t i = 0; i < flags.size(); ++i)
      if (app.count(std::get<0>(flags[i])) > 0) bench::apply_setting(config, std::get<1>(flags[i]), values[i]);
    bench::validate(config);
  } catch (const alab::precondition_error& e) {
    std::cerr << "alab: configuration error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    const auto summary = bench::run(config);
    std::cout << "wrote " << summary.files.size() << " files to " << config.out << " in "
              << summary.wall_clock_seconds << " s\n";
    for (const auto& [key, value] : summary.metadata) std::cout << "  " << key << " = " << value << '\n';
    if (!summary.errors.empty()) {
      std::cerr << "alab: " << summary.errors.size() << " task(s) failed; see " << config.out << "/errors.csv\n";
      return kExitComputation;
    }
  } catch (const alab::precondition_error& e) {
    std::cerr << "alab: configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "alab: " << e.what() << '\n';
    return kExitComputation;
  }
  return 0;
}
