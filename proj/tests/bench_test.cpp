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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "alab/bench/config.hpp"
#include "alab/bench/runner.hpp"

namespace fs = std::filesystem;
using namespace alab;
using namespace alab::bench;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::path(::testing::TempDir()) / ("alab_bench_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  EXPECT_TRUE(in.good()) << p;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

using Table = std::vector<std::map<std::string, std::string>>;

Table read_csv(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::string line;
  std::getline(in, line);
  const auto header = bench::detail::split(line, ',');
  Table rows;
  while (std::getline(in, line)) {
    const auto fields = bench::detail::split(line, ',');
    EXPECT_EQ(fields.size(), header.size()) << line;
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < header.size() && i < fields.size(); ++i) row[header[i]] = fields[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string header_of(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::string line;
  std::getline(in, line);
  return line;
}

std::string meta(const RunSummary& s, const std::string& key) {
  for (const auto& [k, v] : s.metadata)
    if (k == key) return v;
  ADD_FAILURE() << "missing metadata " << key;
  return {};
}

/// Every CSV in `dir` except the run record, which carries a wall clock.
std::map<std::string, std::string> csv_files(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".csv") out[e.path().filename().string()] = slurp(e.path());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

TEST(Config, DefaultsRoundTripForEveryKind) {
  for (const auto& [kind, name] : kKindNames) {
    const auto c = default_config(kind);
    EXPECT_NO_THROW(validate(c)) << name;
    EXPECT_EQ(parse_config(to_text(c)), c) << name;
  }
}

TEST(Config, EditedConfigRoundTrips) {
  auto c = default_config(ExperimentKind::exact_cover);
  c.n = {5, 9, 13};
  c.instances = 7;
  c.seed = 18446744073709551557ull;
  c.energy = 0.1 + 0.2;  // not exactly representable in short decimal
  c.window_lo = 0.3;
  c.window_hi = 0.31;
  c.t_min = 1.0 / 3.0;
  c.t_max = 777.5;
  c.steps_per_unit = 123.456;
  c.times = {0.1, 2.0 / 7.0, 1e3};
  c.target = 0.25;
  c.samples = 33;
  c.out = "some dir/with space";
  c.workers = 3;
  EXPECT_EQ(parse_config(to_text(c)), c);
}

TEST(Config, FileSyntax) {
  const auto c = parse_config(
      "# comment\n"
      "kind = scramble-spectrum\n"
      "\n"
      "n=6..8   # trailing comment\n"
      "window=0.25,0.3\n"
      "E=2.5\n",
      default_config(ExperimentKind::exact_cover));
  EXPECT_EQ(c.kind, ExperimentKind::scramble_spectrum);
  EXPECT_EQ(c.n, (std::vector<int>{6, 7, 8}));
  EXPECT_DOUBLE_EQ(c.window_lo, 0.25);
  EXPECT_DOUBLE_EQ(c.window_hi, 0.3);
  ASSERT_TRUE(c.energy);
  EXPECT_DOUBLE_EQ(*c.energy, 2.5);
  EXPECT_FALSE(parse_config("E=auto\n", c).energy);
  EXPECT_EQ(parse_config("n=4,8,16\n").n, (std::vector<int>{4, 8, 16}));
}

TEST(Config, ParseErrors) {
  EXPECT_THROW(parse_config("bogus=1\n"), config_error);
  EXPECT_THROW(parse_config("instances\n"), config_error);
  EXPECT_THROW(parse_config("instances=ten\n"), config_error);
  EXPECT_THROW(parse_config("instances=10x\n"), config_error);
  EXPECT_THROW(parse_config("n=6..x\n"), config_error);
  EXPECT_THROW(parse_config("window=0.2\n"), config_error);
  EXPECT_THROW(parse_config("kind=annealing\n"), config_error);
  EXPECT_THROW(parse_config("t_max=\n"), config_error);
}

TEST(Config, ValidationRanges) {
  auto bad = [](auto edit) {
    auto c = default_config(ExperimentKind::exact_cover);
    edit(c);
    return c;
  };
  EXPECT_THROW(validate(bad([](auto& c) { c.window_lo = 0.3; })), config_error);
  EXPECT_THROW(validate(bad([](auto& c) { c.instances = 0; })), config_error);
  EXPECT_THROW(validate(bad([](auto& c) { c.n = {3}; })), config_error);
  EXPECT_THROW(validate(bad([](auto& c) { c.n = {}; })), config_error);
  EXPECT_THROW(validate(bad([](auto& c) { c.steps_per_unit = 0; })), config_error);
  EXPECT_THROW(validate(bad([](auto& c) { c.t_min = 10; c.t_max = 5; })), config_error);
  EXPECT_THROW(validate(bad([](auto& c) { c.energy = -1.0; })), config_error);
  auto s = default_config(ExperimentKind::s_diagnostic);
  s.n = {8};
  EXPECT_THROW(validate(s), config_error);
  auto d = default_config(ExperimentKind::decoupled);
  d.n = {4};
  EXPECT_THROW(validate(d), config_error);
  EXPECT_THROW(run(bad([](auto& c) { c.instances = -2; })), config_error);
}

// ---------------------------------------------------------------------------
// Runs

TEST(Run, ExactCoverIsByteIdenticalAcrossRuns) {
  auto c = default_config(ExperimentKind::exact_cover);
  c.n = {8};
  c.instances = 10;
  c.seed = 7;
  c.workers = 1;
  const fs::path first = scratch("ec_a");
  c.out = first.string();
  const auto s1 = run(c);
  c.out = scratch("ec_b").string();
  run(c);
  const auto a = csv_files(first);
  const auto b = csv_files(c.out);
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(s1.errors.empty());

  EXPECT_EQ(header_of(fs::path(c.out) / "required_t.csv"),
            "n,instance_id,seed,hb_kind,required_T,achieved_b,status,E,steps_per_unit,probes");
  EXPECT_EQ(header_of(fs::path(c.out) / "medians.csv"), "n,hb_kind,median_T,ci_lo,ci_hi,successes,attempts");

  const auto rows = read_csv(fs::path(c.out) / "required_t.csv");
  ASSERT_EQ(rows.size(), 20u);
  std::map<std::string, std::vector<double>> by_kind;
  for (const auto& r : rows) {
    EXPECT_EQ(r.at("status"), "ok");
    EXPECT_FALSE(r.at("seed").empty());
    EXPECT_EQ(r.at("steps_per_unit"), "400");
    const double b = std::stod(r.at("achieved_b"));
    EXPECT_GE(b, 0.2);
    EXPECT_LE(b, 0.21);
    EXPECT_EQ(r.at("E"), r.at("hb_kind") == "projector" ? "4" : "");
    by_kind[r.at("hb_kind")].push_back(std::stod(r.at("required_T")));
  }
  // The medians file agrees with an independent recomputation.
  for (const auto& m : read_csv(fs::path(c.out) / "medians.csv")) {
    const auto ci = median_ci(by_kind.at(m.at("hb_kind")));
    EXPECT_EQ(std::stod(m.at("median_T")), ci.median);
    EXPECT_EQ(std::stod(m.at("ci_lo")), ci.lo);
    EXPECT_EQ(std::stod(m.at("ci_hi")), ci.hi);
    EXPECT_EQ(m.at("successes"), "10");
  }
  // Theorem 1 rows for the projector runs.
  const auto bounds = read_csv(fs::path(c.out) / "bounds.csv");
  ASSERT_EQ(bounds.size(), 10u);
  for (const auto& r : bounds) {
    EXPECT_EQ(r.at("theorem"), "theorem1");
    EXPECT_EQ(r.at("satisfied"), "true");
  }
}

TEST(Run, ARowRegeneratesInIsolation) {
  auto c = default_config(ExperimentKind::exact_cover);
  c.n = {6};
  c.instances = 3;
  c.seed = 11;
  c.out = scratch("iso").string();
  run(c);
  const auto rows = read_csv(fs::path(c.out) / "required_t.csv");
  const auto& r = rows.at(4);  // instance 2, projector
  ASSERT_EQ(r.at("hb_kind"), "projector");
  const auto inst = generate_exact_cover_usa(6, std::stoull(r.at("seed")));
  const auto cost = exact_cover_cost(inst);
  RunTimeSearchOptions opt;
  opt.steps_per_unit = std::stod(r.at("steps_per_unit"));
  const auto again =
      required_run_time(projector_beginning(6, std::stod(r.at("E"))), problem_hamiltonian(cost), cost, opt);
  EXPECT_EQ(format_double(again.required_T), r.at("required_T"));
  EXPECT_EQ(format_double(again.achieved_b), r.at("achieved_b"));
}

TEST(Run, SerialAndParallelWriteIdenticalFiles) {
  auto c = default_config(ExperimentKind::exact_cover);
  c.n = {6, 7};
  c.instances = 3;
  c.seed = 3;
  for (const auto& [kind, edit] : std::vector<std::pair<ExperimentKind, int>>{
           {ExperimentKind::exact_cover, 0}, {ExperimentKind::scramble_spectrum, 1}}) {
    auto cfg = c;
    cfg.kind = kind;
    if (edit == 1) {
      cfg.n = {6};
      cfg.instances = 2;
      cfg.samples = 21;
    }
    const fs::path serial_dir = scratch("serial");
    cfg.workers = 1;
    cfg.out = serial_dir.string();
    run(cfg);
    cfg.workers = 4;
    cfg.out = scratch("parallel").string();
    run(cfg);
    const auto serial = csv_files(serial_dir);
    EXPECT_FALSE(serial.empty());
    EXPECT_EQ(serial, csv_files(cfg.out)) << kind_name(kind);
  }
}

TEST(Run, RunRecordIsAValidConfig) {
  auto c = default_config(ExperimentKind::two_level);
  c.out = scratch("record").string();
  c.times = {20, 30};
  const auto s = run(c);
  const auto record = slurp(fs::path(c.out) / "run.txt");
  EXPECT_EQ(parse_config(record), c);
  EXPECT_NE(record.find("# version=" + std::string(kVersion)), std::string::npos);
  EXPECT_NE(record.find("# wall_clock_seconds="), std::string::npos);
  EXPECT_NE(record.find("# file=twolevel.csv"), std::string::npos);
  EXPECT_GT(s.wall_clock_seconds, 0.0);
}

TEST(Run, TwoLevelEmitsFittedSlope) {
  auto c = default_config(ExperimentKind::two_level);
  c.out = scratch("twolevel").string();
  const auto s = run(c);
  EXPECT_EQ(header_of(fs::path(c.out) / "twolevel.csv"), "T,q,envelope_q,resolution");
  const auto rows = read_csv(fs::path(c.out) / "twolevel.csv");
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) {
    const double T = std::stod(r.at("T"));
    EXPECT_EQ(std::stod(r.at("q")), transition_probability(T));
    EXPECT_LE(std::stod(r.at("q")), std::stod(r.at("envelope_q")) * (1 + 1e-12));
  }
  const double slope = std::stod(meta(s, "envelope_slope"));
  EXPECT_NEAR(slope, -2.0, 0.15);
}

TEST(Run, BoundsCheckHasNoViolations) {
  auto c = default_config(ExperimentKind::bounds_check);
  c.n = {4, 6};
  c.times = {0.5, 2, 10};
  c.out = scratch("bounds").string();
  const auto s = run(c);
  EXPECT_TRUE(s.errors.empty());
  const auto rows = read_csv(fs::path(c.out) / "bounds.csv");
  ASSERT_EQ(rows.size(), 2u * 3u * 3u);
  std::map<std::string, int> per_cost;
  for (const auto& r : rows) {
    EXPECT_EQ(r.at("satisfied"), "true") << r.at("cost") << " n=" << r.at("n") << " T=" << r.at("measured_T");
    EXPECT_FALSE(r.at("seed").empty());
    EXPECT_GE(std::stoul(r.at("steps")), 400u * 0.5);
    ++per_cost[r.at("cost")];
  }
  EXPECT_EQ(per_cost, (std::map<std::string, int>{{"exact-cover", 6}, {"grover", 6}, {"hamming", 6}}));
  EXPECT_EQ(meta(s, "violations"), "0");
}

TEST(Run, UnreachableWindowIsAStatusNotAnError) {
  auto c = default_config(ExperimentKind::exact_cover);
  c.n = {6};
  c.instances = 2;
  c.t_max = 1.0;
  c.out = scratch("unreached").string();
  const auto s = run(c);
  EXPECT_TRUE(s.errors.empty());
  EXPECT_FALSE(fs::exists(fs::path(c.out) / "errors.csv"));
  for (const auto& r : read_csv(fs::path(c.out) / "required_t.csv")) {
    EXPECT_EQ(r.at("status"), "not_reached");
    EXPECT_EQ(r.at("required_T"), "");
  }
  for (const auto& m : read_csv(fs::path(c.out) / "medians.csv")) {
    EXPECT_EQ(m.at("successes"), "0");
    EXPECT_EQ(m.at("median_T"), "");
  }
}

TEST(Run, FewSuccessesGiveMedianWithoutInterval) {
  auto c = default_config(ExperimentKind::exact_cover);
  c.n = {6};
  c.instances = 3;
  c.out = scratch("few").string();
  run(c);
  for (const auto& m : read_csv(fs::path(c.out) / "medians.csv")) {
    EXPECT_EQ(m.at("successes"), "3");
    EXPECT_FALSE(m.at("median_T").empty());
    EXPECT_EQ(m.at("ci_lo"), "");
    EXPECT_EQ(m.at("ci_hi"), "");
  }
}

TEST(Run, StarvedStepsAreRecordedPerRow) {
  auto c = default_config(ExperimentKind::bounds_check);
  c.n = {4};
  c.times = {1, 50};
  c.steps_per_unit = 1e-4;
  c.out = scratch("starved").string();
  const auto s = run(c);
  ASSERT_EQ(s.errors.size(), 3u);  // T = 50 for each cost
  for (const auto& e : s.errors) EXPECT_EQ(e.kind, "step_count_too_small");
  EXPECT_EQ(read_csv(fs::path(c.out) / "errors.csv").size(), 3u);
  EXPECT_EQ(read_csv(fs::path(c.out) / "bounds.csv").size(), 3u);  // T = 1 still ran
}

TEST(Run, ScrambleSpectrumFiles) {
  auto c = default_config(ExperimentKind::scramble_spectrum);
  c.n = {4};
  c.instances = 2;
  c.samples = 10;
  c.out = scratch("spectrum").string();
  run(c);
  const fs::path dir(c.out);
  for (const char* name : {"spectrum_n4_decoupled.csv", "spectrum_n4_i0.csv", "spectrum_n4_i1.csv"}) {
    ASSERT_TRUE(fs::exists(dir / name)) << name;
    EXPECT_EQ(header_of(dir / name), "s,E0,E1,gap,E0_over_n,n,seed");
    EXPECT_EQ(read_csv(dir / name).size(), 11u);  // 10 samples plus s = 0.5
  }
  const auto summary = read_csv(dir / "spectra.csv");
  ASSERT_EQ(summary.size(), 3u);
  EXPECT_EQ(summary[0].at("curve"), "decoupled");
  EXPECT_EQ(summary[1].at("above_decoupled"), "true");
  EXPECT_EQ(summary[2].at("above_decoupled"), "true");
}

TEST(Run, SDiagnosticAndPermEnsemble) {
  auto c = default_config(ExperimentKind::s_diagnostic);
  c.times = {1, 2};
  c.out = scratch("sdiag").string();
  run(c);
  EXPECT_EQ(header_of(fs::path(c.out) / "s_diag.csv").rfind("t,S,rhs_integral_bound", 0), 0u);
  const auto checks = read_csv(fs::path(c.out) / "s_diag_checks.csv");
  ASSERT_EQ(checks.size(), 2u);
  for (const auto& r : checks) EXPECT_EQ(r.at("all_hold"), "true");

  auto p = default_config(ExperimentKind::perm_ensemble);
  p.out = scratch("perm").string();
  const auto s = run(p);
  const auto rows = read_csv(fs::path(p.out) / "perm_ensemble.csv");
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.at("lemma1_holds"), "true");
    EXPECT_EQ(r.at("permutations"), "24");
  }
  for (const auto& r : read_csv(fs::path(p.out) / "bounds.csv")) {
    EXPECT_EQ(r.at("theorem"), "theorem2");
    EXPECT_EQ(r.at("satisfied"), "true");
  }
  EXPECT_FALSE(meta(s, "lemma1_pair_convention").empty());
}

TEST(Run, DecoupledRowsMatchClosedForm) {
  auto c = default_config(ExperimentKind::decoupled);
  c.n = {4, 16};
  c.t_max = 20.0;
  c.out = scratch("decoupled").string();
  const auto s = run(c);
  const auto rows = read_csv(fs::path(c.out) / "decoupled.csv");
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) {
    const double T = std::stod(r.at("required_T"));
    EXPECT_GE(decoupled_success(std::stoi(r.at("n")), T), 0.2);
  }
  EXPECT_FALSE(meta(s, "exponent_first_crossing").empty());
  EXPECT_FALSE(meta(s, "exponent_sustained").empty());
}

// ---------------------------------------------------------------------------
// Command line

namespace {

int cli(const std::string& args) {
  const std::string cmd = std::string(ALAB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch("cli");
  fs::create_directories(dir);
  const std::string out = " --out " + (dir / "out").string();

  EXPECT_EQ(cli("--help"), 0);
  EXPECT_EQ(cli("--version"), 0);
  EXPECT_EQ(cli(""), 2);
  EXPECT_EQ(cli("annealing"), 2);
  EXPECT_EQ(cli("two-level --bogus 1"), 2);
  EXPECT_EQ(cli("two-level --config " + (dir / "missing.cfg").string()), 2);
  EXPECT_EQ(cli("exact-cover --window 0.3,0.2" + out), 2);
  EXPECT_EQ(cli("exact-cover --n 2" + out), 2);

  std::ofstream(dir / "wrong_kind.cfg") << "kind=decoupled\n";
  EXPECT_EQ(cli("two-level --config " + (dir / "wrong_kind.cfg").string() + out), 2);
  std::ofstream(dir / "bad_key.cfg") << "kind=two-level\nfrobnicate=3\n";
  EXPECT_EQ(cli("two-level --config " + (dir / "bad_key.cfg").string() + out), 2);

  std::ofstream(dir / "ok.cfg") << "# two quick run times\nkind=two-level\ntimes=20,40\n";
  EXPECT_EQ(cli("two-level --config " + (dir / "ok.cfg").string() + out), 0);
  EXPECT_EQ(read_csv(dir / "out" / "twolevel.csv").size(), 2u);
  // Flags override the file.
  EXPECT_EQ(cli("two-level --config " + (dir / "ok.cfg").string() + " --times 20,40,80" + out), 0);
  EXPECT_EQ(read_csv(dir / "out" / "twolevel.csv").size(), 3u);

  EXPECT_EQ(cli("bounds-check --n 4 --times 50 --steps-per-unit 0.0001" + out), 3);
  EXPECT_TRUE(fs::exists(dir / "out" / "errors.csv"));
}
