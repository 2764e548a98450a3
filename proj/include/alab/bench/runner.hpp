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

#ifndef ALAB_BENCH_RUNNER_HPP
#define ALAB_BENCH_RUNNER_HPP

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "alab/bench/config.hpp"
#include "alab/bench/pool.hpp"
#include "alab/bounds.hpp"
#include "alab/csv.hpp"
#include "alab/evolve.hpp"
#include "alab/hamiltonians.hpp"
#include "alab/problems.hpp"
#include "alab/rng.hpp"
#include "alab/spectra.hpp"
#include "alab/stats.hpp"
#include "alab/twolevel.hpp"

namespace alab::bench {

/// A task that failed with a computation error; the sweep keeps going.
struct TaskError {
  std::string task;
  std::string kind;
  std::string message;
};

struct RunSummary {
  std::vector<std::string> files;
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<TaskError> errors;
  double wall_clock_seconds = 0.0;
};

namespace detail {

inline std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const not_reached*>(&e)) return "not_reached";
  if (dynamic_cast<const already_above_window*>(&e)) return "already_above_window";
  if (dynamic_cast<const step_count_too_small*>(&e)) return "step_count_too_small";
  if (dynamic_cast<const no_convergence*>(&e)) return "no_convergence";
  if (dynamic_cast<const generation_exhausted*>(&e)) return "generation_exhausted";
  if (dynamic_cast<const zero_success*>(&e)) return "zero_success";
  if (dynamic_cast<const computation_error*>(&e)) return "computation_error";
  if (dynamic_cast<const precondition_error*>(&e)) return "precondition_error";
  return "error";
}

/// Keeps messages inside one CSV field.
inline std::string clean(std::string s) {
  for (auto& ch : s)
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  return s;
}

inline std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

class Output {
 public:
  Output(const ExperimentConfig& c, RunSummary& summary) : dir_(c.out), summary_(summary) {
    std::filesystem::create_directories(dir_);
  }

  std::ofstream open(const std::string& name) {
    std::ofstream os(dir_ / name, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + (dir_ / name).string());
    summary_.files.push_back(name);
    return os;
  }

 private:
  std::filesystem::path dir_;
  RunSummary& summary_;
};

inline double projector_energy(const ExperimentConfig& c, int n) {
  return c.energy ? *c.energy : default_projector_energy(n);
}

inline std::uint64_t instance_seed(const ExperimentConfig& c, int n, std::size_t instance) {
  return derive_seed(derive_seed(c.seed, static_cast<std::uint64_t>(n)), instance);
}

// ---------------------------------------------------------------------------
// exact-cover

struct SearchRow {
  int n = 0;
  std::size_t instance = 0;
  std::uint64_t seed = 0;
  std::string hb_kind;
  double energy = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> required_T;
  std::optional<double> achieved_b;
  std::optional<int> probes;
  std::string status;
  std::string message;
};

inline bool is_error_status(const std::string& status) {
  return status != "ok" && status != "not_reached" && status != "already_above_window";
}

inline void run_exact_cover(const ExperimentConfig& c, Output& out, RunSummary& summary) {
  struct Task {
    int n;
    std::size_t instance;
    bool projector;
  };
  std::vector<Task> tasks;
  for (int n : c.n)
    for (std::size_t i = 0; i < static_cast<std::size_t>(c.instances); ++i)
      for (bool projector : {true, false}) tasks.push_back({n, i, projector});

  RunTimeSearchOptions search;
  search.window_lo = c.window_lo;
  search.window_hi = c.window_hi;
  search.t_min = c.t_min;
  search.t_max = c.t_max;
  search.steps_per_unit = c.steps_per_unit;

  const auto rows = parallel_map(tasks.size(), resolve_workers(c.workers), [&](std::size_t idx) {
    const Task& t = tasks[idx];
    SearchRow row;
    row.n = t.n;
    row.instance = t.instance;
    row.seed = instance_seed(c, t.n, t.instance);
    row.hb_kind = t.projector ? "projector" : "clause";
    try {
      const auto inst = generate_exact_cover_usa(t.n, row.seed);
      const auto cost = exact_cover_cost(inst);
      LinearOperator begin = clause_beginning(inst);
      if (t.projector) {
        row.energy = projector_energy(c, t.n);
        begin = projector_beginning(t.n, row.energy);
      }
      const auto r = required_run_time(begin, problem_hamiltonian(cost), cost, search);
      row.required_T = r.required_T;
      row.achieved_b = r.achieved_b;
      row.probes = r.probe_count;
      row.status = "ok";
    } catch (const computation_error& e) {
      row.status = error_kind(e);
      row.message = clean(e.what());
    }
    return row;
  });

  auto csv = out.open("required_t.csv");
  csv << "n,instance_id,seed,hb_kind,required_T,achieved_b,status,E,steps_per_unit,probes\n";
  for (const auto& r : rows) {
    csv << r.n << ',' << r.instance << ',' << r.seed << ',' << r.hb_kind << ',' << opt(r.required_T) << ','
        << opt(r.achieved_b) << ',' << r.status << ',' << (std::isnan(r.energy) ? "" : format_double(r.energy))
        << ',' << format_double(c.steps_per_unit) << ',' << (r.probes ? std::to_string(*r.probes) : "") << '\n';
    if (is_error_status(r.status))
      summary.errors.push_back({"n=" + std::to_string(r.n) + " instance=" + std::to_string(r.instance) + " " + r.hb_kind,
                                r.status, r.message});
  }

  auto med = out.open("medians.csv");
  med << "n,hb_kind,median_T,ci_lo,ci_hi,successes,attempts\n";
  std::vector<double> slope_n, slope_t;
  for (int n : c.n) {
    for (const std::string kind : {"projector", "clause"}) {
      std::vector<double> ts;
      for (const auto& r : rows)
        if (r.n == n && r.hb_kind == kind && r.required_T) ts.push_back(*r.required_T);
      med << n << ',' << kind << ',';
      if (ts.empty()) {
        med << ",,";
      } else {
        std::optional<MedianInterval> ci;
        try {
          ci = median_ci(ts);
        } catch (const precondition_error&) {
          // Too few successes for the coverage level: report the median alone.
        }
        std::vector<double> sorted(ts);
        std::sort(sorted.begin(), sorted.end());
        const std::size_t m = sorted.size();
        const double median = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
        med << format_double(median) << ',' << (ci ? format_double(ci->lo) : "") << ','
            << (ci ? format_double(ci->hi) : "");
        if (kind == std::string("projector")) {
          slope_n.push_back(n);
          slope_t.push_back(std::log(median));
        }
      }
      med << ',' << ts.size() << ',' << c.instances << '\n';
    }
  }
  if (slope_n.size() >= 2) {
    summary.metadata.emplace_back("projector_log_slope", format_double(fit_line(slope_n, slope_t).slope));
    summary.metadata.emplace_back("sqrt_N_log_slope", format_double(std::numbers::ln2 / 2.0));
  }

  auto bounds = out.open("bounds.csv");
  write_bounds_header(bounds, {"n", "instance_id", "seed", "hb_kind", "steps_per_unit"});
  for (const auto& r : rows) {
    if (r.hb_kind != "projector" || !r.required_T) continue;
    const auto report = theorem1_report(*r.achieved_b, r.energy, std::ldexp(1.0, r.n), 1.0, r.required_T);
    write_bounds_row(bounds, report,
                     {std::to_string(r.n), std::to_string(r.instance), std::to_string(r.seed), r.hb_kind,
                      format_double(c.steps_per_unit)});
  }
}

// ---------------------------------------------------------------------------
// two-level

inline void run_two_level(const ExperimentConfig& c, Output& out, RunSummary& summary) {
  struct Row {
    double q, envelope;
  };
  const auto rows = parallel_map(c.times.size(), resolve_workers(c.workers), [&](std::size_t i) {
    return Row{transition_probability(c.times[i]), envelope_transition_probability(c.times[i])};
  });
  auto csv = out.open("twolevel.csv");
  csv << "T,q,envelope_q,resolution\n";
  std::vector<double> ts, env;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    csv << format_double(c.times[i]) << ',' << format_double(rows[i].q) << ',' << format_double(rows[i].envelope)
        << ",auto\n";
    if (rows[i].envelope > 0.0) {
      ts.push_back(c.times[i]);
      env.push_back(rows[i].envelope);
    }
  }
  summary.metadata.emplace_back("theta_bar", format_double(theta(1.0)));
  summary.metadata.emplace_back("q_period", format_double(transition_period()));
  if (ts.size() >= 2) {
    const LineFit fit = fit_power_law(ts, env);
    summary.metadata.emplace_back("envelope_slope", format_double(fit.slope));
    summary.metadata.emplace_back("envelope_constant", format_double(std::exp(fit.intercept)));
  }
}

// ---------------------------------------------------------------------------
// decoupled

inline void run_decoupled(const ExperimentConfig& c, Output& out, RunSummary& summary) {
  const ScalingGrid grid{0.05, c.t_max};
  const std::array<std::pair<ScalingCriterion, std::string_view>, 2> criteria{{
      {ScalingCriterion::first_crossing, "first_crossing"},
      {ScalingCriterion::sustained, "sustained"},
  }};
  const auto results = parallel_map(criteria.size(), resolve_workers(c.workers), [&](std::size_t i) {
    return sqrt_n_scaling_experiment(c.n, c.target, grid, criteria[i].first);
  });
  auto csv = out.open("decoupled.csv");
  csv << "n,target,criterion,required_T,p_at_T,grid_step\n";
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto& r = results[k];
    for (std::size_t i = 0; i < r.n.size(); ++i)
      csv << r.n[i] << ',' << format_double(c.target) << ',' << criteria[k].second << ','
          << format_double(r.required_T[i]) << ',' << format_double(decoupled_success(r.n[i], r.required_T[i]))
          << ',' << format_double(grid.step) << '\n';
    summary.metadata.emplace_back(std::string("exponent_") + std::string(criteria[k].second),
                                  format_double(r.exponent));
  }
}

// ---------------------------------------------------------------------------
// scramble-spectrum

/// Shared across n so curves for different sizes are compared at matched seeds.
inline std::uint64_t permutation_seed(const ExperimentConfig& c, std::size_t instance) {
  return derive_seed(c.seed, instance);
}

inline void run_scramble_spectrum(const ExperimentConfig& c, Output& out, RunSummary& summary) {
  struct Task {
    int n;
    std::optional<std::size_t> instance;  // nullopt: the unscrambled curve
  };
  std::vector<Task> tasks;
  for (int n : c.n) {
    tasks.push_back({n, std::nullopt});
    for (std::size_t i = 0; i < static_cast<std::size_t>(c.instances); ++i) tasks.push_back({n, i});
  }
  const auto curves = parallel_map(tasks.size(), resolve_workers(c.workers), [&](std::size_t idx) {
    const Task& t = tasks[idx];
    const CostFunction base = hamming_cost(t.n);
    const CostFunction cost =
        t.instance ? scramble(base, random_permutation(base.dimension(), permutation_seed(c, *t.instance)))
                   : base;
    return spectral_curve(transverse_field_beginning(t.n), problem_hamiltonian(cost), c.samples);
  });

  auto summary_csv = out.open("spectra.csv");
  summary_csv << "n,instance_id,seed,curve,min_gap,s_at_min_gap,max_E0_over_n,above_decoupled,file\n";
  const SpectralCurve* decoupled = nullptr;
  for (std::size_t idx = 0; idx < tasks.size(); ++idx) {
    const Task& t = tasks[idx];
    const SpectralCurve& curve = curves[idx];
    const std::string seed = t.instance ? std::to_string(permutation_seed(c, *t.instance)) : "";
    const std::string name = "spectrum_n" + std::to_string(t.n) +
                             (t.instance ? "_i" + std::to_string(*t.instance) : std::string("_decoupled")) + ".csv";
    {
      auto f = out.open(name);
      write_curve_csv(f, curve, {{"n", std::to_string(t.n)}, {"seed", seed}});
    }
    if (!t.instance) decoupled = &curve;
    bool above = true;
    double max_e = -std::numeric_limits<double>::infinity();
    const SpectralSample* at_min = &curve.samples.front();
    for (std::size_t i = 0; i < curve.samples.size(); ++i) {
      const auto& p = curve.samples[i];
      max_e = std::max(max_e, p.e0 / t.n);
      if (p.gap < at_min->gap) at_min = &p;
      if (t.instance && p.e0 < decoupled->samples[i].e0 - 1e-9 * t.n) above = false;
    }
    summary_csv << t.n << ',' << (t.instance ? std::to_string(*t.instance) : "") << ',' << seed << ','
                << (t.instance ? "scrambled" : "decoupled") << ',' << format_double(curve.min_gap()) << ','
                << format_double(at_min->s) << ',' << format_double(max_e) << ','
                << (t.instance ? (above ? "true" : "false") : "") << ',' << name << '\n';
  }
  (void)summary;
}

// ---------------------------------------------------------------------------
// bounds-check

inline void run_bounds_check(const ExperimentConfig& c, Output& out, RunSummary& summary) {
  struct Task {
    int n;
    std::string cost_kind;
    std::size_t instance;
    double T;
  };
  std::vector<Task> tasks;
  for (int n : c.n)
    for (const std::string kind : {"hamming", "grover", "exact-cover"}) {
      if (kind == "exact-cover" && n < 4) continue;
      for (std::size_t i = 0; i < static_cast<std::size_t>(c.instances); ++i)
        for (double T : c.times) tasks.push_back({n, kind, i, T});
    }
  struct Row {
    std::optional<BoundReport> report;
    std::uint64_t seed = 0;
    std::size_t steps = 0;
    std::string status = "ok";
    std::string message;
  };
  const auto rows = parallel_map(tasks.size(), resolve_workers(c.workers), [&](std::size_t idx) {
    const Task& t = tasks[idx];
    Row row;
    row.seed = instance_seed(c, t.n, t.instance);
    try {
      CostFunction cost = hamming_cost(t.n);
      if (t.cost_kind == "grover") {
        Rng rng = make_rng(row.seed);
        cost = grover_cost(t.n, uniform_below(rng, std::uint64_t{1} << t.n));
      } else if (t.cost_kind == "exact-cover") {
        cost = exact_cover_cost(generate_exact_cover_usa(t.n, row.seed));
      }
      const double energy = projector_energy(c, t.n);
      const auto H = adiabatic_interpolation(projector_beginning(t.n, energy), problem_hamiltonian(cost), t.T);
      const auto r = evolve_to_tolerance(H, uniform_state(t.n), cost, c.steps_per_unit);
      row.steps = r.step_count;
      row.report = theorem1_report(r.success_probability, energy, static_cast<double>(cost.dimension()),
                                   static_cast<double>(cost.degeneracy()), t.T);
    } catch (const computation_error& e) {
      row.status = error_kind(e);
      row.message = clean(e.what());
    }
    return row;
  });
  auto csv = out.open("bounds.csv");
  write_bounds_header(csv, {"cost", "n", "instance_id", "seed", "steps"});
  std::size_t violated = 0;
  for (std::size_t idx = 0; idx < tasks.size(); ++idx) {
    const Task& t = tasks[idx];
    const Row& r = rows[idx];
    if (!r.report) {
      summary.errors.push_back({"n=" + std::to_string(t.n) + " " + t.cost_kind + " T=" + format_double(t.T), r.status,
                                r.message});
      continue;
    }
    if (!r.report->satisfied) ++violated;
    write_bounds_row(csv, *r.report,
                     {t.cost_kind, std::to_string(t.n), std::to_string(t.instance), std::to_string(r.seed),
                      std::to_string(r.steps)});
  }
  summary.metadata.emplace_back("violations", std::to_string(violated));
}

// ---------------------------------------------------------------------------
// s-diagnostic

inline void run_s_diagnostic(const ExperimentConfig& c, Output& out, RunSummary& summary) {
  struct Task {
    int n;
    double T;
  };
  std::vector<Task> tasks;
  for (int n : c.n)
    for (double T : c.times) tasks.push_back({n, T});
  using Result = std::variant<SDiagnostic, TaskError>;
  const auto results = parallel_map(tasks.size(), resolve_workers(c.workers), [&](std::size_t idx) -> Result {
    const Task& t = tasks[idx];
    SDiagnosticOptions options;
    options.steps = steps_for(t.T, c.steps_per_unit);
    try {
      return s_diagnostic(hamming_cost(t.n), projector_energy(c, t.n), t.T, options);
    } catch (const computation_error& e) {
      return TaskError{"n=" + std::to_string(t.n) + " T=" + format_double(t.T), error_kind(e), clean(e.what())};
    }
  });
  auto traces = out.open("s_diag.csv");
  auto checks = out.open("s_diag_checks.csv");
  checks << "n,E,T,steps,b,S0,S0_lower_bound,S_T,worst_increment_excess,b_spread,sum_overlap_ix,overlap_bound,"
            "conjugation_deviation,all_hold\n";
  bool header = true;
  for (std::size_t idx = 0; idx < tasks.size(); ++idx) {
    const Task& t = tasks[idx];
    if (const auto* err = std::get_if<TaskError>(&results[idx])) {
      summary.errors.push_back(*err);
      continue;
    }
    const auto& d = std::get<SDiagnostic>(results[idx]);
    const double energy = projector_energy(c, t.n);
    write_s_diag_csv(traces, d,
                     {{"n", std::to_string(t.n)},
                      {"E", format_double(energy)},
                      {"T", format_double(t.T)},
                      {"steps", std::to_string(d.steps)}},
                     header);
    header = false;
    checks << t.n << ',' << format_double(energy) << ',' << format_double(t.T) << ',' << d.steps << ','
           << format_double(d.b) << ',' << format_double(d.S.front()) << ',' << format_double(d.s0_lower_bound)
           << ',' << format_double(d.S.back()) << ',' << format_double(d.worst_increment_excess) << ','
           << format_double(d.b_spread) << ',' << format_double(d.sum_overlap_ix) << ','
           << format_double(d.overlap_bound) << ',' << format_double(d.conjugation_deviation) << ','
           << (d.all_hold() ? "true" : "false") << '\n';
  }
}

// ---------------------------------------------------------------------------
// perm-ensemble

inline PermutationAlgorithm adiabatic_permutation_algorithm(int n, double T, std::size_t steps) {
  return {TimeDependentHamiltonian({{transverse_field_beginning(n), [T](double t) { return 1.0 - t / T; }}}, T),
          [T](double t) { return t / T; }, std::nullopt, steps};
}

inline void run_perm_ensemble(const ExperimentConfig& c, Output& out, RunSummary& summary) {
  struct Task {
    int n;
    double T;
  };
  std::vector<Task> tasks;
  for (int n : c.n)
    for (double T : c.times) tasks.push_back({n, T});
  struct Row {
    Lemma1Result lemma1;
    Theorem2Result theorem2;
    std::size_t steps;
  };
  const auto rows = parallel_map(tasks.size(), resolve_workers(c.workers), [&](std::size_t idx) {
    const Task& t = tasks[idx];
    const CostFunction cost = canonicalize_for_theorem2(hamming_cost(t.n));
    const std::size_t steps = steps_for(t.T, c.steps_per_unit);
    const auto alg = adiabatic_permutation_algorithm(t.n, t.T, steps);
    return Row{lemma1_experiment(cost, alg), theorem2_experiment(cost, alg, c.target), steps};
  });
  auto csv = out.open("perm_ensemble.csv");
  csv << "n,T,steps,pair_sum_ordered,pair_sum_unordered,lemma1_bound,lemma1_holds,successes,permutations,eps\n";
  auto bounds = out.open("bounds.csv");
  write_bounds_header(bounds, {"n", "steps"});
  for (std::size_t idx = 0; idx < tasks.size(); ++idx) {
    const Task& t = tasks[idx];
    const Row& r = rows[idx];
    csv << t.n << ',' << format_double(t.T) << ',' << r.steps << ',' << format_double(r.lemma1.pair_sum_ordered)
        << ',' << format_double(r.lemma1.pair_sum_unordered) << ',' << format_double(r.lemma1.bound) << ','
        << (r.lemma1.holds() ? "true" : "false") << ',' << r.theorem2.successes << ',' << r.theorem2.permutations
        << ',' << format_double(r.theorem2.report.eps) << '\n';
    write_bounds_row(bounds, r.theorem2.report, {std::to_string(t.n), std::to_string(r.steps)});
  }
  summary.metadata.emplace_back("lemma1_pair_convention", "ordered (pi, a) with a != 0");
}

}  // namespace detail

/// Runs `config` and writes its CSV files plus `run.txt` into config.out.
/// Per-task computation errors are collected in the summary (and in
/// errors.csv) without stopping the sweep.
inline RunSummary run(const ExperimentConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  RunSummary summary;
  detail::Output out(config, summary);
  switch (config.kind) {
    case ExperimentKind::exact_cover: detail::run_exact_cover(config, out, summary); break;
    case ExperimentKind::two_level: detail::run_two_level(config, out, summary); break;
    case ExperimentKind::decoupled: detail::run_decoupled(config, out, summary); break;
    case ExperimentKind::scramble_spectrum: detail::run_scramble_spectrum(config, out, summary); break;
    case ExperimentKind::bounds_check: detail::run_bounds_check(config, out, summary); break;
    case ExperimentKind::s_diagnostic: detail::run_s_diagnostic(config, out, summary); break;
    case ExperimentKind::perm_ensemble: detail::run_perm_ensemble(config, out, summary); break;
  }
  if (!summary.errors.empty()) {
    auto errs = out.open("errors.csv");
    errs << "task,kind,message\n";
    for (const auto& e : summary.errors) errs << detail::clean(e.task) << ',' << e.kind << ',' << e.message << '\n';
  }
  summary.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  auto record = out.open("run.txt");
  // Only the config lines are live, so the record is itself a valid --config file.
  record << "# run record\n" << to_text(config) << "# version=" << kVersion << '\n'
         << "# wall_clock_seconds=" << format_double(summary.wall_clock_seconds) << '\n'
         << "# errors=" << summary.errors.size() << '\n';
  for (const auto& [key, value] : summary.metadata) record << "# meta." << key << '=' << value << '\n';
  for (const auto& f : summary.files)
    if (f != "run.txt") record << "# file=" << f << '\n';
  return summary;
}

}  // namespace alab::bench

#endif  // ALAB_BENCH_RUNNER_HPP
