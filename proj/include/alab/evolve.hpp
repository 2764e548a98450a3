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

#ifndef ALAB_EVOLVE_HPP
#define ALAB_EVOLVE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "alab/errors.hpp"
#include "alab/hamiltonians.hpp"
#include "alab/problems.hpp"
#include "alab/qstate.hpp"

namespace alab {

enum class Direction { forward, backward };

/// Drift above which a fixed-step run is rejected outright.
inline constexpr double kMaxNormDrift = 1e-5;
/// Drift the automatic resolution loop aims for.
inline constexpr double kTargetNormDrift = 1e-7;
inline constexpr double kDefaultStepsPerUnit = 400.0;

struct EvolveOptions {
  std::size_t steps = 1;
  Direction direction = Direction::forward;
  /// Times at which to record the state; each must sit on the step grid.
  std::vector<double> sample_times{};
};

struct TrajectorySample {
  double t;
  QuantumState state;
};

struct EvolutionResult {
  QuantumState final_state;
  /// NaN unless a cost was supplied.
  double success_probability = std::numeric_limits<double>::quiet_NaN();
  std::vector<TrajectorySample> trajectory;
  std::size_t step_count = 0;
  double norm_drift = 0.0;
};

/// b = sum over the ground set of |a_z|^2
inline double success_probability(const QuantumState& state, const CostFunction& cost) {
  if (state.dimension() != cost.dimension())
    throw dimension_mismatch("success_probability: state/cost dimension mismatch");
  double b = 0.0;
  for (std::size_t z : cost.ground_set()) b += std::norm(state[z]);
  return b;
}

namespace detail {

/// Step indices, in integration order, at which samples are taken.
inline std::vector<std::pair<std::size_t, double>> sample_steps(const std::vector<double>& times,
                                                                double T, std::size_t steps,
                                                                Direction dir) {
  std::vector<std::pair<std::size_t, double>> out;
  const double tol = 1e-9 * std::max(1.0, T);
  for (double t : times) {
    require(t >= -tol && t <= T + tol, "sample time outside [0, T]");
    const double progress = dir == Direction::forward ? t : T - t;
    const double frac = T > 0.0 ? progress / T * static_cast<double>(steps) : 0.0;
    const double k = std::round(frac);
    require(std::abs(frac - k) * (T > 0.0 ? T / static_cast<double>(steps) : 1.0) <= tol,
            "sample time " + std::to_string(t) + " is not on the step grid");
    out.emplace_back(static_cast<std::size_t>(k), t);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace detail

/// Integrates i d|psi>/dt = H(t)|psi> with classical fourth-order Runge-Kutta
/// on a fixed grid. Coefficients are evaluated at the stage times. Forward runs
/// go 0 -> T; backward runs start at t = T and step down to 0, which applies
/// U^dagger(T, t). The state is never renormalized.
inline EvolutionResult schrodinger_evolve(const TimeDependentHamiltonian& H,
                                          const QuantumState& psi0, const EvolveOptions& options) {
  if (psi0.dimension() != H.dimension())
    throw dimension_mismatch("schrodinger_evolve: state/hamiltonian dimension mismatch");
  if (!psi0.is_normalized()) throw non_normalized_input("schrodinger_evolve: psi0 not normalized");
  detail::require(options.steps >= 1, "schrodinger_evolve: steps must be >= 1");

  const double T = H.total_time();
  const std::size_t steps = options.steps;
  const double h = (options.direction == Direction::forward ? 1.0 : -1.0) * T /
                   static_cast<double>(steps);
  const double t0 = options.direction == Direction::forward ? 0.0 : T;
  const auto samples = detail::sample_steps(options.sample_times, T, steps, options.direction);

  const std::size_t dim = psi0.dimension();
  Amplitudes y(psi0.amplitudes().begin(), psi0.amplitudes().end());
  Amplitudes acc(dim), k(dim), tmp(dim);
  const Complex minus_i{0.0, -1.0};

  EvolutionResult result{psi0, std::numeric_limits<double>::quiet_NaN(), {}, steps, 0.0};
  std::size_t next_sample = 0;
  auto record = [&](std::size_t step) {
    while (next_sample < samples.size() && samples[next_sample].first == step) {
      result.trajectory.push_back({samples[next_sample].second, QuantumState(psi0.num_qubits(), y)});
      ++next_sample;
    }
  };
  record(0);

  if (T > 0.0) {
    for (std::size_t step = 0; step < steps; ++step) {
      const double t = t0 + h * static_cast<double>(step);
      const double half = 0.5 * h;

      std::fill(k.begin(), k.end(), Complex{});
      H.apply_add(t, minus_i, y, k);
      for (std::size_t i = 0; i < dim; ++i) {
        acc[i] = k[i];
        tmp[i] = y[i] + half * k[i];
      }
      std::fill(k.begin(), k.end(), Complex{});
      H.apply_add(t + half, minus_i, tmp, k);
      for (std::size_t i = 0; i < dim; ++i) {
        acc[i] += 2.0 * k[i];
        tmp[i] = y[i] + half * k[i];
      }
      std::fill(k.begin(), k.end(), Complex{});
      H.apply_add(t + half, minus_i, tmp, k);
      for (std::size_t i = 0; i < dim; ++i) {
        acc[i] += 2.0 * k[i];
        tmp[i] = y[i] + h * k[i];
      }
      std::fill(k.begin(), k.end(), Complex{});
      H.apply_add(t + h, minus_i, tmp, k);
      const double sixth = h / 6.0;
      for (std::size_t i = 0; i < dim; ++i) y[i] += sixth * (acc[i] + k[i]);

      record(step + 1);
    }
  }

  result.norm_drift = std::abs(norm(y) - 1.0);
  if (result.norm_drift > kMaxNormDrift)
    throw step_count_too_small("schrodinger_evolve: norm drift " +
                               std::to_string(result.norm_drift) + " with " +
                               std::to_string(steps) + " steps");
  result.final_state = QuantumState(psi0.num_qubits(), std::move(y));
  return result;
}

inline EvolutionResult schrodinger_evolve(const TimeDependentHamiltonian& H,
                                          const QuantumState& psi0, const EvolveOptions& options,
                                          const CostFunction& cost) {
  EvolutionResult r = schrodinger_evolve(H, psi0, options);
  r.success_probability = success_probability(r.final_state, cost);
  return r;
}

inline std::size_t steps_for(double total_time, double steps_per_unit) {
  detail::require(steps_per_unit > 0.0, "steps per unit time must be positive");
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(steps_per_unit * total_time)));
}

/// Forward run at `steps_per_unit`, doubling the resolution until the norm
/// drift falls below 1e-7.
inline EvolutionResult evolve_to_tolerance(const TimeDependentHamiltonian& H,
                                           const QuantumState& psi0,
                                           double steps_per_unit = kDefaultStepsPerUnit,
                                           int max_doublings = 8) {
  std::size_t steps = steps_for(H.total_time(), steps_per_unit);
  for (int attempt = 0;; ++attempt) {
    try {
      EvolutionResult r = schrodinger_evolve(H, psi0, {steps, Direction::forward, {}});
      if (r.norm_drift < kTargetNormDrift || attempt >= max_doublings) {
        if (r.norm_drift >= kTargetNormDrift)
          throw step_count_too_small("evolve_to_tolerance: drift " + std::to_string(r.norm_drift) +
                                     " after " + std::to_string(attempt) + " doublings");
        return r;
      }
    } catch (const step_count_too_small&) {
      if (attempt >= max_doublings) throw;
    }
    steps *= 2;
  }
}

inline EvolutionResult evolve_to_tolerance(const TimeDependentHamiltonian& H,
                                           const QuantumState& psi0, const CostFunction& cost,
                                           double steps_per_unit = kDefaultStepsPerUnit) {
  EvolutionResult r = evolve_to_tolerance(H, psi0, steps_per_unit);
  r.success_probability = success_probability(r.final_state, cost);
  return r;
}

/// ||U^dagger U psi0 - psi0|| on a fixed grid.
inline double roundtrip_check(const TimeDependentHamiltonian& H, const QuantumState& psi0,
                              std::size_t steps) {
  const auto fwd = schrodinger_evolve(H, psi0, {steps, Direction::forward, {}});
  // The backward leg wants a normalized input; carry the forward drift as a scale.
  const double scale = fwd.final_state.norm();
  Amplitudes mid(fwd.final_state.amplitudes().begin(), fwd.final_state.amplitudes().end());
  for (auto& a : mid) a /= scale;
  const auto back = schrodinger_evolve(H, QuantumState(psi0.num_qubits(), std::move(mid)),
                                       {steps, Direction::backward, {}});
  Amplitudes out(back.final_state.amplitudes().begin(), back.final_state.amplitudes().end());
  for (auto& a : out) a *= scale;
  return std::sqrt(distance_squared(out, psi0.amplitudes()));
}

// ---------------------------------------------------------------------------
// Required run time

struct RunTimeSearchOptions {
  double window_lo = 0.2;
  double window_hi = 0.21;
  double t_min = 0.25;
  double t_max = 4096.0;
  double steps_per_unit = kDefaultStepsPerUnit;
  int max_probes = 80;
};

struct RunTimeSearchResult {
  double required_T = 0.0;
  double achieved_b = 0.0;
  int probe_count = 0;
  std::pair<double, double> window{0.2, 0.21};
};

/// Smallest-found T whose adiabatic run lands the success probability in the
/// window: doubling scan from t_min until b >= lo, then bisection on the last
/// bracket. b(T) need not be monotone, so this returns the first landing.
inline RunTimeSearchResult required_run_time(const LinearOperator& begin,
                                             const LinearOperator& problem,
                                             const CostFunction& cost,
                                             const RunTimeSearchOptions& options,
                                             const std::optional<QuantumState>& psi0 = std::nullopt) {
  const double lo = options.window_lo;
  const double hi = options.window_hi;
  detail::require(lo > 0.0 && hi < 1.0 && lo < hi, "required_run_time: window must satisfy 0 < lo < hi < 1");
  detail::require(options.t_min > 0.0 && options.t_max >= options.t_min,
                  "required_run_time: need 0 < t_min <= t_max");
  const QuantumState start = psi0 ? *psi0 : uniform_state(qubits_for(begin.dimension()));

  RunTimeSearchResult result;
  result.window = {lo, hi};
  auto probe = [&](double T) {
    if (result.probe_count >= options.max_probes)
      throw not_reached("required_run_time: probe cap " + std::to_string(options.max_probes) +
                        " reached");
    ++result.probe_count;
    return evolve_to_tolerance(adiabatic_interpolation(begin, problem, T), start, cost,
                               options.steps_per_unit)
        .success_probability;
  };
  auto in_window = [&](double b) { return b >= lo && b <= hi; };

  double T = options.t_min;
  double b = probe(T);
  if (b > hi)
    throw already_above_window("required_run_time: b(" + std::to_string(T) + ") = " +
                               std::to_string(b) + " already above window");
  double prev_T = T;
  while (b < lo) {
    prev_T = T;
    T *= 2.0;
    if (T > options.t_max)
      throw not_reached("required_run_time: b stayed below window up to t_max");
    b = probe(T);
  }
  double lo_T = prev_T;
  double hi_T = T;
  while (!in_window(b)) {
    const double mid = 0.5 * (lo_T + hi_T);
    b = probe(mid);
    T = mid;
    if (b < lo)
      lo_T = mid;
    else if (b > hi)
      hi_T = mid;
  }
  result.required_T = T;
  result.achieved_b = b;
  return result;
}

}  // namespace alab

#endif  // ALAB_EVOLVE_HPP
