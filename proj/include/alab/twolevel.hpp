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

#ifndef ALAB_TWOLEVEL_HPP
#define ALAB_TWOLEVEL_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "alab/errors.hpp"
#include "alab/evolve.hpp"
#include "alab/hamiltonians.hpp"
#include "alab/problems.hpp"
#include "alab/qstate.hpp"
#include "alab/stats.hpp"

namespace alab {

namespace detail {

// 5-point Gauss-Legendre nodes and weights on [-1, 1].
inline constexpr std::array<double, 5> kGaussNodes = {
    0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640, 0.9061798459386640};
inline constexpr std::array<double, 5> kGaussWeights = {
    0.5688888888888889, 0.4786286704993665, 0.4786286704993665, 0.2369268850561891,
    0.2369268850561891};

/// Composite Gauss-Legendre on [a, b]; ample for smooth integrands.
template <class F>
double integrate(F&& f, double a, double b, int panels = 64) {
  if (b == a) return 0.0;
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    for (std::size_t i = 0; i < kGaussNodes.size(); ++i)
      total += kGaussWeights[i] * f(mid + 0.5 * width * kGaussNodes[i]);
  }
  return 0.5 * width * total;
}

}  // namespace detail

struct TwoLevelEigen {
  double e0;
  double e1;
  Eigen::Vector2d phi0;
  Eigen::Vector2d phi1;
};

/// H(s) = (1 - s) begin + s problem on one qubit, both real symmetric.
/// The default is the transverse field (1 - sigma_x)/2 interpolated to the
/// one-bit cost diag(0, 1).
struct TwoLevelSchedule {
  Eigen::Matrix2d begin = (Eigen::Matrix2d() << 0.5, -0.5, -0.5, 0.5).finished();
  Eigen::Matrix2d problem = (Eigen::Matrix2d() << 0.0, 0.0, 0.0, 1.0).finished();

  Eigen::Matrix2d at(double s) const { return (1.0 - s) * begin + s * problem; }

  /// Instantaneous eigenpairs. Each eigenvector has its first nonvanishing
  /// component real and positive; for real H that already gives
  /// <phi_i|d phi_i/ds> = 0.
  TwoLevelEigen eigen(double s) const {
    const Eigen::Matrix2d h = at(s);
    const double mean = 0.5 * (h(0, 0) + h(1, 1));
    const double half_diff = 0.5 * (h(0, 0) - h(1, 1));
    const double r = std::hypot(half_diff, h(0, 1));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es;
    es.computeDirect(h);
    auto fix = [](Eigen::Vector2d v) {
      v.normalize();
      const double lead = std::abs(v(0)) > 1e-12 ? v(0) : v(1);
      return lead < 0.0 ? Eigen::Vector2d(-v) : v;
    };
    return {mean - r, mean + r, fix(es.eigenvectors().col(0)), fix(es.eigenvectors().col(1))};
  }

  double gap(double s) const {
    const Eigen::Matrix2d h = at(s);
    return 2.0 * std::hypot(0.5 * (h(0, 0) - h(1, 1)), h(0, 1));
  }

  /// The schedule's matrices as matrix-free operators:
  /// [[a, b], [b, d]] = diag(a + b, d + b) - 2b (1 - sigma_x)/2.
  static LinearOperator as_operator(const Eigen::Matrix2d& m) {
    const double b = m(0, 1);
    return LinearOperator::weighted_sum(
        {{1.0, LinearOperator::diagonal({m(0, 0) + b, m(1, 1) + b})},
         {-2.0 * b, LinearOperator::transverse_field_sum({1})}});
  }

  TimeDependentHamiltonian hamiltonian(double total_time) const {
    return adiabatic_interpolation(as_operator(begin), as_operator(problem), total_time);
  }
};

/// g(s) = E1(s) - E0(s) of the default single-qubit schedule: sqrt((1-s)^2 + s^2).
inline double gap(double s) {
  detail::require(s >= 0.0 && s <= 1.0, "gap: s must lie in [0, 1]");
  return std::sqrt((1.0 - s) * (1.0 - s) + s * s);
}

/// theta(s) = integral of the gap from 0 to s.
inline double theta(double s, const TwoLevelSchedule& schedule = {}) {
  detail::require(s >= 0.0 && s <= 1.0, "theta: s must lie in [0, 1]");
  return detail::integrate([&](double u) { return schedule.gap(u); }, 0.0, s);
}

/// integral_0^s E_level(u) du
inline double energy_integral(int level, double s, const TwoLevelSchedule& schedule = {}) {
  return detail::integrate(
      [&](double u) {
        const auto e = schedule.eigen(u);
        return level == 0 ? e.e0 : e.e1;
      },
      0.0, s);
}

/// f(theta) = -<phi1|dH/ds|phi0> / g^2, the coupling that drives transitions.
inline double coupling(double s, const TwoLevelSchedule& schedule = {}) {
  const auto e = schedule.eigen(s);
  const double g = e.e1 - e.e0;
  const Eigen::Matrix2d dh = schedule.problem - schedule.begin;
  return -e.phi1.dot(dh * e.phi0) / (g * g);
}

namespace detail {

inline QuantumState two_level_ground(const TwoLevelSchedule& schedule, double s) {
  const auto e = schedule.eigen(s);
  return QuantumState(1, {Complex{e.phi0(0), 0.0}, Complex{e.phi0(1), 0.0}});
}

inline double excited_overlap(const TwoLevelSchedule& schedule, const QuantumState& psi) {
  const auto e = schedule.eigen(1.0);
  return std::norm(e.phi1(0) * psi[0] + e.phi1(1) * psi[1]);
}

}  // namespace detail

/// q(T) = |<phi1(1)|psi(1)>|^2 starting from the ground state at s = 0.
/// steps == 0 selects the automatic resolution.
inline double transition_probability(double total_time, std::size_t steps = 0,
                                     const TwoLevelSchedule& schedule = {}) {
  detail::require(total_time >= 0.0 && std::isfinite(total_time),
                  "transition_probability: T must be >= 0");
  const QuantumState start = detail::two_level_ground(schedule, 0.0);
  if (total_time == 0.0) return detail::excited_overlap(schedule, start);
  const auto H = schedule.hamiltonian(total_time);
  const EvolutionResult r = steps == 0 ? evolve_to_tolerance(H, start)
                                       : schrodinger_evolve(H, start, {steps, Direction::forward, {}});
  return detail::excited_overlap(schedule, r.final_state);
}

struct TwoLevelResult {
  double total_time = 0.0;
  double q = 0.0;
  std::vector<double> s;
  std::vector<double> theta;
  std::vector<Complex> c0;
  std::vector<Complex> c1;
};

/// Adiabatic-frame coefficients c_i(s) = e^{iT int_0^s E_i} <phi_i(s)|psi(s)>
/// along a sampled trajectory with times t = sT.
inline TwoLevelResult adiabatic_frame(const std::vector<TrajectorySample>& trajectory,
                                      double total_time, const TwoLevelSchedule& schedule = {}) {
  detail::require(total_time > 0.0, "adiabatic_frame: T must be positive");
  TwoLevelResult out;
  out.total_time = total_time;
  for (const auto& sample : trajectory) {
    detail::require(sample.state.dimension() == 2, "adiabatic_frame: needs a two-level trajectory");
    const double s = std::clamp(sample.t / total_time, 0.0, 1.0);
    const auto e = schedule.eigen(s);
    if (e.e1 - e.e0 < 1e-12) throw computation_error("adiabatic_frame: gap below 1e-12");
    const Complex p0 = e.phi0(0) * sample.state[0] + e.phi0(1) * sample.state[1];
    const Complex p1 = e.phi1(0) * sample.state[0] + e.phi1(1) * sample.state[1];
    out.s.push_back(s);
    out.theta.push_back(theta(s, schedule));
    out.c0.push_back(std::polar(1.0, total_time * energy_integral(0, s, schedule)) * p0);
    out.c1.push_back(std::polar(1.0, total_time * energy_integral(1, s, schedule)) * p1);
  }
  if (!out.c1.empty()) out.q = std::norm(out.c1.back());
  return out;
}

/// Evolves the two-level system and returns the frame coefficients on
/// `num_samples` evenly spaced s values.
inline TwoLevelResult two_level_run(double total_time, int num_samples = 101,
                                    double steps_per_unit = kDefaultStepsPerUnit,
                                    const TwoLevelSchedule& schedule = {}) {
  detail::require(total_time > 0.0, "two_level_run: T must be positive");
  detail::require(num_samples >= 2, "two_level_run: need >= 2 samples");
  const std::size_t intervals = static_cast<std::size_t>(num_samples - 1);
  const std::size_t per = (steps_for(total_time, steps_per_unit) + intervals - 1) / intervals;
  std::vector<double> times;
  for (std::size_t k = 0; k <= intervals; ++k)
    times.push_back(total_time * static_cast<double>(k) / static_cast<double>(intervals));
  const auto r = schrodinger_evolve(schedule.hamiltonian(total_time),
                                    detail::two_level_ground(schedule, 0.0),
                                    {per * intervals, Direction::forward, times});
  return adiabatic_frame(r.trajectory, total_time, schedule);
}

/// Period in T of the q(T) oscillation, 2 pi / theta(1).
inline double transition_period(const TwoLevelSchedule& schedule = {}) {
  return 2.0 * std::numbers::pi / theta(1.0, schedule);
}

/// Upper envelope of q: max over one oscillation period centred on T.
inline double envelope_transition_probability(double total_time, int points = 33,
                                              const TwoLevelSchedule& schedule = {}) {
  detail::require(points >= 2, "envelope: need >= 2 points");
  const double half = 0.5 * transition_period(schedule);
  const double lo = std::max(0.0, total_time - half);
  const double hi = total_time + half;
  double best = 0.0;
  for (int i = 0; i < points; ++i)
    best = std::max(best, transition_probability(lo + (hi - lo) * i / (points - 1), 0, schedule));
  return best;
}

struct TransitionScaling {
  std::vector<double> times;
  std::vector<double> q;
  std::vector<double> envelope_q;
  double slope;
  /// C in envelope_q ~ C T^slope.
  double constant;
};

inline TransitionScaling transition_scaling(const std::vector<double>& times,
                                            const TwoLevelSchedule& schedule = {}) {
  TransitionScaling out;
  out.times = times;
  for (double T : times) {
    out.q.push_back(transition_probability(T, 0, schedule));
    out.envelope_q.push_back(envelope_transition_probability(T, 33, schedule));
  }
  const LineFit fit = fit_power_law(out.times, out.envelope_q);
  out.slope = fit.slope;
  out.constant = std::exp(fit.intercept);
  return out;
}

/// p = (1 - q(T))^n for n independent bits.
inline double decoupled_success(int num_bits, double total_time, std::size_t steps = 0) {
  detail::require(num_bits >= 1, "decoupled_success: n must be >= 1");
  return std::pow(1.0 - transition_probability(total_time, steps), num_bits);
}

enum class ScalingCriterion {
  /// First grid T with p >= target.
  first_crossing,
  /// First grid T after which p stays >= target for the rest of the grid.
  sustained,
};

struct ScalingGrid {
  double step = 0.05;
  double t_max = 60.0;
};

struct SqrtNScaling {
  std::vector<int> n;
  std::vector<double> required_T;
  double exponent;
};

/// T*(n) for each n on a uniform T grid, and the fitted exponent of T* vs n.
inline SqrtNScaling sqrt_n_scaling_experiment(const std::vector<int>& n_list, double target,
                                              const ScalingGrid& grid = {},
                                              ScalingCriterion criterion =
                                                  ScalingCriterion::first_crossing) {
  detail::require(target > 0.0 && target < 1.0, "sqrt_n_scaling: target must lie in (0, 1)");
  detail::require(n_list.size() >= 2, "sqrt_n_scaling: need >= 2 bit counts");
  detail::require(grid.step > 0.0 && grid.t_max > grid.step, "sqrt_n_scaling: bad T grid");
  const auto points = static_cast<std::size_t>(std::floor(grid.t_max / grid.step + 1e-9));
  std::vector<double> times(points), q(points);
  for (std::size_t i = 0; i < points; ++i) {
    times[i] = grid.step * static_cast<double>(i + 1);
    q[i] = transition_probability(times[i]);
  }
  std::vector<double> tail(q);
  for (std::size_t i = points - 1; i-- > 0;) tail[i] = std::max(tail[i], tail[i + 1]);
  const std::vector<double>& probe = criterion == ScalingCriterion::first_crossing ? q : tail;

  SqrtNScaling out;
  for (int n : n_list) {
    detail::require(n >= 1, "sqrt_n_scaling: n must be >= 1");
    std::size_t hit = points;
    for (std::size_t i = 0; i < points; ++i) {
      if (std::pow(1.0 - probe[i], n) >= target) {
        hit = i;
        break;
      }
    }
    if (hit == points)
      throw not_reached("sqrt_n_scaling: grid exhausted for n = " + std::to_string(n));
    out.n.push_back(n);
    out.required_T.push_back(times[hit]);
  }
  std::vector<double> nd(out.n.begin(), out.n.end());
  out.exponent = fit_power_law(nd, out.required_T).slope;
  return out;
}

}  // namespace alab

#endif  // ALAB_TWOLEVEL_HPP
