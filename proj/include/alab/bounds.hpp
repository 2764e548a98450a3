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

#ifndef ALAB_BOUNDS_HPP
#define ALAB_BOUNDS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "alab/csv.hpp"
#include "alab/errors.hpp"
#include "alab/evolve.hpp"
#include "alab/hamiltonians.hpp"
#include "alab/problems.hpp"
#include "alab/qstate.hpp"
#include "alab/rng.hpp"

namespace alab {

/// Projector-start lower bound: T >= (b/E) sqrt(N/k) - 2 sqrt(b)/E.
inline double theorem1_lower_bound(double b, double energy, double N, double k) {
  detail::require(b >= 0.0 && b <= 1.0, "theorem1: b must lie in [0, 1]");
  detail::require(energy > 0.0, "theorem1: E must be positive");
  detail::require(k >= 1.0 && k <= N, "theorem1: need 1 <= k <= N");
  return b / energy * std::sqrt(N / k) - 2.0 * std::sqrt(b) / energy;
}

/// Continuous-time Grover bound sqrt(N) / (2E).
inline double grover_lower_bound(double N, double energy) {
  detail::require(N >= 1.0 && energy > 0.0, "grover bound: need N >= 1 and E > 0");
  return std::sqrt(N) / (2.0 * energy);
}

/// h* = sqrt(sum_z h(z)^2 / (N - 1)) of a canonical cost (h(0) = 0).
inline double h_star(const CostFunction& cost) {
  if (!is_canonical(cost)) throw not_canonical("h_star: cost must have h(0) = 0 and h(z) > 0 elsewhere");
  double sum = 0.0;
  for (double v : cost.values()) sum += v * v;
  return std::sqrt(sum / static_cast<double>(cost.dimension() - 1));
}

/// Scrambled-problem bound: T >= eps^2 b sqrt(N-1) / (16 h*) - eps sqrt(eps/2) / (4 h*).
inline double theorem2_lower_bound(double eps, double b, double hstar, double N) {
  detail::require(eps > 0.0 && eps <= 1.0, "theorem2: eps must lie in (0, 1]");
  detail::require(b >= 0.0 && b <= 1.0, "theorem2: b must lie in [0, 1]");
  detail::require(hstar > 0.0, "theorem2: h* must be positive");
  detail::require(N >= 2.0, "theorem2: N must be >= 2");
  return eps * eps * b * std::sqrt(N - 1.0) / (16.0 * hstar) -
         eps * std::sqrt(eps / 2.0) / (4.0 * hstar);
}

// ---------------------------------------------------------------------------

/// One evaluated bound. Inputs that do not apply to the theorem are NaN.
/// Vacuous (non-positive) bounds are kept as computed.
struct BoundReport {
  std::string theorem;
  double b = std::numeric_limits<double>::quiet_NaN();
  double energy = std::numeric_limits<double>::quiet_NaN();
  double N = std::numeric_limits<double>::quiet_NaN();
  double k = std::numeric_limits<double>::quiet_NaN();
  double eps = std::numeric_limits<double>::quiet_NaN();
  double h_star = std::numeric_limits<double>::quiet_NaN();
  double bound = 0.0;
  std::optional<double> measured_T;
  bool satisfied = true;
};

inline BoundReport theorem1_report(double b, double energy, double N, double k,
                                   std::optional<double> measured_T) {
  BoundReport r;
  r.theorem = "theorem1";
  r.b = b;
  r.energy = energy;
  r.N = N;
  r.k = k;
  r.bound = theorem1_lower_bound(b, energy, N, k);
  r.measured_T = measured_T;
  r.satisfied = !measured_T || *measured_T >= r.bound;
  return r;
}

/// Extra trailing columns are appended after `satisfied`.
inline void write_bounds_header(std::ostream& os, const std::vector<std::string>& extra = {}) {
  os << "theorem,b,E,N,k,eps,h_star,bound,measured_T,satisfied";
  for (const auto& name : extra) os << ',' << name;
  os << '\n';
}

inline void write_bounds_row(std::ostream& os, const BoundReport& r,
                             const std::vector<std::string>& extra = {}) {
  auto field = [&os](double v) {
    if (!std::isnan(v)) os << format_double(v);
    os << ',';
  };
  os << r.theorem << ',';
  field(r.b);
  field(r.energy);
  field(r.N);
  field(r.k);
  field(r.eps);
  field(r.h_star);
  os << format_double(r.bound) << ',';
  if (r.measured_T) os << format_double(*r.measured_T);
  os << ',' << (r.satisfied ? "true" : "false");
  for (const auto& value : extra) os << ',' << value;
  os << '\n';
}

// ---------------------------------------------------------------------------
// Backward-evolution diagnostic behind the projector-start bound.

struct SDiagnosticOptions {
  /// Lower bound on the step count; at least 400 steps per unit time are used.
  std::size_t steps = 4000;
  int t_samples = 41;
  /// Also integrate every H_x directly, forward and backward, and compare
  /// with the phase-conjugated x = 0 run.
  bool cross_check = true;
};

struct SDiagnostic {
  std::vector<double> t;
  std::vector<double> S;
  /// E sqrt(Nk) (T - t)^2 / T, the integrated derivative bound from t to T.
  std::vector<double> rhs_integral_bound;
  double b = 0.0;
  std::size_t steps = 0;
  std::vector<double> b_per_x;
  double s0_lower_bound = 0.0;
  double sum_overlap_ix = 0.0;
  double overlap_bound = 0.0;
  /// max over adjacent samples of |dS| minus its allowed integral (<= 0 holds).
  double worst_increment_excess = 0.0;
  /// max_x |b_x - b| from the direct runs (0 without cross_check).
  double b_spread = 0.0;
  /// max_x deviation between direct and conjugated states (0 without cross_check).
  double conjugation_deviation = 0.0;

  bool end_vanishes() const { return S.back() < 1e-8; }
  bool start_bound_holds() const { return S.front() >= s0_lower_bound; }
  bool increments_hold() const { return worst_increment_excess <= 1e-9; }
  bool success_uniform() const { return b_spread <= 1e-9; }
  bool overlap_sum_holds() const { return sum_overlap_ix <= overlap_bound + 1e-8; }
  bool all_hold() const {
    return end_vanishes() && start_bound_holds() && increments_hold() && success_uniform() &&
           overlap_sum_holds();
  }
};

namespace detail {

/// V_x |v>: multiply amplitude z by e^{2 pi i z x / N}; sign = -1 applies V_x^dagger.
inline Amplitudes apply_fourier_phase(std::span<const Complex> v, std::size_t x, int sign = 1) {
  const std::size_t dim = v.size();
  Amplitudes out(dim);
  for (std::size_t z = 0; z < dim; ++z) {
    const std::size_t r = (z * x) & (dim - 1);
    const double phase = sign * 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(dim);
    out[z] = std::polar(1.0, phase) * v[z];
  }
  return out;
}

/// U_R^dagger(T, t) for H_R = (1 - t/T) E + (t/T) h, diagonal and closed form.
inline Amplitudes reference_backward(std::span<const Complex> v, const CostFunction& cost,
                                     double energy, double T, double t) {
  Amplitudes out(v.size());
  const double scalar = energy * (T - t) * (T - t) / (2.0 * T);
  const double weight = (T * T - t * t) / (2.0 * T);
  for (std::size_t z = 0; z < v.size(); ++z) out[z] = std::polar(1.0, scalar + cost(z) * weight) * v[z];
  return out;
}

inline Amplitudes project_ground(std::span<const Complex> v, const CostFunction& cost, double scale) {
  Amplitudes out(v.size());
  for (std::size_t z : cost.ground_set()) out[z] = v[z] * scale;
  return out;
}

}  // namespace detail

inline SDiagnostic s_diagnostic(const CostFunction& cost, double energy, double T,
                                const SDiagnosticOptions& options = {}) {
  const std::size_t N = cost.dimension();
  if (N > 32) throw budget_exceeded("s_diagnostic: N must be <= 32");
  detail::require(T > 0.0 && energy > 0.0, "s_diagnostic: need T > 0 and E > 0");
  detail::require(options.t_samples >= 2, "s_diagnostic: need >= 2 time samples");
  const int n = cost.num_qubits();
  const double k = static_cast<double>(cost.degeneracy());
  const double Nd = static_cast<double>(N);
  const LinearOperator hp = problem_hamiltonian(cost);

  const auto intervals = static_cast<std::size_t>(options.t_samples - 1);
  const std::size_t wanted = std::max(options.steps, steps_for(T, kDefaultStepsPerUnit));
  const std::size_t steps = ((wanted + intervals - 1) / intervals) * intervals;
  std::vector<double> times;
  for (std::size_t i = 0; i <= intervals; ++i)
    times.push_back(T * static_cast<double>(i) / static_cast<double>(intervals));

  // Forward x = 0 run from |s>.
  const auto H0 = adiabatic_interpolation(projector_beginning(n, energy), hp, T);
  const auto fwd = schrodinger_evolve(H0, uniform_state(n), {steps, Direction::forward, {}});
  SDiagnostic d;
  d.steps = steps;
  d.b = success_probability(fwd.final_state, cost);
  if (d.b < 1e-12) throw zero_success("s_diagnostic: success probability vanishes");

  // g_0 = P f_0 / sqrt(b); g_x = V_x g_0 because P commutes with V_x.
  const double inv_sqrt_b = 1.0 / std::sqrt(d.b);
  const Amplitudes g0 = detail::project_ground(fwd.final_state.amplitudes(), cost, inv_sqrt_b);
  const double g0_norm = norm(g0);
  Amplitudes g0_unit(g0);
  for (auto& a : g0_unit) a /= g0_norm;

  // Backward run of g_0 under H_0, sampled on the t grid.
  const auto back = schrodinger_evolve(H0, QuantumState(n, g0_unit),
                                       {steps, Direction::backward, times});
  std::map<double, const QuantumState*> backward_at;
  for (const auto& sample : back.trajectory) backward_at[sample.t] = &sample.state;

  std::vector<Amplitudes> gx(N);
  for (std::size_t x = 0; x < N; ++x) gx[x] = detail::apply_fourier_phase(g0, x);

  d.b_per_x.assign(N, d.b);
  if (options.cross_check) {
    for (std::size_t x = 0; x < N; ++x) {
      const auto Hx = adiabatic_interpolation(
          LinearOperator::rank_one_complement(energy, std::move(fourier_state(n, x)).release()), hp, T);
      const auto fx = schrodinger_evolve(Hx, fourier_state(n, x), {steps, Direction::forward, {}});
      d.b_per_x[x] = success_probability(fx.final_state, cost);
      d.b_spread = std::max(d.b_spread, std::abs(d.b_per_x[x] - d.b));
      const Amplitudes conj_f = detail::apply_fourier_phase(fwd.final_state.amplitudes(), x);
      d.conjugation_deviation =
          std::max(d.conjugation_deviation, std::sqrt(distance_squared(conj_f, fx.final_state.amplitudes())));

      Amplitudes gx_unit(gx[x]);
      for (auto& a : gx_unit) a /= g0_norm;
      const auto bx = schrodinger_evolve(Hx, QuantumState(n, gx_unit), {steps, Direction::backward, {}});
      const Amplitudes conj_b = detail::apply_fourier_phase(back.final_state.amplitudes(), x);
      d.conjugation_deviation =
          std::max(d.conjugation_deviation, std::sqrt(distance_squared(conj_b, bx.final_state.amplitudes())));
    }
  }

  const double sqrt_nk = std::sqrt(Nd * k);
  for (double t : times) {
    const QuantumState& w = *backward_at.at(t);
    double S = 0.0;
    for (std::size_t x = 0; x < N; ++x) {
      Amplitudes ux = detail::apply_fourier_phase(w.amplitudes(), x);
      for (auto& a : ux) a *= g0_norm;
      const Amplitudes ur = detail::reference_backward(gx[x], cost, energy, T, t);
      S += distance_squared(ux, ur);
    }
    d.t.push_back(t);
    d.S.push_back(S);
    d.rhs_integral_bound.push_back(energy * sqrt_nk * (T - t) * (T - t) / T);
  }

  for (std::size_t i = 0; i + 1 < d.t.size(); ++i) {
    const double t1 = d.t[i], t2 = d.t[i + 1];
    const double allowed = 2.0 * energy * sqrt_nk * ((t2 - t1) - (t2 * t2 - t1 * t1) / (2.0 * T));
    d.worst_increment_excess = std::max(d.worst_increment_excess, std::abs(d.S[i + 1] - d.S[i]) - allowed);
  }
  if (d.t.size() < 2) d.worst_increment_excess = 0.0;

  d.s0_lower_bound = 2.0 * Nd * (1.0 - std::sqrt(1.0 - d.b)) - 2.0 * std::sqrt(d.b * Nd * k);
  d.overlap_bound = sqrt_nk;
  for (std::size_t x = 0; x < N; ++x) {
    const Amplitudes ix = detail::reference_backward(gx[x], cost, energy, T, 0.0);
    const QuantumState xs = fourier_state(n, x);
    d.sum_overlap_ix += std::abs(inner(xs.amplitudes(), ix));
  }
  return d;
}

/// `tags` become constant trailing columns; `header` = false appends rows only.
inline void write_s_diag_csv(std::ostream& os, const SDiagnostic& d,
                             const std::vector<std::pair<std::string, std::string>>& tags = {},
                             bool header = true) {
  if (header) {
    os << "t,S,rhs_integral_bound";
    for (const auto& [name, value] : tags) os << ',' << name;
    os << '\n';
  }
  for (std::size_t i = 0; i < d.t.size(); ++i) {
    os << format_double(d.t[i]) << ',' << format_double(d.S[i]) << ','
       << format_double(d.rhs_integral_bound[i]);
    for (const auto& [name, value] : tags) os << ',' << value;
    os << '\n';
  }
}

// ---------------------------------------------------------------------------
// Vector inequality behind the permutation argument.

struct Lemma2Result {
  bool holds;
  double lhs;
  double rhs;
  double margin;
};

/// sum_i ||psi_i - phi||^2 >= bL - 2 sqrt(L) given |<psi_i|i>|^2 >= b for an
/// orthonormal set {|i>}; defaults to the computational basis vectors.
inline Lemma2Result lemma2_check(const std::vector<Amplitudes>& states, std::span<const Complex> phi,
                                 double b, const std::vector<Amplitudes>& basis = {}) {
  const std::size_t L = states.size();
  detail::require(L >= 1, "lemma2: need at least one state");
  detail::require(b >= 0.0 && b <= 1.0, "lemma2: b must lie in [0, 1]");
  const std::size_t dim = phi.size();
  if (std::abs(norm(phi) - 1.0) > 1e-9) throw non_normalized_input("lemma2: phi not normalized");
  std::vector<Amplitudes> ortho = basis;
  if (ortho.empty()) {
    detail::require(dim >= L, "lemma2: dimension smaller than L");
    for (std::size_t i = 0; i < L; ++i) {
      Amplitudes e(dim);
      e[i] = 1.0;
      ortho.push_back(std::move(e));
    }
  }
  detail::require(ortho.size() == L, "lemma2: basis size must equal L");
  double lhs = 0.0;
  for (std::size_t i = 0; i < L; ++i) {
    if (states[i].size() != dim || ortho[i].size() != dim)
      throw dimension_mismatch("lemma2: vector dimensions differ");
    if (std::abs(norm(states[i]) - 1.0) > 1e-9) throw non_normalized_input("lemma2: psi_i not normalized");
    if (std::norm(inner(states[i], ortho[i])) < b - 1e-12)
      throw precondition_error("lemma2: |<psi_i|i>|^2 < b for i = " + std::to_string(i));
    lhs += distance_squared(states[i], phi);
  }
  const double rhs = b * static_cast<double>(L) - 2.0 * std::sqrt(static_cast<double>(L));
  return {lhs >= rhs, lhs, rhs, lhs - rhs};
}

// ---------------------------------------------------------------------------
// Permutation ensembles

inline constexpr std::size_t kMaxEnsembleDimension = 5;

/// H_pi(t) = H_D(t) + c(t) H_{P,pi} with everything but pi fixed.
struct PermutationAlgorithm {
  TimeDependentHamiltonian driver;
  Coefficient c;
  std::optional<QuantumState> psi0;  // defaults to |s>
  std::size_t steps = 2000;
};

namespace detail {

inline std::vector<QuantumState> evolve_ensemble(const CostFunction& cost,
                                                 const PermutationAlgorithm& alg,
                                                 const std::vector<Permutation>& perms) {
  const QuantumState start = alg.psi0 ? *alg.psi0 : uniform_state(cost.num_qubits());
  std::vector<QuantumState> out;
  out.reserve(perms.size());
  for (const auto& p : perms) {
    const auto H = driver_plus_problem(alg.driver, alg.c, problem_hamiltonian(scramble(cost, p)));
    out.push_back(schrodinger_evolve(H, start, {alg.steps, Direction::forward, {}}).final_state);
  }
  return out;
}

inline std::vector<Permutation> checked_permutations(const CostFunction& cost) {
  if (cost.dimension() > kMaxEnsembleDimension)
    throw budget_exceeded("permutation ensemble: N must be <= 5");
  if (!is_canonical(cost)) throw not_canonical("permutation ensemble: cost must be canonical");
  return all_permutations(cost.dimension());
}

}  // namespace detail

struct Lemma1Result {
  /// Sum over ordered pairs (pi, a), a != 0, pi' = pi o (a <-> 0).
  double pair_sum_ordered;
  /// Each unordered pair {pi, pi'} once; half the ordered sum.
  double pair_sum_unordered;
  double bound;
  double h_star;
  double total_time;
  bool holds() const { return pair_sum_ordered <= bound; }
};

inline Lemma1Result lemma1_experiment(const CostFunction& cost, const PermutationAlgorithm& alg) {
  const auto perms = detail::checked_permutations(cost);
  const std::size_t N = cost.dimension();
  const auto states = detail::evolve_ensemble(cost, alg, perms);
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i].forward()] = i;

  double ordered = 0.0;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    for (std::size_t a = 1; a < N; ++a) {
      const Permutation partner = perms[i].compose(Permutation::transposition(N, a, 0));
      const std::size_t j = index.at(partner.forward());
      ordered += distance_squared(states[i].amplitudes(), states[j].amplitudes());
    }
  }
  const double hs = h_star(cost);
  const double T = alg.driver.total_time();
  const double factorial = static_cast<double>(perms.size());
  return {ordered, 0.5 * ordered, 4.0 * hs * T * factorial * std::sqrt(static_cast<double>(N - 1)), hs, T};
}

struct Theorem2Result {
  BoundReport report;
  std::size_t successes;
  std::size_t permutations;
  std::vector<double> success_overlap;  // |<psi_pi(T)|pi(0)>|^2 in enumeration order
};

/// Runs the fixed algorithm over all N! relabelings of a canonical cost and
/// checks T against the bound at the measured success fraction. A nonzero
/// `order_seed` shuffles the enumeration order.
inline Theorem2Result theorem2_experiment(const CostFunction& cost, const PermutationAlgorithm& alg,
                                          double b, std::uint64_t order_seed = 0) {
  detail::require(b > 0.0 && b <= 1.0, "theorem2_experiment: b must lie in (0, 1]");
  auto perms = detail::checked_permutations(cost);
  if (order_seed != 0) {
    const Permutation order = random_permutation(perms.size(), order_seed);
    std::vector<Permutation> shuffled;
    for (std::size_t i = 0; i < perms.size(); ++i) shuffled.push_back(perms[order(i)]);
    perms = std::move(shuffled);
  }
  const auto states = detail::evolve_ensemble(cost, alg, perms);
  Theorem2Result out{{}, 0, perms.size(), {}};
  for (std::size_t i = 0; i < perms.size(); ++i) {
    const double overlap = std::norm(states[i][perms[i](0)]);
    out.success_overlap.push_back(overlap);
    if (overlap >= b) ++out.successes;
  }
  const double eps = static_cast<double>(out.successes) / static_cast<double>(perms.size());
  const double hs = h_star(cost);
  const double N = static_cast<double>(cost.dimension());
  BoundReport& r = out.report;
  r.theorem = "theorem2";
  r.b = b;
  r.N = N;
  r.eps = eps;
  r.h_star = hs;
  r.bound = eps > 0.0 ? theorem2_lower_bound(eps, b, hs, N) : 0.0;
  r.measured_T = alg.driver.total_time();
  r.satisfied = *r.measured_T >= r.bound;
  return out;
}

}  // namespace alab

#endif  // ALAB_BOUNDS_HPP
