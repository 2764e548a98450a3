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

#ifndef ALAB_HAMILTONIANS_HPP
#define ALAB_HAMILTONIANS_HPP

#include <cmath>
#include <string>
#include <vector>

#include "alab/errors.hpp"
#include "alab/problems.hpp"
#include "alab/qstate.hpp"

namespace alab {

/// Begin/problem pair interpolated linearly over a run of length T.
struct InterpolationSpec {
  LinearOperator begin;
  LinearOperator problem;
  double total_time;
};

/// H_P: diagonal with the classical costs.
inline LinearOperator problem_hamiltonian(const CostFunction& cost) {
  return LinearOperator::diagonal(cost.values());
}

/// E (I - |s><s|)
inline LinearOperator projector_beginning(int num_qubits, double energy) {
  detail::require(energy > 0.0, "projector_beginning: E must be positive");
  return LinearOperator::rank_one_complement(energy, std::move(uniform_state(num_qubits)).release());
}

/// Default projector scale E = n/2.
inline double default_projector_energy(int num_qubits) { return 0.5 * num_qubits; }

/// sum_j (1 - sigma_x^{(j)}) / 2
inline LinearOperator transverse_field_beginning(int num_qubits) {
  dimension_for(num_qubits);
  return LinearOperator::transverse_field_sum(std::vector<int>(static_cast<std::size_t>(num_qubits), 1));
}

/// Transverse field weighted by how many clauses touch each bit.
inline LinearOperator clause_beginning(const ExactCoverInstance& inst) {
  std::vector<int> mult(static_cast<std::size_t>(inst.num_bits()), 0);
  for (const auto& c : inst.clauses())
    for (int i : c) ++mult[static_cast<std::size_t>(i)];
  return LinearOperator::transverse_field_sum(std::move(mult));
}

/// E (I - |w><w|)
inline LinearOperator grover_hamiltonian(int num_qubits, std::size_t marked, double energy) {
  detail::require(energy > 0.0, "grover_hamiltonian: E must be positive");
  return LinearOperator::rank_one_complement(energy,
                                             std::move(basis_state(num_qubits, marked)).release());
}

/// E * I, stored as a constant diagonal.
inline LinearOperator scalar_operator(std::size_t dimension, double value) {
  return LinearOperator::diagonal(std::vector<double>(dimension, value));
}

/// H(t) = (1 - t/T) begin + (t/T) problem
inline TimeDependentHamiltonian adiabatic_interpolation(const LinearOperator& begin,
                                                        const LinearOperator& problem,
                                                        double total_time) {
  detail::require(total_time > 0.0 && std::isfinite(total_time),
                  "adiabatic_interpolation: T must be positive");
  if (begin.dimension() != problem.dimension())
    throw dimension_mismatch("adiabatic_interpolation: begin/problem dimension mismatch");
  const double T = total_time;
  return TimeDependentHamiltonian(
      {{begin, [T](double t) { return 1.0 - t / T; }}, {problem, [T](double t) { return t / T; }}},
      T);
}

inline TimeDependentHamiltonian adiabatic_interpolation(const InterpolationSpec& spec) {
  return adiabatic_interpolation(spec.begin, spec.problem, spec.total_time);
}

/// H(t) = H_D(t) + c(t) H_P, with |c| <= 1 checked on `check_points` uniform
/// samples of [0, T].
inline TimeDependentHamiltonian driver_plus_problem(const TimeDependentHamiltonian& driver,
                                                    const Coefficient& c,
                                                    const LinearOperator& problem,
                                                    int check_points = 1001) {
  detail::require(static_cast<bool>(c), "driver_plus_problem: missing coefficient");
  const double T = driver.total_time();
  const int samples = T > 0.0 ? std::max(check_points, 2) : 1;
  for (int i = 0; i < samples; ++i) {
    const double t = samples == 1 ? 0.0 : T * i / (samples - 1);
    const double value = c(t);
    if (!std::isfinite(value) || std::abs(value) > 1.0)
      throw coefficient_bound_violated("driver_plus_problem: |c(" + std::to_string(t) +
                                       ")| = " + std::to_string(std::abs(value)) + " > 1");
  }
  std::vector<HamiltonianTerm> terms = driver.terms();
  terms.push_back({problem, c});
  return TimeDependentHamiltonian(std::move(terms), T);
}

/// H_R(t) = (1 - t/T) E + (t/T) H_P; commutes with H_P.
inline TimeDependentHamiltonian reference_hamiltonian(double energy, const LinearOperator& problem,
                                                      double total_time) {
  return adiabatic_interpolation(scalar_operator(problem.dimension(), energy), problem, total_time);
}

}  // namespace alab

#endif  // ALAB_HAMILTONIANS_HPP
