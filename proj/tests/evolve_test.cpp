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

#include "alab/evolve.hpp"

#include <gtest/gtest.h>

#include <random>

#include "alab/hamiltonians.hpp"
#include "alab/problems.hpp"
#include "dense_oracle.hpp"

namespace alab {
namespace {

TimeDependentHamiltonian single_qubit(double T) {
  return adiabatic_interpolation(transverse_field_beginning(1), problem_hamiltonian(hamming_cost(1)), T);
}

double max_amp_diff(const QuantumState& a, const QuantumState& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

TEST(SchrodingerEvolve, StationaryDiagonal) {
  const auto cost = CostFunction({0.0, 1.0, 2.5, 4.0});
  const TimeDependentHamiltonian H({{problem_hamiltonian(cost), [](double) { return 1.0; }}}, 3.0);
  for (std::size_t z = 0; z < 4; ++z) {
    const auto r = schrodinger_evolve(H, basis_state(2, z), {.steps = 3000});
    for (std::size_t y = 0; y < 4; ++y) {
      const Complex expect = y == z ? std::polar(1.0, -cost(z) * 3.0) : Complex{};
      EXPECT_LT(std::abs(r.final_state[y] - expect), 1e-9);
    }
  }
}

TEST(SchrodingerEvolve, ZeroSpanIsIdentity) {
  const TimeDependentHamiltonian H({{transverse_field_beginning(2), [](double) { return 1.0; }}}, 0.0);
  const auto psi = fourier_state(2, 3);
  const auto r = schrodinger_evolve(H, psi, {.steps = 1});
  EXPECT_EQ(max_amp_diff(r.final_state, psi), 0.0);
  EXPECT_EQ(r.norm_drift, 0.0);
}

TEST(SchrodingerEvolve, StepHalvingReference) {
  const auto H = single_qubit(10.0);
  const auto a = schrodinger_evolve(H, uniform_state(1), {.steps = 4000});
  const auto b = schrodinger_evolve(H, uniform_state(1), {.steps = 8000});
  EXPECT_LT(max_amp_diff(a.final_state, b.final_state), 1e-8);
}

TEST(SchrodingerEvolve, FourthOrderConvergence) {
  const auto H = single_qubit(10.0);
  const std::size_t base = 100;
  const auto ref = schrodinger_evolve(H, uniform_state(1), {.steps = base * 8 * 4});
  std::vector<double> errors;
  for (std::size_t steps : {base, base * 2, base * 4, base * 8})
    errors.push_back(max_amp_diff(schrodinger_evolve(H, uniform_state(1), {.steps = steps}).final_state,
                                  ref.final_state));
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    const double ratio = errors[i] / errors[i + 1];
    EXPECT_GT(ratio, 8.0) << "halving " << i;
    EXPECT_LT(ratio, 32.0) << "halving " << i;
  }
}

TEST(SchrodingerEvolve, NormDriftAtDefaultResolution) {
  for (double T : {1.0, 10.0, 40.0}) {
    const auto H = single_qubit(T);
    const auto r = schrodinger_evolve(H, uniform_state(1), {.steps = steps_for(T, kDefaultStepsPerUnit)});
    EXPECT_LT(r.norm_drift, kTargetNormDrift);
  }
  const auto H = adiabatic_interpolation(projector_beginning(6, 3.0), problem_hamiltonian(hamming_cost(6)), 8.0);
  EXPECT_LT(evolve_to_tolerance(H, uniform_state(6)).norm_drift, kTargetNormDrift);
}

TEST(SchrodingerEvolve, CoarseGridRaises) {
  const auto H = adiabatic_interpolation(projector_beginning(4, 20.0), problem_hamiltonian(hamming_cost(4)), 10.0);
  EXPECT_THROW(schrodinger_evolve(H, uniform_state(4), {.steps = 20}), step_count_too_small);
  EXPECT_THROW(schrodinger_evolve(H, QuantumState(4, Amplitudes(16, 1.0)), {.steps = 20}), non_normalized_input);
  EXPECT_THROW(schrodinger_evolve(H, uniform_state(3), {.steps = 20}), dimension_mismatch);
}

TEST(SchrodingerEvolve, Linearity) {
  std::mt19937_64 rng(3);
  const auto H = adiabatic_interpolation(transverse_field_beginning(3), problem_hamiltonian(hamming_cost(3)), 4.0);
  const auto u = oracle::random_vector(rng, 8);
  const auto v = oracle::random_vector(rng, 8);
  const Complex alpha{0.3, -0.8}, beta{1.1, 0.4};
  Amplitudes w(8);
  for (std::size_t i = 0; i < 8; ++i) w[i] = alpha * u[i] + beta * v[i];
  const double nw = norm(w);
  for (auto& a : w) a /= nw;
  const EvolveOptions opt{.steps = 1600};
  const auto eu = schrodinger_evolve(H, QuantumState(3, u), opt).final_state;
  const auto ev = schrodinger_evolve(H, QuantumState(3, v), opt).final_state;
  const auto ew = schrodinger_evolve(H, QuantumState(3, w), opt).final_state;
  for (std::size_t i = 0; i < 8; ++i) EXPECT_LT(std::abs(nw * ew[i] - (alpha * eu[i] + beta * ev[i])), 1e-8);
}

TEST(SchrodingerEvolve, ProjectorPermutationCovariance) {
  const int n = 3;
  const auto cost = CostFunction({0, 2, 1, 3, 1, 2, 4, 3});
  const auto hb = projector_beginning(n, 1.5);
  const auto b0 = schrodinger_evolve(adiabatic_interpolation(hb, problem_hamiltonian(cost), 3.0), uniform_state(n),
                                     {.steps = 1200}, cost)
                      .success_probability;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto scrambled = scramble(cost, random_permutation(cost.dimension(), seed));
    const auto r = schrodinger_evolve(adiabatic_interpolation(hb, problem_hamiltonian(scrambled), 3.0),
                                      uniform_state(n), {.steps = 1200}, scrambled);
    EXPECT_NEAR(r.success_probability, b0, 1e-9);
  }
}

TEST(SchrodingerEvolve, SampledTrajectory) {
  const auto H = single_qubit(2.0);
  const auto r = schrodinger_evolve(H, uniform_state(1), {.steps = 400, .sample_times = {0.0, 1.0, 2.0}});
  ASSERT_EQ(r.trajectory.size(), 3u);
  EXPECT_EQ(r.trajectory[0].t, 0.0);
  EXPECT_EQ(max_amp_diff(r.trajectory[2].state, r.final_state), 0.0);
  const auto half = schrodinger_evolve(single_qubit(2.0), uniform_state(1), {.steps = 400, .sample_times = {1.0}});
  EXPECT_EQ(max_amp_diff(half.trajectory[0].state, r.trajectory[1].state), 0.0);
  EXPECT_THROW(schrodinger_evolve(H, uniform_state(1), {.steps = 400, .sample_times = {0.0012}}), precondition_error);
}

TEST(SuccessProbability, Examples) {
  EXPECT_NEAR(success_probability(uniform_state(2), hamming_cost(2)), 0.25, 1e-15);
  EXPECT_NEAR(success_probability(basis_state(3, 0), hamming_cost(3)), 1.0, 1e-15);
  std::mt19937_64 rng(1);
  EXPECT_NEAR(success_probability(QuantumState(3, oracle::random_vector(rng, 8)), CostFunction(std::vector<double>(8, 0.0))),
              1.0, 1e-12);
}

TEST(RoundTrip, DiagonalIsExact) {
  const TimeDependentHamiltonian H(
      {{problem_hamiltonian(hamming_cost(3)), [](double t) { return 1.0 + t; }}}, 2.0);
  EXPECT_LT(roundtrip_check(H, fourier_state(3, 5), 2000), 1e-10);
}

TEST(RoundTrip, InterpolationAndOrder) {
  const auto H = adiabatic_interpolation(transverse_field_beginning(2), problem_hamiltonian(hamming_cost(2)), 5.0);
  EXPECT_LT(roundtrip_check(H, uniform_state(2), 2000), 1e-7);
  double prev = roundtrip_check(H, uniform_state(2), 25);
  for (std::size_t steps : {50, 100, 200}) {
    const double cur = roundtrip_check(H, uniform_state(2), steps);
    if (prev > 1e-12) {
      EXPECT_GE(prev / cur, 16.0) << steps;
    }
    prev = cur;
  }
}

TEST(RequiredRunTime, AlreadyAboveWindow) {
  EXPECT_THROW(required_run_time(transverse_field_beginning(1), problem_hamiltonian(hamming_cost(1)),
                                 hamming_cost(1), {}),
               already_above_window);
}

TEST(RequiredRunTime, GroverLandsInWindow) {
  const auto cost = grover_cost(4, 11);
  const auto hb = projector_beginning(4, 1.0);
  const auto hp = problem_hamiltonian(cost);
  const auto r = required_run_time(hb, hp, cost, {});
  EXPECT_GE(r.achieved_b, 0.2);
  EXPECT_LE(r.achieved_b, 0.21);
  // Independent re-measurement at doubled resolution.
  const auto H = adiabatic_interpolation(hb, hp, r.required_T);
  const double b2 = schrodinger_evolve(H, uniform_state(4), {.steps = 2 * steps_for(r.required_T, 400.0)}, cost)
                        .success_probability;
  EXPECT_NEAR(b2, r.achieved_b, 1e-7);
  // Fine scan: no T below the doubling bracket already reaches the window.
  for (double T = 0.25; T < r.required_T / 2.0; T += 0.05) {
    const double b = schrodinger_evolve(adiabatic_interpolation(hb, hp, T), uniform_state(4),
                                        {.steps = 2 * steps_for(T, 400.0)}, cost)
                         .success_probability;
    EXPECT_LT(b, 0.2) << T;
  }
}

TEST(RequiredRunTime, Preconditions) {
  const auto cost = grover_cost(3, 0);
  RunTimeSearchOptions bad;
  bad.window_lo = 0.3;
  bad.window_hi = 0.2;
  EXPECT_THROW(required_run_time(projector_beginning(3, 1.0), problem_hamiltonian(cost), cost, bad),
               precondition_error);
  RunTimeSearchOptions tight;
  tight.t_max = 0.5;
  EXPECT_THROW(required_run_time(projector_beginning(3, 1.0), problem_hamiltonian(cost), cost, tight), not_reached);
}

}  // namespace
}  // namespace alab
