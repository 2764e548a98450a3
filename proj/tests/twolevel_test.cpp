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

#include "alab/twolevel.hpp"

#include <gtest/gtest.h>

#include "alab/hamiltonians.hpp"
#include "dense_oracle.hpp"

namespace alab {
namespace {

// Antiderivative of sqrt(2 s^2 - 2 s + 1) = sqrt(2) sqrt(u^2 + 1/4), u = s - 1/2.
double theta_closed_form(double s) {
  auto F = [](double u) {
    const double r = std::sqrt(u * u + 0.25);
    return std::sqrt(2.0) * (0.5 * u * r + 0.125 * std::log(u + r));
  };
  return F(s - 0.5) - F(-0.5);
}

TEST(Gap, Examples) {
  EXPECT_DOUBLE_EQ(gap(0.0), 1.0);
  EXPECT_NEAR(gap(0.5), 0.70710678, 1e-8);
  EXPECT_DOUBLE_EQ(gap(1.0), 1.0);
  EXPECT_THROW(gap(1.5), precondition_error);
}

TEST(Gap, MatchesDenseTwoByTwo) {
  for (int i = 0; i <= 100; ++i) {
    const double s = i / 100.0;
    oracle::Mat h(2, 2);
    h << 0.5 * (1 - s), -0.5 * (1 - s), -0.5 * (1 - s), 0.5 * (1 - s) + s;
    const Eigen::VectorXd ev = oracle::eigenvalues(h);
    EXPECT_NEAR(gap(s), ev(1) - ev(0), 1e-12);
  }
}

TEST(Theta, ClosedFormAndMonotone) {
  EXPECT_EQ(theta(0.0), 0.0);
  EXPECT_NEAR(theta(1.0), 0.81161, 1e-5);
  double prev = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double s = i / 50.0;
    const double th = theta(s);
    EXPECT_NEAR(th, theta_closed_form(s), 1e-10);
    EXPECT_GT(th, prev);
    prev = th;
  }
  EXPECT_NEAR(transition_period(), 2.0 * std::numbers::pi / theta_closed_form(1.0), 1e-9);
}

TEST(TransitionProbability, ZeroTime) { EXPECT_NEAR(transition_probability(0.0), 0.5, 1e-15); }

TEST(TransitionProbability, SmallBeyondTwenty) {
  for (double T : {20.0, 27.5, 35.0, 50.0}) {
    const double q = transition_probability(T);
    const double q_fine = transition_probability(T, 2 * steps_for(T, kDefaultStepsPerUnit));
    EXPECT_NEAR(q, q_fine, 1e-9);
    EXPECT_LT(q, 1e-2) << T;
  }
}

TEST(AdiabaticFrame, InitialConditionUnitarityAndFinalOverlap) {
  for (double T : {5.0, 10.0, 20.0}) {
    const auto r = two_level_run(T, 51);
    ASSERT_EQ(r.s.size(), 51u);
    EXPECT_NEAR(std::abs(r.c0.front() - Complex{1.0, 0.0}), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(r.c1.front()), 0.0, 1e-12);
    for (std::size_t i = 0; i < r.s.size(); ++i)
      EXPECT_NEAR(std::norm(r.c0[i]) + std::norm(r.c1[i]), 1.0, 1e-8);
    EXPECT_NEAR(r.q, transition_probability(T, steps_for(T, kDefaultStepsPerUnit)), 1e-9);
  }
}

TEST(AdiabaticFrame, SlowRunsStayInGroundFrame) {
  const auto r = two_level_run(200.0, 21);
  for (std::size_t i = 0; i < r.s.size(); ++i) EXPECT_LT(std::norm(r.c1[i]), 1e-3);
}

TEST(DecoupledSuccess, SingleBitAndFullTensor) {
  EXPECT_NEAR(decoupled_success(1, 7.0), 1.0 - transition_probability(7.0), 1e-15);
  EXPECT_GT(decoupled_success(1, 160.0), 0.9999);
  for (int n : {4, 8}) {
    const double T = 10.0;
    const auto cost = hamming_cost(n);
    const auto H = adiabatic_interpolation(transverse_field_beginning(n), problem_hamiltonian(cost), T);
    const double full = evolve_to_tolerance(H, uniform_state(n), cost).success_probability;
    EXPECT_NEAR(full, decoupled_success(n, T), 1e-6) << n;
  }
}

TEST(DecoupledSuccess, PoissonLimitAtSixtyFourBits) {
  const int n = 64;
  for (double T : {20.0, 30.0, 45.0}) {
    const double q = transition_probability(T);
    const double p = decoupled_success(n, T);
    EXPECT_NEAR(p, std::exp(-n * q), n * q * q + 1e-12) << T;
  }
}

TEST(SqrtNScaling, HigherTargetNeedsLongerRuns) {
  const ScalingGrid grid{0.1, 30.0};
  const auto lo = sqrt_n_scaling_experiment({4, 16}, 0.2, grid);
  const auto hi = sqrt_n_scaling_experiment({4, 16}, 0.6, grid);
  for (std::size_t i = 0; i < lo.n.size(); ++i) EXPECT_GT(hi.required_T[i], lo.required_T[i]);
  EXPECT_THROW(sqrt_n_scaling_experiment({4, 16}, 1.0, grid), precondition_error);
  EXPECT_THROW(sqrt_n_scaling_experiment({4, 1 << 20}, 0.9, ScalingGrid{0.5, 2.0}), not_reached);
}

// Once T* lies past the first few oscillations of q, the envelope law q ~ T^-2
// takes over and T* grows like sqrt(n).
TEST(SqrtNScaling, SustainedCriterionApproachesSquareRootAtLargeN) {
  const auto r = sqrt_n_scaling_experiment({1024, 4096, 16384}, 0.2, ScalingGrid{0.25, 120.0},
                                           ScalingCriterion::sustained);
  EXPECT_GE(r.exponent, 0.35);
  EXPECT_LE(r.exponent, 0.65);
}

}  // namespace
}  // namespace alab
