// Copyright 2026 The lindground Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include <gtest/gtest.h>

#include "lindground/substitute.hpp"
#include "oracles.hpp"

using namespace lg;
using namespace lgtest;

namespace {

// Tr(Q rho (x) rho) from dense matrices.
Complex dense_trace(const PauliSum& q, const ComplexMatrix& rho) {
  return (sum_matrix(q) * okron(rho, rho)).trace();
}

MeasurementPlan plan_for(const PauliSum& a, std::int64_t nh, std::int64_t ns, std::uint64_t seed) {
  MeasurementPlan p;
  p.observable = a;
  p.n_h = nh;
  p.n_s = ns;
  p.seed = seed;
  return p;
}

}  // namespace

TEST(ShotBudget, DirectSubstitution) {
  const PauliSum one = PauliSum::from_terms({{"ZZ", 1.0}});
  EXPECT_EQ(shot_budget(one, 1.0, 0.1).n, 400);
  EXPECT_EQ(shot_budget(one, 0.5, 0.1).n, 1600);
  const ShotBudget b = shot_budget(one, 1.0, 0.1);
  EXPECT_EQ(b.n_h + b.n_s, b.n);
  EXPECT_EQ(b.n_h, b.n_s);
  EXPECT_THROW(shot_budget(PauliSum(2), 1.0, 0.1), ValidationError);
  EXPECT_THROW(shot_budget(one, 0.0, 0.1), ValidationError);
}

TEST(ShotBudget, MatchesFormulaRecomputation) {
  CounterRng rng(51, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const PauliSum a = random_pauli_sum(4, 3, rng, true);
    const double gamma = 0.2 + 0.8 * rng.uniform();
    const double eps = 0.02 + 0.1 * rng.uniform();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sum_matrix(a));
    const double norm2 = es.eigenvalues().cwiseAbs().maxCoeff();
    const double frob2 = sum_matrix(a).squaredNorm();  // ||A||_F^2
    const double m = static_cast<double>(a.size());
    const double raw = 2.0 / (gamma * gamma * eps * eps) * (norm2 * norm2 + m * frob2 / 16.0);
    const ShotBudget b = shot_budget(a, gamma, eps);
    EXPECT_GE(static_cast<double>(b.n), raw * (1 - 1e-12));
    EXPECT_LE(static_cast<double>(b.n), raw + 2.0);
    EXPECT_EQ(b.n % 2, 0);
  }
}

TEST(HadamardSample, KnownExpectations) {
  CounterRng rng(52, 0);
  const DensityMatrix rho(random_density_matrix(1, rng));
  const auto& tab = substitute_table();
  // Row II is the swap pattern: Tr(SWAP rho (x) rho) = Tr rho^2.
  const PauliSum q_ii = tab.lookup(PauliString::parse("II")).b;
  EXPECT_NEAR(dense_trace(q_ii, rho.matrix()).real(), rho.purity(), 1e-12);
  const double est = hadamard_sample(q_ii, rho, 100000, 3);
  EXPECT_LT(std::abs(est - rho.purity()), 5 * std::sqrt(1.0 / 100000));
  const PauliSum q_zz = tab.lookup(PauliString::parse("ZZ")).b;
  EXPECT_NEAR(dense_trace(q_zz, DensityMatrix::basis_state(1, 0).matrix()).real(), 1.0, 1e-12);
  EXPECT_EQ(hadamard_sample(q_zz, DensityMatrix::basis_state(1, 0), 1000, 3), 1.0);
}

TEST(HadamardSample, WithinShotNoise) {
  CounterRng rng(53, 0);
  for (int trial = 0; trial < 5; ++trial) {
    const DensityMatrix rho(random_density_matrix(2, rng));
    const PauliSum a = random_pauli_sum(4, 1, rng, true);
    const SubstituteTerm t = substitute(a).terms().front();
    const double exact = dense_trace(t.q(), rho.matrix()).real();
    const double p = (1 + exact) / 2;
    const double sigma = 2 * std::sqrt(p * (1 - p) / 100000) + 1e-12;
    EXPECT_LT(std::abs(hadamard_sample(t.q(), rho, 100000, 9, trial) - exact), 5 * sigma);
  }
}

TEST(SwapSample, KnownAndNoise) {
  EXPECT_EQ(swap_sample(DensityMatrix::basis_state(2, 1), 500, 1), 1.0);
  EXPECT_LT(std::abs(swap_sample(DensityMatrix::maximally_mixed(1), 100000, 2) - 0.5), 5 * std::sqrt(0.75 / 100000));
  CounterRng rng(54, 0);
  const DensityMatrix rho(random_density_matrix(2, rng));
  const double pur = (rho.matrix() * rho.matrix()).trace().real();
  const double p = (1 + pur) / 2;
  EXPECT_LT(std::abs(swap_sample(rho, 100000, 5) - pur), 5 * 2 * std::sqrt(p * (1 - p) / 100000));
}

TEST(MeasurementPlan, ValidationAndAllocation) {
  const PauliSum a = PauliSum::from_terms({{"XX", 0.1}, {"ZZ", 2.0}, {"YY", -0.5}});
  EXPECT_THROW(plan_for(a, 2, 10, 0).validate(), ValidationError);
  EXPECT_THROW(plan_for(a, 10, 0, 0).validate(), ValidationError);
  EXPECT_THROW(plan_for(PauliSum::from_terms({{"XX", Complex(0, 1)}}), 10, 10, 0).validate(), ValidationError);
  const auto shots = plan_for(a, 11, 10, 0).shots_per_term();
  // Terms iterate as XX, YY, ZZ; the remainder of 2 goes to |2.0| then |-0.5|.
  ASSERT_EQ(shots.size(), 3u);
  EXPECT_EQ(shots[0], 3);
  EXPECT_EQ(shots[1], 4);
  EXPECT_EQ(shots[2], 4);
}

TEST(EstimateExpectation, IdentityIsOne) {
  CounterRng rng(55, 0);
  const DensityMatrix rho(random_density_matrix(1, rng));
  const EstimateReport r = estimate_expectation(plan_for(PauliSum::identity(2), 20000, 20000, 4), rho, 0.5);
  EXPECT_NEAR(r.value, 1.0, 0.05);
}

TEST(EstimateExpectation, ConvergesOnDampedState) {
  const DensityMatrix rho = DensityMatrix::basis_state(1, 0);
  const PauliSum a = PauliSum::from_terms({{"ZZ", 1.0}});
  const double exact = exact_expectation(a, rho);
  double prev = 1e9;
  for (std::int64_t shots : {1000, 100000}) {
    const EstimateReport r = estimate_expectation(plan_for(a, shots, shots, 8), rho, 1.0);
    EXPECT_LT(std::abs(r.value - exact), 5.0 / std::sqrt(static_cast<double>(shots)) + 1e-12);
    prev = std::min(prev, std::abs(r.value - exact));
  }
}

TEST(EstimateExpectation, DeterministicAndBounds) {
  CounterRng rng(56, 0);
  const DensityMatrix rho(random_density_matrix(2, rng));
  const PauliSum a = PauliSum::from_terms({{"XIXI", 0.5}, {"ZZZZ", -1.0}});
  const MeasurementPlan plan = plan_for(a, 4000, 4000, 77);
  const EstimateReport r1 = estimate_expectation(plan, rho, 0.25);
  const EstimateReport r2 = estimate_expectation(plan, rho, 0.25);
  EXPECT_EQ(r1.value, r2.value);
  EXPECT_EQ(r1.purity, r2.purity);
  EXPECT_EQ(r1.shots, 8000);
  EXPECT_NEAR(r1.bias_bound, 1.5 / (0.0625 * 4000), 1e-12);
  EXPECT_NEAR(r1.mse_bound, r1.bias_bound * r1.bias_bound + r1.var_bound, 1e-15);
  EXPECT_THROW(estimate_expectation(plan, rho, 1.5), ValidationError);
}

TEST(EstimateExpectation, CalibrationOverSeeds) {
  CounterRng rng(57, 0);
  const DensityMatrix rho(random_density_matrix(1, rng, 1));
  const PauliSum a = PauliSum::from_terms({{"XX", 0.6}, {"ZI", -0.4}});
  const double truth = exact_expectation(a, rho);
  const double gamma = rho.purity();
  const ShotBudget b = shot_budget(a, gamma, 0.1);
  double sum = 0, sum2 = 0;
  EstimateReport last;
  const int seeds = 200;
  for (int s = 0; s < seeds; ++s) {
    last = estimate_expectation(plan_for(a, b.n_h, b.n_s, static_cast<std::uint64_t>(s)), rho, gamma);
    sum += last.value;
    sum2 += last.value * last.value;
  }
  const double mean = sum / seeds;
  const double var = sum2 / seeds - mean * mean;
  const double se = std::sqrt(var / seeds);
  EXPECT_LE(std::abs(mean - truth), 3 * last.bias_bound + 3 * se);
  EXPECT_LE(var, 2 * last.var_bound);
}
