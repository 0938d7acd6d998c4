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

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "lindground/encodings.hpp"
#include "oracles.hpp"

using namespace lg;
using namespace lgtest;

namespace {

ComplexMatrix hadamard() { return (letter('X') + letter('Z')) / std::sqrt(2.0); }

ComplexMatrix cnot() {
  ComplexMatrix c = ComplexMatrix::Zero(4, 4);
  c(0, 0) = c(1, 1) = c(2, 3) = c(3, 2) = 1;
  return c;
}

CircuitSpec circuit(int n, std::vector<ComplexMatrix> layers) {
  CircuitSpec c;
  c.n = n;
  c.layers = std::move(layers);
  return c;
}

// (1/(T+1)) sum_t |psi_t><psi_t| (x) |t><t| on a clock of `cdim` levels.
ComplexMatrix history_oracle(const CircuitSpec& c, Eigen::Index cdim) {
  ComplexVector psi = ComplexVector::Zero(Eigen::Index{1} << c.n);
  psi(0) = 1;
  const int T = static_cast<int>(c.layers.size());
  ComplexMatrix rho = ComplexMatrix::Zero(psi.size() * cdim, psi.size() * cdim);
  for (int t = 0; t <= T; ++t) {
    if (t > 0) psi = c.layers[static_cast<std::size_t>(t - 1)] * psi;
    ComplexMatrix clock = ComplexMatrix::Zero(cdim, cdim);
    clock(t, t) = 1;
    rho += okron(psi * psi.adjoint(), clock) / static_cast<double>(T + 1);
  }
  return rho;
}

std::vector<CircuitSpec> random_circuits() {
  CounterRng rng(71, 0);
  std::vector<CircuitSpec> out;
  for (int n = 1; n <= 2; ++n)
    for (int T = 1; T <= 3; ++T) {
      std::vector<ComplexMatrix> layers;
      for (int t = 0; t < T; ++t) layers.push_back(random_unitary(Eigen::Index{1} << n, rng));
      out.push_back(circuit(n, layers));
    }
  return out;
}

}  // namespace

TEST(CircuitSpec, Validation) {
  EXPECT_THROW(circuit(1, {}).validate(), ValidationError);
  EXPECT_THROW(circuit(1, {2.0 * letter('X')}).validate(), ValidationError);
  EXPECT_THROW(circuit(2, {letter('X')}).validate(), ValidationError);
  EXPECT_NO_THROW(circuit(2, {cnot()}).validate());
}

TEST(ClockLme, JumpCounts) {
  const ClockLme a = circuit_to_lme(circuit(1, {letter('X')}));
  EXPECT_EQ(a.clock_qubits, 1);
  EXPECT_EQ(a.clock_dim, 2);
  EXPECT_EQ(a.reset_jumps, 1u);
  EXPECT_EQ(a.transition_jumps, 1u);
  EXPECT_EQ(a.padding_jumps, 0u);
  EXPECT_EQ(a.reset_jumps + a.transition_jumps + a.dephasing_jumps, 1u + 2u);
  const ClockLme b = circuit_to_lme(circuit(2, {okron(hadamard(), letter('I')), cnot()}));
  EXPECT_EQ(b.clock_qubits, 2);
  EXPECT_EQ(b.reset_jumps, 2u);
  EXPECT_EQ(b.transition_jumps, 2u);
  EXPECT_EQ(b.padding_jumps, 1u);
  EXPECT_EQ(b.dephasing_jumps, 1u);
  EXPECT_EQ(b.spec.jumps().size(), 6u);
  for (const auto& ch : b.spec.jumps()) EXPECT_EQ(ch.rate, 1.0);
}

TEST(ClockLme, SteadyStateForXGate) {
  const CircuitSpec c = circuit(1, {letter('X')});
  const SteadyStates s = steady_state(build_liouvillian(circuit_to_lme(c).spec));
  ASSERT_EQ(s.dim, 1u);
  ComplexMatrix want = ComplexMatrix::Zero(4, 4);
  want(0, 0) = want(3, 3) = 0.5;  // |0>|0>_a and |1>|1>_a
  EXPECT_LT((s.states[0].matrix() - want).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT((feynman_steady_state(c).matrix() - want).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ClockLme, IdentityCircuit) {
  const CircuitSpec c = circuit(1, {letter('I')});
  ComplexMatrix want = ComplexMatrix::Zero(4, 4);
  want(0, 0) = want(1, 1) = 0.5;
  const SteadyStates s = steady_state(build_liouvillian(circuit_to_lme(c).spec));
  EXPECT_LT((s.states[0].matrix() - want).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_NEAR(p1_exact(feynman_steady_state(c), circuit_to_lme(c)), 0.0, 1e-12);
}

TEST(ClockLme, BellPreparationPurity) {
  const CircuitSpec c = circuit(2, {okron(hadamard(), letter('I')), cnot()});
  const SteadyStates s = steady_state(build_liouvillian(circuit_to_lme(c).spec));
  ASSERT_EQ(s.dim, 1u);
  EXPECT_NEAR(s.states[0].purity(), 1.0 / 3.0, 1e-10);
}

TEST(ClockLme, HistoryStateIsSteadyAndUnique) {
  for (const auto& c : random_circuits()) {
    const ClockLme clock = circuit_to_lme(c);
    const Eigen::Index cdim = Eigen::Index{1} << clock.clock_qubits;
    const ComplexMatrix hist = history_oracle(c, cdim);
    EXPECT_LT((feynman_steady_state(c).matrix() - hist).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(feynman_steady_state(c).purity(), 1.0 / (c.depth() + 1), 1e-12);
    const ComplexMatrix L = liouvillian_oracle(clock.spec);
    EXPECT_LT((L * flatten(hist)).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_EQ(steady_state(build_liouvillian(clock.spec)).dim, 1u);
    EXPECT_TRUE(verify_ldl_properties(build_ldl(clock.spec).dense, 1).all_passed());
  }
}

TEST(P1, KnownCircuits) {
  const CircuitSpec x = circuit(1, {letter('X')});
  const ClockLme cx = circuit_to_lme(x);
  const DensityMatrix rho = feynman_steady_state(x);
  EXPECT_NEAR(exact_expectation(clock_observable(cx), rho), -0.5, 1e-12);
  EXPECT_NEAR(p1_exact(rho, cx), 1.0, 1e-12);
  const CircuitSpec h = circuit(1, {hadamard()});
  EXPECT_NEAR(p1_exact(feynman_steady_state(h), circuit_to_lme(h)), 0.5, 1e-12);
  EXPECT_NEAR(statevector_p1(h), 0.5, 1e-12);
}

TEST(P1, ExactMatchesStatevector) {
  for (const auto& c : random_circuits()) {
    const ComplexVector psi = c.states().back();
    const double sv = psi.tail(psi.size() / 2).squaredNorm();
    EXPECT_NEAR(statevector_p1(c), sv, 1e-12);
    EXPECT_NEAR(p1_exact(feynman_steady_state(c), circuit_to_lme(c)), sv, 1e-10);
  }
}

TEST(P1, SampledWithinNoise) {
  for (const auto& c : random_circuits()) {
    const ClockLme clock = circuit_to_lme(c);
    const SampledP1 s = p1_sampled(feynman_steady_state(c), clock, 100000, 5);
    const double sigma = (c.depth() + 1) / 2.0 * std::sqrt(s.estimate.var_bound);
    EXPECT_LT(std::abs(s.p1 - statevector_p1(c)), 5 * sigma);
  }
}

TEST(BlockHamiltonian, SpectrumAndKernel) {
  EXPECT_EQ(block_hamiltonian(SuperOp(1, ComplexMatrix::Zero(4, 4))).cwiseAbs().maxCoeff(), 0.0);
  CounterRng rng(72, 0);
  const LmeSpec spec = random_spec(1, 1, rng);
  const SuperOp L = build_liouvillian(spec);
  const ComplexMatrix hb = block_hamiltonian(L);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hb);
  Eigen::JacobiSVD<ComplexMatrix> svd(L.matrix);
  std::vector<double> want;
  for (Eigen::Index k = 0; k < 4; ++k) {
    want.push_back(svd.singularValues()(k));
    want.push_back(-svd.singularValues()(k));
  }
  std::sort(want.begin(), want.end());
  for (Eigen::Index k = 0; k < 8; ++k) EXPECT_NEAR(es.eigenvalues()(k), want[static_cast<std::size_t>(k)], 1e-10);

  const SuperOp d = build_liouvillian(damping_spec());
  ComplexVector v = ComplexVector::Zero(8);
  v(4) = 1;  // vec(|0><0|) in the second block
  EXPECT_LT((block_hamiltonian(d) * v).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ExchangeOperator, Permutation) {
  const SuperOp s1 = exchange_operator(1);
  ComplexMatrix e01 = ComplexMatrix::Zero(2, 2);
  e01(0, 1) = 1;
  EXPECT_LT((s1.matrix * flatten(e01) - flatten(e01.transpose())).cwiseAbs().maxCoeff(), 0.0 + 1e-300);
  CounterRng rng(73, 0);
  const SuperOp s2 = exchange_operator(2);
  EXPECT_EQ((s2.matrix * s2.matrix - ComplexMatrix::Identity(16, 16)).cwiseAbs().maxCoeff(), 0.0);
  const ComplexMatrix m = random_unitary(4, rng);
  EXPECT_EQ((s2.matrix * flatten(m) - flatten(m.transpose())).cwiseAbs().maxCoeff(), 0.0);
}

TEST(CliffordConjugate, DualPath) {
  const PauliSum z = PauliSum::from_terms({{"ZI", 1.0}});
  EXPECT_LT(clifford_conjugate_observable(z, ComplexMatrix::Identity(4, 4)).max_abs_diff(z), 1e-15);
  const ComplexMatrix x0 = okron(letter('X'), letter('I'));
  EXPECT_LT(clifford_conjugate_observable(z, x0).max_abs_diff(z * Complex(-1)), 1e-15);
  CounterRng rng(74, 0);
  const ComplexMatrix u = random_unitary(4, rng);
  const PauliSum a = random_pauli_sum(2, 3, rng, true);
  EXPECT_LT((sum_matrix(clifford_conjugate_observable(a, u)) - u.adjoint() * sum_matrix(a) * u).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_THROW(clifford_conjugate_observable(a, 2.0 * ComplexMatrix::Identity(4, 4)), ValidationError);
}
