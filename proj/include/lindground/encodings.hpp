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

#pragma once

#include <cstdint>
#include <vector>

#include "lindground/lindblad.hpp"
#include "lindground/substitute.hpp"

namespace lg {

/// |psi_T> = U_T ... U_1 |0...0> with every layer a dense 2^n x 2^n unitary.
struct CircuitSpec {
  int n = 0;
  std::vector<ComplexMatrix> layers;

  int depth() const { return static_cast<int>(layers.size()); }
  /// Throws ValidationError for T = 0, bad shapes or non-unitary layers (1e-10).
  void validate() const;
  /// |psi_t> for t = 0..T.
  std::vector<ComplexVector> states() const;
};

/// Clock-register Lindblad problem whose steady state records the whole
/// circuit history. System qubits come first, clock qubits last.
///
/// The transitions alone leave the coherence between the two history
/// states of a depth-1 circuit invariant; the dephasing channel removes it
/// without disturbing the history state.
///
/// Jumps, all with rate 1:
///   reset      |0><1|_i (x) |0><0|_a                      i = 0..n-1
///   transition U_{t+1} (x) |t+1><t|_a + h.c.             t = 0..T-1
///   dephasing  I (x) |T><T|_a
///   padding    I (x) |0><p|_a                            p = T+1..2^q-1
struct ClockLme {
  LmeSpec spec;
  int system_qubits = 0;
  int clock_qubits = 0;
  int clock_dim = 0;
  std::size_t reset_jumps = 0;
  std::size_t transition_jumps = 0;
  std::size_t dephasing_jumps = 0;
  std::size_t padding_jumps = 0;

  int depth() const { return clock_dim - 1; }
  int total_qubits() const { return system_qubits + clock_qubits; }
};

ClockLme circuit_to_lme(const CircuitSpec& c);

/// (1 / (T+1)) sum_t |psi_t><psi_t| (x) |t><t|_a from direct statevector
/// application of the layers.
DensityMatrix feynman_steady_state(const CircuitSpec& c);

/// Z on system qubit 0 times |T><T| on the clock, acting on the row half of
/// the doubled register (identity on the column half).
PauliSum clock_observable(const ClockLme& clock);

/// Probability of reading 1 on system qubit 0 of |psi_T>.
double statevector_p1(const CircuitSpec& c);

/// p1 = (1 - (T+1) <rho|O|rho>) / 2 with the exact expectation.
double p1_exact(const DensityMatrix& rho_ss, const ClockLme& clock);

struct SampledP1 {
  double p1 = 0.0;
  EstimateReport estimate;
};

/// Same as p1_exact through the shot-level estimator with n_h = n_s =
/// shots / 2 and gamma = 1 / (T+1).
SampledP1 p1_sampled(const DensityMatrix& rho_ss, const ClockLme& clock, std::int64_t shots, std::uint64_t seed);

/// [[0, L], [L^dagger, 0]].
ComplexMatrix block_hamiltonian(const SuperOp& L);

/// Permutation swapping row qubit k with column qubit k for every k, so
/// S vec(M) = vec(M^T).
SuperOp exchange_operator(int n);

/// U^dagger A U as a Pauli sum. Throws ValidationError for a non-unitary U.
PauliSum clifford_conjugate_observable(const PauliSum& a, const ComplexMatrix& u);

}  // namespace lg
