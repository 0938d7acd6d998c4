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

#include <array>
#include <cstdint>
#include <vector>

#include "lindground/lindblad.hpp"
#include "lindground/pauli.hpp"

namespace lg {

// ---------------------------------------------------------------------------
// Two-qubit table

struct SubstituteEntry {
  /// Two-qubit word on (row qubit, column qubit).
  PauliString a;
  /// Substitute operator on (copy 1, copy 2); four terms.
  PauliSum b;
  ComplexMatrix matrix;
  /// Eigenvalues of `matrix`, each rounded to {1, -1, i, -i}.
  std::vector<Complex> eigenvalues;
  /// Local part of the Hadamard-test circuit: matrix = SWAP * local.
  PauliSum local;
};

/// Entries in the canonical order II, XX, YY, ZZ, IX, XI, YZ, ZY, IY, YI, XZ,
/// ZX, IZ, ZI, XY, YX.
struct SubstituteTable {
  std::array<SubstituteEntry, 16> entries;

  const SubstituteEntry& lookup(Pauli row, Pauli col) const;
  const SubstituteEntry& lookup(const PauliString& pair) const;
};

/// Index permutation B[(i,l),(j,k)] = A[(i,j),(k,l)] on 4x4 matrices.
ComplexMatrix substitute_matrix(const ComplexMatrix& a);

/// Builds the table by brute force from substitute_matrix().
SubstituteTable build_table();

/// Process-wide instance of build_table().
const SubstituteTable& substitute_table();

// ---------------------------------------------------------------------------
// Substituted observables

/// One term g * P of an observable with its substitute Q (unitary).
struct SubstituteTerm {
  Complex weight;
  PauliString source;

  /// Q acting on rho (x) rho: pair k maps to qubits (k, n + k) of both the
  /// source register (row, column) and the target register (copy 1, copy 2).
  PauliSum q() const;
};

/// The substitute B = sum_i g_i Q_i kept in factored form. Expanding every Q_i
/// costs up to 4^n terms, so callers usually work term by term.
class SubstitutedObservable {
 public:
  int num_system_qubits() const { return n_; }
  const std::vector<SubstituteTerm>& terms() const { return terms_; }
  /// Fully expanded B.
  PauliSum expand() const;

 private:
  friend SubstitutedObservable substitute(const PauliSum& a);
  int n_ = 0;
  std::vector<SubstituteTerm> terms_;
};

/// Throws DimensionError for an odd qubit count.
SubstitutedObservable substitute(const PauliSum& a);

/// Tr(P rho) for every n-qubit Pauli word, keyed by word.
class PauliExpectations {
 public:
  explicit PauliExpectations(const ComplexMatrix& rho);
  Complex operator()(const PauliString& p) const;

 private:
  PauliSum table_;
  double scale_;
};

/// Tr(Q rho (x) rho) from the factorization Tr((P1 (x) P2) rho (x) rho) = Tr(P1 rho) Tr(P2 rho).
Complex substitute_trace(const PauliSum& q, const PauliExpectations& ex);

/// Tr(B rho (x) rho), complex. The imaginary part cancels for Hermitian A.
Complex substitute_numerator(const PauliSum& a, const ComplexMatrix& rho);

/// Tr(B rho (x) rho) / Tr(rho^2). A must be Hermitian (ValidationError) and
/// act on 2n qubits for an n-qubit rho (DimensionError).
double exact_expectation(const PauliSum& a, const ComplexMatrix& rho);
double exact_expectation(const PauliSum& a, const DensityMatrix& rho);

/// Tr(P rho) / (2^{n/2} sqrt(Tr rho^2)).
Complex bell_amplitude(const ComplexMatrix& rho, const PauliString& p);
Complex bell_amplitude(const DensityMatrix& rho, const PauliString& p);

/// Normalized Bell vector |b_P> = vec(P) / 2^{n/2} on the doubled register.
ComplexVector bell_vector(const PauliString& p);

// ---------------------------------------------------------------------------
// Sampling

/// Simulated Hadamard test on rho (x) rho: mean of `shots` +-1 outcomes with
/// P(+1) = (1 + Re Tr(Q rho (x) rho)) / 2. Q must be unitary (1e-10).
double hadamard_sample(const PauliSum& q, const DensityMatrix& rho, std::int64_t shots, std::uint64_t seed,
                       std::uint64_t stream = 0);

/// Simulated swap test: 2 * (fraction of 0 outcomes) - 1 with
/// P(0) = (1 + Tr rho^2) / 2.
double swap_sample(const DensityMatrix& rho, std::int64_t shots, std::uint64_t seed, std::uint64_t stream = 0);

/// Draws `shots` Bernoulli(p) trials from one stream and returns the count of
/// successes.
std::int64_t bernoulli_count(double p, std::int64_t shots, std::uint64_t seed, std::uint64_t stream);

/// Stream id of the swap test inside estimate_expectation().
inline constexpr std::uint64_t kSwapStream = 0xFFFF'FFFFULL;

struct MeasurementPlan {
  /// Hermitian observable on 2n qubits with real weights.
  PauliSum observable;
  std::int64_t n_h = 0;
  std::int64_t n_s = 0;
  std::uint64_t seed = 0;

  /// Validates: at least one term, real weights, n_h >= #terms, n_s >= 1.
  void validate() const;
  /// Hadamard shots per term: n_h / m each, remainder to the largest |g_i|.
  std::vector<std::int64_t> shots_per_term() const;
};

struct EstimateReport {
  double value = 0.0;
  double numerator = 0.0;
  double purity = 0.0;
  /// sqrt of the squared-bias bound: ||A||_2 / (gamma^2 n_s).
  double bias_bound = 0.0;
  /// ||A||_2^2 / (gamma^2 n_s) + m ||A||_F^2 / (4^n gamma^2 n_h).
  double var_bound = 0.0;
  /// bias_bound^2 + var_bound.
  double mse_bound = 0.0;
  std::int64_t shots = 0;
};

/// Spectral norm of a Pauli sum, dense.
double spectral_norm(const PauliSum& a);

/// Ratio estimator Tr(B rho (x) rho) / Tr(rho^2) from simulated shots.
/// Throws IllConditionedRatioError when the purity estimate is <= 0.
EstimateReport estimate_expectation(const MeasurementPlan& plan, const DensityMatrix& rho, double gamma);

struct ShotBudget {
  std::int64_t n = 0;
  std::int64_t n_h = 0;
  std::int64_t n_s = 0;
};

/// N >= 2 / (gamma^2 eps^2) (||A||_2^2 + m ||A||_F^2 / 4^n), rounded up to an
/// even count and split evenly.
ShotBudget shot_budget(const PauliSum& a, double gamma, double eps);

}  // namespace lg
