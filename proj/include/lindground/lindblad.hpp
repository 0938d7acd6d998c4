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
#include <optional>
#include <variant>
#include <vector>

#include "lindground/pauli.hpp"

namespace lg {

struct JumpChannel {
  double rate = 0.0;
  PauliSum op;
};

/// A Lindblad problem: dρ/dt = -i[H, ρ] + Σ λ_i (F_i ρ F_i† - ½{F_i† F_i, ρ}).
class LmeSpec {
 public:
  /// Throws ValidationError for negative rates, a non-Hermitian Hamiltonian
  /// (1e-12) or operators whose width differs from n.
  LmeSpec(int n, PauliSum hamiltonian, std::vector<JumpChannel> jumps);

  int num_qubits() const { return n_; }
  const PauliSum& hamiltonian() const { return hamiltonian_; }
  const std::vector<JumpChannel>& jumps() const { return jumps_; }

 private:
  int n_;
  PauliSum hamiltonian_;
  std::vector<JumpChannel> jumps_;
};

/// A dense operator on vectorized n-qubit density matrices (dimension 4^n).
struct SuperOp {
  int n = 0;
  ComplexMatrix matrix;

  SuperOp() = default;
  SuperOp(int n, ComplexMatrix m);
};

/// Hermitian, unit-trace, positive semidefinite 2^n x 2^n matrix.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kPsdSlack = 1e-9;

  /// Validates the matrix; throws ValidationError on failure.
  explicit DensityMatrix(ComplexMatrix m);

  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix basis_state(int n, std::uint64_t index);
  static DensityMatrix maximally_mixed(int n);

  int num_qubits() const { return n_; }
  const ComplexMatrix& matrix() const { return m_; }
  double purity() const;

 private:
  int n_;
  ComplexMatrix m_;
};

/// Normalized vectorization |ρ> = vec(ρ) / C_ρ with C_ρ = ||ρ||_F.
struct DmVector {
  int n = 0;
  ComplexVector amplitudes;
  double norm_factor = 0.0;
};

/// Row-major flattening: index i * dim + j holds m(i, j).
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v);

DmVector vectorize(const DensityMatrix& rho);
/// Any nonzero square matrix; throws NormalizationError for the zero matrix.
DmVector vectorize(const ComplexMatrix& m);
/// amplitudes * norm_factor reshaped to a matrix.
ComplexMatrix devectorize(const DmVector& v);

// ---------------------------------------------------------------------------
// Construction

/// L = -i(H⊗I - I⊗Hᵀ) + Σ λ_i (F_i⊗F_i* - ½F_i†F_i⊗I - ½I⊗F_iᵀF_i*).
SuperOp build_liouvillian(const LmeSpec& spec);

/// The same generator as a Pauli sum on the doubled register (row qubits
/// first). Works past the dense cap.
PauliSum liouvillian_pauli(const LmeSpec& spec);

/// L†L expanded term by term from H and the jump operators (H², cross terms
/// linear in the rates and the double sum over rate pairs). Works past the
/// dense cap.
PauliSum ldl_symbolic(const LmeSpec& spec);

/// One block of L†L for L = sum_u x_u K_u: the coefficient of x_u x_v.
struct LdlComponent {
  int u;
  int v;
  PauliSum op;
};

/// L†L split over ordered pairs of unknowns for H = sum_a h_a H_a and jump
/// operators F_alpha with rates lambda_alpha. Unknowns 0..H-1 are the h_a, H..
/// H+J-1 the rates. Summing x_u x_v op over the result gives L†L.
std::vector<LdlComponent> ldl_components(int n, const std::vector<PauliSum>& hamiltonian_terms,
                                         const std::vector<PauliSum>& jump_ops);

struct LdlResult {
  SuperOp dense;
  PauliSum pauli;
  /// max |symbolic - pauli_decompose(dense)| over coefficients.
  double cross_check_error = 0.0;
  double exchange_residual = 0.0;
};

/// Dense L†L plus its Pauli form. The symbolic expansion is always checked
/// against the decomposed dense product; a mismatch throws ConsistencyError.
LdlResult build_ldl(const LmeSpec& spec);

// ---------------------------------------------------------------------------
// Steady states and dynamics

struct SteadyStates {
  /// Dimension of the right null space of L.
  std::size_t dim = 0;
  /// Physical states recovered from a Hermitian basis of the null space.
  std::vector<DensityMatrix> states;
  /// Hermitian basis of the null space, unnormalized (Frobenius norm 1).
  std::vector<ComplexMatrix> basis;
  /// Largest Frobenius change made while repairing a basis element.
  double repair_magnitude = 0.0;
  /// Set when some basis element could not be turned into a density matrix
  /// within the PSD slack (always the case for degenerate spaces).
  bool degeneracy_warning = false;
};

/// Null-space threshold: singular value < kNullTol * largest singular value.
inline constexpr double kNullTol = 1e-10;

/// Throws NoSteadyStateError when the null space is empty.
SteadyStates steady_state(const SuperOp& L);

/// exp(L t) vec(ρ0) with `steps` classical RK4 substeps.
DensityMatrix evolve(const SuperOp& L, const DensityMatrix& rho0, double t, int steps);

/// Max entrywise change of evolve() when the substep count is doubled.
double evolution_convergence(const SuperOp& L, const DensityMatrix& rho0, double t, int steps);

/// A substep count keeping h * ||L||_1 <= 0.05.
int suggested_steps(const SuperOp& L, double t);

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// |<vec(a)|vec(b)>| / (||a||_F ||b||_F).
double dm_overlap(const ComplexMatrix& a, const ComplexMatrix& b);

// ---------------------------------------------------------------------------
// Diagnostics

struct SpectralReport {
  std::vector<Complex> eigenvalues;
  /// min |Re η| over eigenvalues with |Re η| > 1e-9; absent if none.
  std::optional<double> gap;
  std::size_t steady_dim = 0;
  bool diagonalizable = false;
  double eigenvector_condition = 0.0;
  /// Probe-based lower-bound estimate of the halving time.
  std::optional<double> mixing_time_estimate;
  double max_real_part = 0.0;
};

SpectralReport spectral_diagnostics(const SuperOp& L, int mixing_probes, std::uint64_t seed);

/// Smallest t with ||e^{Lt} Δ||_1 <= ½ ||Δ||_1 for one traceless Hermitian Δ;
/// absent when the distance never halves.
std::optional<double> halving_time(const SuperOp& L, const ComplexMatrix& delta);

struct SpectralGap {
  double value;
};
struct MixingTime {
  double value;
};
using RelaxationScale = std::variant<SpectralGap, MixingTime>;

/// Sufficient evolution time for a 1 - eps vectorized overlap.
/// Gap branch: (ln2 · n/2 + ln eps^{-1/2}) / Δ. Mixing branch:
/// t_mix (n + log2(1/eps)) / 2.
double runtime_bound(const RelaxationScale& scale, int n, double eps);

struct LdlPropertyReport {
  double min_eigenvalue = 0.0;
  double ground_energy = 0.0;
  std::size_t ground_dim = 0;
  double st_commutator_norm = 0.0;
  std::optional<std::size_t> steady_dim;

  bool spectrum_nonnegative = false;
  bool ground_energy_zero = false;
  bool st_symmetric = false;
  bool ground_matches_steady = true;

  bool all_passed() const {
    return spectrum_nonnegative && ground_energy_zero && st_symmetric && ground_matches_steady;
  }
};

/// Checks non-negativity, the zero ground energy, [L†L, ST] = 0 and, when
/// given, that the ground-space dimension equals `steady_dim`.
LdlPropertyReport verify_ldl_properties(const SuperOp& ldl, std::optional<std::size_t> steady_dim = std::nullopt);

/// v -> S conj(v): the Hermitian-conjugate map on vectorized matrices.
ComplexVector apply_st(const ComplexVector& v, int n);

}  // namespace lg
