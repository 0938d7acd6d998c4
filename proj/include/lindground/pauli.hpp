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

#include <compare>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "lindground/error.hpp"

namespace lg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);

/// Largest qubit count that may be realized as a dense matrix. Defaults to 12
/// and can be overridden through the LG_DENSE_CAP environment variable.
int dense_qubit_cap();

/// Throws CapacityError when `qubits` exceeds dense_qubit_cap().
void require_dense(int qubits, std::string_view what);

/// A phase-free tensor product of single-qubit Paulis.
///
/// Qubit 0 is the most significant bit of a matrix index, so the letter for
/// qubit q lives at bit (n - 1 - q) of the x/z masks. X = (x), Z = (z),
/// Y = (x, z) with Y = i X Z.
class PauliString {
 public:
  static constexpr int kMaxQubits = 64;

  PauliString() = default;
  explicit PauliString(int n);

  static PauliString parse(std::string_view letters);
  static PauliString from_masks(int n, std::uint64_t x, std::uint64_t z);

  int size() const { return n_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }

  Pauli operator[](int qubit) const;
  void set(int qubit, Pauli p);

  /// Number of non-identity letters.
  int weight() const;
  int y_count() const;
  bool is_identity() const { return (x_ | z_) == 0; }

  /// Letters [begin, begin + count) as a new string.
  PauliString slice(int begin, int count) const;
  /// This string followed by `tail`.
  PauliString concat(const PauliString& tail) const;

  std::string str() const;

  friend bool operator==(const PauliString& a, const PauliString& b) = default;
  /// Lexicographic over letters with I < X < Y < Z; shorter strings first.
  friend std::strong_ordering operator<=>(const PauliString& a, const PauliString& b);

 private:
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

std::ostream& operator<<(std::ostream& os, const PauliString& p);

struct PauliProduct {
  Complex phase;
  PauliString product;
};

/// a * b = phase * product, phase in {1, -1, i, -i}.
PauliProduct pauli_mul(const PauliString& a, const PauliString& b);

/// A complex-weighted sum of Pauli strings sharing one qubit count.
///
/// Coefficients with magnitude below kPruneTol are never stored.
class PauliSum {
 public:
  static constexpr double kPruneTol = 1e-14;
  using TermMap = std::map<PauliString, Complex>;

  explicit PauliSum(int n = 0) : n_(n) {}

  static PauliSum identity(int n, Complex c = 1.0);
  static PauliSum term(const PauliString& p, Complex c = 1.0);
  /// Convenience: {{"XX", 0.5}, {"ZZ", -0.5}}; all words must share a length.
  static PauliSum from_terms(std::initializer_list<std::pair<std::string_view, Complex>> terms);

  int num_qubits() const { return n_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  Complex coeff(const PauliString& p) const;
  void add(const PauliString& p, Complex c);

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(Complex c);

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, Complex c) { return a *= c; }
  friend PauliSum operator*(Complex c, PauliSum a) { return a *= c; }
  /// Operator product.
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

  PauliSum adjoint() const;
  /// Entrywise complex conjugate of the matrix (conj(Y) = -Y).
  PauliSum conjugate() const;
  /// Matrix transpose (Y^T = -Y).
  PauliSum transpose() const;

  bool is_hermitian(double tol = 1e-12) const;
  double max_abs_coeff() const;
  /// Largest coefficient-wise difference over the union of supports.
  double max_abs_diff(const PauliSum& other) const;
  /// Sum of |c|^2 over terms.
  double coeff_norm_sq() const;

 private:
  int n_;
  TermMap terms_;
};

PauliSum tensor(const PauliSum& a, const PauliSum& b);

/// Dense 2^n x 2^n realization; throws CapacityError past the dense cap.
ComplexMatrix to_matrix(const PauliSum& s);

/// Coefficients Tr(P M) / 2^n over all n-qubit Pauli strings.
PauliSum pauli_decompose(const ComplexMatrix& m);

/// Exchange-symmetry defect of an operator on a doubled (row | column)
/// register of 2n qubits with coefficients g_{ij} on P_i (x) P_j.
///
/// Invariance under the antiunitary v -> S conj(v) requires
/// g_{ji} = conj(g_{ij}) * (-1)^{#Y(P_i) + #Y(P_j)}, equivalently
/// g'_{ij} = conj(g'_{ji}) for the column factor written as P_j^T.
/// Returns the largest violation.
double exchange_symmetry_residual(const PauliSum& doubled);

/// Parses the line format `<re> <im> <letters>`; `#` starts a comment.
PauliSum parse_pauli_sum(std::istream& in);
PauliSum parse_pauli_sum(std::string_view text);
std::string format_pauli_sum(const PauliSum& s);

}  // namespace lg
