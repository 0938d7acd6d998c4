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
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lindground/lindblad.hpp"
#include "lindground/pauli.hpp"

namespace lg {

// ---------------------------------------------------------------------------
// Polynomials

/// Sorted multiset of variable indices; the empty monomial is the constant.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<int> vars);
  static Monomial var(int v) { return Monomial({v}); }
  static Monomial product(int a, int b) { return Monomial({a, b}); }

  int degree() const { return static_cast<int>(vars_.size()); }
  bool is_constant() const { return vars_.empty(); }
  const std::vector<int>& vars() const { return vars_; }
  bool contains(int v) const;
  /// Index of the only variable when every factor is the same one.
  std::optional<int> single_variable() const;

  Monomial operator*(const Monomial& other) const;
  std::string str(const std::vector<std::string>& names) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<int> vars_;
};

/// Graded lexicographic order, highest degree first: x0^2, x0x1, ..., x1^2,
/// ..., x0, x1, ..., 1.
struct GradedLexOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

using Polynomial = std::map<Monomial, double, GradedLexOrder>;

int degree(const Polynomial& p);
double evaluate(const Polynomial& p, const std::vector<double>& x);

enum class VarRole { Hamiltonian, Rate, Slack };

std::string_view to_string(VarRole r);

struct Variable {
  std::string name;
  VarRole role;
};

/// Real polynomial equations p(x) = 0 of degree at most two.
class QuadraticSystem {
 public:
  int add_variable(std::string name, VarRole role);
  /// Drops zero coefficients; throws ValidationError for an empty or
  /// higher-degree equation, or an unknown variable index.
  void add_equation(Polynomial eq);

  int num_vars() const { return static_cast<int>(vars_.size()); }
  std::size_t num_equations() const { return eqs_.size(); }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Polynomial>& equations() const { return eqs_; }

  /// max_e |p_e(x)|.
  double residual(const std::vector<double>& x) const;

  /// `VAR <name> <role>` lines then `EQ <c>*<mono> ... = 0` lines.
  std::string to_text() const;
  static QuadraticSystem parse(std::string_view text);

 private:
  std::vector<Variable> vars_;
  std::vector<Polynomial> eqs_;
};

std::size_t count_monomials(int num_vars, int max_degree);

/// Every monomial of degree <= d over `num_vars` variables in graded lex order.
std::vector<Monomial> monomials_up_to(int num_vars, int d);

// ---------------------------------------------------------------------------
// Counting

/// N(n, k, m) = sum_{l=0}^{k} C(n, l) m^l. Throws ValidationError for k > n,
/// k < 0 or m < 1, and when the count overflows 64 bits.
std::uint64_t count_terms(int n, int k, int m);

struct AsymptoticRatio {
  /// N_e / N_u^2 at n = n_max.
  double at_n_max = 0.0;
  /// Richardson extrapolation in 1/n over n_max, n_max/2, ...
  double limit = 0.0;
  /// 1 / sqrt(limit).
  double exponent = 0.0;
};

/// N_e = N(n,k,3)/2 + N(n/2,k/2,5), N_u = 2 N(n/2,k/2,5) + N(n/2,k/2,3).
/// Throws ValidationError for odd or non-positive k, or n_max too small.
AsymptoticRatio asymptotic_ratio(int k, int n_max = 1 << 14);

/// N_e / N_u^2 at a single even n, evaluated in floating point.
double ratio_at(int n, int k);

// ---------------------------------------------------------------------------
// Ansatz and equation generation

/// A Liouvillian with fixed operator structure and unknown weights.
class LiouvillianAnsatz {
 public:
  struct Term {
    std::string name;
    PauliSum op;
  };

  LiouvillianAnsatz(int n, std::vector<Term> hamiltonian, std::vector<Term> jumps, int locality);

  /// Open 1-D chain: per bond jz ZZ and j (XX + YY); per site one jump
  /// |1><0| with its own rate.
  static LiouvillianAnsatz xxz_chain(int sites);
  /// Every Hamiltonian word of weight <= k/2 and every jump word over
  /// {X, Y, Z, s+, s-} of weight <= k/2 (identity entries included).
  static LiouvillianAnsatz full_local(int n, int k);

  int num_qubits() const { return n_; }
  int locality() const { return locality_; }
  const std::vector<Term>& hamiltonian() const { return hamiltonian_; }
  const std::vector<Term>& jumps() const { return jumps_; }

  /// h_a then lambda_alpha then w_alpha.
  int num_unknowns() const { return static_cast<int>(hamiltonian_.size() + 2 * jumps_.size()); }

  /// Throws ValidationError on size mismatch or negative rates.
  LmeSpec instantiate(const std::vector<double>& h, const std::vector<double>& rates) const;

 private:
  int n_;
  std::vector<Term> hamiltonian_;
  std::vector<Term> jumps_;
  int locality_;
};

struct MqSystem {
  QuadraticSystem system;
  /// Pauli key of each coefficient equation (slack constraints excluded), with
  /// a flag telling whether it is the real or imaginary part.
  std::vector<std::pair<PauliString, bool>> keys;
  std::size_t n_e = 0;
  std::size_t n_u = 0;
};

/// Matches the symbolic L†L(unknowns) against `target` coefficient by
/// coefficient and appends w^2 - lambda = 0 for every rate. Only one word of
/// each exchange-related pair (row word <= column word) is kept. Throws
/// StructuralRejectionError when the target is not Hermitian or violates the
/// exchange relation beyond 1e-10.
MqSystem build_mq_system(const LiouvillianAnsatz& ansatz, const PauliSum& target, bool include_ground_energy = true);

/// Full unknown vector (h, lambda, w = sqrt(lambda)) for known parameters.
std::vector<double> ansatz_assignment(const LiouvillianAnsatz& ansatz, const std::vector<double>& h,
                                      const std::vector<double>& rates);

// ---------------------------------------------------------------------------
// XL

using SparseRow = std::vector<std::pair<int, double>>;

/// Linearized equations: one column per monomial of degree <= D (constant
/// included, last), rows sorted by column.
struct LinearizedSystem {
  std::vector<Monomial> columns;
  std::vector<SparseRow> rows;

  std::size_t nnz() const;
  double density() const;
  /// Right-hand side of row r when the constant column is moved across.
  double rhs(std::size_t r) const;
  /// Matrix Market coordinate export (1-based indices, general real).
  void write_matrix_market(std::ostream& out) const;
};

/// Multiplies every equation by every monomial of degree <= D - 2.
LinearizedSystem extend_and_linearize(const QuadraticSystem& sys, int d);

struct EliminationOptions {
  double pivot_tol = 1e-12;
  bool exact_rational = false;
};

/// Reduced row echelon form by Gauss-Jordan elimination with partial pivoting.
/// Rows come back ordered by pivot column. The rational mode runs the same
/// algorithm over exact fractions (at most 200 columns).
LinearizedSystem eliminate(const LinearizedSystem& lin, const EliminationOptions& opt = {});

/// c[0] + c[1] x + c[2] x^2 + ... = 0 in a single variable.
struct Univariate {
  int var;
  std::vector<double> coeffs;
};

struct XlRound {
  LinearizedSystem linearized;
  LinearizedSystem eliminated;
  std::vector<Univariate> univariates;
  /// A nonzero constant row appeared.
  bool inconsistent = false;
  /// No univariate and no inconsistency at this D.
  bool need_higher_d = false;
};

XlRound xl_round(const QuadraticSystem& sys, int d, const EliminationOptions& opt = {});

/// Real roots (|Im| < 1e-8) of c[0] + c[1] x + ..., via the companion matrix,
/// sorted and deduplicated.
std::vector<double> real_roots(const std::vector<double>& coeffs);

struct XlOptions {
  int d_start = 2;
  int d_max = 4;
  std::size_t node_budget = 10000;
  bool exact_rational = false;
  double residual_tol = 1e-8;
};

enum class XlStatus { Solved, Unsolvable };

struct XlResult {
  XlStatus status = XlStatus::Unsolvable;
  std::vector<double> assignment;
  int d_used = 0;
  int rounds = 0;
  std::size_t nodes = 0;
  double residual = 0.0;
  /// Density of the first linearized matrix.
  double matrix_density = 0.0;
  std::size_t n_e = 0;
  std::size_t n_u = 0;
  double wall_time_ms = 0.0;
};

class BudgetExceededError : public Error {
 public:
  BudgetExceededError(const std::string& what, std::vector<std::optional<double>> partial)
      : Error(what), partial_(std::move(partial)) {}
  const std::vector<std::optional<double>>& partial_assignment() const { return partial_; }

 private:
  std::vector<std::optional<double>> partial_;
};

/// Extension/elimination loop with depth-first branching over real roots.
/// Throws BudgetExceededError past the node budget.
XlResult xl_solve(const QuadraticSystem& sys, const XlOptions& opt = {});

/// max |L†L(assignment) - target| over Pauli coefficients; assignment is laid
/// out as in ansatz_assignment. Throws ValidationError for negative rates.
double verify_solution(const LiouvillianAnsatz& ansatz, const std::vector<double>& assignment, const PauliSum& target);

}  // namespace lg
