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

#include "lindground/substitute.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "detail/dense.hpp"

namespace lg {

namespace {

constexpr std::array<std::string_view, 16> kTableOrder = {"II", "XX", "YY", "ZZ", "IX", "XI", "YZ", "ZY",
                                                          "IY", "YI", "XZ", "ZX", "IZ", "ZI", "XY", "YX"};

Complex round_to_unit(Complex z) {
  const std::array<Complex, 4> units = {Complex{1, 0}, Complex{-1, 0}, Complex{0, 1}, Complex{0, -1}};
  return *std::min_element(units.begin(), units.end(),
                           [&](Complex a, Complex b) { return std::abs(z - a) < std::abs(z - b); });
}

ComplexMatrix swap_gate() {
  ComplexMatrix s = ComplexMatrix::Zero(4, 4);
  s(0, 0) = s(1, 2) = s(2, 1) = s(3, 3) = 1.0;
  return s;
}

int letter_index(Pauli p) { return static_cast<int>(p); }

}  // namespace

ComplexMatrix substitute_matrix(const ComplexMatrix& a) {
  if (a.rows() != 4 || a.cols() != 4) throw ShapeError("substitute_matrix: expected a 4x4 matrix");
  ComplexMatrix b(4, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) b(2 * i + l, 2 * j + k) = a(2 * i + j, 2 * k + l);
      }
    }
  }
  return b;
}

SubstituteTable build_table() {
  SubstituteTable t;
  const ComplexMatrix swap = swap_gate();
  for (std::size_t idx = 0; idx < kTableOrder.size(); ++idx) {
    SubstituteEntry& e = t.entries[idx];
    e.a = PauliString::parse(kTableOrder[idx]);
    e.matrix = substitute_matrix(to_matrix(PauliSum::term(e.a)));
    e.b = pauli_decompose(e.matrix);
    e.local = pauli_decompose(swap * e.matrix);
    Eigen::ComplexEigenSolver<ComplexMatrix> es(e.matrix, false);
    for (Eigen::Index k = 0; k < 4; ++k) e.eigenvalues.push_back(round_to_unit(es.eigenvalues()(k)));
  }
  return t;
}

const SubstituteTable& substitute_table() {
  static const SubstituteTable table = build_table();
  return table;
}

const SubstituteEntry& SubstituteTable::lookup(Pauli row, Pauli col) const {
  for (const auto& e : entries) {
    if (e.a[0] == row && e.a[1] == col) return e;
  }
  throw Error("SubstituteTable: missing entry");  // unreachable for a complete table
}

const SubstituteEntry& SubstituteTable::lookup(const PauliString& pair) const {
  if (pair.size() != 2) throw DimensionError("SubstituteTable::lookup: expected a two-qubit word");
  return lookup(pair[0], pair[1]);
}

// ---------------------------------------------------------------------------

PauliSum SubstituteTerm::q() const {
  const int n2 = source.size();
  const int n = n2 / 2;
  const auto& table = substitute_table();
  // Precomputed letter pairs per row/column letter combination.
  std::array<std::array<const SubstituteEntry*, 4>, 4> lut{};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) lut[r][c] = &table.lookup(static_cast<Pauli>(r), static_cast<Pauli>(c));
  }
  std::vector<std::pair<PauliString, Complex>> acc = {{PauliString(n2), Complex{1.0, 0.0}}};
  for (int k = 0; k < n; ++k) {
    const SubstituteEntry& e = *lut[letter_index(source[k])][letter_index(source[n + k])];
    std::vector<std::pair<PauliString, Complex>> next;
    next.reserve(acc.size() * e.b.size());
    for (const auto& [word, c] : acc) {
      for (const auto& [pair, d] : e.b) {
        PauliString w = word;
        w.set(k, pair[0]);
        w.set(n + k, pair[1]);
        next.emplace_back(w, c * d);
      }
    }
    acc = std::move(next);
  }
  PauliSum out(n2);
  for (const auto& [w, c] : acc) out.add(w, c);
  return out;
}

SubstitutedObservable substitute(const PauliSum& a) {
  if (a.num_qubits() % 2 != 0) {
    throw DimensionError("substitute: observable acts on an odd number of qubits (" + std::to_string(a.num_qubits()) +
                         "); row/column pairing is impossible");
  }
  SubstitutedObservable out;
  out.n_ = a.num_qubits() / 2;
  for (const auto& [p, c] : a) out.terms_.push_back(SubstituteTerm{c, p});
  return out;
}

PauliSum SubstitutedObservable::expand() const {
  PauliSum b(2 * n_);
  for (const auto& t : terms_) b += t.weight * t.q();
  return b;
}

// ---------------------------------------------------------------------------

PauliExpectations::PauliExpectations(const ComplexMatrix& rho)
    : table_(pauli_decompose(rho)), scale_(static_cast<double>(rho.rows())) {}

Complex PauliExpectations::operator()(const PauliString& p) const { return scale_ * table_.coeff(p); }

Complex substitute_trace(const PauliSum& q, const PauliExpectations& ex) {
  const int n = q.num_qubits() / 2;
  Complex acc{0.0, 0.0};
  for (const auto& [p, c] : q) acc += c * ex(p.slice(0, n)) * ex(p.slice(n, n));
  return acc;
}

namespace {

void check_state_matrix(const ComplexMatrix& rho, const char* what) {
  if (rho.rows() != rho.cols() || !detail::is_power_of_two(rho.rows())) {
    throw ShapeError(std::string(what) + ": matrix must be square with power-of-two dimension");
  }
  if (detail::max_abs(rho - rho.adjoint()) > 1e-10) throw ValidationError(std::string(what) + ": rho is not Hermitian");
  if (rho.norm() == 0.0) throw NormalizationError(std::string(what) + ": rho is zero");
}

}  // namespace

Complex substitute_numerator(const PauliSum& a, const ComplexMatrix& rho) {
  check_state_matrix(rho, "substitute_numerator");
  const int n = detail::log2_dim(rho.rows());
  if (a.num_qubits() != 2 * n) {
    throw DimensionError("substitute_numerator: observable must act on " + std::to_string(2 * n) + " qubits");
  }
  const PauliExpectations ex(rho);
  const SubstitutedObservable b = substitute(a);
  Complex acc{0.0, 0.0};
  for (const auto& t : b.terms()) acc += t.weight * substitute_trace(t.q(), ex);
  return acc;
}

double exact_expectation(const PauliSum& a, const ComplexMatrix& rho) {
  if (!a.is_hermitian(1e-12)) {
    throw ValidationError("exact_expectation: observable is not Hermitian (non-Hermitian observables are unsupported)");
  }
  const Complex num = substitute_numerator(a, rho);
  const double purity = (rho * rho).trace().real();
  return num.real() / purity;
}

double exact_expectation(const PauliSum& a, const DensityMatrix& rho) { return exact_expectation(a, rho.matrix()); }

Complex bell_amplitude(const ComplexMatrix& rho, const PauliString& p) {
  check_state_matrix(rho, "bell_amplitude");
  const int n = detail::log2_dim(rho.rows());
  if (p.size() != n) throw DimensionError("bell_amplitude: Pauli width differs from the state");
  const Complex tr = (to_matrix(PauliSum::term(p)) * rho).trace();
  const double purity = (rho * rho).trace().real();
  return tr / (std::sqrt(static_cast<double>(rho.rows())) * std::sqrt(purity));
}

Complex bell_amplitude(const DensityMatrix& rho, const PauliString& p) { return bell_amplitude(rho.matrix(), p); }

ComplexVector bell_vector(const PauliString& p) {
  const ComplexMatrix m = to_matrix(PauliSum::term(p));
  return vec(m) / std::sqrt(static_cast<double>(m.rows()));
}

}  // namespace lg
