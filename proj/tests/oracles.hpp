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

// Test-side reference implementations. Nothing here calls the dense or
// Pauli machinery of the library, so agreement is an independent check.

#include <complex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lindground/lindblad.hpp"
#include "lindground/pauli.hpp"
#include "lindground/random.hpp"

namespace lgtest {

using lg::Complex;
using lg::ComplexMatrix;
using lg::ComplexVector;

inline ComplexMatrix okron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline ComplexMatrix letter(char c) {
  const Complex i(0, 1);
  ComplexMatrix m(2, 2);
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("bad Pauli letter");
  }
  return m;
}

inline ComplexMatrix word_matrix(std::string_view w) {
  ComplexMatrix m = ComplexMatrix::Identity(1, 1);
  for (char c : w) m = okron(m, letter(c));
  return m;
}

inline ComplexMatrix sum_matrix(const lg::PauliSum& s) {
  const Eigen::Index d = Eigen::Index{1} << s.num_qubits();
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (const auto& [p, c] : s) m += c * word_matrix(p.str());
  return m;
}

/// Tr(P M) / d for one word, walking the single nonzero per row of P.
inline Complex word_coeff(const ComplexMatrix& m, std::string_view w) {
  const int n = static_cast<int>(w.size());
  const Complex i(0, 1);
  Complex tr = 0;
  for (Eigen::Index row = 0; row < m.rows(); ++row) {
    Eigen::Index col = 0;
    Complex val = 1;
    for (int q = 0; q < n; ++q) {
      const int b = static_cast<int>((row >> (n - 1 - q)) & 1);
      int cb = b;
      switch (w[static_cast<std::size_t>(q)]) {
        case 'X': cb = b ^ 1; break;
        case 'Y': cb = b ^ 1; val *= b == 0 ? -i : i; break;
        case 'Z': val *= b == 0 ? 1.0 : -1.0; break;
        default: break;
      }
      col = (col << 1) | cb;
    }
    tr += val * m(col, row);
  }
  return tr / static_cast<double>(m.rows());
}

inline std::vector<std::string> all_words(int n) {
  std::vector<std::string> out{""};
  for (int q = 0; q < n; ++q) {
    std::vector<std::string> next;
    for (const auto& w : out)
      for (char c : std::string("IXYZ")) next.push_back(w + c);
    out = std::move(next);
  }
  return out;
}

/// Largest coefficient difference between a Pauli sum and a dense matrix.
inline double coeff_error(const lg::PauliSum& s, const ComplexMatrix& m) {
  const int n = s.num_qubits();
  double worst = 0;
  for (const auto& w : all_words(n)) {
    worst = std::max(worst, std::abs(word_coeff(m, w) - s.coeff(lg::PauliString::parse(w))));
  }
  return worst;
}

/// Row-major flattening.
inline ComplexVector flatten(const ComplexMatrix& m) {
  ComplexVector v(m.size());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) v(r * m.cols() + c) = m(r, c);
  return v;
}

inline ComplexMatrix unflatten(const ComplexVector& v, Eigen::Index d) {
  ComplexMatrix m(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) m(r, c) = v(r * d + c);
  return m;
}

struct DenseLme {
  ComplexMatrix h;
  std::vector<std::pair<double, ComplexMatrix>> jumps;
};

inline DenseLme dense_lme(const lg::LmeSpec& spec) {
  DenseLme out{sum_matrix(spec.hamiltonian()), {}};
  for (const auto& ch : spec.jumps()) out.jumps.emplace_back(ch.rate, sum_matrix(ch.op));
  return out;
}

/// drho/dt of the master equation applied to one matrix.
inline ComplexMatrix lindblad_rhs(const DenseLme& lme, const ComplexMatrix& rho) {
  const Complex i(0, 1);
  ComplexMatrix out = -i * (lme.h * rho - rho * lme.h);
  for (const auto& [rate, f] : lme.jumps) {
    const ComplexMatrix fdf = f.adjoint() * f;
    out += rate * (f * rho * f.adjoint() - 0.5 * (fdf * rho + rho * fdf));
  }
  return out;
}

/// Liouvillian assembled column by column from the action on basis matrices.
inline ComplexMatrix liouvillian_oracle(const lg::LmeSpec& spec) {
  const DenseLme lme = dense_lme(spec);
  const Eigen::Index d = lme.h.rows();
  ComplexMatrix L(d * d, d * d);
  for (Eigen::Index k = 0; k < d * d; ++k) {
    ComplexMatrix e = ComplexMatrix::Zero(d, d);
    e(k / d, k % d) = 1;
    L.col(k) = flatten(lindblad_rhs(lme, e));
  }
  return L;
}

/// <rho|A|rho> with |rho> = vec(rho) / ||rho||_F, A given densely.
inline double ratio_oracle(const ComplexMatrix& a, const ComplexMatrix& rho) {
  const ComplexVector v = flatten(rho) / rho.norm();
  return (v.adjoint() * a * v)(0, 0).real();
}

/// Steady state by least squares on [L; vec(I)^T] x = [0; 1].
inline ComplexMatrix steady_oracle(const ComplexMatrix& L, Eigen::Index d) {
  ComplexMatrix a(L.rows() + 1, L.cols());
  a.topRows(L.rows()) = L;
  a.bottomRows(1).setZero();
  for (Eigen::Index k = 0; k < d; ++k) a(L.rows(), k * d + k) = 1;
  ComplexVector b = ComplexVector::Zero(L.rows() + 1);
  b(L.rows()) = 1;
  const ComplexVector x = a.colPivHouseholderQr().solve(b);
  const ComplexMatrix rho = unflatten(x, d);
  return 0.5 * (rho + rho.adjoint());
}

inline lg::LmeSpec random_spec(int n, int jumps, lg::CounterRng& rng) {
  lg::PauliSum h = lg::random_pauli_sum(n, 3, rng, true);
  std::vector<lg::JumpChannel> ch;
  for (int a = 0; a < jumps; ++a) ch.push_back({0.2 + rng.uniform(), lg::random_pauli_sum(n, 2, rng, false)});
  return lg::LmeSpec(n, std::move(h), std::move(ch));
}

inline lg::PauliSum sigma_minus() { return lg::PauliSum::from_terms({{"X", 0.5}, {"Y", Complex(0, 0.5)}}); }
inline lg::PauliSum sigma_plus() { return lg::PauliSum::from_terms({{"X", 0.5}, {"Y", Complex(0, -0.5)}}); }

inline lg::LmeSpec damping_spec(double rate = 1.0) {
  return lg::LmeSpec(1, lg::PauliSum(1), {{rate, sigma_minus()}});
}

}  // namespace lgtest
