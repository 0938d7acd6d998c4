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

#include "lindground/random.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

namespace lg {

double CounterRng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

ComplexMatrix gaussian(Eigen::Index rows, Eigen::Index cols, CounterRng& rng) {
  ComplexMatrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = rng.normal();
      g(i, j) = Complex(re, rng.normal());
    }
  }
  return g;
}

}  // namespace

ComplexVector random_state(int n, CounterRng& rng) {
  ComplexVector v = gaussian(Eigen::Index{1} << n, 1, rng).col(0);
  return v / v.norm();
}

ComplexMatrix random_density_matrix(int n, CounterRng& rng, int rank) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  const Eigen::Index r = rank > 0 ? std::min<Eigen::Index>(rank, dim) : dim;
  ComplexMatrix g = gaussian(dim, r, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  return rho / rho.trace().real();
}

ComplexMatrix random_hermitian(Eigen::Index dim, CounterRng& rng) {
  ComplexMatrix g = gaussian(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

ComplexMatrix random_unitary(Eigen::Index dim, CounterRng& rng) {
  Eigen::HouseholderQR<ComplexMatrix> qr(gaussian(dim, dim, rng));
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  // Fix the column phases so the distribution does not depend on QR conventions.
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

PauliSum random_pauli_sum(int n, int terms, CounterRng& rng, bool hermitian) {
  PauliSum s(n);
  const std::uint64_t mask = n >= 64 ? ~0ULL : ((1ULL << n) - 1);
  int guard = 0;
  while (static_cast<int>(s.size()) < terms && guard++ < 64 * (terms + 1)) {
    PauliString p = PauliString::from_masks(n, rng.next_u64() & mask, rng.next_u64() & mask);
    if (s.coeff(p) != Complex{}) continue;
    const double re = rng.normal();
    const double im = hermitian ? 0.0 : rng.normal();
    s.add(p, Complex(re, im));
  }
  return s;
}

}  // namespace lg
