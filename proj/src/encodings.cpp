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

#include "lindground/encodings.hpp"

#include <bit>
#include <string>

#include "detail/dense.hpp"

namespace lg {

using detail::kron;

namespace {

bool is_unitary(const ComplexMatrix& u, double tol) {
  return u.rows() == u.cols() &&
         detail::max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())) <= tol;
}

ComplexMatrix ket_bra(Eigen::Index dim, Eigen::Index row, Eigen::Index col) {
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(row, col) = 1.0;
  return m;
}

// |0><1| on qubit q of an n-qubit register.
ComplexMatrix lowering_on(int n, int q) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int k = 0; k < n; ++k) {
    out = kron(out, k == q ? ket_bra(2, 0, 1) : ComplexMatrix::Identity(2, 2));
  }
  return out;
}

}  // namespace

void CircuitSpec::validate() const {
  if (n < 1) throw ValidationError("CircuitSpec: at least one system qubit is required");
  if (layers.empty()) throw ValidationError("CircuitSpec: at least one layer is required");
  const Eigen::Index dim = Eigen::Index{1} << n;
  for (std::size_t t = 0; t < layers.size(); ++t) {
    const auto& u = layers[t];
    if (u.rows() != dim || u.cols() != dim) {
      throw ValidationError("CircuitSpec: layer " + std::to_string(t + 1) + " is not " + std::to_string(dim) + "x" +
                            std::to_string(dim));
    }
    if (!is_unitary(u, 1e-10)) throw ValidationError("CircuitSpec: layer " + std::to_string(t + 1) + " is not unitary");
  }
}

std::vector<ComplexVector> CircuitSpec::states() const {
  validate();
  const Eigen::Index dim = Eigen::Index{1} << n;
  std::vector<ComplexVector> out;
  ComplexVector psi = ComplexVector::Zero(dim);
  psi(0) = 1.0;
  out.push_back(psi);
  for (const auto& u : layers) {
    psi = u * psi;
    out.push_back(psi);
  }
  return out;
}

ClockLme circuit_to_lme(const CircuitSpec& c) {
  c.validate();
  const int T = c.depth();
  const int q = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(T))));
  const int total = c.n + q;
  require_dense(2 * total, "circuit_to_lme");
  const Eigen::Index cdim = Eigen::Index{1} << q;
  const Eigen::Index sdim = Eigen::Index{1} << c.n;

  std::vector<JumpChannel> jumps;
  for (int i = 0; i < c.n; ++i) {
    jumps.push_back({1.0, pauli_decompose(kron(lowering_on(c.n, i), ket_bra(cdim, 0, 0)))});
  }
  for (int t = 0; t < T; ++t) {
    const ComplexMatrix& u = c.layers[static_cast<std::size_t>(t)];
    ComplexMatrix f = kron(u, ket_bra(cdim, t + 1, t)) + kron(u.adjoint(), ket_bra(cdim, t, t + 1));
    jumps.push_back({1.0, pauli_decompose(f)});
  }
  jumps.push_back({1.0, pauli_decompose(kron(ComplexMatrix::Identity(sdim, sdim), ket_bra(cdim, T, T)))});
  std::size_t padding = 0;
  for (Eigen::Index p = T + 1; p < cdim; ++p, ++padding) {
    jumps.push_back({1.0, pauli_decompose(kron(ComplexMatrix::Identity(sdim, sdim), ket_bra(cdim, 0, p)))});
  }
  ClockLme out{LmeSpec(total, PauliSum(total), std::move(jumps)), c.n, q, T + 1, static_cast<std::size_t>(c.n),
               static_cast<std::size_t>(T), 1, padding};
  return out;
}

DensityMatrix feynman_steady_state(const CircuitSpec& c) {
  const auto psi = c.states();
  const int T = c.depth();
  const int q = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(T))));
  const Eigen::Index cdim = Eigen::Index{1} << q;
  const Eigen::Index dim = (Eigen::Index{1} << c.n) * cdim;
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  for (int t = 0; t <= T; ++t) {
    rho += kron(psi[static_cast<std::size_t>(t)] * psi[static_cast<std::size_t>(t)].adjoint(), ket_bra(cdim, t, t));
  }
  rho /= static_cast<double>(T + 1);
  return DensityMatrix(std::move(rho));
}

PauliSum clock_observable(const ClockLme& clock) {
  const int total = clock.total_qubits();
  const Eigen::Index cdim = Eigen::Index{1} << clock.clock_qubits;
  ComplexMatrix z_first = kron(ComplexMatrix(to_matrix(PauliSum::from_terms({{"Z", 1.0}}))),
                               ComplexMatrix::Identity(Eigen::Index{1} << (clock.system_qubits - 1),
                                                       Eigen::Index{1} << (clock.system_qubits - 1)));
  const PauliSum row = pauli_decompose(kron(z_first, ket_bra(cdim, clock.depth(), clock.depth())));
  return tensor(row, PauliSum::identity(total));
}

double statevector_p1(const CircuitSpec& c) {
  const ComplexVector psi = c.states().back();
  const Eigen::Index half = psi.size() / 2;
  return psi.tail(half).squaredNorm();
}

double p1_exact(const DensityMatrix& rho_ss, const ClockLme& clock) {
  const double e = exact_expectation(clock_observable(clock), rho_ss);
  return (1.0 - clock.clock_dim * e) / 2.0;
}

SampledP1 p1_sampled(const DensityMatrix& rho_ss, const ClockLme& clock, std::int64_t shots, std::uint64_t seed) {
  MeasurementPlan plan{clock_observable(clock), shots / 2, shots - shots / 2, seed};
  SampledP1 out;
  out.estimate = estimate_expectation(plan, rho_ss, 1.0 / clock.clock_dim);
  out.p1 = (1.0 - clock.clock_dim * out.estimate.value) / 2.0;
  return out;
}

ComplexMatrix block_hamiltonian(const SuperOp& L) {
  require_dense(2 * L.n + 1, "block_hamiltonian");
  const Eigen::Index d = L.matrix.rows();
  ComplexMatrix h = ComplexMatrix::Zero(2 * d, 2 * d);
  h.topRightCorner(d, d) = L.matrix;
  h.bottomLeftCorner(d, d) = L.matrix.adjoint();
  return h;
}

SuperOp exchange_operator(int n) {
  if (n < 1) throw ValidationError("exchange_operator: n must be positive");
  require_dense(2 * n, "exchange_operator");
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix s = ComplexMatrix::Zero(dim * dim, dim * dim);
  for (Eigen::Index k = 0; k < dim * dim; ++k) s(detail::transpose_index(k, dim), k) = 1.0;
  return SuperOp(n, std::move(s));
}

PauliSum clifford_conjugate_observable(const PauliSum& a, const ComplexMatrix& u) {
  const Eigen::Index dim = Eigen::Index{1} << a.num_qubits();
  if (u.rows() != dim || u.cols() != dim) throw DimensionError("clifford_conjugate_observable: unitary size mismatch");
  if (!is_unitary(u, 1e-10)) throw ValidationError("clifford_conjugate_observable: U is not unitary");
  return pauli_decompose(u.adjoint() * to_matrix(a) * u);
}

}  // namespace lg
