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

#include "lindground/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "detail/dense.hpp"

namespace lg {

using detail::kron;

// ---------------------------------------------------------------------------
// Types

LmeSpec::LmeSpec(int n, PauliSum hamiltonian, std::vector<JumpChannel> jumps)
    : n_(n), hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jumps)) {
  if (n < 0) throw ValidationError("LmeSpec: negative qubit count");
  if (hamiltonian_.num_qubits() != n) {
    if (!hamiltonian_.empty()) throw ValidationError("LmeSpec: Hamiltonian width differs from n");
    hamiltonian_ = PauliSum(n);
  }
  if (!hamiltonian_.is_hermitian(1e-12)) throw ValidationError("LmeSpec: Hamiltonian is not Hermitian");
  for (std::size_t i = 0; i < jumps_.size(); ++i) {
    const auto& j = jumps_[i];
    if (!(j.rate >= 0.0) || !std::isfinite(j.rate)) {
      throw ValidationError("LmeSpec: jump " + std::to_string(i) + " has invalid rate " + std::to_string(j.rate));
    }
    if (j.op.num_qubits() != n) throw ValidationError("LmeSpec: jump " + std::to_string(i) + " width differs from n");
  }
}

SuperOp::SuperOp(int n_qubits, ComplexMatrix m) : n(n_qubits), matrix(std::move(m)) {
  const Eigen::Index dim = Eigen::Index{1} << (2 * n);
  if (matrix.rows() != dim || matrix.cols() != dim) {
    throw DimensionError("SuperOp: expected dimension 4^" + std::to_string(n));
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || !detail::is_power_of_two(m_.rows())) {
    throw ShapeError("DensityMatrix: matrix must be square with power-of-two dimension");
  }
  n_ = detail::log2_dim(m_.rows());
  if (!m_.allFinite()) throw ValidationError("DensityMatrix: non-finite entries");
  if (detail::max_abs(m_ - m_.adjoint()) > kHermitianTol) throw ValidationError("DensityMatrix: not Hermitian");
  Complex tr = m_.trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > kTraceTol) {
    throw ValidationError("DensityMatrix: trace " + std::to_string(tr.real()) + " is not 1");
  }
  ComplexMatrix h = 0.5 * (m_ + m_.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdSlack) {
    throw ValidationError("DensityMatrix: negative eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
  }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  double nrm = psi.norm();
  if (nrm == 0.0) throw NormalizationError("DensityMatrix::pure: zero vector");
  ComplexVector u = psi / nrm;
  return DensityMatrix(u * u.adjoint());
}

DensityMatrix DensityMatrix::basis_state(int n, std::uint64_t index) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (static_cast<Eigen::Index>(index) >= dim) throw DimensionError("DensityMatrix::basis_state: index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

// ---------------------------------------------------------------------------
// Vectorization

ComplexVector vec(const ComplexMatrix& m) {
  const Eigen::Index d = m.rows();
  ComplexVector v(d * m.cols());
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  }
  return v;
}

ComplexMatrix unvec(const ComplexVector& v) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (d * d != v.size()) throw ShapeError("unvec: length is not a perfect square");
  ComplexMatrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = v(i * d + j);
  }
  return m;
}

DmVector vectorize(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || !detail::is_power_of_two(m.rows())) {
    throw ShapeError("vectorize: matrix must be square with power-of-two dimension");
  }
  double c = m.norm();
  if (!(c > 0.0)) throw NormalizationError("vectorize: zero matrix has no normalized vectorization");
  return DmVector{detail::log2_dim(m.rows()), vec(m) / c, c};
}

DmVector vectorize(const DensityMatrix& rho) { return vectorize(rho.matrix()); }

ComplexMatrix devectorize(const DmVector& v) { return unvec(v.amplitudes * v.norm_factor); }

// ---------------------------------------------------------------------------
// Liouvillian construction

SuperOp build_liouvillian(const LmeSpec& spec) {
  const int n = spec.num_qubits();
  require_dense(2 * n, "build_liouvillian");
  const Eigen::Index d = Eigen::Index{1} << n;
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const ComplexMatrix h = to_matrix(spec.hamiltonian());
  const Complex minus_i{0.0, -1.0};

  ComplexMatrix L = minus_i * (kron(h, id) - kron(id, h.transpose()));
  for (const auto& jump : spec.jumps()) {
    if (jump.rate == 0.0) continue;
    const ComplexMatrix f = to_matrix(jump.op);
    const ComplexMatrix fdf = f.adjoint() * f;
    L += jump.rate * (kron(f, f.conjugate()) - 0.5 * kron(fdf, id) - 0.5 * kron(id, fdf.transpose()));
  }
  return SuperOp(n, std::move(L));
}

PauliSum liouvillian_pauli(const LmeSpec& spec) {
  const int n = spec.num_qubits();
  const PauliSum id = PauliSum::identity(n);
  const PauliSum& h = spec.hamiltonian();
  PauliSum L = Complex{0.0, -1.0} * (tensor(h, id) - tensor(id, h.transpose()));
  for (const auto& jump : spec.jumps()) {
    if (jump.rate == 0.0) continue;
    const PauliSum& f = jump.op;
    const PauliSum fdf = f.adjoint() * f;
    L += jump.rate * (tensor(f, f.conjugate()) - 0.5 * tensor(fdf, id) - 0.5 * tensor(id, fdf.transpose()));
  }
  return L;
}

namespace {

struct JumpParts {
  PauliSum f, fd, ft, fc;
  PauliSum fdf;   // F†F
  PauliSum ftfc;  // FᵀF*
};

JumpParts split_jump(const PauliSum& f) {
  JumpParts p{f, f.adjoint(), f.transpose(), f.conjugate(), PauliSum(f.num_qubits()), PauliSum(f.num_qubits())};
  p.fdf = p.fd * p.f;
  p.ftfc = p.ft * p.fc;
  return p;
}

}  // namespace

std::vector<LdlComponent> ldl_components(int n, const std::vector<PauliSum>& hamiltonian_terms,
                                         const std::vector<PauliSum>& jump_ops) {
  for (const auto& h : hamiltonian_terms) {
    if (h.num_qubits() != n) throw DimensionError("ldl_components: Hamiltonian term width differs from n");
  }
  for (const auto& f : jump_ops) {
    if (f.num_qubits() != n) throw DimensionError("ldl_components: jump width differs from n");
  }
  const PauliSum id = PauliSum::identity(n);
  const Complex i{0.0, 1.0};
  const int nh = static_cast<int>(hamiltonian_terms.size());

  std::vector<PauliSum> hc, ht;
  for (const auto& h : hamiltonian_terms) {
    hc.push_back(h.conjugate());
    ht.push_back(h.transpose());
  }
  std::vector<JumpParts> parts;
  for (const auto& f : jump_ops) parts.push_back(split_jump(f));

  std::vector<LdlComponent> out;
  auto emit = [&](int u, int v, PauliSum op) {
    if (!op.empty()) out.push_back({u, v, std::move(op)});
  };

  // H² ⊗ I + I ⊗ (H*)² - 2 H ⊗ H*, split over ordered pairs of terms.
  for (int a = 0; a < nh; ++a) {
    for (int b = 0; b < nh; ++b) {
      const PauliSum& ha = hamiltonian_terms[a];
      const PauliSum& hb = hamiltonian_terms[b];
      emit(a, b, tensor(ha * hb, id) + tensor(id, hc[a] * hc[b]) - 2.0 * tensor(ha, hc[b]));
    }
  }
  // Terms linear in the rates.
  for (int a = 0; a < nh; ++a) {
    const PauliSum& h = hamiltonian_terms[a];
    for (std::size_t al = 0; al < parts.size(); ++al) {
      const JumpParts& f = parts[al];
      PauliSum lin = i * tensor(h * f.f, f.fc) - i * tensor(f.fd * h, f.ft) + i * tensor(f.fd, f.ft * ht[a]) -
                     i * tensor(f.f, hc[a] * f.fc) + (0.5 * i) * tensor(f.fdf * h - h * f.fdf, id) +
                     (0.5 * i) * tensor(id, hc[a] * f.ftfc - f.ftfc * hc[a]);
      emit(a, nh + static_cast<int>(al), std::move(lin));
    }
  }
  // Terms quadratic in the rates.
  for (std::size_t al = 0; al < parts.size(); ++al) {
    for (std::size_t be = 0; be < parts.size(); ++be) {
      const JumpParts& a = parts[al];
      const JumpParts& b = parts[be];
      PauliSum quad = tensor(a.fd * b.f, a.ft * b.fc) - 0.5 * tensor(a.fd, a.ft * b.ftfc) -
                      0.5 * tensor(b.f, a.ftfc * b.fc) - 0.5 * tensor(a.fd * b.fdf, a.ft) -
                      0.5 * tensor(a.fdf * b.f, b.fc) + 0.25 * tensor(a.fdf, b.ftfc) + 0.25 * tensor(b.fdf, a.ftfc) +
                      0.25 * tensor(id, a.ftfc * b.ftfc) + 0.25 * tensor(a.fdf * b.fdf, id);
      emit(nh + static_cast<int>(al), nh + static_cast<int>(be), std::move(quad));
    }
  }
  return out;
}

PauliSum ldl_symbolic(const LmeSpec& spec) {
  const int n = spec.num_qubits();
  std::vector<PauliSum> ops;
  std::vector<double> x = {1.0};
  for (const auto& jump : spec.jumps()) {
    if (jump.rate == 0.0) continue;
    ops.push_back(jump.op);
    x.push_back(jump.rate);
  }
  PauliSum out(2 * n);
  for (const auto& c : ldl_components(n, {spec.hamiltonian()}, ops)) out += (x[c.u] * x[c.v]) * c.op;
  return out;
}

LdlResult build_ldl(const LmeSpec& spec) {
  SuperOp L = build_liouvillian(spec);
  LdlResult r;
  r.dense = SuperOp(spec.num_qubits(), L.matrix.adjoint() * L.matrix);
  r.pauli = ldl_symbolic(spec);
  PauliSum decomposed = pauli_decompose(r.dense.matrix);
  r.cross_check_error = r.pauli.max_abs_diff(decomposed);
  const double scale = std::max(1.0, decomposed.max_abs_coeff());
  if (r.cross_check_error > 1e-10 * scale) {
    throw ConsistencyError("build_ldl: symbolic expansion disagrees with dense product by " +
                           std::to_string(r.cross_check_error));
  }
  r.exchange_residual = exchange_symmetry_residual(r.pauli);
  return r;
}

// ---------------------------------------------------------------------------
// Steady states

namespace {

// Frobenius inner product restricted to Hermitian matrices (always real).
double hs_dot(const ComplexMatrix& a, const ComplexMatrix& b) { return (a.adjoint() * b).trace().real(); }

// Hermitize, clip negative eigenvalues, renormalize the trace.
ComplexMatrix repair_state(const ComplexMatrix& m) {
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  ComplexMatrix out = es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  return out / out.trace().real();
}

}  // namespace

SteadyStates steady_state(const SuperOp& L) {
  const int n = L.n;
  Eigen::BDCSVD<ComplexMatrix> svd(L.matrix, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  std::vector<ComplexVector> null_vectors;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) <= kNullTol * smax || smax == 0.0) null_vectors.push_back(svd.matrixV().col(k));
  }
  if (null_vectors.empty()) throw NoSteadyStateError("steady_state: the Liouvillian has no null space");

  SteadyStates out;
  out.dim = null_vectors.size();

  // The null space is closed under the Hermitian-conjugate map, so the
  // Hermitian and anti-Hermitian parts of each vector span it over the reals.
  std::vector<ComplexMatrix> candidates;
  for (const auto& v : null_vectors) {
    ComplexMatrix m = unvec(v);
    candidates.push_back(0.5 * (m + m.adjoint()));
    candidates.push_back(Complex{0.0, -0.5} * (m - m.adjoint()));
  }
  // Put the trace-carrying direction first so the remaining elements are traceless.
  const Eigen::Index d = Eigen::Index{1} << n;
  ComplexMatrix trace_dir = ComplexMatrix::Zero(d, d);
  for (const auto& c : candidates) trace_dir += c.trace().real() * c;
  if (trace_dir.norm() > 1e-8) candidates.insert(candidates.begin(), trace_dir);

  for (auto c : candidates) {
    for (const auto& b : out.basis) c -= hs_dot(b, c) * b;
    for (const auto& b : out.basis) c -= hs_dot(b, c) * b;
    double nrm = c.norm();
    if (nrm > 1e-6 && out.basis.size() < out.dim) out.basis.push_back(c / nrm);
  }

  for (const auto& b : out.basis) {
    const double tr = b.trace().real();
    if (std::abs(tr) < 1e-8) {
      out.degeneracy_warning = true;
      continue;
    }
    ComplexMatrix raw = b / tr;
    ComplexMatrix fixed = repair_state(raw);
    double change = (fixed - raw).norm();
    out.repair_magnitude = std::max(out.repair_magnitude, change);
    if (change > 1e-8) {
      out.degeneracy_warning = true;
      continue;
    }
    out.states.emplace_back(std::move(fixed));
  }
  if (out.dim > 1) out.degeneracy_warning = true;
  return out;
}

// ---------------------------------------------------------------------------
// Dynamics

namespace {

// One classical RK4 step of dv/dt = L v is the matrix polynomial
// I + hL + (hL)^2/2 + (hL)^3/6 + (hL)^4/24.
ComplexMatrix rk4_propagator(const ComplexMatrix& L, double h) {
  const Eigen::Index dim = L.rows();
  ComplexMatrix hl = h * L;
  ComplexMatrix term = ComplexMatrix::Identity(dim, dim);
  ComplexMatrix p = term;
  for (int k = 1; k <= 4; ++k) {
    term = (term * hl) / static_cast<double>(k);
    p += term;
  }
  return p;
}

ComplexVector propagate(const SuperOp& L, const ComplexVector& v0, double t, int steps) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("evolve: time must be finite and non-negative");
  if (steps < 1) throw ValidationError("evolve: steps must be positive");
  if (t == 0.0) return v0;
  const ComplexMatrix p = rk4_propagator(L.matrix, t / steps);
  ComplexVector v = v0;
  if (steps > p.rows()) {
    // Binary powering is cheaper than `steps` matrix-vector products here.
    ComplexMatrix base = p;
    unsigned remaining = static_cast<unsigned>(steps);
    while (remaining > 0) {
      if (remaining & 1U) v = base * v;
      remaining >>= 1U;
      if (remaining > 0) base = base * base;
      if (!base.allFinite()) break;
    }
  } else {
    for (int s = 0; s < steps; ++s) v = p * v;
  }
  if (!v.allFinite()) {
    throw InstabilityError("evolve: non-finite values; increase the number of steps");
  }
  return v;
}

}  // namespace

DensityMatrix evolve(const SuperOp& L, const DensityMatrix& rho0, double t, int steps) {
  if (rho0.num_qubits() != L.n) throw DimensionError("evolve: state and generator sizes differ");
  ComplexMatrix m = unvec(propagate(L, vec(rho0.matrix()), t, steps));
  const double trace_drift = std::abs(m.trace() - Complex{1.0, 0.0});
  const double herm_drift = detail::max_abs(m - m.adjoint());
  if (trace_drift > 1e-8 || herm_drift > 1e-8) {
    throw InstabilityError("evolve: trace/Hermiticity drift above 1e-8; increase the number of steps");
  }
  m = 0.5 * (m + m.adjoint());
  m /= m.trace();
  try {
    return DensityMatrix(std::move(m));
  } catch (const ValidationError& e) {
    throw InstabilityError(std::string("evolve: unphysical result (") + e.what() + "); increase the number of steps");
  }
}

double evolution_convergence(const SuperOp& L, const DensityMatrix& rho0, double t, int steps) {
  ComplexVector coarse = propagate(L, vec(rho0.matrix()), t, steps);
  ComplexVector fine = propagate(L, vec(rho0.matrix()), t, 2 * steps);
  return (coarse - fine).cwiseAbs().maxCoeff();
}

int suggested_steps(const SuperOp& L, double t) {
  const double norm1 = L.matrix.cwiseAbs().colwise().sum().maxCoeff();
  const double s = std::ceil(t * norm1 / 0.05);
  return static_cast<int>(std::clamp(s, 1.0, 1e9));
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix d = a - b;
  d = 0.5 * (d + d.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(d, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double dm_overlap(const ComplexMatrix& a, const ComplexMatrix& b) {
  return std::abs((a.adjoint() * b).trace()) / (a.norm() * b.norm());
}

}  // namespace lg
