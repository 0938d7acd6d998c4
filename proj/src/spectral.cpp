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

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "detail/dense.hpp"
#include "lindground/encodings.hpp"
#include "lindground/lindblad.hpp"
#include "lindground/random.hpp"

namespace lg {

namespace {

constexpr double kRealPartTol = 1e-9;
constexpr double kConditionLimit = 1e8;

std::size_t null_dimension(const ComplexMatrix& m) {
  Eigen::BDCSVD<ComplexMatrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return static_cast<std::size_t>(m.cols());
  std::size_t count = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) <= kNullTol * sv(0)) ++count;
  }
  return count;
}

double trace_norm(const ComplexMatrix& m) {
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

// Evaluates e^{Lt} v either through an eigendecomposition (when well
// conditioned) or through the dense matrix exponential.
class Propagator {
 public:
  explicit Propagator(const ComplexMatrix& L) : L_(L) {
    Eigen::ComplexEigenSolver<ComplexMatrix> es(L);
    if (es.info() == Eigen::Success) adopt(es, eigenvector_condition(es.eigenvectors()));
  }
  Propagator(const ComplexMatrix& L, const Eigen::ComplexEigenSolver<ComplexMatrix>& es, double cond) : L_(L) {
    if (es.info() == Eigen::Success) adopt(es, cond);
  }

  static double eigenvector_condition(const ComplexMatrix& v) {
    Eigen::BDCSVD<ComplexMatrix> svd(v);
    const auto& sv = svd.singularValues();
    return sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
  }

  ComplexVector apply(const ComplexVector& v, double t) const {
    if (use_eigen_) {
      ComplexVector c = lu_.solve(v);
      for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::exp(eigenvalues_(k) * t);
      return vectors_ * c;
    }
    ComplexMatrix lt = L_ * t;
    ComplexMatrix e = lt.exp();
    return e * v;
  }

 private:
  const ComplexMatrix& L_;
  bool use_eigen_ = false;
  ComplexVector eigenvalues_;
  ComplexMatrix vectors_;
  Eigen::PartialPivLU<ComplexMatrix> lu_;

  void adopt(const Eigen::ComplexEigenSolver<ComplexMatrix>& es, double cond) {
    if (!(cond < kConditionLimit)) return;
    eigenvalues_ = es.eigenvalues();
    vectors_ = es.eigenvectors();
    lu_.compute(vectors_);
    use_eigen_ = true;
  }
};

std::optional<double> halving_time_with(const Propagator& prop, const ComplexMatrix& L, const ComplexMatrix& delta) {
  const double d0 = trace_norm(delta);
  if (d0 == 0.0) return 0.0;
  const ComplexVector v0 = vec(delta);
  auto excess = [&](double t) { return trace_norm(unvec(prop.apply(v0, t))) - 0.5 * d0; };

  const double norm1 = L.cwiseAbs().colwise().sum().maxCoeff();
  if (norm1 == 0.0) return std::nullopt;
  // Walk a geometric grid to find the first crossing, then bisect inside it.
  const double ratio = std::pow(2.0, 0.25);
  double lo = 0.0;
  double hi = 0.01 / norm1;
  bool found = false;
  for (int k = 0; k < 400; ++k) {
    if (excess(hi) <= 0.0) {
      found = true;
      break;
    }
    lo = hi;
    hi *= ratio;
  }
  if (!found) return std::nullopt;
  for (int it = 0; it < 100 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) <= 0.0 ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

std::optional<double> halving_time(const SuperOp& L, const ComplexMatrix& delta) {
  Propagator prop(L.matrix);
  return halving_time_with(prop, L.matrix, delta);
}

SpectralReport spectral_diagnostics(const SuperOp& L, int mixing_probes, std::uint64_t seed) {
  SpectralReport rep;
  Eigen::ComplexEigenSolver<ComplexMatrix> es(L.matrix);
  const auto& ev = es.eigenvalues();
  rep.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() < b.imag();
  });
  rep.max_real_part = -INFINITY;
  for (const auto& e : rep.eigenvalues) {
    rep.max_real_part = std::max(rep.max_real_part, e.real());
    const double re = std::abs(e.real());
    if (re > kRealPartTol && (!rep.gap || re < *rep.gap)) rep.gap = re;
  }
  rep.steady_dim = null_dimension(L.matrix);

  rep.eigenvector_condition = Propagator::eigenvector_condition(es.eigenvectors());
  rep.diagonalizable = rep.eigenvector_condition < kConditionLimit;

  if (mixing_probes > 0) {
    const Propagator prop(L.matrix, es, rep.eigenvector_condition);
    std::optional<double> worst = 0.0;
    for (int p = 0; p < mixing_probes && worst; ++p) {
      CounterRng rng(seed, static_cast<std::uint64_t>(p));
      ComplexVector a = random_state(L.n, rng);
      ComplexVector b = random_state(L.n, rng);
      ComplexMatrix delta = a * a.adjoint() - b * b.adjoint();
      auto t = halving_time_with(prop, L.matrix, delta);
      if (!t) {
        worst.reset();
      } else {
        worst = std::max(*worst, *t);
      }
    }
    rep.mixing_time_estimate = worst;
  }
  return rep;
}

double runtime_bound(const RelaxationScale& scale, int n, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("runtime_bound: eps must lie in (0, 1)");
  if (n < 0) throw ValidationError("runtime_bound: negative qubit count");
  return std::visit(
      [&](const auto& s) -> double {
        if (!(s.value > 0.0) || !std::isfinite(s.value)) {
          throw ValidationError("runtime_bound: relaxation scale must be positive");
        }
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SpectralGap>) {
          return (std::numbers::ln2 * n / 2.0 + 0.5 * std::log(1.0 / eps)) / s.value;
        } else {
          return s.value * (n + std::log2(1.0 / eps)) / 2.0;
        }
      },
      scale);
}

ComplexVector apply_st(const ComplexVector& v, int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (v.size() != dim * dim) throw DimensionError("apply_st: vector length is not 4^n");
  ComplexVector out(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) out(detail::transpose_index(k, dim)) = std::conj(v(k));
  return out;
}

LdlPropertyReport verify_ldl_properties(const SuperOp& ldl, std::optional<std::size_t> steady_dim) {
  LdlPropertyReport rep;
  const ComplexMatrix& m = ldl.matrix;
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  rep.min_eigenvalue = ev(0);
  rep.ground_energy = ev(0);
  const double top = std::max(1.0, std::abs(ev(ev.size() - 1)));
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (std::abs(ev(k)) <= 1e-8 * top) ++rep.ground_dim;
  }

  // (ST) M v = S conj(M v) = S conj(M) conj(v) and M (ST) v = M S conj(v),
  // so the commutator vanishes iff M S = S conj(M).
  const SuperOp s = exchange_operator(ldl.n);
  rep.st_commutator_norm = (m * s.matrix - s.matrix * m.conjugate()).norm();

  rep.spectrum_nonnegative = rep.min_eigenvalue >= -1e-9;
  rep.ground_energy_zero = std::abs(rep.ground_energy) < 1e-8;
  rep.st_symmetric = rep.st_commutator_norm < 1e-9;
  rep.steady_dim = steady_dim;
  if (steady_dim) rep.ground_matches_steady = rep.ground_dim == *steady_dim;
  return rep;
}

}  // namespace lg
