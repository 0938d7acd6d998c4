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
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "lindground/random.hpp"
#include "lindground/substitute.hpp"

namespace lg {

std::int64_t bernoulli_count(double p, std::int64_t shots, std::uint64_t seed, std::uint64_t stream) {
  if (shots < 1) throw ValidationError("sampling: shots must be positive");
  CounterRng rng(seed, stream);
  std::int64_t hits = 0;
  for (std::int64_t s = 0; s < shots; ++s) hits += rng.bernoulli(p) ? 1 : 0;
  return hits;
}

namespace {

bool is_unitary(const PauliSum& q, double tol) {
  PauliSum d = q.adjoint() * q;
  d -= PauliSum::identity(q.num_qubits());
  return d.max_abs_coeff() <= tol;
}

double hadamard_probability(Complex tr) {
  if (std::abs(tr.real()) > 1.0 + 1e-9) {
    throw ConsistencyError("hadamard_sample: |Re Tr(Q rho rho)| = " + std::to_string(std::abs(tr.real())) +
                           " exceeds 1");
  }
  return std::clamp((1.0 + tr.real()) / 2.0, 0.0, 1.0);
}

double sample_mean(double p, std::int64_t shots, std::uint64_t seed, std::uint64_t stream) {
  const std::int64_t hits = bernoulli_count(p, shots, seed, stream);
  return 2.0 * static_cast<double>(hits) / static_cast<double>(shots) - 1.0;
}

}  // namespace

double hadamard_sample(const PauliSum& q, const DensityMatrix& rho, std::int64_t shots, std::uint64_t seed,
                       std::uint64_t stream) {
  if (q.num_qubits() != 2 * rho.num_qubits()) throw DimensionError("hadamard_sample: Q must act on rho (x) rho");
  if (!is_unitary(q, 1e-10)) throw ValidationError("hadamard_sample: Q is not unitary");
  const PauliExpectations ex(rho.matrix());
  return sample_mean(hadamard_probability(substitute_trace(q, ex)), shots, seed, stream);
}

double swap_sample(const DensityMatrix& rho, std::int64_t shots, std::uint64_t seed, std::uint64_t stream) {
  const double purity = std::clamp(rho.purity(), 0.0, 1.0);
  return sample_mean((1.0 + purity) / 2.0, shots, seed, stream);
}

// ---------------------------------------------------------------------------

void MeasurementPlan::validate() const {
  if (observable.empty()) throw ValidationError("MeasurementPlan: observable has no terms");
  if (observable.num_qubits() % 2 != 0) throw DimensionError("MeasurementPlan: observable must act on 2n qubits");
  for (const auto& [p, c] : observable) {
    if (std::abs(c.imag()) > 1e-12) throw ValidationError("MeasurementPlan: weight of " + p.str() + " is not real");
  }
  if (n_h < static_cast<std::int64_t>(observable.size())) {
    throw ValidationError("MeasurementPlan: n_h must give every term at least one shot");
  }
  if (n_s < 1) throw ValidationError("MeasurementPlan: n_s must be positive");
}

std::vector<std::int64_t> MeasurementPlan::shots_per_term() const {
  const auto m = static_cast<std::int64_t>(observable.size());
  std::vector<std::int64_t> shots(static_cast<std::size_t>(m), n_h / m);
  std::vector<std::size_t> order(shots.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> mag;
  for (const auto& [p, c] : observable) mag.push_back(std::abs(c));
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return mag[a] > mag[b]; });
  for (std::int64_t r = 0; r < n_h % m; ++r) ++shots[order[static_cast<std::size_t>(r)]];
  return shots;
}

double spectral_norm(const PauliSum& a) {
  const ComplexMatrix m = to_matrix(a);
  if (a.is_hermitian(1e-12)) {
    ComplexMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

EstimateReport estimate_expectation(const MeasurementPlan& plan, const DensityMatrix& rho, double gamma) {
  plan.validate();
  // Purities computed from pure states can exceed 1 by rounding.
  if (gamma > 1.0 && gamma <= 1.0 + 1e-12) gamma = 1.0;
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ValidationError("estimate_expectation: gamma must lie in (0, 1]");
  if (plan.observable.num_qubits() != 2 * rho.num_qubits()) {
    throw DimensionError("estimate_expectation: observable must act on 2n qubits for an n-qubit state");
  }
  const SubstitutedObservable b = substitute(plan.observable);
  const std::vector<std::int64_t> shots = plan.shots_per_term();
  const PauliExpectations ex(rho.matrix());

  EstimateReport rep;
  for (std::size_t i = 0; i < b.terms().size(); ++i) {
    const SubstituteTerm& t = b.terms()[i];
    const double p = hadamard_probability(substitute_trace(t.q(), ex));
    rep.numerator += t.weight.real() * sample_mean(p, shots[i], plan.seed, i);
  }
  rep.purity = swap_sample(rho, plan.n_s, plan.seed, kSwapStream);
  if (rep.purity <= 0.0) {
    throw IllConditionedRatioError("estimate_expectation: purity estimate " + std::to_string(rep.purity) +
                                   " is not positive; increase n_s");
  }
  rep.value = rep.numerator / rep.purity;

  const double norm2 = spectral_norm(plan.observable);
  const double m = static_cast<double>(plan.observable.size());
  const double g2 = plan.observable.coeff_norm_sq();
  const double gg = gamma * gamma;
  const auto ns = static_cast<double>(plan.n_s);
  const auto nh = static_cast<double>(plan.n_h);
  rep.bias_bound = norm2 / (gg * ns);
  rep.var_bound = norm2 * norm2 / (gg * ns) + m * g2 / (gg * nh);
  rep.mse_bound = rep.bias_bound * rep.bias_bound + rep.var_bound;
  rep.shots = plan.n_h + plan.n_s;
  return rep;
}

ShotBudget shot_budget(const PauliSum& a, double gamma, double eps) {
  // Purities computed from pure states can exceed 1 by rounding.
  if (gamma > 1.0 && gamma <= 1.0 + 1e-12) gamma = 1.0;
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ValidationError("shot_budget: gamma must lie in (0, 1]");
  if (!(eps > 0.0 && eps <= 1.0)) throw ValidationError("shot_budget: eps must lie in (0, 1]");
  if (a.empty()) throw ValidationError("shot_budget: degenerate (zero) observable");
  const double norm2 = spectral_norm(a);
  const double m = static_cast<double>(a.size());
  // m ||A||_F^2 / 4^n with ||A||_F^2 = 4^n sum |g_i|^2.
  const double raw = 2.0 / (gamma * gamma * eps * eps) * (norm2 * norm2 + m * a.coeff_norm_sq());
  const double half = std::ceil(raw / 2.0 * (1.0 - 1e-12));
  if (!(half < 4e18)) throw ValidationError("shot_budget: budget overflows");
  ShotBudget s;
  s.n_h = s.n_s = static_cast<std::int64_t>(half);
  s.n = s.n_h + s.n_s;
  return s;
}

}  // namespace lg
