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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "substitute_matrices.hpp"
#include "lindground/cli.hpp"
#include "lindground/encodings.hpp"
#include "lindground/format.hpp"
#include "lindground/substitute.hpp"
#include "lindground/xl.hpp"
#include "oracles.hpp"
#include "substitute_rows.hpp"

using namespace lg;
using namespace lgtest;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

bool same_multiset(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return false;
  for (const Complex& x : a) {
    auto it = std::find(b.begin(), b.end(), x);
    if (it == b.end()) return false;
    b.erase(it);
  }
  return true;
}

// 1. Substitute table reproduction.
Outcome table_reproduction() {
  const auto t0 = Clock::now();
  const SubstituteTable t = build_table();
  double coeff_err = 0, matrix_err = 0, unitary_err = 0;
  bool spectra = true;
  for (const auto& row : substitute_rows()) {
    const SubstituteEntry& e = t.lookup(PauliString::parse(row.a));
    PauliSum want(2);
    for (const auto& [w, c] : row.b) want.add(PauliString::parse(w), c);
    coeff_err = std::max(coeff_err, e.b.max_abs_diff(want));
    spectra = spectra && same_multiset(e.eigenvalues, row.spectrum);
    const ComplexMatrix b = sum_matrix(e.b);
    unitary_err = std::max(unitary_err, (b.adjoint() * b - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff());
  }
  for (const auto& ref : kReferenceMatrices) {
    const SubstituteEntry& e = t.lookup(PauliString::parse(ref.a));
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        matrix_err = std::max(matrix_err, std::abs(e.matrix(r, c) - ref.matrix[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]));
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = coeff_err <= 1e-12 && matrix_err <= 1e-12 && spectra && unitary_err <= 1e-12 && secs < 1.0;
  o.detail = "coeff err " + fmt(coeff_err) + ", matrix err " + fmt(matrix_err) + ", spectra " +
             (spectra ? "exact" : "MISMATCH") + ", unitarity err " + fmt(unitary_err) + ", " + fmt(secs) + " s";
  return o;
}

// 2. Ratio identity against the direct vectorized expectation.
Outcome ratio_identity() {
  const auto t0 = Clock::now();
  CounterRng rng(0xA2, 0);
  double worst = 0;
  for (int s = 0; s < 500; ++s) {
    const int n = 1 + s % 3;
    const ComplexMatrix rho = random_density_matrix(n, rng, 1 + static_cast<int>(rng.next_u64() % (1u << n)));
    const PauliSum a = random_pauli_sum(2 * n, 1 + static_cast<int>(rng.next_u64() % 6), rng, true);
    worst = std::max(worst, std::abs(exact_expectation(a, rho) - ratio_oracle(sum_matrix(a), rho)));
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-11 && secs < 30.0, "max error " + fmt(worst) + " over 500 pairs, " + fmt(secs) + " s"};
}

// 3. Steady/ground correspondence and L†L properties.
Outcome steady_ground() {
  const auto t0 = Clock::now();
  CounterRng rng(0xA3, 0);
  double worst_energy = 0, worst_overlap = 1, worst_comm = 0, min_eig = 1;
  int accepted = 0, attempts = 0;
  while (accepted < 50 && attempts < 500) {
    ++attempts;
    const int n = 1 + attempts % 2;
    const LmeSpec spec = random_spec(n, 1 + static_cast<int>(rng.next_u64() % 3), rng);
    const SuperOp L = build_liouvillian(spec);
    const SteadyStates ss = steady_state(L);
    if (ss.dim != 1) continue;
    ++accepted;
    const LdlResult ldl = build_ldl(spec);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(ldl.dense.matrix);
    const ComplexVector ground = es.eigenvectors().col(0);
    const ComplexVector vss = vectorize(ss.states[0]).amplitudes;
    const LdlPropertyReport props = verify_ldl_properties(ldl.dense, 1);
    worst_energy = std::max(worst_energy, std::abs(es.eigenvalues()(0)));
    worst_overlap = std::min(worst_overlap, std::abs(ground.dot(vss)));
    worst_comm = std::max(worst_comm, props.st_commutator_norm);
    min_eig = std::min(min_eig, props.min_eigenvalue);
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = accepted == 50 && worst_energy < 1e-8 && worst_overlap > 1 - 1e-7 && worst_comm < 1e-9 && min_eig >= -1e-9 &&
           secs < 60.0;
  o.detail = std::to_string(accepted) + " specs, ground energy " + fmt(worst_energy) + ", 1-overlap " + fmt(1 - worst_overlap) +
             ", ST commutator " + fmt(worst_comm) + ", min eigenvalue " + fmt(min_eig) + ", " + fmt(secs) + " s";
  return o;
}

// 4. Symbolic L†L against the dense route.
Outcome dual_path_ldl() {
  CounterRng rng(0xA4, 0);
  double worst_lib = 0, worst_oracle = 0;
  for (int s = 0; s < 50; ++s) {
    const int n = 1 + s % 2;
    const LmeSpec spec = random_spec(n, 1 + s % 3, rng);
    const PauliSum sym = ldl_symbolic(spec);
    const ComplexMatrix L = build_liouvillian(spec).matrix;
    worst_lib = std::max(worst_lib, sym.max_abs_diff(pauli_decompose(L.adjoint() * L)));
    const ComplexMatrix Lo = liouvillian_oracle(spec);
    worst_oracle = std::max(worst_oracle, coeff_error(sym, Lo.adjoint() * Lo));
  }
  return {worst_lib < 1e-10 && worst_oracle < 1e-10,
          "max coeff err " + fmt(worst_lib) + " (library dense), " + fmt(worst_oracle) + " (test oracle)"};
}

// 5. Estimator calibration at eps = 0.05.
Outcome estimator_calibration() {
  const auto t0 = Clock::now();
  struct Case {
    std::string name;
    DensityMatrix rho;
    PauliSum a;
  };
  CounterRng rng(0xA5, 0);
  std::vector<Case> cases;
  const LmeSpec driven(1, PauliSum::from_terms({{"X", 0.5}}), {{1.0, sigma_minus()}});
  cases.push_back({"driven-damped", steady_state(build_liouvillian(driven)).states[0],
                   PauliSum::from_terms({{"ZZ", 1.0}, {"XY", 0.5}})});
  const LmeSpec mixed(1, PauliSum::from_terms({{"X", 0.4}}),
                      {{0.6, sigma_minus()}, {0.3, PauliSum::from_terms({{"Z", 1.0}})}});
  cases.push_back({"mixed-1q", steady_state(build_liouvillian(mixed)).states[0],
                   PauliSum::from_terms({{"XX", 0.6}, {"ZI", -0.4}})});
  const LmeSpec two = random_spec(2, 2, rng);
  cases.push_back({"random-2q", steady_state(build_liouvillian(two)).states[0],
                   PauliSum::from_terms({{"ZIZI", 0.5}, {"XXII", 0.3}, {"IYIY", -0.2}})});

  bool pass = true;
  std::string detail;
  for (const auto& c : cases) {
    const double gamma = c.rho.purity();
    const double truth = exact_expectation(c.a, c.rho);
    const ShotBudget b = shot_budget(c.a, gamma, 0.05);
    double se = 0, bound = 0;
    for (int s = 0; s < 200; ++s) {
      MeasurementPlan plan{c.a, b.n_h, b.n_s, static_cast<std::uint64_t>(s)};
      const EstimateReport r = estimate_expectation(plan, c.rho, gamma);
      se += (r.value - truth) * (r.value - truth);
      bound = r.mse_bound;
    }
    const double mse = se / 200;
    const bool ok = mse <= 2 * bound && std::sqrt(mse) <= 0.05;
    pass = pass && ok;
    detail += c.name + ": mse " + fmt(mse) + " vs bound " + fmt(bound) + ", rmse " + fmt(std::sqrt(mse)) + "; ";
  }
  const double secs = seconds_since(t0);
  return {pass && secs < 300.0, detail + fmt(secs) + " s"};
}

// 6. Sufficiency of the relaxation-time bounds.
Outcome runtime_sufficiency() {
  CounterRng rng(0xA6, 0);
  double worst_h = 1, worst_nh = 1;
  int herm = 0, nonherm = 0, attempts = 0;
  while ((herm < 10 || nonherm < 5) && attempts < 200) {
    ++attempts;
    const int n = 1 + attempts % 2;
    const bool want_herm = herm < 10;
    LmeSpec spec = random_spec(n, 2, rng);
    if (want_herm) {
      std::vector<JumpChannel> jumps;
      for (int a = 0; a < 2; ++a) jumps.push_back({0.2 + rng.uniform(), random_pauli_sum(n, 2, rng, true)});
      spec = LmeSpec(n, PauliSum(n), jumps);
    }
    const SuperOp L = build_liouvillian(spec);
    const SteadyStates ss = steady_state(L);
    if (ss.dim != 1) continue;
    const SpectralReport rep = spectral_diagnostics(L, 8, 0xA6 + static_cast<std::uint64_t>(attempts));
    double t = 0;
    if (want_herm) {
      if (!rep.gap) continue;
      t = runtime_bound(SpectralGap{*rep.gap}, n, 0.01);
    } else {
      if (!rep.mixing_time_estimate) continue;
      t = runtime_bound(MixingTime{*rep.mixing_time_estimate}, n, 0.01);
    }
    const DensityMatrix rho0 = DensityMatrix::pure(random_state(n, rng));
    const DensityMatrix rho = evolve(L, rho0, t, suggested_steps(L, t));
    const double ov = dm_overlap(rho.matrix(), ss.states[0].matrix());
    if (want_herm) {
      ++herm;
      worst_h = std::min(worst_h, ov);
    } else {
      ++nonherm;
      worst_nh = std::min(worst_nh, ov);
    }
  }
  return {herm == 10 && nonherm == 5 && worst_h >= 0.99 && worst_nh >= 0.99,
          std::to_string(herm) + " Hermitian (min overlap " + fmt(worst_h) + "), " + std::to_string(nonherm) +
              " non-Hermitian (min overlap " + fmt(worst_nh) + ")"};
}

// 7. Asymptotic equation/unknown ratios.
Outcome asymptotic_ratios() {
  const AsymptoticRatio r4 = asymptotic_ratio(4), r6 = asymptotic_ratio(6);
  const bool pass = std::abs(r4.limit - 0.031) <= 0.002 && std::abs(r6.limit - 0.015) <= 0.002 &&
                    std::abs(r4.exponent - 5.678) <= 0.05 && std::abs(r6.exponent - 8.111) <= 0.05;
  return {pass, "r(4) " + fmt(r4.limit) + " (1/sqrt " + fmt(r4.exponent) + "), r(6) " + fmt(r6.limit) + " (1/sqrt " +
                    fmt(r6.exponent) + ")"};
}

// 8. XXZ inverse recovery and runtime scaling.
Outcome xxz_recovery() {
  const auto t0 = Clock::now();
  double worst_param = 0, worst_res = 0;
  bool solved = true;
  for (int N = 5; N <= 11; ++N) {
    const LiouvillianAnsatz an = LiouvillianAnsatz::xxz_chain(N);
    for (int rep = 0; rep < 5; ++rep) {
      CounterRng rng(0xA8, static_cast<std::uint64_t>(N * 100 + rep));
      std::vector<double> h(an.hamiltonian().size()), r(an.jumps().size());
      for (double& v : h) v = rng.uniform();
      for (double& v : r) v = rng.uniform();
      const PauliSum target = ldl_symbolic(an.instantiate(h, r));
      const XlResult res = xl_solve(build_mq_system(an, target).system);
      if (res.status != XlStatus::Solved) {
        solved = false;
        continue;
      }
      for (std::size_t i = 0; i < h.size(); ++i) worst_param = std::max(worst_param, std::abs(res.assignment[i] - h[i]));
      for (std::size_t i = 0; i < r.size(); ++i) worst_param = std::max(worst_param, std::abs(res.assignment[h.size() + i] - r[i]));
      worst_res = std::max(worst_res, verify_solution(an, res.assignment, target));
    }
  }

  // Runtime scaling from the benchmark command's summary CSV.
  const auto dir = std::filesystem::temp_directory_path() / "lg_acceptance_bench";
  std::filesystem::remove_all(dir);
  cli::RunConfig cfg;
  cfg.n_min = 5;
  cfg.n_max = 13;
  cfg.reps = 5;
  cfg.out = dir.string();
  std::ostringstream sink;
  const int code = cli::cmd_xl_bench(cfg, sink, sink);
  std::ifstream summary(dir / "xl_bench_summary.csv");
  std::string line;
  std::getline(summary, line);
  std::vector<double> lx, ly;
  while (std::getline(summary, line)) {
    std::stringstream ls(line);
    std::vector<std::string> cells;
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    lx.push_back(std::log(std::stod(cells[0])));
    ly.push_back(std::log(std::stod(cells[2])));
  }
  double slope = NAN;
  if (lx.size() >= 2) {
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sx += lx[i];
      sy += ly[i];
      sxx += lx[i] * lx[i];
      sxy += lx[i] * ly[i];
    }
    slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = solved && worst_param < 1e-6 && worst_res < 1e-8 && code == 0 && lx.size() == 9 && slope < 9 && secs < 1800;
  o.detail = std::string(solved ? "all 35 solved" : "UNSOLVED instance") + ", max param err " + fmt(worst_param) +
             ", max residual " + fmt(worst_res) + ", log-log slope " + fmt(slope) + ", " + fmt(secs) + " s";
  return o;
}

// 9. Circuit-encoding pipeline.
Outcome circuit_pipeline() {
  CounterRng rng(0xA9, 0);
  const std::vector<std::pair<int, int>> shapes{{1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}};
  double worst_exact = 0, worst_purity = 0, worst_z = 0;
  bool unique = true;
  for (const auto& [n, T] : shapes) {
    CircuitSpec c;
    c.n = n;
    for (int t = 0; t < T; ++t) c.layers.push_back(random_unitary(Eigen::Index{1} << n, rng));
    const ClockLme clock = circuit_to_lme(c);
    const SteadyStates ss = steady_state(build_liouvillian(clock.spec));
    unique = unique && ss.dim == 1;
    const DensityMatrix& rho = ss.states.at(0);
    const double sv = statevector_p1(c);
    worst_exact = std::max(worst_exact, std::abs(p1_exact(rho, clock) - sv));
    worst_purity = std::max(worst_purity, std::abs(rho.purity() - 1.0 / (T + 1)));
    double sum = 0, sum2 = 0;
    for (int s = 0; s < 50; ++s) {
      const double p = p1_sampled(rho, clock, 100000, static_cast<std::uint64_t>(s)).p1;
      sum += p;
      sum2 += p * p;
    }
    const double mean = sum / 50;
    const double sd = std::sqrt(std::max(0.0, (sum2 - 50 * mean * mean) / 49));
    const double sigma = sd / std::sqrt(50.0);
    worst_z = std::max(worst_z, std::abs(mean - sv) / sigma);
  }
  return {unique && worst_exact < 1e-10 && worst_z <= 3 && worst_purity < 1e-12,
          "exact p1 err " + fmt(worst_exact) + ", sampled |z| max " + fmt(worst_z) + ", purity err " + fmt(worst_purity)};
}

// 10. Bell-amplitude identity.
Outcome bell_identity() {
  CounterRng rng(0xAA, 0);
  double worst = 0;
  for (int s = 0; s < 200; ++s) {
    const int n = 1 + s % 3;
    const ComplexMatrix rho = random_density_matrix(n, rng);
    const auto words = all_words(n);
    const std::string w = words[static_cast<std::size_t>(rng.next_u64() % words.size())];
    const ComplexVector b = flatten(word_matrix(w)) / std::sqrt(static_cast<double>(rho.rows()));
    const Complex direct = b.dot(flatten(rho) / rho.norm());
    worst = std::max(worst, std::abs(bell_amplitude(rho, PauliString::parse(w)) - direct));
  }
  return {worst < 1e-11, "max error " + fmt(worst) + " over 200 pairs"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"substitute table reproduction", table_reproduction},
      {"ratio identity on random pairs", ratio_identity},
      {"steady/ground correspondence", steady_ground},
      {"dual-path L†L", dual_path_ldl},
      {"estimator calibration", estimator_calibration},
      {"runtime-bound sufficiency", runtime_sufficiency},
      {"asymptotic ratios", asymptotic_ratios},
      {"XXZ inverse recovery", xxz_recovery},
      {"circuit-encoding pipeline", circuit_pipeline},
      {"Bell-amplitude identity", bell_identity},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": " << o.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
