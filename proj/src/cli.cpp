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

#include "lindground/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lindground/encodings.hpp"
#include "lindground/format.hpp"
#include "lindground/io.hpp"
#include "lindground/random.hpp"

namespace lg::cli {
namespace fs = std::filesystem;

namespace {

void require_file(const std::string& path, const char* flag) {
  if (path.empty()) throw ValidationError(std::string(flag) + " is required");
  if (!fs::is_regular_file(path)) throw ValidationError(std::string(flag) + ": no such file '" + path + "'");
}

fs::path prepare_out(const RunConfig& cfg) {
  fs::path dir(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw ValidationError("--out: cannot use directory '" + cfg.out + "'");
  return dir;
}

// A Pauli sum from a JSON array or the `<re> <im> <word>` text format. A JSON
// object is read as an LmeSpec and turned into its L†L.
PauliSum load_operator(const std::string& path) {
  if (fs::path(path).extension() == ".json") {
    const Json j = read_json_file(path);
    if (j.is_object()) return ldl_symbolic(lme_spec_from_json(j));
    if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].size() != 3) {
      throw ParseError(path + ": expected a non-empty [[re, im, word], ...] array");
    }
    const int n = static_cast<int>(j[0][2].get<std::string>().size());
    return pauli_sum_from_json(j, n);
  }
  std::ifstream in(path);
  return parse_pauli_sum(in);
}

Json matrix_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

double default_gamma(const RunConfig& cfg, int n) { return cfg.gamma.value_or(std::ldexp(1.0, -n)); }

MeasurementPlan make_plan(const RunConfig& cfg, const PauliSum& a, double gamma) {
  MeasurementPlan plan;
  plan.observable = a;
  plan.seed = cfg.seed;
  if (cfg.shots) {
    if (*cfg.shots < 2) throw ValidationError("--shots must be at least 2");
    plan.n_h = *cfg.shots / 2;
    plan.n_s = *cfg.shots - plan.n_h;
  } else {
    const ShotBudget b = shot_budget(a, gamma, cfg.eps);
    plan.n_h = b.n_h;
    plan.n_s = b.n_s;
  }
  return plan;
}

const char* kEstimateHeader = "value,numerator,purity,bias_bound,var_bound,mse_bound,shots,exact\n";

std::string estimate_row(const EstimateReport& r, double exact) {
  std::ostringstream os;
  os << format_double(r.value) << ',' << format_double(r.numerator) << ',' << format_double(r.purity) << ','
     << format_double(r.bias_bound) << ',' << format_double(r.var_bound) << ',' << format_double(r.mse_bound) << ','
     << r.shots << ',' << format_double(exact) << '\n';
  return os.str();
}

struct Relaxation {
  double time = 0.0;
  std::string kind;
  double scale = 0.0;
};

// Evolution time from the spectral gap when L is Hermitian, else from the
// probed mixing time.
Relaxation relaxation_time(const SuperOp& L, int n, double eps, std::uint64_t seed) {
  const SpectralReport rep = spectral_diagnostics(L, 4, seed);
  const bool hermitian = (L.matrix - L.matrix.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, L.matrix.cwiseAbs().maxCoeff());
  Relaxation r;
  if (hermitian && rep.gap) {
    r.kind = "gap";
    r.scale = *rep.gap;
    r.time = runtime_bound(SpectralGap{*rep.gap}, n, eps);
  } else if (rep.mixing_time_estimate) {
    r.kind = "mixing";
    r.scale = *rep.mixing_time_estimate;
    r.time = runtime_bound(MixingTime{*rep.mixing_time_estimate}, n, eps);
  } else if (rep.gap) {
    r.kind = "gap";
    r.scale = *rep.gap;
    r.time = runtime_bound(SpectralGap{*rep.gap}, n, eps);
  } else {
    throw NoSteadyStateError("dynamics do not relax: no spectral gap and no finite mixing time");
  }
  return r;
}

DensityMatrix unique_steady(const SuperOp& L) {
  SteadyStates ss = steady_state(L);
  if (ss.dim != 1 || ss.states.empty()) {
    throw NoSteadyStateError("steady state is not unique (null space dimension " + std::to_string(ss.dim) + ")");
  }
  return ss.states.front();
}

double direct_expectation(const PauliSum& a, const ComplexMatrix& rho) {
  const ComplexVector v = vec(rho) / rho.norm();
  return (v.adjoint() * to_matrix(a) * v)(0, 0).real();
}

}  // namespace

int cmd_pipeline(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::string stage = "input";
  try {
    require_file(cfg.ansatz, "--ansatz");
    require_file(cfg.target, "--target");
    require_file(cfg.observable, "--observable");
    const fs::path dir = prepare_out(cfg);
    const LiouvillianAnsatz ansatz = ansatz_from_json(read_json_file(cfg.ansatz));
    const PauliSum target = load_operator(cfg.target);
    const PauliSum observable = load_operator(cfg.observable);
    const int n = ansatz.num_qubits();

    stage = "judge";
    const MqSystem mq = build_mq_system(ansatz, target);

    stage = "solve";
    XlOptions xo;
    xo.d_max = cfg.d_max;
    xo.node_budget = cfg.node_budget;
    const XlResult xl = xl_solve(mq.system, xo);
    Json report;
    report["seed"] = cfg.seed;
    report["xl"] = to_json(xl, mq.system);
    report["xl"]["n_e"] = mq.n_e;
    report["xl"]["n_u"] = mq.n_u;
    if (xl.status != XlStatus::Solved) {
      write_file_atomic(dir / "report.json", report.dump(2) + "\n");
      err << "pipeline [solve]: no real solution reproduces the target\n";
      return kUnsolvable;
    }
    const std::size_t nh = ansatz.hamiltonian().size();
    const std::size_t nj = ansatz.jumps().size();
    std::vector<double> h(xl.assignment.begin(), xl.assignment.begin() + static_cast<std::ptrdiff_t>(nh));
    std::vector<double> rates(nj);
    for (std::size_t a = 0; a < nj; ++a) rates[a] = std::max(0.0, xl.assignment[nh + a]);
    const LmeSpec spec = ansatz.instantiate(h, rates);
    report["lme"] = to_json(spec);
    report["verify_residual"] = verify_solution(ansatz, xl.assignment, target);

    stage = "evolve";
    const SuperOp L = build_liouvillian(spec);
    const DensityMatrix rho_ss = unique_steady(L);
    const Relaxation relax = relaxation_time(L, n, cfg.eps, cfg.seed);
    const int steps = suggested_steps(L, relax.time);
    const DensityMatrix rho = evolve(L, DensityMatrix::maximally_mixed(n), relax.time, steps);
    report["evolution"] = Json{{"relaxation", relax.kind}, {"scale", relax.scale}, {"time", relax.time},
                               {"steps", steps}, {"overlap", dm_overlap(rho.matrix(), rho_ss.matrix())}};

    stage = "measure";
    const double gamma = default_gamma(cfg, n);
    const MeasurementPlan plan = make_plan(cfg, observable, gamma);
    const EstimateReport est = estimate_expectation(plan, rho, gamma);
    const double exact = exact_expectation(observable, rho_ss);
    report["gamma"] = gamma;
    report["estimate"] = to_json(est);
    report["exact_expectation"] = exact;

    stage = "output";
    write_file_atomic(dir / "report.json", report.dump(2) + "\n");
    write_file_atomic(dir / "estimates.csv", std::string(kEstimateHeader) + estimate_row(est, exact));
    out << "residual " << format_double(xl.residual) << "\nestimate " << format_double(est.value) << "\nexact "
        << format_double(exact) << "\n";
    return kOk;
  } catch (const StructuralRejectionError& e) {
    err << "pipeline [" << stage << "]: " << e.what() << "\n";
    return kStructural;
  } catch (const BudgetExceededError& e) {
    err << "pipeline [" << stage << "]: " << e.what() << "\n";
    return kBudget;
  } catch (const NoSteadyStateError& e) {
    err << "pipeline [" << stage << "]: " << e.what() << "\n";
    return kNoSteadyState;
  } catch (const ValidationError& e) {
    err << "pipeline [" << stage << "]: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "pipeline [" << stage << "]: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "pipeline [" << stage << "]: " << e.what() << "\n";
    return kOther;
  }
}

int cmd_xl_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.reps < 0 || cfg.n_min < 2) throw ValidationError("xl-bench: need reps >= 0 and N >= 2");
  const fs::path dir = prepare_out(cfg);
  std::ostringstream rows;
  std::ostringstream summary;
  rows << "N,rep,n_e,n_u,wall_time_ms,residual,matrix_density\n";
  summary << "N,reps,mean_wall_time_ms,std_wall_time_ms,max_residual,failures\n";
  XlOptions xo;
  xo.d_max = cfg.d_max;
  xo.node_budget = cfg.node_budget;
  for (int N = cfg.n_min; N <= cfg.n_max; ++N) {
    const LiouvillianAnsatz ansatz = LiouvillianAnsatz::xxz_chain(N);
    std::vector<double> times;
    double max_res = 0.0;
    int failures = 0;
    for (int rep = 0; rep < cfg.reps; ++rep) {
      CounterRng rng(mix_seed({cfg.seed, static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(rep)}), 0);
      std::vector<double> h(ansatz.hamiltonian().size()), rates(ansatz.jumps().size());
      for (double& x : h) x = rng.uniform();
      for (double& x : rates) x = rng.uniform();
      const PauliSum target = ldl_symbolic(ansatz.instantiate(h, rates));
      const MqSystem mq = build_mq_system(ansatz, target);
      XlResult res;
      double residual = std::numeric_limits<double>::infinity();
      try {
        res = xl_solve(mq.system, xo);
        if (res.status == XlStatus::Solved) residual = verify_solution(ansatz, res.assignment, target);
      } catch (const Error& e) {
        err << "xl-bench N=" << N << " rep=" << rep << ": " << e.what() << "\n";
      }
      if (!std::isfinite(residual)) ++failures;
      max_res = std::max(max_res, residual);
      times.push_back(res.wall_time_ms);
      rows << N << ',' << rep << ',' << mq.n_e << ',' << mq.n_u << ',' << format_double(res.wall_time_ms) << ','
           << format_double(residual) << ',' << format_double(res.matrix_density) << '\n';
    }
    if (times.empty()) continue;
    double mean = 0.0;
    for (double t : times) mean += t;
    mean /= static_cast<double>(times.size());
    double var = 0.0;
    for (double t : times) var += (t - mean) * (t - mean);
    const double sd = times.size() > 1 ? std::sqrt(var / static_cast<double>(times.size() - 1)) : 0.0;
    summary << N << ',' << times.size() << ',' << format_double(mean) << ',' << format_double(sd) << ','
            << format_double(max_res) << ',' << failures << '\n';
    out << "N=" << N << " mean_ms=" << format_double(mean) << " max_residual=" << format_double(max_res) << "\n";
  }
  write_file_atomic(dir / "xl_bench.csv", rows.str());
  write_file_atomic(dir / "xl_bench_summary.csv", summary.str());
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  LmeSpec spec(1, PauliSum(1), {});
  std::optional<CircuitSpec> circuit;
  std::optional<ClockLme> clock;
  try {
    if (!cfg.circuit.empty()) {
      require_file(cfg.circuit, "--circuit");
      circuit = circuit_from_json(read_json_file(cfg.circuit));
      clock = circuit_to_lme(*circuit);
      spec = clock->spec;
    } else {
      require_file(cfg.lme, "--lme");
      spec = lme_spec_from_json(read_json_file(cfg.lme));
    }
  } catch (const Error& e) {
    out << "spec                 FAIL  " << e.what() << "\n";
    return kUsage;
  }

  bool all_ok = true;
  auto line = [&](const std::string& name, bool ok, const std::string& detail) {
    all_ok = all_ok && ok;
    std::string padded = name;
    padded.resize(std::max<std::size_t>(name.size(), 21), ' ');
    out << padded << (ok ? "PASS  " : "FAIL  ") << detail << "\n";
  };
  line("spec", true, "n=" + std::to_string(spec.num_qubits()) + " jumps=" + std::to_string(spec.jumps().size()));

  try {
    const LdlResult ldl = build_ldl(spec);
    line("ldl_cross_check", true, "max coefficient error " + format_double(ldl.cross_check_error));
    const SuperOp L = build_liouvillian(spec);
    std::optional<std::size_t> dim;
    std::optional<SteadyStates> ss;
    try {
      ss = steady_state(L);
      dim = ss->dim;
    } catch (const NoSteadyStateError&) {
    }
    const LdlPropertyReport props = verify_ldl_properties(ldl.dense, dim);
    line("ldl_nonnegative", props.spectrum_nonnegative, "min eigenvalue " + format_double(props.min_eigenvalue));
    line("ldl_ground_zero", props.ground_energy_zero, "ground energy " + format_double(props.ground_energy));
    line("st_symmetry", props.st_symmetric, "commutator norm " + format_double(props.st_commutator_norm));
    line("ground_vs_steady", props.ground_matches_steady,
         "ground dim " + std::to_string(props.ground_dim) + ", steady dim " + (dim ? std::to_string(*dim) : "none"));

    const SpectralReport spec_rep = spectral_diagnostics(L, 4, cfg.seed);
    line("spectrum_stable", spec_rep.max_real_part <= 1e-9,
         "max Re " + format_double(spec_rep.max_real_part) + ", gap " + (spec_rep.gap ? format_double(*spec_rep.gap) : "none"));

    if (clock && ss && !ss->states.empty()) {
      const DensityMatrix expected = feynman_steady_state(*circuit);
      const double dist = trace_distance(ss->states.front().matrix(), expected.matrix());
      line("clock_steady_state", ss->dim == 1 && dist < 1e-8, "trace distance " + format_double(dist));
    }
  } catch (const Error& e) {
    line("liouvillian", false, e.what());
  }

  const SubstituteTable& table = substitute_table();
  double worst = 0.0;
  for (const auto& entry : table.entries) {
    const Eigen::Index d = entry.matrix.rows();
    worst = std::max(worst, (entry.matrix * entry.matrix.adjoint() - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff());
    worst = std::max(worst, pauli_decompose(entry.matrix).max_abs_diff(entry.b));
  }
  line("substitute_table", table.entries.size() == 16 && worst < 1e-12, "worst deviation " + format_double(worst));

  // Random spot checks of the ratio identity on the doubled register.
  const int m = std::min(spec.num_qubits(), 3);
  double spot = 0.0;
  CounterRng rng(cfg.seed, 0x5EED);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix rho = random_density_matrix(m, rng);
    const PauliSum a = random_pauli_sum(2 * m, 4, rng, true);
    spot = std::max(spot, std::abs(exact_expectation(a, rho) - direct_expectation(a, rho)));
  }
  line("ratio_identity", spot < 1e-10, "max error " + format_double(spot));
  (void)err;
  return all_ok ? kOk : kCheckFailed;
}

int cmd_steady(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    require_file(cfg.lme, "--lme");
    const fs::path dir = prepare_out(cfg);
    const LmeSpec spec = lme_spec_from_json(read_json_file(cfg.lme));
    const SteadyStates ss = steady_state(build_liouvillian(spec));
    Json j;
    j["dim"] = ss.dim;
    j["repair_magnitude"] = ss.repair_magnitude;
    j["degeneracy_warning"] = ss.degeneracy_warning;
    Json states = Json::array();
    for (const auto& s : ss.states) states.push_back(Json{{"purity", s.purity()}, {"matrix", matrix_json(s.matrix())}});
    j["states"] = std::move(states);
    write_file_atomic(dir / "steady.json", j.dump(2) + "\n");
    out << "dim " << ss.dim << "\n";
    if (ss.degeneracy_warning) err << "steady: warning: degenerate or repaired steady space\n";
    return kOk;
  } catch (const NoSteadyStateError& e) {
    err << "steady: " << e.what() << "\n";
    return kNoSteadyState;
  } catch (const Error& e) {
    err << "steady: " << e.what() << "\n";
    return dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const ParseError*>(&e) ? kUsage : kOther;
  }
}

int cmd_measure(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    require_file(cfg.lme, "--lme");
    require_file(cfg.observable, "--observable");
    const fs::path dir = prepare_out(cfg);
    const LmeSpec spec = lme_spec_from_json(read_json_file(cfg.lme));
    const PauliSum a = load_operator(cfg.observable);
    const DensityMatrix rho = unique_steady(build_liouvillian(spec));
    const double gamma = default_gamma(cfg, spec.num_qubits());
    const EstimateReport est = estimate_expectation(make_plan(cfg, a, gamma), rho, gamma);
    const double exact = exact_expectation(a, rho);
    Json j;
    j["seed"] = cfg.seed;
    j["gamma"] = gamma;
    j["estimate"] = to_json(est);
    j["exact_expectation"] = exact;
    write_file_atomic(dir / "measure.json", j.dump(2) + "\n");
    write_file_atomic(dir / "estimates.csv", std::string(kEstimateHeader) + estimate_row(est, exact));
    out << "estimate " << format_double(est.value) << "\nexact " << format_double(exact) << "\n";
    return kOk;
  } catch (const NoSteadyStateError& e) {
    err << "measure: " << e.what() << "\n";
    return kNoSteadyState;
  } catch (const Error& e) {
    err << "measure: " << e.what() << "\n";
    return dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const ParseError*>(&e) ||
                   dynamic_cast<const DimensionError*>(&e)
               ? kUsage
               : kOther;
  }
}

int cmd_encode_circuit(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    require_file(cfg.circuit, "--circuit");
    const fs::path dir = prepare_out(cfg);
    const CircuitSpec c = circuit_from_json(read_json_file(cfg.circuit));
    const ClockLme clock = circuit_to_lme(c);
    const DensityMatrix rho = feynman_steady_state(c);
    const std::int64_t shots = cfg.shots.value_or(100000);
    const SampledP1 sampled = p1_sampled(rho, clock, shots, cfg.seed);
    Json j = to_json(clock);
    j["seed"] = cfg.seed;
    j["p1_statevector"] = statevector_p1(c);
    j["p1_exact"] = p1_exact(rho, clock);
    j["p1_sampled"] = sampled.p1;
    j["estimate"] = to_json(sampled.estimate);
    j["purity"] = rho.purity();
    write_file_atomic(dir / "clock.json", j.dump(2) + "\n");
    out << "p1_exact " << format_double(p1_exact(rho, clock)) << "\np1_sampled " << format_double(sampled.p1) << "\n";
    return kOk;
  } catch (const Error& e) {
    err << "encode-circuit: " << e.what() << "\n";
    return dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const ParseError*>(&e) ? kUsage : kOther;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lindblad steady-state toolkit (default seed 0x4C4D4531)"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string seed_text;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed_text, "RNG seed, decimal or 0x-prefixed (default 0x4C4D4531)");
    sub->add_option("--shots", cfg.shots, "total shot count; overrides the eps-derived budget");
    sub->add_option("--eps", cfg.eps, "target accuracy for shot budgets and evolution time")->check(CLI::PositiveNumber);
    sub->add_option("--gamma", cfg.gamma, "purity lower bound used by the estimator (default 2^-n)");
    sub->add_option("--d-max", cfg.d_max, "largest XL extension degree")->check(CLI::Range(2, 8));
    sub->add_option("--out", cfg.out, "output directory");
  };

  auto* pipeline = app.add_subcommand("pipeline", "solve for an LME, evolve it and estimate an observable");
  common(pipeline);
  pipeline->add_option("--ansatz", cfg.ansatz, "ansatz JSON")->required();
  pipeline->add_option("--target", cfg.target, "target L†L (Pauli text/JSON, or an LME JSON)")->required();
  pipeline->add_option("--observable", cfg.observable, "observable on the doubled register")->required();
  pipeline->add_option("--node-budget", cfg.node_budget, "DFS node budget");

  auto* bench = app.add_subcommand("xl-bench", "timing sweep over random XXZ chains");
  common(bench);
  bench->add_option("--n-min", cfg.n_min, "smallest chain");
  bench->add_option("--n-max", cfg.n_max, "largest chain");
  bench->add_option("--reps", cfg.reps, "repetitions per size");
  bench->add_option("--node-budget", cfg.node_budget, "DFS node budget");

  auto* verify = app.add_subcommand("verify", "property checks for an LME or a clock encoding");
  common(verify);
  verify->add_option("--lme", cfg.lme, "LME JSON");
  verify->add_option("--circuit", cfg.circuit, "circuit JSON (checks its clock LME)");

  auto* steady = app.add_subcommand("steady", "steady states of an LME");
  common(steady);
  steady->add_option("--lme", cfg.lme, "LME JSON")->required();

  auto* measure = app.add_subcommand("measure", "shot-level estimate on the steady state");
  common(measure);
  measure->add_option("--lme", cfg.lme, "LME JSON")->required();
  measure->add_option("--observable", cfg.observable, "observable on the doubled register")->required();

  auto* encode = app.add_subcommand("encode-circuit", "clock encoding of a circuit and its p1");
  common(encode);
  encode->add_option("--circuit", cfg.circuit, "circuit JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (!seed_text.empty()) {
      std::size_t used = 0;
      cfg.seed = std::stoull(seed_text, &used, 0);
      if (used != seed_text.size()) throw std::invalid_argument(seed_text);
    }
  } catch (const std::exception&) {
    err << "--seed: not an integer: " << seed_text << "\n";
    return kUsage;
  }

  try {
    if (*pipeline) return cmd_pipeline(cfg, out, err);
    if (*bench) return cmd_xl_bench(cfg, out, err);
    if (*verify) return cmd_verify(cfg, out, err);
    if (*steady) return cmd_steady(cfg, out, err);
    if (*measure) return cmd_measure(cfg, out, err);
    if (*encode) return cmd_encode_circuit(cfg, out, err);
  } catch (const ValidationError& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kOther;
  }
  return kUsage;
}

}  // namespace lg::cli
