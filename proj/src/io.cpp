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

#include "lindground/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "detail/dense.hpp"
#include "lindground/format.hpp"

namespace lg {
namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

double num(const Json& j) {
  if (!j.is_number()) throw ParseError("expected a number, got " + j.dump());
  return j.get<double>();
}

Complex complex_from(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {num(j[0]), num(j[1])};
  throw ParseError("expected a number or [re, im], got " + j.dump());
}

ComplexMatrix gate_matrix(const std::string& name) {
  const Complex i(0.0, 1.0);
  const double r = 1.0 / std::sqrt(2.0);
  ComplexMatrix g;
  if (name == "I") {
    g = ComplexMatrix::Identity(2, 2);
  } else if (name == "X") {
    g.resize(2, 2);
    g << 0, 1, 1, 0;
  } else if (name == "Y") {
    g.resize(2, 2);
    g << 0, -i, i, 0;
  } else if (name == "Z") {
    g.resize(2, 2);
    g << 1, 0, 0, -1;
  } else if (name == "H") {
    g.resize(2, 2);
    g << r, r, r, -r;
  } else if (name == "S") {
    g.resize(2, 2);
    g << 1, 0, 0, i;
  } else if (name == "T") {
    g.resize(2, 2);
    g << 1, 0, 0, std::exp(i * (M_PI / 4));
  } else if (name == "CNOT") {
    g = ComplexMatrix::Zero(4, 4);
    g(0, 0) = g(1, 1) = g(2, 3) = g(3, 2) = 1;
  } else if (name == "CZ") {
    g = ComplexMatrix::Identity(4, 4);
    g(3, 3) = -1;
  } else if (name == "SWAP") {
    g = ComplexMatrix::Zero(4, 4);
    g(0, 0) = g(1, 2) = g(2, 1) = g(3, 3) = 1;
  } else {
    throw ParseError("unknown gate '" + name + "'");
  }
  return g;
}

// Embeds a k-qubit gate acting on `qubits` (first listed = most significant
// gate index) into n qubits; qubit 0 is the most significant bit.
ComplexMatrix embed(const ComplexMatrix& g, const std::vector<int>& qubits, int n) {
  const int k = static_cast<int>(qubits.size());
  if (g.rows() != (Eigen::Index{1} << k)) throw ParseError("gate arity does not match its qubit list");
  for (std::size_t a = 0; a < qubits.size(); ++a) {
    if (qubits[a] < 0 || qubits[a] >= n) throw ParseError("gate qubit out of range");
    for (std::size_t b = 0; b < a; ++b) {
      if (qubits[a] == qubits[b]) throw ParseError("gate qubits must be distinct");
    }
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  auto bit = [n](Eigen::Index idx, int q) { return (idx >> (n - 1 - q)) & 1; };
  for (Eigen::Index col = 0; col < dim; ++col) {
    Eigen::Index gc = 0;
    for (int q : qubits) gc = (gc << 1) | bit(col, q);
    for (Eigen::Index gr = 0; gr < g.rows(); ++gr) {
      if (g(gr, gc) == Complex(0.0)) continue;
      Eigen::Index row = col;
      for (int a = 0; a < k; ++a) {
        const Eigen::Index mask = Eigen::Index{1} << (n - 1 - qubits[static_cast<std::size_t>(a)]);
        if ((gr >> (k - 1 - a)) & 1) {
          row |= mask;
        } else {
          row &= ~mask;
        }
      }
      out(row, col) = g(gr, gc);
    }
  }
  return out;
}

ComplexMatrix layer_from_json(const Json& j, int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (j.is_array()) {
    ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
    for (const auto& step : j) u = layer_from_json(step, n) * u;
    return u;
  }
  if (j.is_string()) {
    std::vector<int> qubits(gate_matrix(j.get<std::string>()).rows() == 2 ? 1 : 2);
    for (std::size_t a = 0; a < qubits.size(); ++a) qubits[a] = static_cast<int>(a);
    return embed(gate_matrix(j.get<std::string>()), qubits, n);
  }
  if (j.is_object() && j.contains("matrix")) {
    const Json& rows = j.at("matrix");
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != dim) throw ParseError("layer matrix must be 2^n x 2^n");
    ComplexMatrix u(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
      const Json& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) throw ParseError("layer matrix must be 2^n x 2^n");
      for (Eigen::Index c = 0; c < dim; ++c) u(r, c) = complex_from(row[static_cast<std::size_t>(c)]);
    }
    return u;
  }
  const ComplexMatrix g = gate_matrix(require(j, "gate").get<std::string>());
  std::vector<int> qubits;
  if (j.contains("qubits")) {
    qubits = j.at("qubits").get<std::vector<int>>();
  } else {
    for (Eigen::Index a = 0; (Eigen::Index{1} << a) < g.rows(); ++a) qubits.push_back(static_cast<int>(a));
  }
  return embed(g, qubits, n);
}

Json complex_json(Complex c) { return Json::array({c.real(), c.imag()}); }

}  // namespace

Json to_json(const PauliSum& s) {
  Json out = Json::array();
  for (const auto& [p, c] : s) out.push_back(Json::array({c.real(), c.imag(), p.str()}));
  return out;
}

PauliSum pauli_sum_from_json(const Json& j, int n) {
  if (!j.is_array()) throw ParseError("Pauli sum must be an array of [re, im, word]");
  PauliSum s(n);
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3 || !t[2].is_string()) throw ParseError("Pauli term must be [re, im, word]");
    const PauliString p = PauliString::parse(t[2].get<std::string>());
    if (p.size() != n) throw DimensionError("Pauli word '" + p.str() + "' has the wrong width");
    s.add(p, Complex(num(t[0]), num(t[1])));
  }
  return s;
}

Json to_json(const LmeSpec& spec) {
  Json j;
  j["n"] = spec.num_qubits();
  j["hamiltonian"] = to_json(spec.hamiltonian());
  Json jumps = Json::array();
  for (const auto& ch : spec.jumps()) jumps.push_back(Json{{"rate", ch.rate}, {"op", to_json(ch.op)}});
  j["jumps"] = std::move(jumps);
  return j;
}

LmeSpec lme_spec_from_json(const Json& j) {
  const int n = require(j, "n").get<int>();
  if (n < 1) throw ValidationError("n must be positive");
  PauliSum h = j.contains("hamiltonian") ? pauli_sum_from_json(j.at("hamiltonian"), n) : PauliSum(n);
  std::vector<JumpChannel> jumps;
  if (j.contains("jumps")) {
    for (const auto& ch : j.at("jumps")) jumps.push_back({num(require(ch, "rate")), pauli_sum_from_json(require(ch, "op"), n)});
  }
  return LmeSpec(n, std::move(h), std::move(jumps));
}

LiouvillianAnsatz ansatz_from_json(const Json& j) {
  const std::string type = j.value("type", std::string("custom"));
  if (type == "xxz") return LiouvillianAnsatz::xxz_chain(require(j, "sites").get<int>());
  if (type == "full_local") return LiouvillianAnsatz::full_local(require(j, "n").get<int>(), require(j, "k").get<int>());
  if (type != "custom") throw ParseError("unknown ansatz type '" + type + "'");
  const int n = require(j, "n").get<int>();
  auto terms = [&](const char* key) {
    std::vector<LiouvillianAnsatz::Term> out;
    if (!j.contains(key)) return out;
    for (const auto& t : j.at(key)) {
      out.push_back({require(t, "name").get<std::string>(), pauli_sum_from_json(require(t, "op"), n)});
    }
    return out;
  };
  return LiouvillianAnsatz(n, terms("hamiltonian"), terms("jumps"), j.value("locality", 2 * n));
}

CircuitSpec circuit_from_json(const Json& j) {
  CircuitSpec c;
  c.n = require(j, "n").get<int>();
  if (c.n < 1 || c.n > 10) throw ValidationError("circuit width must be in 1..10");
  for (const auto& layer : require(j, "layers")) c.layers.push_back(layer_from_json(layer, c.n));
  c.validate();
  return c;
}

Json to_json(const SpectralReport& r) {
  Json j;
  Json ev = Json::array();
  for (const auto& z : r.eigenvalues) ev.push_back(complex_json(z));
  j["eigenvalues"] = std::move(ev);
  j["gap"] = r.gap ? Json(*r.gap) : Json(nullptr);
  j["diagonalizable"] = r.diagonalizable;
  j["eigenvector_condition"] = r.eigenvector_condition;
  j["mixing_time_estimate"] = r.mixing_time_estimate ? Json(*r.mixing_time_estimate) : Json(nullptr);
  j["max_real_part"] = r.max_real_part;
  return j;
}

Json to_json(const LdlPropertyReport& r) {
  Json j;
  j["min_eigenvalue"] = r.min_eigenvalue;
  j["ground_energy"] = r.ground_energy;
  j["ground_dim"] = r.ground_dim;
  j["st_commutator_norm"] = r.st_commutator_norm;
  j["steady_dim"] = r.steady_dim ? Json(*r.steady_dim) : Json(nullptr);
  j["spectrum_nonnegative"] = r.spectrum_nonnegative;
  j["ground_energy_zero"] = r.ground_energy_zero;
  j["st_symmetric"] = r.st_symmetric;
  j["ground_matches_steady"] = r.ground_matches_steady;
  j["all_passed"] = r.all_passed();
  return j;
}

Json to_json(const EstimateReport& r) {
  Json j;
  j["value"] = r.value;
  j["numerator"] = r.numerator;
  j["purity"] = r.purity;
  j["bias_bound"] = r.bias_bound;
  j["var_bound"] = r.var_bound;
  j["mse_bound"] = r.mse_bound;
  j["shots"] = r.shots;
  return j;
}

Json to_json(const XlResult& r, const QuadraticSystem& sys) {
  Json j;
  j["status"] = r.status == XlStatus::Solved ? "solved" : "unsolvable";
  Json a = Json::object();
  for (std::size_t v = 0; v < r.assignment.size() && v < sys.variables().size(); ++v) {
    a[sys.variables()[v].name] = r.assignment[v];
  }
  j["assignment"] = std::move(a);
  j["d_used"] = r.d_used;
  j["rounds"] = r.rounds;
  j["nodes"] = r.nodes;
  j["residual"] = r.residual;
  j["matrix_density"] = r.matrix_density;
  j["n_e"] = r.n_e;
  j["n_u"] = r.n_u;
  return j;
}

Json to_json(const ClockLme& c) {
  Json j;
  j["system_qubits"] = c.system_qubits;
  j["clock_qubits"] = c.clock_qubits;
  j["clock_dim"] = c.clock_dim;
  j["depth"] = c.depth();
  j["reset_jumps"] = c.reset_jumps;
  j["transition_jumps"] = c.transition_jumps;
  j["dephasing_jumps"] = c.dephasing_jumps;
  j["padding_jumps"] = c.padding_jumps;
  j["lme"] = to_json(c.spec);
  return j;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

}  // namespace lg
