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
#include <charconv>
#include <cmath>
#include <sstream>

#include "lindground/format.hpp"
#include "lindground/xl.hpp"

namespace lg {

// ---------------------------------------------------------------------------
// Monomials and polynomials

Monomial::Monomial(std::vector<int> vars) : vars_(std::move(vars)) {
  for (int v : vars_) {
    if (v < 0) throw ValidationError("Monomial: negative variable index");
  }
  std::sort(vars_.begin(), vars_.end());
}

bool Monomial::contains(int v) const { return std::binary_search(vars_.begin(), vars_.end(), v); }

std::optional<int> Monomial::single_variable() const {
  if (vars_.empty() || vars_.front() != vars_.back()) return std::nullopt;
  return vars_.front();
}

Monomial Monomial::operator*(const Monomial& other) const {
  std::vector<int> out;
  out.reserve(vars_.size() + other.vars_.size());
  std::merge(vars_.begin(), vars_.end(), other.vars_.begin(), other.vars_.end(), std::back_inserter(out));
  Monomial m;
  m.vars_ = std::move(out);
  return m;
}

std::string Monomial::str(const std::vector<std::string>& names) const {
  if (vars_.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < vars_.size();) {
    std::size_t j = i;
    while (j < vars_.size() && vars_[j] == vars_[i]) ++j;
    if (!out.empty()) out += '*';
    const auto v = static_cast<std::size_t>(vars_[i]);
    out += v < names.size() ? names[v] : "x" + std::to_string(v);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

bool GradedLexOrder::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  return a.vars() < b.vars();
}

int degree(const Polynomial& p) {
  int d = 0;
  for (const auto& [m, c] : p) d = std::max(d, m.degree());
  return d;
}

double evaluate(const Polynomial& p, const std::vector<double>& x) {
  double acc = 0.0;
  for (const auto& [m, c] : p) {
    double t = c;
    for (int v : m.vars()) t *= x[static_cast<std::size_t>(v)];
    acc += t;
  }
  return acc;
}

std::string_view to_string(VarRole r) {
  switch (r) {
    case VarRole::Hamiltonian:
      return "hamiltonian";
    case VarRole::Rate:
      return "rate";
    case VarRole::Slack:
      return "slack";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// QuadraticSystem

int QuadraticSystem::add_variable(std::string name, VarRole role) {
  if (name.empty() || name.find_first_of(" \t*^") != std::string::npos) {
    throw ValidationError("QuadraticSystem: invalid variable name '" + name + "'");
  }
  for (const auto& v : vars_) {
    if (v.name == name) throw ValidationError("QuadraticSystem: duplicate variable '" + name + "'");
  }
  vars_.push_back({std::move(name), role});
  return static_cast<int>(vars_.size()) - 1;
}

void QuadraticSystem::add_equation(Polynomial eq) {
  std::erase_if(eq, [](const auto& kv) { return kv.second == 0.0; });
  if (eq.empty()) throw ValidationError("QuadraticSystem: equation has no nonzero coefficient");
  for (const auto& [m, c] : eq) {
    if (m.degree() > 2) throw ValidationError("QuadraticSystem: equation degree exceeds 2");
    if (!std::isfinite(c)) throw ValidationError("QuadraticSystem: non-finite coefficient");
    for (int v : m.vars()) {
      if (v >= num_vars()) throw ValidationError("QuadraticSystem: unknown variable index");
    }
  }
  eqs_.push_back(std::move(eq));
}

double QuadraticSystem::residual(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != num_vars()) throw DimensionError("QuadraticSystem::residual: size mismatch");
  double r = 0.0;
  for (const auto& e : eqs_) r = std::max(r, std::abs(evaluate(e, x)));
  return r;
}

std::string QuadraticSystem::to_text() const {
  std::vector<std::string> names;
  for (const auto& v : vars_) names.push_back(v.name);
  std::ostringstream out;
  for (const auto& v : vars_) out << "VAR " << v.name << ' ' << to_string(v.role) << '\n';
  for (const auto& e : eqs_) {
    out << "EQ";
    for (const auto& [m, c] : e) {
      out << ' ' << format_double(c);
      if (!m.is_constant()) out << '*' << m.str(names);
    }
    out << " = 0\n";
  }
  return out.str();
}

namespace {

double parse_number(std::string_view s, int line) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("line " + std::to_string(line) + ": bad coefficient '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

QuadraticSystem QuadraticSystem::parse(std::string_view text) {
  QuadraticSystem sys;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    if (kind == "VAR") {
      std::string name, role, extra;
      if (!(ls >> name >> role) || (ls >> extra)) throw ParseError("line " + std::to_string(lineno) + ": bad VAR line");
      VarRole r;
      if (role == "hamiltonian") {
        r = VarRole::Hamiltonian;
      } else if (role == "rate") {
        r = VarRole::Rate;
      } else if (role == "slack") {
        r = VarRole::Slack;
      } else {
        throw ParseError("line " + std::to_string(lineno) + ": unknown role '" + role + "'");
      }
      sys.add_variable(name, r);
    } else if (kind == "EQ") {
      Polynomial eq;
      std::string tok;
      bool closed = false;
      while (ls >> tok) {
        if (tok == "=") {
          std::string zero, extra;
          if (!(ls >> zero) || zero != "0" || (ls >> extra)) {
            throw ParseError("line " + std::to_string(lineno) + ": equations must end with '= 0'");
          }
          closed = true;
          break;
        }
        std::vector<std::string> parts;
        std::size_t start = 0;
        for (std::size_t star; (star = tok.find('*', start)) != std::string::npos; start = star + 1) {
          parts.push_back(tok.substr(start, star - start));
        }
        parts.push_back(tok.substr(start));
        const double c = parse_number(parts[0], lineno);
        std::vector<int> vars;
        for (std::size_t k = 1; k < parts.size(); ++k) {
          std::string name = parts[k];
          int power = 1;
          if (auto caret = name.find('^'); caret != std::string::npos) {
            power = static_cast<int>(parse_number(name.substr(caret + 1), lineno));
            name.resize(caret);
          }
          auto it = std::find_if(sys.vars_.begin(), sys.vars_.end(), [&](const Variable& v) { return v.name == name; });
          if (it == sys.vars_.end()) {
            throw ParseError("line " + std::to_string(lineno) + ": undeclared variable '" + name + "'");
          }
          if (power < 1 || power > 2) throw ParseError("line " + std::to_string(lineno) + ": bad exponent");
          for (int p = 0; p < power; ++p) vars.push_back(static_cast<int>(it - sys.vars_.begin()));
        }
        eq[Monomial(std::move(vars))] += c;
      }
      if (!closed) throw ParseError("line " + std::to_string(lineno) + ": missing '= 0'");
      try {
        sys.add_equation(std::move(eq));
      } catch (const ValidationError& e) {
        throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
      }
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": expected VAR or EQ");
    }
  }
  return sys;
}

std::size_t count_monomials(int num_vars, int max_degree) {
  // C(num_vars + max_degree, max_degree)
  long double c = 1.0L;
  for (int i = 1; i <= max_degree; ++i) c = c * (num_vars + i) / i;
  return static_cast<std::size_t>(std::llround(c));
}

std::vector<Monomial> monomials_up_to(int num_vars, int d) {
  std::vector<Monomial> out;
  for (int deg = d; deg >= 0; --deg) {
    std::vector<int> idx(static_cast<std::size_t>(deg), 0);
    if (deg == 0) {
      out.emplace_back();
      continue;
    }
    if (num_vars == 0) continue;
    while (true) {
      out.emplace_back(idx);
      int pos = deg - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == num_vars - 1) --pos;
      if (pos < 0) break;
      const int v = idx[static_cast<std::size_t>(pos)] + 1;
      for (int k = pos; k < deg; ++k) idx[static_cast<std::size_t>(k)] = v;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Counting

std::uint64_t count_terms(int n, int k, int m) {
  if (n < 0 || k < 0 || k > n) throw ValidationError("count_terms: need 0 <= k <= n");
  if (m < 1) throw ValidationError("count_terms: need m >= 1");
  unsigned __int128 total = 0;
  unsigned __int128 binom = 1;
  unsigned __int128 power = 1;
  const unsigned __int128 limit = ~std::uint64_t{0};
  for (int l = 0; l <= k; ++l) {
    if (l > 0) {
      binom = binom * static_cast<unsigned>(n - l + 1) / static_cast<unsigned>(l);
      power *= static_cast<unsigned>(m);
    }
    if (binom > limit || power > limit || binom * power > limit) throw ValidationError("count_terms: overflow");
    total += binom * power;
    if (total > limit) throw ValidationError("count_terms: overflow");
  }
  return static_cast<std::uint64_t>(total);
}

namespace {

long double count_real(int n, int k, int m) {
  long double total = 0.0L;
  long double term = 1.0L;
  for (int l = 0; l <= k; ++l) {
    if (l > 0) term = term * (n - l + 1) / l * m;
    total += term;
  }
  return total;
}

}  // namespace

double ratio_at(int n, int k) {
  if (k < 2 || k % 2 != 0) throw ValidationError("ratio_at: k must be even and >= 2");
  if (n % 2 != 0 || n < k) throw ValidationError("ratio_at: n must be even and >= k");
  const long double ne = count_real(n, k, 3) / 2 + count_real(n / 2, k / 2, 5);
  const long double nu = 2 * count_real(n / 2, k / 2, 5) + count_real(n / 2, k / 2, 3);
  return static_cast<double>(ne / (nu * nu));
}

AsymptoticRatio asymptotic_ratio(int k, int n_max) {
  if (k < 2 || k % 2 != 0) throw ValidationError("asymptotic_ratio: k must be even and >= 2");
  std::vector<int> sizes;
  for (int n = n_max; n >= std::max(4 * k, 16) && n % 2 == 0 && sizes.size() < 8; n /= 2) sizes.push_back(n);
  if (sizes.size() < 3) throw ValidationError("asymptotic_ratio: n_max too small for extrapolation");
  std::reverse(sizes.begin(), sizes.end());  // coarse to fine

  const std::size_t levels = sizes.size();
  std::vector<std::vector<double>> table(levels);
  for (std::size_t i = 0; i < levels; ++i) {
    table[i].push_back(ratio_at(sizes[i], k));
    for (std::size_t l = 1; l <= i; ++l) {
      const double f = std::ldexp(1.0, static_cast<int>(l)) - 1.0;
      table[i].push_back(table[i][l - 1] + (table[i][l - 1] - table[i - 1][l - 1]) / f);
    }
  }
  AsymptoticRatio r;
  r.at_n_max = table.back().front();
  r.limit = table.back().back();
  r.exponent = 1.0 / std::sqrt(r.limit);
  return r;
}

// ---------------------------------------------------------------------------
// Ansatz

LiouvillianAnsatz::LiouvillianAnsatz(int n, std::vector<Term> hamiltonian, std::vector<Term> jumps, int locality)
    : n_(n), hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jumps)), locality_(locality) {
  auto check = [&](const Term& t) {
    if (t.op.num_qubits() != n_) throw ValidationError("LiouvillianAnsatz: term '" + t.name + "' has the wrong width");
    for (const auto& [p, c] : t.op) {
      if (p.weight() > locality_) {
        throw ValidationError("LiouvillianAnsatz: term '" + t.name + "' exceeds the declared locality");
      }
    }
  };
  for (const auto& t : hamiltonian_) {
    check(t);
    if (!t.op.is_hermitian(1e-12)) throw ValidationError("LiouvillianAnsatz: term '" + t.name + "' is not Hermitian");
  }
  for (const auto& t : jumps_) check(t);
}

namespace {

// s+ = |1><0| = (X - iY) / 2, s- = |0><1| = (X + iY) / 2.
PauliSum ladder(bool raising) {
  return PauliSum::from_terms({{"X", 0.5}, {"Y", raising ? Complex{0.0, -0.5} : Complex{0.0, 0.5}}});
}

PauliSum on_sites(int n, const std::vector<std::pair<int, PauliSum>>& factors) {
  PauliSum out = PauliSum::identity(0);
  for (int q = 0; q < n; ++q) {
    auto it = std::find_if(factors.begin(), factors.end(), [&](const auto& f) { return f.first == q; });
    out = tensor(out, it == factors.end() ? PauliSum::identity(1) : it->second);
  }
  return out;
}

PauliSum single_letter(char c) {
  const char s[2] = {c, '\0'};
  return PauliSum::from_terms({{std::string_view(s, 1), 1.0}});
}

}  // namespace

LiouvillianAnsatz LiouvillianAnsatz::xxz_chain(int sites) {
  if (sites < 2) throw ValidationError("xxz_chain: at least two sites are required");
  std::vector<Term> ham;
  const PauliSum x = single_letter('X'), y = single_letter('Y'), z = single_letter('Z');
  for (int b = 0; b + 1 < sites; ++b) {
    ham.push_back({"jz" + std::to_string(b), on_sites(sites, {{b, z}, {b + 1, z}})});
    ham.push_back({"j" + std::to_string(b), on_sites(sites, {{b, x}, {b + 1, x}}) + on_sites(sites, {{b, y}, {b + 1, y}})});
  }
  std::vector<Term> jumps;
  for (int s = 0; s < sites; ++s) jumps.push_back({std::to_string(s), on_sites(sites, {{s, ladder(true)}})});
  return LiouvillianAnsatz(sites, std::move(ham), std::move(jumps), 2);
}

LiouvillianAnsatz LiouvillianAnsatz::full_local(int n, int k) {
  if (k < 2 || k % 2 != 0) throw ValidationError("full_local: k must be even and >= 2");
  const int w = k / 2;
  if (w > n) throw ValidationError("full_local: k/2 exceeds the qubit count");
  const std::array<PauliSum, 3> paulis = {single_letter('X'), single_letter('Y'), single_letter('Z')};
  const std::array<PauliSum, 5> channels = {paulis[0], paulis[1], paulis[2], ladder(true), ladder(false)};

  // Enumerate words as digit strings over {0 = identity, 1..m}.
  auto enumerate = [&](int m, auto&& emit) {
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    while (true) {
      int weight = 0;
      for (int d : digits) weight += d != 0;
      if (weight <= w) emit(digits);
      int pos = n - 1;
      while (pos >= 0 && digits[static_cast<std::size_t>(pos)] == m) digits[static_cast<std::size_t>(pos--)] = 0;
      if (pos < 0) break;
      ++digits[static_cast<std::size_t>(pos)];
    }
  };
  std::vector<Term> ham, jumps;
  enumerate(3, [&](const std::vector<int>& d) {
    std::vector<std::pair<int, PauliSum>> f;
    for (int q = 0; q < n; ++q) {
      if (d[static_cast<std::size_t>(q)]) f.emplace_back(q, paulis[static_cast<std::size_t>(d[static_cast<std::size_t>(q)] - 1)]);
    }
    ham.push_back({"h" + std::to_string(ham.size()), on_sites(n, f)});
  });
  enumerate(5, [&](const std::vector<int>& d) {
    std::vector<std::pair<int, PauliSum>> f;
    for (int q = 0; q < n; ++q) {
      if (d[static_cast<std::size_t>(q)]) f.emplace_back(q, channels[static_cast<std::size_t>(d[static_cast<std::size_t>(q)] - 1)]);
    }
    jumps.push_back({std::to_string(jumps.size()), on_sites(n, f)});
  });
  return LiouvillianAnsatz(n, std::move(ham), std::move(jumps), w);
}

LmeSpec LiouvillianAnsatz::instantiate(const std::vector<double>& h, const std::vector<double>& rates) const {
  if (h.size() != hamiltonian_.size() || rates.size() != jumps_.size()) {
    throw ValidationError("LiouvillianAnsatz::instantiate: parameter count mismatch");
  }
  PauliSum ham(n_);
  for (std::size_t a = 0; a < h.size(); ++a) ham += h[a] * hamiltonian_[a].op;
  std::vector<JumpChannel> jumps;
  for (std::size_t al = 0; al < rates.size(); ++al) jumps.push_back({rates[al], jumps_[al].op});
  return LmeSpec(n_, std::move(ham), std::move(jumps));
}

std::vector<double> ansatz_assignment(const LiouvillianAnsatz& ansatz, const std::vector<double>& h,
                                      const std::vector<double>& rates) {
  if (h.size() != ansatz.hamiltonian().size() || rates.size() != ansatz.jumps().size()) {
    throw ValidationError("ansatz_assignment: parameter count mismatch");
  }
  std::vector<double> x = h;
  x.insert(x.end(), rates.begin(), rates.end());
  for (double r : rates) {
    if (r < 0.0) throw ValidationError("ansatz_assignment: negative rate");
    x.push_back(std::sqrt(r));
  }
  return x;
}

MqSystem build_mq_system(const LiouvillianAnsatz& ansatz, const PauliSum& target, bool include_ground_energy) {
  const int n = ansatz.num_qubits();
  if (target.num_qubits() != 2 * n) {
    throw DimensionError("build_mq_system: target must act on " + std::to_string(2 * n) + " qubits");
  }
  if (!target.is_hermitian(1e-10)) throw StructuralRejectionError("build_mq_system: target is not Hermitian");
  if (const double r = exchange_symmetry_residual(target); r > 1e-10) {
    throw StructuralRejectionError("build_mq_system: target violates the row/column exchange relation by " +
                                   std::to_string(r) + "; it cannot be of the form L^dagger L");
  }

  MqSystem out;
  QuadraticSystem& sys = out.system;
  std::vector<PauliSum> hops, fops;
  for (const auto& t : ansatz.hamiltonian()) {
    sys.add_variable(t.name, VarRole::Hamiltonian);
    hops.push_back(t.op);
  }
  for (const auto& t : ansatz.jumps()) {
    sys.add_variable("lam" + t.name, VarRole::Rate);
    fops.push_back(t.op);
  }
  for (const auto& t : ansatz.jumps()) sys.add_variable("w" + t.name, VarRole::Slack);

  using CPoly = std::map<Monomial, Complex, GradedLexOrder>;
  std::map<PauliString, CPoly> coeffs;
  for (const auto& comp : ldl_components(n, hops, fops)) {
    const Monomial mono = Monomial::product(comp.u, comp.v);
    for (const auto& [p, c] : comp.op) coeffs[p][mono] += c;
  }
  for (const auto& [p, c] : target) coeffs[p][Monomial()] -= c;

  const PauliString identity(2 * n);
  for (const auto& [p, poly] : coeffs) {
    const PauliString row = p.slice(0, n);
    const PauliString col = p.slice(n, n);
    if (col < row) continue;
    if (!include_ground_energy && p == identity) continue;
    double scale = 0.0;
    for (const auto& [m, c] : poly) scale = std::max(scale, std::abs(c));
    const double cut = 1e-12 * std::max(1.0, scale);
    Polynomial re, im;
    for (const auto& [m, c] : poly) {
      if (std::abs(c.real()) > cut) re[m] = c.real();
      if (std::abs(c.imag()) > cut) im[m] = c.imag();
    }
    if (!re.empty()) {
      sys.add_equation(std::move(re));
      out.keys.emplace_back(p, true);
    }
    if (!im.empty()) {
      sys.add_equation(std::move(im));
      out.keys.emplace_back(p, false);
    }
  }
  const int nh = static_cast<int>(hops.size());
  const int nj = static_cast<int>(fops.size());
  for (int a = 0; a < nj; ++a) {
    Polynomial slack;
    slack[Monomial::product(nh + nj + a, nh + nj + a)] = 1.0;
    slack[Monomial::var(nh + a)] = -1.0;
    sys.add_equation(std::move(slack));
  }
  out.n_e = sys.num_equations();
  out.n_u = static_cast<std::size_t>(sys.num_vars());
  return out;
}

double verify_solution(const LiouvillianAnsatz& ansatz, const std::vector<double>& assignment, const PauliSum& target) {
  const std::size_t nh = ansatz.hamiltonian().size();
  const std::size_t nj = ansatz.jumps().size();
  if (assignment.size() != nh + 2 * nj && assignment.size() != nh + nj) {
    throw ValidationError("verify_solution: assignment size does not match the ansatz");
  }
  std::vector<double> h(assignment.begin(), assignment.begin() + static_cast<std::ptrdiff_t>(nh));
  std::vector<double> rates(assignment.begin() + static_cast<std::ptrdiff_t>(nh),
                            assignment.begin() + static_cast<std::ptrdiff_t>(nh + nj));
  for (double& r : rates) {
    if (r < -1e-12) throw ValidationError("verify_solution: negative rate " + std::to_string(r));
    r = std::max(r, 0.0);
  }
  return ldl_symbolic(ansatz.instantiate(h, rates)).max_abs_diff(target);
}

}  // namespace lg
