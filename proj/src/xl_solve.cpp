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
#include <chrono>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "lindground/xl.hpp"

namespace lg {
namespace {

using Assignment = std::vector<std::optional<double>>;

struct Reduced {
  QuadraticSystem local;
  std::vector<int> global_of;  // local variable -> global variable
  bool consistent = true;
};

double power(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// Substitutes every assigned variable and drops equations that became
// constant after checking them.
Reduced reduce(const QuadraticSystem& sys, const Assignment& a) {
  Reduced red;
  std::vector<int> local_of(a.size(), -1);
  for (std::size_t v = 0; v < a.size(); ++v) {
    if (a[v]) continue;
    local_of[v] = red.local.add_variable(sys.variables()[v].name, sys.variables()[v].role);
    red.global_of.push_back(static_cast<int>(v));
  }
  for (const auto& eq : sys.equations()) {
    std::map<Monomial, std::pair<double, double>, GradedLexOrder> acc;  // value, magnitude
    for (const auto& [m, c] : eq) {
      double coeff = c;
      std::vector<int> rest;
      for (int v : m.vars()) {
        if (a[static_cast<std::size_t>(v)]) {
          coeff *= *a[static_cast<std::size_t>(v)];
        } else {
          rest.push_back(local_of[static_cast<std::size_t>(v)]);
        }
      }
      auto& slot = acc[Monomial(std::move(rest))];
      slot.first += coeff;
      slot.second += std::abs(coeff);
    }
    Polynomial p;
    double abs_total = 0.0;
    double const_value = 0.0;
    for (const auto& [m, vs] : acc) {
      abs_total += vs.second;
      if (m.is_constant()) {
        const_value = vs.first;
        continue;
      }
      if (std::abs(vs.first) > 1e-10 * vs.second) p.emplace(m, vs.first);
    }
    if (p.empty()) {
      if (std::abs(const_value) > 1e-6 * abs_total + 1e-9) red.consistent = false;
      continue;
    }
    if (const_value != 0.0) p.emplace(Monomial(), const_value);
    red.local.add_equation(std::move(p));
  }
  return red;
}

double derivative(const Monomial& m, int var, const std::vector<double>& x) {
  const auto& vs = m.vars();
  int count = static_cast<int>(std::count(vs.begin(), vs.end(), var));
  if (count == 0) return 0.0;
  double r = count * power(x[static_cast<std::size_t>(var)], count - 1);
  for (int v : vs) {
    if (v != var) r *= x[static_cast<std::size_t>(v)];
  }
  return r;
}

// Gauss-Newton refinement on the full system; only improvements are kept.
std::vector<double> polish(const QuadraticSystem& sys, std::vector<double> x) {
  const auto& eqs = sys.equations();
  const auto nv = static_cast<Eigen::Index>(sys.num_vars());
  const auto ne = static_cast<Eigen::Index>(eqs.size());
  if (nv == 0 || ne == 0) return x;
  double best = sys.residual(x);
  for (int it = 0; it < 8 && best > 0.0; ++it) {
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(ne, nv);
    Eigen::VectorXd f(ne);
    for (Eigen::Index e = 0; e < ne; ++e) {
      const auto& eq = eqs[static_cast<std::size_t>(e)];
      f(e) = evaluate(eq, x);
      for (const auto& [m, c] : eq) {
        for (int v : m.vars()) jac(e, v) = 0.0;
      }
      for (const auto& [m, c] : eq) {
        std::vector<int> seen;
        for (int v : m.vars()) {
          if (std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
          seen.push_back(v);
          jac(e, v) += c * derivative(m, v, x);
        }
      }
    }
    const Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-f);
    std::vector<double> trial = x;
    for (Eigen::Index v = 0; v < nv; ++v) trial[static_cast<std::size_t>(v)] += step(v);
    const double r = sys.residual(trial);
    if (!std::isfinite(r) || r >= best) break;
    best = r;
    x = std::move(trial);
  }
  return x;
}

class Solver {
 public:
  Solver(const QuadraticSystem& sys, const XlOptions& opt, XlResult& result) : sys_(sys), opt_(opt), result_(result) {}

  bool dfs(Assignment& a) {
    if (++result_.nodes > opt_.node_budget) {
      throw BudgetExceededError("xl_solve: node budget of " + std::to_string(opt_.node_budget) + " exceeded", a);
    }
    Reduced red = reduce(sys_, a);
    if (!red.consistent) return false;
    const QuadraticSystem& loc = red.local;
    if (loc.num_vars() == 0) return finish(a);

    // Variables no equation constrains, and rates tied only to their own
    // slack, are set to zero.
    std::vector<bool> seen(static_cast<std::size_t>(loc.num_vars()), false);
    std::vector<bool> only_slack(static_cast<std::size_t>(loc.num_vars()), true);
    for (const auto& eq : loc.equations()) {
      std::vector<int> present;
      bool slack_shape = true;
      for (const auto& [m, c] : eq) {
        for (int v : m.vars()) present.push_back(v);
        if (m.is_constant()) continue;
        const auto sv = m.single_variable();
        if (!sv) {
          slack_shape = false;
        } else if (m.degree() == 1) {
          slack_shape = slack_shape && loc.variables()[static_cast<std::size_t>(*sv)].role == VarRole::Rate;
        } else {
          slack_shape = slack_shape && m.degree() == 2 && loc.variables()[static_cast<std::size_t>(*sv)].role == VarRole::Slack;
        }
      }
      for (int v : present) {
        seen[static_cast<std::size_t>(v)] = true;
        if (!slack_shape) only_slack[static_cast<std::size_t>(v)] = false;
      }
    }
    std::vector<int> forced;
    for (int v = 0; v < loc.num_vars(); ++v) {
      const auto role = loc.variables()[static_cast<std::size_t>(v)].role;
      if (!seen[static_cast<std::size_t>(v)] || (role == VarRole::Rate && only_slack[static_cast<std::size_t>(v)])) {
        forced.push_back(red.global_of[static_cast<std::size_t>(v)]);
      }
    }
    if (!forced.empty()) return descend(a, forced, std::vector<double>(forced.size(), 0.0));

    XlRound round;
    bool found = false;
    for (int d = opt_.d_start; d <= opt_.d_max; ++d) {
      round = xl_round(loc, d, EliminationOptions{1e-12, opt_.exact_rational});
      ++result_.rounds;
      if (result_.rounds == 1) result_.matrix_density = round.linearized.density();
      result_.d_used = std::max(result_.d_used, d);
      if (round.inconsistent) return false;
      if (!round.univariates.empty()) {
        found = true;
        break;
      }
    }
    if (!found) return false;

    std::vector<int> lin_vars;
    std::vector<double> lin_vals;
    const Univariate* pick = nullptr;
    std::vector<double> pick_roots;
    for (const auto& u : round.univariates) {
      auto roots = real_roots(u.coeffs);
      if (roots.empty()) return false;
      double cmax = 0.0;
      for (double c : u.coeffs) cmax = std::max(cmax, std::abs(c));
      std::size_t deg = u.coeffs.size() - 1;
      while (deg > 0 && std::abs(u.coeffs[deg]) <= 1e-12 * cmax) --deg;
      const int g = red.global_of[static_cast<std::size_t>(u.var)];
      if (deg == 1) {
        auto it = std::find(lin_vars.begin(), lin_vars.end(), g);
        if (it != lin_vars.end()) {
          const double prev = lin_vals[static_cast<std::size_t>(it - lin_vars.begin())];
          if (std::abs(prev - roots[0]) > 1e-6 * std::max(1.0, std::abs(prev))) return false;
          continue;
        }
        lin_vars.push_back(g);
        lin_vals.push_back(roots[0]);
      } else if (!pick || roots.size() < pick_roots.size()) {
        pick = &u;
        pick_roots = std::move(roots);
      }
    }
    if (!lin_vars.empty()) return descend(a, lin_vars, lin_vals);

    const int g = red.global_of[static_cast<std::size_t>(pick->var)];
    if (pick_roots.size() > 1) {
      std::vector<std::pair<double, double>> scored;
      for (double r : pick_roots) {
        a[static_cast<std::size_t>(g)] = r;
        scored.emplace_back(score(a), r);
      }
      a[static_cast<std::size_t>(g)].reset();
      std::stable_sort(scored.begin(), scored.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      for (std::size_t i = 0; i < scored.size(); ++i) pick_roots[i] = scored[i].second;
    }
    for (double r : pick_roots) {
      if (descend(a, {g}, {r})) return true;
    }
    return false;
  }

  std::vector<double> solution;

 private:
  bool descend(Assignment& a, const std::vector<int>& vars, const std::vector<double>& vals) {
    for (std::size_t i = 0; i < vars.size(); ++i) a[static_cast<std::size_t>(vars[i])] = vals[i];
    const bool ok = dfs(a);
    if (!ok) {
      for (int v : vars) a[static_cast<std::size_t>(v)].reset();
    }
    return ok;
  }

  // Residual of the equations that the partial assignment fully determines.
  double score(const Assignment& a) const {
    double total = 0.0;
    for (const auto& eq : sys_.equations()) {
      double value = 0.0;
      bool complete = true;
      for (const auto& [m, c] : eq) {
        double t = c;
        for (int v : m.vars()) {
          if (!a[static_cast<std::size_t>(v)]) {
            complete = false;
            break;
          }
          t *= *a[static_cast<std::size_t>(v)];
        }
        if (!complete) break;
        value += t;
      }
      if (complete) total += value * value;
    }
    return total;
  }

  bool finish(const Assignment& a) {
    std::vector<double> x(a.size());
    for (std::size_t v = 0; v < a.size(); ++v) x[v] = *a[v];
    x = polish(sys_, std::move(x));
    const double r = sys_.residual(x);
    if (!(r < opt_.residual_tol)) return false;
    result_.residual = r;
    solution = std::move(x);
    return true;
  }

  const QuadraticSystem& sys_;
  const XlOptions& opt_;
  XlResult& result_;
};

}  // namespace

XlResult xl_solve(const QuadraticSystem& sys, const XlOptions& opt) {
  if (opt.d_start < 2 || opt.d_max < opt.d_start) throw ValidationError("xl_solve: need 2 <= d_start <= d_max");
  const auto start = std::chrono::steady_clock::now();
  XlResult result;
  result.n_e = sys.num_equations();
  result.n_u = static_cast<std::size_t>(sys.num_vars());
  Solver solver(sys, opt, result);
  Assignment a(static_cast<std::size_t>(sys.num_vars()));
  if (solver.dfs(a)) {
    result.status = XlStatus::Solved;
    result.assignment = std::move(solver.solution);
  } else {
    result.status = XlStatus::Unsolvable;
  }
  result.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace lg
