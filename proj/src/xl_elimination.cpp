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
#include <ostream>

#include <gmpxx.h>
#include <Eigen/Eigenvalues>

#include "lindground/format.hpp"
#include "lindground/xl.hpp"

namespace lg {

std::size_t LinearizedSystem::nnz() const {
  std::size_t total = 0;
  for (const auto& r : rows) total += r.size();
  return total;
}

double LinearizedSystem::density() const {
  if (rows.empty() || columns.empty()) return 0.0;
  return static_cast<double>(nnz()) / (static_cast<double>(rows.size()) * static_cast<double>(columns.size()));
}

double LinearizedSystem::rhs(std::size_t r) const {
  const auto& row = rows.at(r);
  const int constant = static_cast<int>(columns.size()) - 1;
  if (!row.empty() && row.back().first == constant) return -row.back().second;
  return 0.0;
}

void LinearizedSystem::write_matrix_market(std::ostream& out) const {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << rows.size() << ' ' << columns.size() << ' ' << nnz() << '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [c, v] : rows[r]) out << r + 1 << ' ' << c + 1 << ' ' << format_double(v) << '\n';
  }
}

LinearizedSystem extend_and_linearize(const QuadraticSystem& sys, int d) {
  if (d < 2) throw ValidationError("extend_and_linearize: D must be at least 2");
  LinearizedSystem lin;
  lin.columns = monomials_up_to(sys.num_vars(), d);
  std::map<Monomial, int, GradedLexOrder> index;
  for (std::size_t c = 0; c < lin.columns.size(); ++c) index.emplace(lin.columns[c], static_cast<int>(c));
  const std::vector<Monomial> multipliers = monomials_up_to(sys.num_vars(), d - 2);
  for (const auto& eq : sys.equations()) {
    for (const auto& g : multipliers) {
      SparseRow row;
      row.reserve(eq.size());
      for (const auto& [m, c] : eq) row.emplace_back(index.at(m * g), c);
      std::sort(row.begin(), row.end());
      lin.rows.push_back(std::move(row));
    }
  }
  return lin;
}

// ---------------------------------------------------------------------------
// Gauss-Jordan elimination over doubles or exact rationals

namespace {

template <class T>
struct Arith;

template <>
struct Arith<double> {
  static double from(double v) { return v; }
  static double to_double(double v) { return v; }
  static double magnitude(double v) { return std::abs(v); }
  // Cancellation below 1e-10 of the operands is treated as an exact zero.
  static bool cancels(double result, double a, double b) {
    return std::abs(result) <= 1e-10 * std::max(std::abs(a), std::abs(b));
  }
};

template <>
struct Arith<mpq_class> {
  static mpq_class from(double v) { return mpq_class(v); }
  static double to_double(const mpq_class& v) { return v.get_d(); }
  static mpq_class magnitude(const mpq_class& v) { return abs(v); }
  static bool cancels(const mpq_class& result, const mpq_class&, const mpq_class&) { return sgn(result) == 0; }
};

template <class T>
using Row = std::vector<std::pair<int, T>>;

template <class T>
const T* find_entry(const Row<T>& row, int col) {
  auto it = std::lower_bound(row.begin(), row.end(), col, [](const auto& e, int c) { return e.first < c; });
  return it != row.end() && it->first == col ? &it->second : nullptr;
}

template <class T>
std::vector<Row<T>> gauss_jordan(std::vector<Row<T>> rows, int ncols, double pivot_tol) {
  using A = Arith<T>;
  const std::size_t nrows = rows.size();
  std::vector<std::vector<int>> col_rows(static_cast<std::size_t>(ncols));
  std::vector<double> scale(nrows, 0.0);
  for (std::size_t r = 0; r < nrows; ++r) {
    for (const auto& [c, v] : rows[r]) {
      col_rows[static_cast<std::size_t>(c)].push_back(static_cast<int>(r));
      scale[r] = std::max(scale[r], std::abs(A::to_double(v)));
    }
  }
  std::vector<int> pivot_col(nrows, -1);
  std::vector<int> order;

  for (int c = 0; c < ncols; ++c) {
    auto& holders = col_rows[static_cast<std::size_t>(c)];
    std::sort(holders.begin(), holders.end());
    holders.erase(std::unique(holders.begin(), holders.end()), holders.end());

    int best = -1;
    T best_mag{};
    for (int r : holders) {
      if (pivot_col[static_cast<std::size_t>(r)] != -1) continue;
      auto& row = rows[static_cast<std::size_t>(r)];
      const T* v = find_entry(row, c);
      if (!v) continue;
      if constexpr (std::is_same_v<T, double>) {
        double rowmax = 0.0;
        for (const auto& e : row) rowmax = std::max(rowmax, std::abs(e.second));
        if (std::abs(*v) < pivot_tol * rowmax || std::abs(*v) < 1e-10 * scale[static_cast<std::size_t>(r)]) {
          // Numerical noise: drop the entry.
          std::erase_if(row, [c](const auto& e) { return e.first == c; });
          continue;
        }
      }
      const T mag = A::magnitude(*v);
      if (best == -1 || mag > best_mag) {
        best = r;
        best_mag = mag;
      }
    }
    if (best == -1) {
      holders.clear();
      continue;
    }

    auto& prow = rows[static_cast<std::size_t>(best)];
    const T inv = T(1) / *find_entry(prow, c);
    for (auto& e : prow) e.second = e.second * inv;
    for (auto& e : prow) {
      if (e.first == c) e.second = T(1);
    }
    pivot_col[static_cast<std::size_t>(best)] = c;
    order.push_back(best);

    for (int r : holders) {
      if (r == best) continue;
      auto& row = rows[static_cast<std::size_t>(r)];
      const T* vp = find_entry(row, c);
      if (!vp) continue;
      const T f = *vp;
      Row<T> merged;
      merged.reserve(row.size() + prow.size());
      std::size_t i = 0, j = 0;
      while (i < row.size() || j < prow.size()) {
        if (j == prow.size() || (i < row.size() && row[i].first < prow[j].first)) {
          merged.push_back(std::move(row[i++]));
        } else if (i == row.size() || prow[j].first < row[i].first) {
          const int col = prow[j].first;
          if (col != c) {
            merged.emplace_back(col, T(-f * prow[j].second));
            col_rows[static_cast<std::size_t>(col)].push_back(r);
          }
          ++j;
        } else {
          const int col = row[i].first;
          if (col != c) {
            const T prod = f * prow[j].second;
            T diff = row[i].second - prod;
            if (!A::cancels(diff, row[i].second, prod)) merged.emplace_back(col, std::move(diff));
          }
          ++i;
          ++j;
        }
      }
      row = std::move(merged);
    }
    holders.assign(1, best);
  }

  std::vector<Row<T>> out;
  std::vector<std::pair<int, int>> by_pivot;
  for (int r : order) by_pivot.emplace_back(pivot_col[static_cast<std::size_t>(r)], r);
  std::sort(by_pivot.begin(), by_pivot.end());
  for (const auto& [c, r] : by_pivot) out.push_back(std::move(rows[static_cast<std::size_t>(r)]));
  return out;
}

}  // namespace

LinearizedSystem eliminate(const LinearizedSystem& lin, const EliminationOptions& opt) {
  LinearizedSystem out;
  out.columns = lin.columns;
  const int ncols = static_cast<int>(lin.columns.size());
  if (opt.exact_rational) {
    if (ncols > 200) throw ValidationError("eliminate: exact rational mode is limited to 200 columns");
    std::vector<Row<mpq_class>> rows;
    for (const auto& r : lin.rows) {
      Row<mpq_class> q;
      for (const auto& [c, v] : r) q.emplace_back(c, mpq_class(v));
      rows.push_back(std::move(q));
    }
    for (auto& r : gauss_jordan(std::move(rows), ncols, opt.pivot_tol)) {
      SparseRow d;
      for (const auto& [c, v] : r) d.emplace_back(c, v.get_d());
      out.rows.push_back(std::move(d));
    }
    return out;
  }
  out.rows = gauss_jordan(lin.rows, ncols, opt.pivot_tol);
  return out;
}

XlRound xl_round(const QuadraticSystem& sys, int d, const EliminationOptions& opt) {
  XlRound round;
  round.linearized = extend_and_linearize(sys, d);
  round.eliminated = eliminate(round.linearized, opt);
  for (const auto& row : round.eliminated.rows) {
    std::optional<int> var;
    bool univariate = true;
    bool constant_only = true;
    for (const auto& [c, v] : row) {
      const Monomial& m = round.eliminated.columns[static_cast<std::size_t>(c)];
      if (m.is_constant()) continue;
      constant_only = false;
      const auto sv = m.single_variable();
      if (!sv || (var && *var != *sv)) {
        univariate = false;
        break;
      }
      var = sv;
    }
    if (constant_only) {
      if (!row.empty()) round.inconsistent = true;
      continue;
    }
    if (!univariate) continue;
    Univariate u{*var, std::vector<double>(static_cast<std::size_t>(d) + 1, 0.0)};
    for (const auto& [c, v] : row) u.coeffs[static_cast<std::size_t>(round.eliminated.columns[static_cast<std::size_t>(c)].degree())] = v;
    round.univariates.push_back(std::move(u));
  }
  round.need_higher_d = round.univariates.empty() && !round.inconsistent;
  return round;
}

std::vector<double> real_roots(const std::vector<double>& coeffs) {
  double cmax = 0.0;
  for (double c : coeffs) cmax = std::max(cmax, std::abs(c));
  if (cmax == 0.0) return {};
  std::size_t deg = coeffs.size() - 1;
  while (deg > 0 && std::abs(coeffs[deg]) <= 1e-12 * cmax) --deg;
  if (deg == 0) return {};

  std::vector<double> roots;
  if (deg == 1) {
    roots.push_back(-coeffs[0] / coeffs[1]);
  } else if (deg == 2) {
    const double a = coeffs[2], b = coeffs[1], c = coeffs[0];
    double disc = b * b - 4 * a * c;
    // A slightly negative discriminant within rounding is a double root.
    if (disc < 0.0 && -disc <= 1e-12 * (b * b + std::abs(4 * a * c))) disc = 0.0;
    if (disc >= 0.0) {
      const double s = std::sqrt(disc);
      const double q = -0.5 * (b + (b >= 0 ? s : -s));
      if (q != 0.0) {
        roots.push_back(q / a);
        roots.push_back(c / q);
      } else {
        roots.push_back(0.0);
      }
    }
  } else {
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(deg), static_cast<Eigen::Index>(deg));
    for (std::size_t i = 1; i < deg; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < deg; ++i) {
      comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) = -coeffs[i] / coeffs[deg];
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      const auto z = es.eigenvalues()(k);
      if (std::abs(z.imag()) < 1e-8 * std::max(1.0, std::abs(z))) {
        // Newton polish on the real axis.
        double x = z.real();
        for (int it = 0; it < 3; ++it) {
          double p = 0.0, dp = 0.0;
          for (std::size_t i = deg + 1; i-- > 0;) {
            dp = dp * x + p;
            p = p * x + coeffs[i];
          }
          if (dp == 0.0) break;
          x -= p / dp;
        }
        roots.push_back(x);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> out;
  for (double r : roots) {
    if (out.empty() || std::abs(r - out.back()) > 1e-9 * std::max(1.0, std::abs(r))) out.push_back(r);
  }
  return out;
}

}  // namespace lg
