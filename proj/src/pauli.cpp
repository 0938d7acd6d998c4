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

#include "lindground/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <ostream>
#include <string>

namespace lg {

namespace {

std::uint64_t low_mask(int n) { return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1); }

int bit_of(int n, int qubit) { return n - 1 - qubit; }

// i^k for k mod 4.
Complex i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

void check_same_size(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": qubit counts differ (" + std::to_string(a) + " vs " +
                         std::to_string(b) + ")");
  }
}

}  // namespace

char to_char(Pauli p) {
  static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
  return kLetters[static_cast<int>(p)];
}

int dense_qubit_cap() {
  if (const char* env = std::getenv("LG_DENSE_CAP"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 30) return static_cast<int>(v);
  }
  return 12;
}

void require_dense(int qubits, std::string_view what) {
  int cap = dense_qubit_cap();
  if (qubits > cap) {
    throw CapacityError(std::string(what) + ": " + std::to_string(qubits) +
                        " qubits exceeds the dense cap of " + std::to_string(cap));
  }
}

// ---------------------------------------------------------------------------
// PauliString

PauliString::PauliString(int n) : n_(n) {
  if (n < 0 || n > kMaxQubits) throw DimensionError("PauliString: unsupported qubit count " + std::to_string(n));
}

PauliString PauliString::parse(std::string_view letters) {
  PauliString p(static_cast<int>(letters.size()));
  for (int q = 0; q < p.n_; ++q) {
    switch (letters[q]) {
      case 'I':
        break;
      case 'X':
        p.set(q, Pauli::X);
        break;
      case 'Y':
        p.set(q, Pauli::Y);
        break;
      case 'Z':
        p.set(q, Pauli::Z);
        break;
      default:
        throw ParseError("invalid Pauli letter '" + std::string(1, letters[q]) + "' in \"" +
                         std::string(letters) + "\"");
    }
  }
  return p;
}

PauliString PauliString::from_masks(int n, std::uint64_t x, std::uint64_t z) {
  PauliString p(n);
  p.x_ = x & low_mask(n);
  p.z_ = z & low_mask(n);
  return p;
}

Pauli PauliString::operator[](int qubit) const {
  int b = bit_of(n_, qubit);
  bool x = (x_ >> b) & 1U;
  bool z = (z_ >> b) & 1U;
  if (x && z) return Pauli::Y;
  if (x) return Pauli::X;
  if (z) return Pauli::Z;
  return Pauli::I;
}

void PauliString::set(int qubit, Pauli p) {
  if (qubit < 0 || qubit >= n_) throw DimensionError("PauliString::set: qubit out of range");
  std::uint64_t m = std::uint64_t{1} << bit_of(n_, qubit);
  x_ &= ~m;
  z_ &= ~m;
  if (p == Pauli::X || p == Pauli::Y) x_ |= m;
  if (p == Pauli::Z || p == Pauli::Y) z_ |= m;
}

int PauliString::weight() const { return std::popcount(x_ | z_); }

int PauliString::y_count() const { return std::popcount(x_ & z_); }

PauliString PauliString::slice(int begin, int count) const {
  if (begin < 0 || count < 0 || begin + count > n_) throw DimensionError("PauliString::slice out of range");
  int shift = n_ - begin - count;
  return from_masks(count, x_ >> shift, z_ >> shift);
}

PauliString PauliString::concat(const PauliString& tail) const {
  int n = n_ + tail.n_;
  if (n > kMaxQubits) throw DimensionError("PauliString::concat: more than 64 qubits");
  if (n == 0) return PauliString(0);
  std::uint64_t x = tail.n_ >= 64 ? tail.x_ : ((x_ << tail.n_) | tail.x_);
  std::uint64_t z = tail.n_ >= 64 ? tail.z_ : ((z_ << tail.n_) | tail.z_);
  return from_masks(n, x, z);
}

std::string PauliString::str() const {
  std::string s(static_cast<std::size_t>(n_), 'I');
  for (int q = 0; q < n_; ++q) s[q] = to_char((*this)[q]);
  return s;
}

std::strong_ordering operator<=>(const PauliString& a, const PauliString& b) {
  if (a.n_ != b.n_) return a.n_ <=> b.n_;
  std::uint64_t diff = (a.x_ ^ b.x_) | (a.z_ ^ b.z_);
  if (diff == 0) return std::strong_ordering::equal;
  // The highest differing bit is the first differing qubit.
  int bit = 63 - std::countl_zero(diff);
  auto code = [bit](const PauliString& p) {
    bool x = (p.x_ >> bit) & 1U;
    bool z = (p.z_ >> bit) & 1U;
    return x ? (z ? 2 : 1) : (z ? 3 : 0);
  };
  return code(a) <=> code(b);
}

std::ostream& operator<<(std::ostream& os, const PauliString& p) { return os << p.str(); }

PauliProduct pauli_mul(const PauliString& a, const PauliString& b) {
  check_same_size(a.size(), b.size(), "pauli_mul");
  // Each string is i^{|x&z|} X^x Z^z; moving Z^{z_a} past X^{x_b} costs (-1)^{|z_a & x_b|}.
  std::uint64_t x = a.x_mask() ^ b.x_mask();
  std::uint64_t z = a.z_mask() ^ b.z_mask();
  int k = std::popcount(a.x_mask() & a.z_mask()) + std::popcount(b.x_mask() & b.z_mask()) -
          std::popcount(x & z) + 2 * std::popcount(a.z_mask() & b.x_mask());
  return {i_pow(k), PauliString::from_masks(a.size(), x, z)};
}

// ---------------------------------------------------------------------------
// PauliSum

PauliSum PauliSum::identity(int n, Complex c) {
  PauliSum s(n);
  s.add(PauliString(n), c);
  return s;
}

PauliSum PauliSum::term(const PauliString& p, Complex c) {
  PauliSum s(p.size());
  s.add(p, c);
  return s;
}

PauliSum PauliSum::from_terms(std::initializer_list<std::pair<std::string_view, Complex>> terms) {
  if (terms.size() == 0) return PauliSum(0);
  PauliSum s(static_cast<int>(terms.begin()->first.size()));
  for (const auto& [letters, c] : terms) s.add(PauliString::parse(letters), c);
  return s;
}

Complex PauliSum::coeff(const PauliString& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? Complex{} : it->second;
}

void PauliSum::add(const PauliString& p, Complex c) {
  check_same_size(n_, p.size(), "PauliSum::add");
  auto [it, inserted] = terms_.try_emplace(p, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) < kPruneTol) terms_.erase(it);
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  check_same_size(n_, other.n_, "PauliSum::operator+=");
  for (const auto& [p, c] : other.terms_) add(p, c);
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  check_same_size(n_, other.n_, "PauliSum::operator-=");
  for (const auto& [p, c] : other.terms_) add(p, -c);
  return *this;
}

PauliSum& PauliSum::operator*=(Complex c) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    if (std::abs(it->second) < kPruneTol) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  check_same_size(a.n_, b.n_, "PauliSum product");
  PauliSum out(a.n_);
  for (const auto& [pa, ca] : a.terms_) {
    for (const auto& [pb, cb] : b.terms_) {
      auto [phase, prod] = pauli_mul(pa, pb);
      auto [it, inserted] = out.terms_.try_emplace(prod, phase * ca * cb);
      if (!inserted) it->second += phase * ca * cb;
    }
  }
  std::erase_if(out.terms_, [](const auto& kv) { return std::abs(kv.second) < PauliSum::kPruneTol; });
  return out;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(n_);
  for (const auto& [p, c] : terms_) out.terms_.emplace(p, std::conj(c));
  return out;
}

PauliSum PauliSum::conjugate() const {
  PauliSum out(n_);
  for (const auto& [p, c] : terms_) out.terms_.emplace(p, (p.y_count() % 2 ? -1.0 : 1.0) * std::conj(c));
  return out;
}

PauliSum PauliSum::transpose() const {
  PauliSum out(n_);
  for (const auto& [p, c] : terms_) out.terms_.emplace(p, (p.y_count() % 2 ? -1.0 : 1.0) * c);
  return out;
}

bool PauliSum::is_hermitian(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(), [tol](const auto& kv) { return std::abs(kv.second.imag()) <= tol; });
}

double PauliSum::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [p, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

double PauliSum::max_abs_diff(const PauliSum& other) const {
  check_same_size(n_, other.n_, "PauliSum::max_abs_diff");
  double m = 0.0;
  for (const auto& [p, c] : terms_) m = std::max(m, std::abs(c - other.coeff(p)));
  for (const auto& [p, c] : other.terms_) {
    if (!terms_.contains(p)) m = std::max(m, std::abs(c));
  }
  return m;
}

double PauliSum::coeff_norm_sq() const {
  double s = 0.0;
  for (const auto& [p, c] : terms_) s += std::norm(c);
  return s;
}

PauliSum tensor(const PauliSum& a, const PauliSum& b) {
  PauliSum out(a.num_qubits() + b.num_qubits());
  for (const auto& [pa, ca] : a) {
    for (const auto& [pb, cb] : b) out.add(pa.concat(pb), ca * cb);
  }
  return out;
}

ComplexMatrix to_matrix(const PauliSum& s) {
  int n = s.num_qubits();
  require_dense(n, "to_matrix");
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (const auto& [p, c] : s) {
    const std::uint64_t x = p.x_mask();
    const std::uint64_t z = p.z_mask();
    const Complex base = c * i_pow(std::popcount(x & z));
    for (Eigen::Index col = 0; col < dim; ++col) {
      const auto row = static_cast<Eigen::Index>(static_cast<std::uint64_t>(col) ^ x);
      m(row, col) += (std::popcount(z & static_cast<std::uint64_t>(col)) % 2 ? -base : base);
    }
  }
  return m;
}

PauliSum pauli_decompose(const ComplexMatrix& m) {
  const Eigen::Index dim = m.rows();
  if (dim != m.cols() || dim < 1 || (dim & (dim - 1)) != 0) {
    throw ShapeError("pauli_decompose: matrix must be square with power-of-two dimension");
  }
  const int n = std::countr_zero(static_cast<std::uint64_t>(dim));
  PauliSum out(n);
  std::vector<Complex> f(static_cast<std::size_t>(dim));
  for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(dim); ++x) {
    for (std::uint64_t c = 0; c < static_cast<std::uint64_t>(dim); ++c) {
      f[c] = m(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c ^ x));
    }
    // Walsh-Hadamard transform: f[z] <- sum_c (-1)^{z.c} f[c].
    for (std::size_t h = 1; h < f.size(); h <<= 1) {
      for (std::size_t i = 0; i < f.size(); i += 2 * h) {
        for (std::size_t j = i; j < i + h; ++j) {
          Complex u = f[j];
          Complex v = f[j + h];
          f[j] = u + v;
          f[j + h] = u - v;
        }
      }
    }
    for (std::uint64_t z = 0; z < static_cast<std::uint64_t>(dim); ++z) {
      Complex c = f[z] * i_pow(std::popcount(x & z)) / static_cast<double>(dim);
      if (std::abs(c) >= PauliSum::kPruneTol) out.add(PauliString::from_masks(n, x, z), c);
    }
  }
  return out;
}

double exchange_symmetry_residual(const PauliSum& doubled) {
  const int total = doubled.num_qubits();
  if (total % 2 != 0) throw DimensionError("exchange_symmetry_residual: odd qubit count");
  const int n = total / 2;
  double worst = 0.0;
  for (const auto& [p, g] : doubled) {
    PauliString row = p.slice(0, n);
    PauliString col = p.slice(n, n);
    double sign = (row.y_count() + col.y_count()) % 2 ? -1.0 : 1.0;
    Complex partner = doubled.coeff(col.concat(row));
    worst = std::max(worst, std::abs(partner - sign * std::conj(g)));
  }
  return worst;
}

}  // namespace lg
