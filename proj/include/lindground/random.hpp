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

#pragma once

#include <cstdint>
#include <initializer_list>

#include "lindground/pauli.hpp"

namespace lg {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Order-sensitive hash of several words, used to derive per-row and
/// per-term seeds.
constexpr std::uint64_t mix_seed(std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = 0x6A09E667F3BCC909ULL;
  for (auto w : words) h = mix64(h ^ mix64(w));
  return h;
}

/// Counter-based generator: output k of stream s under seed x is a pure
/// function of (x, s, k), so streams can be consumed in any order.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(mix_seed({seed, stream})) {}

  std::uint64_t next_u64() { return mix64(key_ ^ mix64(counter_++)); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (one value per call, the pair's twin is dropped).
  double normal();

  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Haar-like random unit vector of dimension 2^n (normalized complex Gaussian).
ComplexVector random_state(int n, CounterRng& rng);

/// Random full-rank (or rank-limited) density matrix: normalized G G†.
ComplexMatrix random_density_matrix(int n, CounterRng& rng, int rank = 0);

/// Random Hermitian matrix with Gaussian entries.
ComplexMatrix random_hermitian(Eigen::Index dim, CounterRng& rng);

/// Random unitary from the QR factorization of a complex Gaussian matrix.
ComplexMatrix random_unitary(Eigen::Index dim, CounterRng& rng);

/// Random Pauli sum with `terms` distinct strings and Gaussian complex weights;
/// `hermitian` makes every weight real.
PauliSum random_pauli_sum(int n, int terms, CounterRng& rng, bool hermitian);

}  // namespace lg
