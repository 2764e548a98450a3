// Copyright 2026 The alab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ALAB_PROBLEMS_HPP
#define ALAB_PROBLEMS_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "alab/errors.hpp"
#include "alab/qstate.hpp"
#include "alab/rng.hpp"

namespace alab {

/// Classical cost h(z) on z in [0, 2^n) with its minimum and ground set cached.
class CostFunction {
 public:
  explicit CostFunction(std::vector<double> values)
      : num_qubits_(qubits_for(values.size())), values_(std::move(values)) {
    for (double v : values_)
      detail::require(std::isfinite(v) && v >= 0.0, "cost values must be finite and nonnegative");
    min_value_ = *std::min_element(values_.begin(), values_.end());
    // Built-in costs are integers, so equality is exact for them; the relative
    // guard only matters for user-supplied real costs.
    const double tol = 1e-12 * std::max(1.0, std::abs(min_value_));
    for (std::size_t z = 0; z < values_.size(); ++z)
      if (values_[z] - min_value_ <= tol) ground_set_.push_back(z);
  }

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  double operator()(std::size_t z) const { return values_[z]; }
  double min_value() const { return min_value_; }
  const std::vector<std::size_t>& ground_set() const { return ground_set_; }
  std::size_t degeneracy() const { return ground_set_.size(); }

  friend bool operator==(const CostFunction& a, const CostFunction& b) {
    return a.values_ == b.values_;
  }

 private:
  int num_qubits_;
  std::vector<double> values_;
  double min_value_ = 0.0;
  std::vector<std::size_t> ground_set_;
};

/// h(z) = popcount(z)
inline CostFunction hamming_cost(int num_qubits) {
  const std::size_t dim = dimension_for(num_qubits);
  std::vector<double> values(dim);
  for (std::size_t z = 0; z < dim; ++z) values[z] = std::popcount(z);
  return CostFunction(std::move(values));
}

/// 0 on the marked item, 1 elsewhere.
inline CostFunction grover_cost(int num_qubits, std::size_t marked) {
  const std::size_t dim = dimension_for(num_qubits);
  detail::require(marked < dim, "grover_cost: marked item out of range");
  std::vector<double> values(dim, 1.0);
  values[marked] = 0.0;
  return CostFunction(std::move(values));
}

// ---------------------------------------------------------------------------
// Exact Cover

using Clause = std::array<int, 3>;

/// Clauses over n bits, each demanding exactly one of its three bits set.
class ExactCoverInstance {
 public:
  ExactCoverInstance(int num_bits, std::vector<Clause> clauses)
      : num_bits_(num_bits), clauses_(std::move(clauses)) {
    detail::require(num_bits_ >= 3 && num_bits_ <= kMaxQubits,
                    "exact cover: bit count must lie in [3, 30]");
    for (const auto& c : clauses_) {
      for (int i : c)
        detail::require(i >= 0 && i < num_bits_, "exact cover: clause index out of range");
      detail::require(c[0] != c[1] && c[0] != c[2] && c[1] != c[2],
                      "exact cover: clause indices must be distinct");
    }
  }

  int num_bits() const { return num_bits_; }
  const std::vector<Clause>& clauses() const { return clauses_; }

  bool clause_satisfied(const Clause& c, std::uint64_t z) const {
    return ((z >> c[0]) & 1U) + ((z >> c[1]) & 1U) + ((z >> c[2]) & 1U) == 1U;
  }

  friend bool operator==(const ExactCoverInstance&, const ExactCoverInstance&) = default;

 private:
  int num_bits_;
  std::vector<Clause> clauses_;
};

/// Number of violated clauses.
inline CostFunction exact_cover_cost(const ExactCoverInstance& inst) {
  const std::size_t dim = dimension_for(inst.num_bits());
  std::vector<double> values(dim, 0.0);
  for (const auto& c : inst.clauses()) {
    const std::size_t a = std::size_t{1} << c[0];
    const std::size_t b = std::size_t{1} << c[1];
    const std::size_t d = std::size_t{1} << c[2];
    for (std::size_t z = 0; z < dim; ++z) {
      const int ones = ((z & a) != 0) + ((z & b) != 0) + ((z & d) != 0);
      if (ones != 1) values[z] += 1.0;
    }
  }
  return CostFunction(std::move(values));
}

/// Plain text: `n=<int>` then one `clause i j k` per line.
inline void write_instance(std::ostream& os, const ExactCoverInstance& inst) {
  os << "n=" << inst.num_bits() << '\n';
  for (const auto& c : inst.clauses()) os << "clause " << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
}

inline ExactCoverInstance read_instance(std::istream& is) {
  std::string line;
  int n = -1;
  std::vector<Clause> clauses;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("n=", 0) == 0) {
      n = std::stoi(line.substr(2));
      continue;
    }
    std::istringstream ls(line);
    std::string tag;
    Clause c{};
    if (!(ls >> tag >> c[0] >> c[1] >> c[2]) || tag != "clause")
      throw precondition_error("read_instance: malformed line '" + line + "'");
    clauses.push_back(c);
  }
  detail::require(n > 0, "read_instance: missing n= header");
  return ExactCoverInstance(n, std::move(clauses));
}

struct GenerationOptions {
  int max_restarts = 10000;
};

/// Random Exact Cover instance with exactly one satisfying assignment.
///
/// Clauses are uniform random triples of distinct bits, without repeating a
/// clause already present. After every addition the surviving satisfying
/// assignments are recounted by brute force; hitting zero discards the
/// instance and starts over, hitting one returns it.
inline ExactCoverInstance generate_exact_cover_usa(int num_bits, std::uint64_t seed,
                                                   const GenerationOptions& options = {}) {
  detail::require(num_bits >= 4 && num_bits <= 22, "generate_exact_cover_usa: n must lie in [4, 22]");
  Rng rng = make_rng(seed);
  const std::size_t dim = std::size_t{1} << num_bits;
  const std::size_t possible_clauses =
      static_cast<std::size_t>(num_bits) * (num_bits - 1) * (num_bits - 2) / 6;

  std::vector<std::uint32_t> survivors;
  for (int attempt = 0; attempt < options.max_restarts; ++attempt) {
    survivors.resize(dim);
    std::iota(survivors.begin(), survivors.end(), 0U);
    std::vector<Clause> clauses;
    std::set<Clause> used;
    while (used.size() < possible_clauses) {
      Clause c{};
      do {
        c[0] = static_cast<int>(uniform_below(rng, num_bits));
        c[1] = static_cast<int>(uniform_below(rng, num_bits));
        c[2] = static_cast<int>(uniform_below(rng, num_bits));
      } while (c[0] == c[1] || c[0] == c[2] || c[1] == c[2]);
      Clause key = c;
      std::sort(key.begin(), key.end());
      if (!used.insert(key).second) continue;
      clauses.push_back(c);
      std::erase_if(survivors, [&](std::uint32_t z) {
        return ((z >> c[0]) & 1U) + ((z >> c[1]) & 1U) + ((z >> c[2]) & 1U) != 1U;
      });
      if (survivors.size() <= 1) break;
    }
    if (survivors.size() == 1) return ExactCoverInstance(num_bits, std::move(clauses));
  }
  throw generation_exhausted("generate_exact_cover_usa: no instance with a unique solution after " +
                             std::to_string(options.max_restarts) + " restarts");
}

// ---------------------------------------------------------------------------
// Permutations

class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> forward) : forward_(std::move(forward)) {
    inverse_.assign(forward_.size(), forward_.size());
    for (std::size_t i = 0; i < forward_.size(); ++i) {
      const std::size_t j = forward_[i];
      if (j >= forward_.size() || inverse_[j] != forward_.size())
        throw precondition_error("permutation: forward map is not a bijection");
      inverse_[j] = i;
    }
  }

  static Permutation identity(std::size_t size) {
    std::vector<std::size_t> f(size);
    std::iota(f.begin(), f.end(), std::size_t{0});
    return Permutation(std::move(f));
  }

  static Permutation transposition(std::size_t size, std::size_t a, std::size_t b) {
    detail::require(a < size && b < size, "transposition: index out of range");
    std::vector<std::size_t> f(size);
    std::iota(f.begin(), f.end(), std::size_t{0});
    std::swap(f[a], f[b]);
    return Permutation(std::move(f));
  }

  std::size_t size() const { return forward_.size(); }
  std::size_t operator()(std::size_t i) const { return forward_[i]; }
  std::size_t inverse(std::size_t j) const { return inverse_[j]; }
  const std::vector<std::size_t>& forward() const { return forward_; }

  Permutation inverted() const { return Permutation(inverse_); }

  /// (this o other)(i) = this(other(i))
  Permutation compose(const Permutation& other) const {
    if (other.size() != size()) throw dimension_mismatch("compose: size mismatch");
    std::vector<std::size_t> f(size());
    for (std::size_t i = 0; i < size(); ++i) f[i] = forward_[other.forward_[i]];
    return Permutation(std::move(f));
  }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.forward_ == b.forward_;
  }

 private:
  std::vector<std::size_t> forward_;
  std::vector<std::size_t> inverse_;
};

/// Fisher-Yates shuffle driven by the library's portable bounded draw.
inline Permutation random_permutation(std::size_t size, std::uint64_t seed) {
  detail::require(size >= 1, "random_permutation: size must be >= 1");
  Rng rng = make_rng(seed);
  std::vector<std::size_t> f(size);
  std::iota(f.begin(), f.end(), std::size_t{0});
  for (std::size_t i = size - 1; i > 0; --i) std::swap(f[i], f[uniform_below(rng, i + 1)]);
  return Permutation(std::move(f));
}

/// Every permutation of [0, size) in lexicographic order.
inline std::vector<Permutation> all_permutations(std::size_t size) {
  std::vector<std::size_t> f(size);
  std::iota(f.begin(), f.end(), std::size_t{0});
  std::vector<Permutation> out;
  do {
    out.emplace_back(f);
  } while (std::next_permutation(f.begin(), f.end()));
  return out;
}

/// h'(z) = h(pi^{-1}(z))
inline CostFunction scramble(const CostFunction& cost, const Permutation& perm) {
  if (perm.size() != cost.dimension()) throw dimension_mismatch("scramble: permutation size mismatch");
  std::vector<double> values(cost.dimension());
  for (std::size_t z = 0; z < values.size(); ++z) values[z] = cost(perm.inverse(z));
  return CostFunction(std::move(values));
}

/// Shift to min 0 and swap the unique minimizer onto index 0.
inline CostFunction canonicalize_for_theorem2(const CostFunction& cost) {
  if (cost.degeneracy() != 1)
    throw degenerate_minimum("canonicalize_for_theorem2: minimizer is not unique");
  std::vector<double> values = cost.values();
  const double shift = cost.min_value();
  for (double& v : values) v -= shift;
  std::swap(values[0], values[cost.ground_set().front()]);
  values[0] = 0.0;
  return CostFunction(std::move(values));
}

inline bool is_canonical(const CostFunction& cost) {
  if (cost(0) != 0.0) return false;
  for (std::size_t z = 1; z < cost.dimension(); ++z)
    if (!(cost(z) > 0.0)) return false;
  return true;
}

}  // namespace alab

#endif  // ALAB_PROBLEMS_HPP
