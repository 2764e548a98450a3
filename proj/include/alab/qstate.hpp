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

#ifndef ALAB_QSTATE_HPP
#define ALAB_QSTATE_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "alab/errors.hpp"

namespace alab {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;

/// Largest register the dense state storage accepts.
inline constexpr int kMaxQubits = 30;

inline std::size_t dimension_for(int num_qubits) {
  detail::require(num_qubits >= 1 && num_qubits <= kMaxQubits,
                  "qubit count must lie in [1, 30]");
  return std::size_t{1} << num_qubits;
}

/// Returns n with 2^n == dim, or throws.
inline int qubits_for(std::size_t dim) {
  int n = 0;
  while ((std::size_t{1} << n) < dim && n < kMaxQubits) ++n;
  if (dim < 2 || (std::size_t{1} << n) != dim)
    throw dimension_mismatch("dimension " + std::to_string(dim) +
                             " is not a power of two >= 2");
  return n;
}

// ---------------------------------------------------------------------------
// Vector kernels over raw amplitude spans.

inline Complex inner(std::span<const Complex> bra, std::span<const Complex> ket) {
  if (bra.size() != ket.size()) throw dimension_mismatch("inner: size mismatch");
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < bra.size(); ++i) acc += std::conj(bra[i]) * ket[i];
  return acc;
}

inline double norm_squared(std::span<const Complex> v) {
  double acc = 0.0;
  for (const auto& a : v) acc += std::norm(a);
  return acc;
}

inline double norm(std::span<const Complex> v) { return std::sqrt(norm_squared(v)); }

/// ||u - v||^2
inline double distance_squared(std::span<const Complex> u, std::span<const Complex> v) {
  if (u.size() != v.size()) throw dimension_mismatch("distance: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += std::norm(u[i] - v[i]);
  return acc;
}

// ---------------------------------------------------------------------------

/// Dense register of 2^n complex amplitudes; bit j of the index z is qubit j.
class QuantumState {
 public:
  QuantumState(int num_qubits, Amplitudes amplitudes)
      : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != dimension_for(num_qubits_))
      throw dimension_mismatch("state length must be 2^n");
  }

  /// Infers n from the vector length.
  explicit QuantumState(Amplitudes amplitudes)
      : QuantumState(qubits_for(amplitudes.size()), std::move(amplitudes)) {}

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  const Complex& operator[](std::size_t z) const { return amplitudes_[z]; }

  double norm() const { return alab::norm(amplitudes_); }
  bool is_normalized(double tol = 1e-9) const { return std::abs(norm() - 1.0) <= tol; }

  Amplitudes release() && { return std::move(amplitudes_); }

 private:
  int num_qubits_;
  Amplitudes amplitudes_;
};

inline QuantumState uniform_state(int num_qubits) {
  detail::require(num_qubits >= 1, "uniform_state: n must be >= 1");
  const std::size_t dim = dimension_for(num_qubits);
  const double a = 1.0 / std::sqrt(static_cast<double>(dim));
  return QuantumState(num_qubits, Amplitudes(dim, Complex{a, 0.0}));
}

inline QuantumState basis_state(int num_qubits, std::size_t z) {
  const std::size_t dim = dimension_for(num_qubits);
  detail::require(z < dim, "basis_state: index out of range");
  Amplitudes amps(dim);
  amps[z] = 1.0;
  return QuantumState(num_qubits, std::move(amps));
}

/// |x> = V_x |s>, amplitude e^{2 pi i z x / N} / sqrt(N) on |z>.
inline QuantumState fourier_state(int num_qubits, std::size_t x) {
  const std::size_t dim = dimension_for(num_qubits);
  detail::require(x < dim, "fourier_state: x out of range");
  const double a = 1.0 / std::sqrt(static_cast<double>(dim));
  Amplitudes amps(dim);
  for (std::size_t z = 0; z < dim; ++z) {
    // Reduce z*x mod N first so the phase argument stays exact in [0, 2pi).
    const std::size_t r = (z * x) & (dim - 1);
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(dim);
    amps[z] = std::polar(a, phase);
  }
  return QuantumState(num_qubits, std::move(amps));
}

// ---------------------------------------------------------------------------
// Operators

/// sum_z values[z] |z><z|
struct Diagonal {
  std::vector<double> values;
};

/// scale * (I - |axis><axis|), axis unit norm.
struct RankOneComplement {
  double scale;
  Amplitudes axis;
};

/// sum_j multiplicities[j] * (1 - sigma_x^{(j)}) / 2
struct TransverseFieldSum {
  int num_qubits;
  std::vector<int> multiplicities;
};

struct WeightedSum;

/// Immutable Hermitian operator applied matrix-free. Copies share the
/// underlying representation.
class LinearOperator {
 public:
  enum class Kind { diagonal, rank_one_complement, transverse_field_sum, weighted_sum };

  static LinearOperator diagonal(std::vector<double> values);
  static LinearOperator rank_one_complement(double scale, Amplitudes axis);
  static LinearOperator transverse_field_sum(std::vector<int> multiplicities);
  static LinearOperator weighted_sum(std::vector<std::pair<double, LinearOperator>> terms);

  std::size_t dimension() const { return dimension_; }
  int num_qubits() const { return qubits_for(dimension_); }
  Kind kind() const;

  /// out += alpha * A * in
  void apply_add(Complex alpha, std::span<const Complex> in, std::span<Complex> out) const;

  Amplitudes apply(std::span<const Complex> in) const {
    Amplitudes out(dimension_);
    apply_add(Complex{1.0, 0.0}, in, out);
    return out;
  }

  template <class Visitor>
  decltype(auto) visit(Visitor&& visitor) const;

 private:
  struct Node;
  LinearOperator(std::shared_ptr<const Node> node, std::size_t dim)
      : node_(std::move(node)), dimension_(dim) {}

  std::shared_ptr<const Node> node_;
  std::size_t dimension_ = 0;
};

struct WeightedSum {
  std::vector<std::pair<double, LinearOperator>> terms;
};

struct LinearOperator::Node {
  std::variant<Diagonal, RankOneComplement, TransverseFieldSum, WeightedSum> repr;
};

template <class Visitor>
decltype(auto) LinearOperator::visit(Visitor&& visitor) const {
  return std::visit(std::forward<Visitor>(visitor), node_->repr);
}

inline LinearOperator::Kind LinearOperator::kind() const {
  return static_cast<Kind>(node_->repr.index());
}

inline LinearOperator LinearOperator::diagonal(std::vector<double> values) {
  const std::size_t dim = values.size();
  qubits_for(dim);
  return {std::make_shared<const Node>(Node{Diagonal{std::move(values)}}), dim};
}

inline LinearOperator LinearOperator::rank_one_complement(double scale, Amplitudes axis) {
  detail::require(scale > 0.0, "rank_one_complement: scale must be positive");
  const std::size_t dim = axis.size();
  qubits_for(dim);
  if (std::abs(alab::norm(axis) - 1.0) > 1e-9)
    throw non_normalized_input("rank_one_complement: axis must be unit norm");
  return {std::make_shared<const Node>(Node{RankOneComplement{scale, std::move(axis)}}), dim};
}

inline LinearOperator LinearOperator::transverse_field_sum(std::vector<int> multiplicities) {
  const int n = static_cast<int>(multiplicities.size());
  const std::size_t dim = dimension_for(n);
  for (int d : multiplicities)
    detail::require(d >= 0, "transverse_field_sum: multiplicities must be nonnegative");
  return {std::make_shared<const Node>(Node{TransverseFieldSum{n, std::move(multiplicities)}}),
          dim};
}

inline LinearOperator LinearOperator::weighted_sum(
    std::vector<std::pair<double, LinearOperator>> terms) {
  detail::require(!terms.empty(), "weighted_sum: needs at least one term");
  const std::size_t dim = terms.front().second.dimension();
  for (const auto& [c, op] : terms) {
    if (op.dimension() != dim) throw dimension_mismatch("weighted_sum: term dimensions differ");
    detail::require(std::isfinite(c), "weighted_sum: non-finite coefficient");
  }
  return {std::make_shared<const Node>(Node{WeightedSum{std::move(terms)}}), dim};
}

namespace detail {

inline void apply_add_impl(const Diagonal& op, Complex alpha, std::span<const Complex> in,
                           std::span<Complex> out) {
  for (std::size_t z = 0; z < in.size(); ++z) out[z] += alpha * op.values[z] * in[z];
}

inline void apply_add_impl(const RankOneComplement& op, Complex alpha,
                           std::span<const Complex> in, std::span<Complex> out) {
  const Complex overlap = inner(op.axis, in);
  const Complex a = alpha * op.scale;
  const Complex b = a * overlap;
  for (std::size_t z = 0; z < in.size(); ++z) out[z] += a * in[z] - b * op.axis[z];
}

inline void apply_add_impl(const TransverseFieldSum& op, Complex alpha,
                           std::span<const Complex> in, std::span<Complex> out) {
  const std::size_t dim = in.size();
  for (int j = 0; j < op.num_qubits; ++j) {
    const int d = op.multiplicities[static_cast<std::size_t>(j)];
    if (d == 0) continue;
    const Complex a = alpha * (0.5 * d);
    const std::size_t bit = std::size_t{1} << j;
    for (std::size_t z = 0; z < dim; ++z) out[z] += a * (in[z] - in[z ^ bit]);
  }
}

inline void apply_add_impl(const WeightedSum& op, Complex alpha, std::span<const Complex> in,
                           std::span<Complex> out) {
  for (const auto& [c, term] : op.terms) {
    if (c != 0.0) term.apply_add(alpha * c, in, out);
  }
}

}  // namespace detail

inline void LinearOperator::apply_add(Complex alpha, std::span<const Complex> in,
                                      std::span<Complex> out) const {
  if (in.size() != dimension_ || out.size() != dimension_)
    throw dimension_mismatch("apply: operator dimension " + std::to_string(dimension_) +
                             " vs vectors " + std::to_string(in.size()) + "/" +
                             std::to_string(out.size()));
  visit([&](const auto& repr) { detail::apply_add_impl(repr, alpha, in, out); });
}

/// A|psi>, unnormalized; the input is untouched.
inline Amplitudes apply(const LinearOperator& op, const QuantumState& state) {
  return op.apply(state.amplitudes());
}

/// <psi|A|psi>. A sizeable imaginary part means a non-Hermitian build.
inline double expectation(const LinearOperator& op, const QuantumState& state) {
  if (!state.is_normalized()) throw non_normalized_input("expectation: state not normalized");
  const Complex value = inner(state.amplitudes(), apply(op, state));
  if (std::abs(value.imag()) > 1e-10 * std::max(1.0, std::abs(value.real())))
    throw non_hermitian("expectation: imaginary part " + std::to_string(value.imag()));
  return value.real();
}

// ---------------------------------------------------------------------------

using Coefficient = std::function<double(double)>;

struct HamiltonianTerm {
  LinearOperator op;
  Coefficient coefficient;
};

/// H(t) = sum_i c_i(t) A_i on [0, T].
class TimeDependentHamiltonian {
 public:
  TimeDependentHamiltonian(std::vector<HamiltonianTerm> terms, double total_time)
      : terms_(std::move(terms)), total_time_(total_time) {
    detail::require(!terms_.empty(), "hamiltonian needs at least one term");
    detail::require(std::isfinite(total_time_) && total_time_ >= 0.0,
                    "total time must be finite and nonnegative");
    const std::size_t dim = terms_.front().op.dimension();
    for (const auto& term : terms_) {
      if (term.op.dimension() != dim) throw dimension_mismatch("hamiltonian term dimensions differ");
      detail::require(static_cast<bool>(term.coefficient), "hamiltonian term lacks a coefficient");
    }
  }

  std::size_t dimension() const { return terms_.front().op.dimension(); }
  double total_time() const { return total_time_; }
  const std::vector<HamiltonianTerm>& terms() const { return terms_; }

  void apply_add(double t, Complex alpha, std::span<const Complex> in,
                 std::span<Complex> out) const {
    for (const auto& term : terms_) {
      const double c = term.coefficient(t);
      if (c != 0.0) term.op.apply_add(alpha * c, in, out);
    }
  }

  /// Frozen H(t) as a single operator.
  LinearOperator at(double t) const {
    std::vector<std::pair<double, LinearOperator>> parts;
    parts.reserve(terms_.size());
    for (const auto& term : terms_) parts.emplace_back(term.coefficient(t), term.op);
    return LinearOperator::weighted_sum(std::move(parts));
  }

 private:
  std::vector<HamiltonianTerm> terms_;
  double total_time_;
};

}  // namespace alab

#endif  // ALAB_QSTATE_HPP
