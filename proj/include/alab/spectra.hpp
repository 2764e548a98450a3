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

#ifndef ALAB_SPECTRA_HPP
#define ALAB_SPECTRA_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "alab/csv.hpp"
#include "alab/errors.hpp"
#include "alab/hamiltonians.hpp"
#include "alab/problems.hpp"
#include "alab/qstate.hpp"
#include "alab/rng.hpp"

namespace alab {

inline constexpr int kDefaultDenseMaxQubits = 12;

/// Dense matrix of `op`, built column by column from matrix-free application.
inline Eigen::MatrixXcd materialize(const LinearOperator& op,
                                    int max_qubits = kDefaultDenseMaxQubits) {
  if (op.num_qubits() > max_qubits)
    throw dimension_too_large("materialize: " + std::to_string(op.num_qubits()) +
                              " qubits exceeds dense budget of " + std::to_string(max_qubits));
  const auto dim = static_cast<Eigen::Index>(op.dimension());
  Eigen::MatrixXcd m(dim, dim);
  Amplitudes e(op.dimension());
  for (Eigen::Index col = 0; col < dim; ++col) {
    std::fill(e.begin(), e.end(), Complex{});
    e[static_cast<std::size_t>(col)] = 1.0;
    const Amplitudes column = op.apply(e);
    for (Eigen::Index row = 0; row < dim; ++row) m(row, col) = column[static_cast<std::size_t>(row)];
  }
  return m;
}

/// Full sorted spectrum by dense Hermitian diagonalization.
inline std::vector<double> dense_spectrum(const LinearOperator& op,
                                          int max_qubits = kDefaultDenseMaxQubits) {
  const Eigen::MatrixXcd m = materialize(op, max_qubits);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw no_convergence("dense_spectrum: eigensolver failed");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

// ---------------------------------------------------------------------------
// Lanczos

struct LanczosOptions {
  /// Ritz residual ||A y - theta y|| accepted as converged.
  double tolerance = 1e-10;
  std::size_t max_krylov = 160;
  int max_restarts = 60;
  std::uint64_t seed = 0x5eed;
};

struct LowLying {
  double e0;
  double e1;
  double gap() const { return e1 - e0; }
};

namespace detail {

inline void project_out(std::span<Complex> v, std::span<const Complex> basis_vector) {
  const Complex c = inner(basis_vector, v);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * basis_vector[i];
}

/// Random unit vector orthogonal to every vector in `against`.
inline Amplitudes fresh_direction(Rng& rng, std::size_t dim, const std::vector<Amplitudes>& against) {
  Amplitudes v(dim);
  for (auto& a : v) a = Complex{uniform_unit(rng) - 0.5, uniform_unit(rng) - 0.5};
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& q : against) project_out(v, q);
  const double nv = norm(v);
  if (nv < 1e-8) return {};
  for (auto& a : v) a /= nv;
  return v;
}

/// Smallest eigenpair of `op` restricted to the orthogonal complement of
/// `deflate` (assumed orthonormal). Full reorthogonalization; restarts from
/// the current Ritz vector when the Krylov space hits `max_krylov`. A random
/// start touches every eigenspace, so an invariant Krylov space (vanishing
/// beta) already holds the smallest eigenvalue.
inline std::pair<double, Amplitudes> lanczos_smallest(const LinearOperator& op,
                                                      const std::vector<Amplitudes>& deflate,
                                                      const LanczosOptions& options, Rng& rng) {
  const std::size_t dim = op.dimension();
  const std::size_t available = dim - deflate.size();
  if (available == 0) throw precondition_error("lanczos: nothing left after deflation");
  const std::size_t max_m = std::min(options.max_krylov, available);

  Amplitudes start = fresh_direction(rng, dim, deflate);
  if (start.empty()) throw no_convergence("lanczos: could not draw a start vector");

  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    std::vector<Amplitudes> basis;
    std::vector<double> alpha, beta;
    basis.push_back(std::move(start));

    double theta = 0.0;
    Eigen::VectorXd y;
    bool converged = false;
    while (true) {
      const Amplitudes& q = basis.back();
      Amplitudes w = op.apply(q);
      alpha.push_back(inner(q, w).real());
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& d : deflate) project_out(w, d);
        for (const auto& b : basis) project_out(w, b);
      }
      const double b_next = norm(w);
      const std::size_t m = basis.size();

      const bool check = m < 24 || m % 4 == 0 || m >= max_m ||
                         b_next <= 1e-6 * std::max(1.0, std::abs(theta));
      if (check) {
        Eigen::VectorXd diag(static_cast<Eigen::Index>(m));
        Eigen::VectorXd sub(static_cast<Eigen::Index>(m > 1 ? m - 1 : 1));
        for (std::size_t i = 0; i < m; ++i) diag(static_cast<Eigen::Index>(i)) = alpha[i];
        for (std::size_t i = 0; i + 1 < m; ++i) sub(static_cast<Eigen::Index>(i)) = beta[i];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, sub.head(static_cast<Eigen::Index>(m - 1)),
                                  Eigen::ComputeEigenvectors);
        theta = es.eigenvalues()(0);
        y = es.eigenvectors().col(0);
        const double residual = std::abs(b_next * y(static_cast<Eigen::Index>(m - 1)));
        const double tol = options.tolerance * std::max(1.0, std::abs(theta));
        if (residual <= tol) {
          converged = true;
          break;
        }
      }
      if (m >= max_m) break;
      for (auto& a : w) a /= b_next;
      beta.push_back(b_next);
      basis.push_back(std::move(w));
    }

    Amplitudes ritz(dim);
    for (std::size_t i = 0; i < basis.size() && i < static_cast<std::size_t>(y.size()); ++i) {
      const double yi = y(static_cast<Eigen::Index>(i));
      for (std::size_t z = 0; z < dim; ++z) ritz[z] += yi * basis[i][z];
    }
    const double nr = norm(ritz);
    for (auto& a : ritz) a /= nr;
    if (converged) return {theta, std::move(ritz)};
    start = std::move(ritz);
  }
  throw no_convergence("lanczos: no convergence after " + std::to_string(options.max_restarts) +
                       " restarts");
}

}  // namespace detail

/// Two smallest eigenvalues (with multiplicity) via matrix-free Lanczos: the
/// ground pair first, then a second run deflated against the ground vector.
inline LowLying low_lying(const LinearOperator& op, const LanczosOptions& options = {}) {
  Rng rng = make_rng(options.seed);
  auto [e0, v0] = detail::lanczos_smallest(op, {}, options, rng);
  auto [e1, v1] = detail::lanczos_smallest(op, {v0}, options, rng);
  (void)v1;
  if (e1 < e0) std::swap(e0, e1);
  return {e0, e1};
}

// ---------------------------------------------------------------------------

struct SpectralSample {
  double s;
  double e0;
  double e1;
  double gap;
};

struct SpectralCurve {
  int num_qubits = 0;
  std::vector<SpectralSample> samples;

  double min_gap() const {
    double g = samples.empty() ? 0.0 : samples.front().gap;
    for (const auto& p : samples) g = std::min(g, p.gap);
    return g;
  }
};

/// Uniform grid on [0, 1] with both endpoints; s = 0.5 is appended when the
/// uniform grid would miss it.
inline std::vector<double> interpolation_grid(int num_samples) {
  detail::require(num_samples >= 2, "interpolation grid needs at least two samples");
  std::vector<double> s(static_cast<std::size_t>(num_samples));
  for (int i = 0; i < num_samples; ++i) s[static_cast<std::size_t>(i)] = static_cast<double>(i) / (num_samples - 1);
  if ((num_samples - 1) % 2 != 0) {
    s.push_back(0.5);
    std::sort(s.begin(), s.end());
  }
  return s;
}

/// (E0, E1, gap) of (1 - s) begin + s problem along the grid.
inline SpectralCurve spectral_curve(const LinearOperator& begin, const LinearOperator& problem,
                                    int num_samples, const LanczosOptions& options = {}) {
  if (begin.dimension() != problem.dimension())
    throw dimension_mismatch("spectral_curve: begin/problem dimension mismatch");
  SpectralCurve curve;
  curve.num_qubits = begin.num_qubits();
  for (double s : interpolation_grid(num_samples)) {
    const auto op = LinearOperator::weighted_sum({{1.0 - s, begin}, {s, problem}});
    const LowLying ll = low_lying(op, options);
    curve.samples.push_back({s, ll.e0, ll.e1, ll.gap()});
  }
  return curve;
}

struct ScrambledCurves {
  SpectralCurve decoupled;
  SpectralCurve scrambled;
  std::uint64_t seed;
};

/// Hamming cost under the transverse field, plain and relabeled by a
/// seed-determined random permutation.
inline ScrambledCurves scrambled_curve_experiment(int num_qubits, std::uint64_t seed,
                                                  int num_samples,
                                                  const LanczosOptions& options = {}) {
  const CostFunction cost = hamming_cost(num_qubits);
  const LinearOperator begin = transverse_field_beginning(num_qubits);
  const Permutation perm = random_permutation(cost.dimension(), seed);
  return {spectral_curve(begin, problem_hamiltonian(cost), num_samples, options),
          spectral_curve(begin, problem_hamiltonian(scramble(cost, perm)), num_samples, options),
          seed};
}

/// CSV `s,E0,E1,gap,E0_over_n`; `tags` become constant trailing columns.
inline void write_curve_csv(std::ostream& os, const SpectralCurve& curve,
                            const std::vector<std::pair<std::string, std::string>>& tags = {}) {
  os << "s,E0,E1,gap,E0_over_n";
  for (const auto& [name, value] : tags) os << ',' << name;
  os << '\n';
  for (const auto& p : curve.samples) {
    os << format_double(p.s) << ',' << format_double(p.e0) << ',' << format_double(p.e1) << ','
       << format_double(p.gap) << ',' << format_double(p.e0 / curve.num_qubits);
    for (const auto& [name, value] : tags) os << ',' << value;
    os << '\n';
  }
}

}  // namespace alab

#endif  // ALAB_SPECTRA_HPP
