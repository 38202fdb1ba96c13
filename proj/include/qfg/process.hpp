// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Word probabilities, the stationary ensemble, conditional next-symbol
// distributions and sampled trajectories of a quantum generator.
//
// Conventions (row vectors throughout):
//   M(w)        = T(s1) T(s2) ... T(sL),  M(empty) = I
//   pure start  Pr(w) = || <psi| M(w) ||^2
//   ensemble    Pr(w) = Tr(rho M(w) M(w)^+),  with rho = <psi|^+ <psi| for a
//               pure state, so both forms agree
//   one step    E(rho) = sum_s T(s)^+ rho T(s)

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Eigenvalues>

#include "qfg/generator.hpp"

namespace qfg {

/// Hermitian, positive-semidefinite, unit-trace ensemble over internal
/// states.
template <typename Real>
class DensityMatrix {
 public:
  using Matrix = ComplexMatrix<Real>;

  /// Validates hermiticity, unit trace and PSD (smallest eigenvalue of the
  /// Hermitian part >= -tol).
  explicit DensityMatrix(Matrix m, Real tol = Real(1e-10)) : m_(std::move(m)) {
    detail::require_square(m_, "DensityMatrix");
    if (frobenius_distance(m_, adjoint(m_)) > tol)
      throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(m_.trace() - Complex<Real>(1)) > tol)
      throw std::invalid_argument("density matrix trace is not 1");
    const Matrix herm = (m_ + m_.adjoint()) / Real(2);
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol)
      throw std::invalid_argument("density matrix is not positive semidefinite");
  }

  static DensityMatrix maximally_mixed(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return DensityMatrix(identity<Real>(n) / Real(n));
  }

  /// rho = <psi|^+ <psi| for a normalized row state.
  static DensityMatrix from_state(const StateVector<Real>& psi, Real tol = Real(1e-10)) {
    return DensityMatrix(psi.adjoint() * psi, tol);
  }

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }

 private:
  Matrix m_;
};

/// Maps round-off excursions in [-tol, 0) and (1, 1 + tol] onto [0, 1];
/// anything further out is a consistency failure.
template <typename Real>
Real clamp_probability(Real p, Real tol) {
  if (!(p >= -tol && p <= Real(1) + tol))
    throw ProbabilityRangeError("probability " + std::to_string(static_cast<double>(p)) +
                                " outside [0, 1] beyond tolerance");
  return std::clamp(p, Real(0), Real(1));
}

template <typename Real>
ComplexMatrix<Real> word_operator(const QuantumGenerator<Real>& g, std::string_view w) {
  ComplexMatrix<Real> m = identity<Real>(static_cast<Eigen::Index>(g.dim()));
  for (char s : w) m = m * g.transition(s);
  return m;
}

template <typename Real>
Real word_probability(const QuantumGenerator<Real>& g, const StateVector<Real>& psi,
                      std::string_view w) {
  detail::require(psi.cols() == static_cast<Eigen::Index>(g.dim()), "word_probability",
                  psi.cols(), static_cast<Eigen::Index>(g.dim()));
  const Real p = row_vec_apply(psi, word_operator(g, w)).squaredNorm();
  return clamp_probability(p, g.tolerances().validation);
}

template <typename Real>
Real word_probability(const QuantumGenerator<Real>& g, const DensityMatrix<Real>& rho,
                      std::string_view w) {
  detail::require(rho.dim() == g.dim(), "word_probability", static_cast<Eigen::Index>(rho.dim()),
                  static_cast<Eigen::Index>(g.dim()));
  const ComplexMatrix<Real> m = word_operator(g, w);
  const Real p = (rho.matrix() * m * m.adjoint()).trace().real();
  return clamp_probability(p, g.tolerances().validation);
}

/// E(X) = sum_s T(s)^+ X T(s). Trace preserving for a valid generator.
template <typename Real>
ComplexMatrix<Real> ensemble_step(const QuantumGenerator<Real>& g, const ComplexMatrix<Real>& x) {
  ComplexMatrix<Real> out = ComplexMatrix<Real>::Zero(x.rows(), x.cols());
  for (std::size_t s = 0; s < g.alphabet().size(); ++s) {
    const auto& t = g.transition(s);
    out.noalias() += t.adjoint() * x * t;
  }
  return out;
}

template <typename Real>
struct StationaryOptions {
  Real fixpoint_tol = Real(1e-13);
  std::size_t max_iterations = 1'000'000;
};

/// Fixed point of the one-step ensemble map, by power iteration from the
/// maximally mixed state.
template <typename Real>
DensityMatrix<Real> stationary_state(const QuantumGenerator<Real>& g,
                                     const StationaryOptions<Real>& opts = {}) {
  const auto n = static_cast<Eigen::Index>(g.dim());
  ComplexMatrix<Real> rho = identity<Real>(n) / Real(n);
  Real residual = 0;
  for (std::size_t k = 0; k < opts.max_iterations; ++k) {
    ComplexMatrix<Real> next = ensemble_step(g, rho);
    next /= next.trace().real();
    residual = frobenius_distance(next, rho);
    rho = std::move(next);
    if (residual < opts.fixpoint_tol) {
      // Symmetrize away round-off before validation.
      return DensityMatrix<Real>((rho + rho.adjoint()) / Real(2));
    }
  }
  throw NonConvergenceError(opts.max_iterations, static_cast<double>(residual));
}

/// The ensemble conditioned on having observed `w` from `rho`:
/// M(w)^+ rho M(w) / Pr(w).
template <typename Real>
DensityMatrix<Real> condition_on(const QuantumGenerator<Real>& g, const DensityMatrix<Real>& rho,
                                 std::string_view w) {
  const ComplexMatrix<Real> m = word_operator(g, w);
  ComplexMatrix<Real> x = m.adjoint() * rho.matrix() * m;
  const Real p = x.trace().real();
  if (p < g.tolerances().zero_threshold)
    throw ForbiddenOutcomeError(w.empty() ? ' ' : w.back(), static_cast<double>(p));
  x /= p;
  return DensityMatrix<Real>((x + x.adjoint()) / Real(2));
}

/// Next-symbol probabilities ||<psi| T(s)||^2, indexed by alphabet order.
template <typename Real>
RealVector<Real> conditional_distribution(const QuantumGenerator<Real>& g,
                                          const StateVector<Real>& psi) {
  RealVector<Real> probs(static_cast<Eigen::Index>(g.alphabet().size()));
  for (std::size_t s = 0; s < g.alphabet().size(); ++s)
    probs[static_cast<Eigen::Index>(s)] = row_vec_apply(psi, g.transition(s)).squaredNorm();
  return probs;
}

template <typename Real>
RealVector<Real> conditional_distribution(const QuantumGenerator<Real>& g,
                                          const DensityMatrix<Real>& rho) {
  RealVector<Real> probs(static_cast<Eigen::Index>(g.alphabet().size()));
  for (std::size_t s = 0; s < g.alphabet().size(); ++s) {
    const auto& t = g.transition(s);
    probs[static_cast<Eigen::Index>(s)] = (t.adjoint() * rho.matrix() * t).trace().real();
  }
  return probs;
}

/// Seeded symbol selection shared by every sampler.
///
/// Engine: std::mt19937_64 seeded with the 64-bit seed. Each draw takes one
/// 64-bit output x and forms u = (x >> 11) * 2^-53 in [0, 1). Symbols are
/// scanned in alphabet order accumulating probabilities; the first symbol
/// with u < cumulative sum is chosen. Probabilities at or below the zero
/// threshold count as zero. If round-off leaves u above the total, the last
/// symbol with nonzero probability is chosen.
class SymbolSampler {
 public:
  explicit SymbolSampler(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <typename Derived>
  std::size_t select(const Eigen::MatrixBase<Derived>& probs, double zero_threshold) {
    const double u = uniform();
    double cumulative = 0;
    std::size_t last_nonzero = 0;
    for (Eigen::Index s = 0; s < probs.size(); ++s) {
      const double p = static_cast<double>(probs[s]);
      if (p <= zero_threshold) continue;
      last_nonzero = static_cast<std::size_t>(s);
      cumulative += p;
      if (u < cumulative) return static_cast<std::size_t>(s);
    }
    return last_nonzero;
  }

 private:
  std::mt19937_64 engine_;
};

/// n symbols emitted from a pure start by repeated measurement.
template <typename Real>
Word sample_trajectory(const QuantumGenerator<Real>& g, const StateVector<Real>& start,
                       std::size_t n, std::uint64_t seed) {
  SymbolSampler sampler(seed);
  StateVector<Real> psi = start;
  Word out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const RealVector<Real> probs = conditional_distribution(g, psi);
    const char s = g.alphabet()[sampler.select(probs, g.tolerances().zero_threshold)];
    psi = step_normalized(g, psi, s).state;
    out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Process abstraction shared by the quantum generator and the classical
// oracles. `State` is an unnormalized conditioned object whose weight is the
// probability of the word that produced it.

template <typename P>
concept StochasticProcess = requires(const P& p, const typename P::State& x, std::size_t s) {
  typename P::RealScalar;
  { p.alphabet() } -> std::convertible_to<const Alphabet&>;
  { p.initial() } -> std::convertible_to<typename P::State>;
  { p.extend(x, s) } -> std::convertible_to<typename P::State>;
  { p.weight(x) } -> std::convertible_to<typename P::RealScalar>;
};

/// Quantum generator plus start ensemble. State is M(w)^+ rho M(w).
template <typename Real>
class QuantumProcess {
 public:
  using RealScalar = Real;
  using State = ComplexMatrix<Real>;

  QuantumProcess(QuantumGenerator<Real> g, DensityMatrix<Real> start)
      : g_(std::move(g)), start_(std::move(start)) {
    if (start_.dim() != g_.dim()) throw DimensionError("start ensemble dimension mismatch");
  }

  /// Stationary start.
  explicit QuantumProcess(QuantumGenerator<Real> g)
      : QuantumProcess(g, stationary_state(g)) {}

  const Alphabet& alphabet() const noexcept { return g_.alphabet(); }
  const QuantumGenerator<Real>& generator() const noexcept { return g_; }
  const DensityMatrix<Real>& start() const noexcept { return start_; }

  State initial() const { return start_.matrix(); }
  State extend(const State& x, std::size_t s) const {
    const auto& t = g_.transition(s);
    return t.adjoint() * x * t;
  }
  Real weight(const State& x) const { return x.trace().real(); }

 private:
  QuantumGenerator<Real> g_;
  DensityMatrix<Real> start_;
};

template <StochasticProcess P>
typename P::RealScalar process_word_probability(const P& p, std::string_view w) {
  typename P::State x = p.initial();
  for (char c : w) x = p.extend(x, p.alphabet().index_of(c));
  return p.weight(x);
}

/// Samples n symbols by conditioning the process state on each emitted
/// symbol; uses the SymbolSampler rule. For a mixed start this samples the
/// observed process exactly without choosing a pure state first.
template <StochasticProcess P>
Word sample_process(const P& p, std::size_t n, std::uint64_t seed,
                    double zero_threshold = 1e-12) {
  using Real = typename P::RealScalar;
  using State = typename P::State;
  SymbolSampler sampler(seed);
  const std::size_t k = p.alphabet().size();
  State x = p.initial();
  x /= p.weight(x);
  std::vector<State> next(k);
  RealVector<Real> probs(static_cast<Eigen::Index>(k));
  Word out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t s = 0; s < k; ++s) {
      next[s] = p.extend(x, s);
      probs[static_cast<Eigen::Index>(s)] = p.weight(next[s]);
    }
    const std::size_t s = sampler.select(probs, zero_threshold);
    x = next[s] / probs[static_cast<Eigen::Index>(s)];
    out.push_back(p.alphabet()[s]);
  }
  return out;
}

}  // namespace qfg
