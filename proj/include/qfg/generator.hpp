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

// Quantum finite-state generator: a unitary U interleaved with a complete
// family of orthogonal projectors P(s), one per output symbol. Each step
// maps <psi| to <psi| U P(s) and emits s.

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qfg/alphabet.hpp"
#include "qfg/linalg.hpp"

namespace qfg {

template <typename Real>
struct GeneratorTolerances {
  /// Axiom residual bound (Frobenius norm).
  Real validation = Real(1e-10);
  /// Squared norms below this are treated as zero probability.
  Real zero_threshold = Real(1e-12);
};

/// Result of one structural check: the residual and whether it is in
/// tolerance. `symbols` names the offending symbols of the worst case.
struct AxiomCheck {
  std::string name;
  double residual = 0.0;
  bool passed = true;
  std::vector<char> symbols;
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  const AxiomCheck* first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return &c;
    return nullptr;
  }
  const AxiomCheck& at(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return c;
    throw std::out_of_range("no axiom check named " + name);
  }
};

/// Computes every structural residual without throwing on axiom failure.
/// Shape problems (non-square, wrong dimension, missing projector) throw
/// DimensionError / UnknownSymbolError since no residual is defined.
template <typename Real>
AxiomReport check_axioms(std::size_t dim, const Alphabet& alphabet,
                         const ComplexMatrix<Real>& unitary,
                         const std::map<char, ComplexMatrix<Real>>& projectors,
                         Real tol = Real(1e-10)) {
  const auto n = static_cast<Eigen::Index>(dim);
  if (dim == 0) throw DimensionError("generator dimension must be positive");
  auto require_shape = [&](const ComplexMatrix<Real>& m, const std::string& what) {
    if (m.rows() != n || m.cols() != n)
      throw DimensionError(what + " must be " + std::to_string(dim) + "x" + std::to_string(dim) +
                           ", got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  };
  require_shape(unitary, "unitary");
  for (const auto& [s, p] : projectors) {
    if (!alphabet.contains(s)) throw UnknownSymbolError(s);
    require_shape(p, std::string("projector '") + s + "'");
  }
  for (char s : alphabet.symbols()) {
    if (!projectors.count(s))
      throw DimensionError(std::string("no projector given for symbol '") + s + "'");
  }

  const ComplexMatrix<Real> id = identity<Real>(n);
  AxiomReport report;
  auto add = [&](std::string name, Real residual, std::vector<char> symbols) {
    const bool ok = residual <= tol;
    report.checks.push_back({std::move(name), static_cast<double>(residual), ok,
                             ok ? std::vector<char>{} : std::move(symbols)});
  };

  add("unitary", frobenius_distance(mat_mul(adjoint(unitary), unitary), id), {});

  // For the per-symbol checks keep the worst residual and who caused it.
  auto worst = [&](auto&& residual_of) {
    Real r = 0;
    std::vector<char> who;
    for (char s : alphabet.symbols()) {
      const Real v = residual_of(projectors.at(s));
      if (v > r) {
        r = v;
        who = {s};
      }
    }
    return std::pair{r, who};
  };

  auto [herm, herm_sym] = worst([](const ComplexMatrix<Real>& p) {
    return frobenius_distance(p, adjoint(p));
  });
  add("hermitian", herm, herm_sym);

  auto [idem, idem_sym] = worst([](const ComplexMatrix<Real>& p) {
    return frobenius_distance(mat_mul(p, p), p);
  });
  add("idempotent", idem, idem_sym);

  Real orth = 0;
  std::vector<char> orth_sym;
  const auto& syms = alphabet.symbols();
  for (std::size_t i = 0; i < syms.size(); ++i) {
    for (std::size_t j = i + 1; j < syms.size(); ++j) {
      const Real v = mat_mul(projectors.at(syms[i]), projectors.at(syms[j])).norm();
      if (v > orth) {
        orth = v;
        orth_sym = {syms[i], syms[j]};
      }
    }
  }
  add("orthogonal", orth, orth_sym);

  ComplexMatrix<Real> sum = ComplexMatrix<Real>::Zero(n, n);
  for (char s : syms) sum += projectors.at(s);
  add("complete", frobenius_distance(sum, id), syms);

  // Entries of T(s) = U P(s) must lie in the closed complex unit disk.
  auto [disk, disk_sym] = worst([&](const ComplexMatrix<Real>& p) {
    const Real m = mat_mul(unitary, p).cwiseAbs().maxCoeff();
    return m > 1 ? m - 1 : Real(0);
  });
  add("unit-disk", disk, disk_sym);

  return report;
}

template <typename Real>
class QuantumGenerator;

template <typename Real>
QuantumGenerator<Real> build_generator(std::size_t dim, const Alphabet& alphabet,
                                       const ComplexMatrix<Real>& unitary,
                                       const std::map<char, ComplexMatrix<Real>>& projectors,
                                       const GeneratorTolerances<Real>& tol = {});

/// Validated, immutable generator with cached transition operators
/// T(s) = U P(s), indexed by alphabet position.
template <typename Real>
class QuantumGenerator {
 public:
  using RealScalar = Real;
  using Matrix = ComplexMatrix<Real>;
  using State = StateVector<Real>;

  std::size_t dim() const noexcept { return dim_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const Matrix& unitary() const noexcept { return unitary_; }
  const Matrix& projector(std::size_t index) const { return projectors_.at(index); }
  const Matrix& projector(char symbol) const { return projectors_[alphabet_.index_of(symbol)]; }
  const Matrix& transition(std::size_t index) const { return transitions_.at(index); }
  const Matrix& transition(char symbol) const { return transitions_[alphabet_.index_of(symbol)]; }
  const GeneratorTolerances<Real>& tolerances() const noexcept { return tol_; }

 private:
  friend QuantumGenerator build_generator<Real>(std::size_t, const Alphabet&, const Matrix&,
                                                const std::map<char, Matrix>&,
                                                const GeneratorTolerances<Real>&);
  QuantumGenerator() = default;

  std::size_t dim_ = 0;
  Alphabet alphabet_;
  Matrix unitary_;
  std::vector<Matrix> projectors_;
  std::vector<Matrix> transitions_;
  GeneratorTolerances<Real> tol_;
};

/// Validates every generator axiom and caches T(s). Throws UnitarityError
/// or ProjectorAxiomError naming the first violated axiom.
template <typename Real>
QuantumGenerator<Real> build_generator(std::size_t dim, const Alphabet& alphabet,
                                       const ComplexMatrix<Real>& unitary,
                                       const std::map<char, ComplexMatrix<Real>>& projectors,
                                       const GeneratorTolerances<Real>& tol) {
  const AxiomReport report = check_axioms(dim, alphabet, unitary, projectors, tol.validation);
  if (const AxiomCheck* bad = report.first_failure()) {
    if (bad->name == "unitary") throw UnitarityError(bad->residual);
    throw ProjectorAxiomError(bad->name, bad->symbols, bad->residual);
  }

  QuantumGenerator<Real> g;
  g.dim_ = dim;
  g.alphabet_ = alphabet;
  g.unitary_ = unitary;
  g.tol_ = tol;
  for (char s : alphabet.symbols()) {
    g.projectors_.push_back(projectors.at(s));
    g.transitions_.push_back(unitary * projectors.at(s));
  }
  return g;
}

template <typename Real>
StateVector<Real> step_unnormalized(const QuantumGenerator<Real>& g, const StateVector<Real>& psi,
                                    char symbol) {
  return row_vec_apply(psi, g.transition(symbol));
}

template <typename Real>
struct StepResult {
  StateVector<Real> state;
  Real probability;
};

/// One measured step: <psi| T(s) renormalized, with the outcome's
/// probability. Throws ForbiddenOutcomeError when the probability is below
/// the generator's zero threshold.
template <typename Real>
StepResult<Real> step_normalized(const QuantumGenerator<Real>& g, const StateVector<Real>& psi,
                                 char symbol) {
  StateVector<Real> next = step_unnormalized(g, psi, symbol);
  const Real p = next.squaredNorm();
  if (p < g.tolerances().zero_threshold)
    throw ForbiddenOutcomeError(symbol, static_cast<double>(p));
  next /= std::sqrt(p);
  return {std::move(next), p};
}

}  // namespace qfg
