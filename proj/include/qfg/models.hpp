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

// Built-in models: the spin-1 generators and the classical two-state
// presentations of the Golden Mean and Even processes used as oracles.

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qfg/language.hpp"

namespace qfg {

enum class SpinAxis { x, y, z };

inline SpinAxis parse_spin_axis(char c) {
  switch (c) {
    case 'x': return SpinAxis::x;
    case 'y': return SpinAxis::y;
    case 'z': return SpinAxis::z;
    default: throw std::invalid_argument(std::string("unknown spin axis '") + c + "'");
  }
}

/// Rotation about y by pi/4 followed by rotation about x by pi/2:
///
///   [  1/sqrt2  1/sqrt2   0 ]
///   [  0        0        -1 ]
///   [ -1/sqrt2  1/sqrt2   0 ]
template <typename Real>
ComplexMatrix<Real> spin1_unitary() {
  const Real a = Real(1) / std::sqrt(Real(2));
  ComplexMatrix<Real> u(3, 3);
  u << a, a, 0,
       0, 0, -1,
       -a, a, 0;
  return u;
}

/// Spin-1 component operators in the real-basis representation, where
/// I - J_i^2 projects onto the zero eigenspace of J_i^2.
template <typename Real>
ComplexMatrix<Real> spin_operator(SpinAxis axis) {
  const Complex<Real> i(0, 1);
  ComplexMatrix<Real> j = ComplexMatrix<Real>::Zero(3, 3);
  switch (axis) {
    case SpinAxis::x:
      j(1, 2) = i;
      j(2, 1) = -i;
      break;
    case SpinAxis::y:
      j(0, 2) = i;
      j(2, 0) = -i;
      break;
    case SpinAxis::z:
      j(0, 1) = i;
      j(1, 0) = -i;
      break;
  }
  return j;
}

/// Spin-1 generator measuring J_axis^2: P(0) = I - J^2, P(1) = J^2.
/// axis y gives the Golden Mean process, axis x the Even process.
template <typename Real>
QuantumGenerator<Real> spin1_generator(SpinAxis axis, const GeneratorTolerances<Real>& tol = {}) {
  const ComplexMatrix<Real> j = spin_operator<Real>(axis);
  const ComplexMatrix<Real> j2 = j * j;
  std::map<char, ComplexMatrix<Real>> projectors{{'0', identity<Real>(3) - j2}, {'1', j2}};
  return build_generator<Real>(3, Alphabet{'0', '1'}, spin1_unitary<Real>(), projectors, tol);
}

/// Labeled Markov chain: per-symbol substochastic matrices T_c(s) whose sum
/// is row-stochastic, with stationary row vector pi.
template <typename Real>
class ClassicalGenerator {
 public:
  using Matrix = RealMatrix<Real>;

  ClassicalGenerator(Alphabet alphabet, std::vector<Matrix> per_symbol, RealRowVector<Real> stationary,
                     Real tol = Real(1e-12))
      : alphabet_(std::move(alphabet)), per_symbol_(std::move(per_symbol)), pi_(std::move(stationary)) {
    if (per_symbol_.size() != alphabet_.size())
      throw DimensionError("one transition matrix per symbol is required");
    const Eigen::Index n = pi_.size();
    Matrix total = Matrix::Zero(n, n);
    for (const auto& m : per_symbol_) {
      if (m.rows() != n || m.cols() != n) throw DimensionError("transition matrix shape mismatch");
      if ((m.array() < 0).any()) throw std::invalid_argument("negative transition probability");
      total += m;
    }
    if ((total.rowwise().sum() - RealVector<Real>::Ones(n)).cwiseAbs().maxCoeff() > tol)
      throw std::invalid_argument("summed transition matrix is not row-stochastic");
    if ((pi_.array() < 0).any() || std::abs(pi_.sum() - Real(1)) > tol)
      throw std::invalid_argument("stationary vector is not a probability vector");
    if ((pi_ * total - pi_).cwiseAbs().maxCoeff() > tol)
      throw std::invalid_argument("stationary vector is not invariant");
  }

  std::size_t states() const noexcept { return static_cast<std::size_t>(pi_.size()); }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const Matrix& transition(std::size_t s) const { return per_symbol_.at(s); }
  const Matrix& transition(char s) const { return per_symbol_[alphabet_.index_of(s)]; }
  const RealRowVector<Real>& stationary() const noexcept { return pi_; }

 private:
  Alphabet alphabet_;
  std::vector<Matrix> per_symbol_;
  RealRowVector<Real> pi_;
};

/// States {A, B}. A emits 1 (stay) or 0 (to B) with probability 1/2 each;
/// B emits 1 and returns to A. Forbids exactly the factor 00.
template <typename Real>
ClassicalGenerator<Real> classical_golden_mean() {
  const Real h = Real(1) / 2;
  RealMatrix<Real> t0(2, 2), t1(2, 2);
  t0 << 0, h,
        0, 0;
  t1 << h, 0,
        1, 0;
  RealRowVector<Real> pi(2);
  pi << Real(2) / 3, Real(1) / 3;
  return {Alphabet{'0', '1'}, {t0, t1}, pi};
}

/// States {A, B}. A emits 0 (stay) or 1 (to B) with probability 1/2 each;
/// B emits 1 and returns to A. Blocks of 1s between 0s have even length.
template <typename Real>
ClassicalGenerator<Real> classical_even() {
  const Real h = Real(1) / 2;
  RealMatrix<Real> t0(2, 2), t1(2, 2);
  t0 << h, 0,
        0, 0;
  t1 << 0, h,
        1, 0;
  RealRowVector<Real> pi(2);
  pi << Real(2) / 3, Real(1) / 3;
  return {Alphabet{'0', '1'}, {t0, t1}, pi};
}

/// pi T_c(s1) ... T_c(sL) 1.
template <typename Real>
Real classical_word_probability(const ClassicalGenerator<Real>& c, std::string_view w) {
  RealRowVector<Real> v = c.stationary();
  for (char s : w) v = v * c.transition(s);
  return v.sum();
}

/// Classical generator viewed as a process from its stationary vector.
/// State is pi T_c(w).
template <typename Real>
class ClassicalProcess {
 public:
  using RealScalar = Real;
  using State = RealRowVector<Real>;

  explicit ClassicalProcess(ClassicalGenerator<Real> c) : c_(std::move(c)) {}

  const Alphabet& alphabet() const noexcept { return c_.alphabet(); }
  const ClassicalGenerator<Real>& generator() const noexcept { return c_; }
  State initial() const { return c_.stationary(); }
  State extend(const State& x, std::size_t s) const { return x * c_.transition(s); }
  Real weight(const State& x) const { return x.sum(); }

 private:
  ClassicalGenerator<Real> c_;
};

/// max |Pr_q(w) - Pr_c(w)| over words of length <= max_length, both from
/// their stationary starts.
template <typename Real>
Real compare_generators(const QuantumGenerator<Real>& q, const ClassicalGenerator<Real>& c,
                        std::size_t max_length, const LanguageOptions<Real>& opts = {}) {
  return max_word_deviation(QuantumProcess<Real>(q), ClassicalProcess<Real>(c), max_length, opts)
      .max_abs;
}

}  // namespace qfg
