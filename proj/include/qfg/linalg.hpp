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

// Dense complex linear algebra used throughout the library. Storage is
// Eigen; the free functions below add the dimension checks and the
// row-vector conventions the generators rely on.

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "qfg/errors.hpp"

namespace qfg {

template <typename Real>
using Complex = std::complex<Real>;

/// Square dense complex matrix (U, P(s), T(s), J_i, rho).
template <typename Real>
using ComplexMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

/// Row-vector state <psi|. Operators act on the right: <psi| A.
template <typename Real>
using StateVector = Eigen::Matrix<Complex<Real>, 1, Eigen::Dynamic>;

template <typename Real>
using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using RealRowVector = Eigen::Matrix<Real, 1, Eigen::Dynamic>;

template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using ComplexMatrixd = ComplexMatrix<double>;
using StateVectord = StateVector<double>;

namespace detail {

inline void require(bool ok, const char* op, Eigen::Index lhs, Eigen::Index rhs) {
  if (!ok) {
    throw DimensionError(std::string(op) + ": dimension mismatch (" +
                         std::to_string(lhs) + " vs " + std::to_string(rhs) + ")");
  }
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* op) {
  require(a.rows() == a.cols(), op, a.rows(), a.cols());
}

}  // namespace detail

template <typename DerivedA, typename DerivedB>
typename DerivedA::PlainObject mat_mul(const Eigen::MatrixBase<DerivedA>& a,
                                       const Eigen::MatrixBase<DerivedB>& b) {
  detail::require_square(a, "mat_mul");
  detail::require_square(b, "mat_mul");
  detail::require(a.cols() == b.rows(), "mat_mul", a.cols(), b.rows());
  return a * b;
}

/// Conjugate transpose.
template <typename Derived>
typename Derived::PlainObject adjoint(const Eigen::MatrixBase<Derived>& a) {
  return a.adjoint();
}

/// <v| A for a row vector v.
template <typename DerivedV, typename DerivedA>
typename DerivedV::PlainObject row_vec_apply(const Eigen::MatrixBase<DerivedV>& v,
                                             const Eigen::MatrixBase<DerivedA>& a) {
  static_assert(DerivedV::RowsAtCompileTime == 1 ||
                    DerivedV::RowsAtCompileTime == Eigen::Dynamic,
                "row_vec_apply expects a row vector");
  detail::require(v.rows() == 1, "row_vec_apply", v.rows(), 1);
  detail::require(v.cols() == a.rows(), "row_vec_apply", v.cols(), a.rows());
  return v * a;
}

/// <v|w>, conjugate-linear in the first argument.
template <typename DerivedV, typename DerivedW>
typename DerivedV::Scalar inner(const Eigen::MatrixBase<DerivedV>& v,
                                const Eigen::MatrixBase<DerivedW>& w) {
  detail::require(v.size() == w.size(), "inner", v.size(), w.size());
  // Eigen's dot() conjugates its left operand.
  return v.reshaped().dot(w.reshaped());
}

template <typename DerivedA, typename DerivedB>
typename Eigen::NumTraits<typename DerivedA::Scalar>::Real frobenius_distance(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  detail::require(a.rows() == b.rows(), "frobenius_distance", a.rows(), b.rows());
  detail::require(a.cols() == b.cols(), "frobenius_distance", a.cols(), b.cols());
  return (a - b).norm();
}

/// Tolerance-based matrix equality; bitwise comparison is never used.
template <typename DerivedA, typename DerivedB>
bool approx_equal(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                  typename Eigen::NumTraits<typename DerivedA::Scalar>::Real tol = 1e-12) {
  return a.rows() == b.rows() && a.cols() == b.cols() && frobenius_distance(a, b) < tol;
}

template <typename Real>
ComplexMatrix<Real> identity(Eigen::Index dim) {
  return ComplexMatrix<Real>::Identity(dim, dim);
}

}  // namespace qfg
