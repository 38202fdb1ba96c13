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

// Random generators for property tests.

#include <cstdint>
#include <random>

#include "qfg/qfg.hpp"

namespace testing {

inline qfg::ComplexMatrixd random_matrix(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> d;
  qfg::ComplexMatrixd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = {d(rng), d(rng)};
  return m;
}

inline qfg::StateVectord random_state(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> d;
  qfg::StateVectord v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = {d(rng), d(rng)};
  return v.normalized();
}

inline qfg::ComplexMatrixd random_unitary(std::mt19937_64& rng, Eigen::Index n) {
  Eigen::HouseholderQR<qfg::ComplexMatrixd> qr(random_matrix(rng, n));
  return qr.householderQ() * qfg::ComplexMatrixd::Identity(n, n);
}

/// Generator with random unitary and a random complete projector family:
/// basis vectors of another random unitary are dealt out to the symbols.
inline qfg::QuantumGenerator<double> random_generator(std::mt19937_64& rng, Eigen::Index n,
                                                      const qfg::Alphabet& alphabet) {
  const qfg::ComplexMatrixd basis = random_unitary(rng, n);
  std::map<char, qfg::ComplexMatrixd> projectors;
  for (char s : alphabet.symbols()) projectors[s] = qfg::ComplexMatrixd::Zero(n, n);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  for (Eigen::Index k = 0; k < n; ++k) {
    // The first |A| basis vectors go one per symbol so no projector is empty.
    const std::size_t owner = static_cast<std::size_t>(k) < alphabet.size() ? static_cast<std::size_t>(k) : pick(rng);
    projectors[alphabet[owner]] += basis.col(k) * basis.col(k).adjoint();
  }
  return qfg::build_generator<double>(static_cast<std::size_t>(n), alphabet, random_unitary(rng, n),
                                      projectors);
}

inline qfg::Word random_word(std::mt19937_64& rng, const qfg::Alphabet& alphabet, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> sym(0, alphabet.size() - 1);
  qfg::Word w(len(rng), ' ');
  for (char& c : w) c = alphabet[sym(rng)];
  return w;
}

}  // namespace testing
