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

// The stochastic language of a process: exact length-L word distributions,
// forbidden / irreducible forbidden words, block entropies and word-density
// data on the unit interval.

#include <cmath>
#include <limits>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qfg/process.hpp"

namespace qfg {

template <typename Real>
struct LanguageOptions {
  /// Words with probability <= epsilon are forbidden.
  Real epsilon = Real(1e-12);
  /// Maximum number of words in one enumerated distribution (2^20 = binary L <= 20).
  std::size_t word_cap = std::size_t{1} << 20;
  /// Round-off allowance outside [0, 1] before a probability is an error.
  Real range_tol = Real(1e-10);
};

/// Probabilities of all |A|^L words of one length, stored densely in
/// lexicographic (alphabet-order) rank, zeros included.
template <typename Real>
class WordDistribution {
 public:
  WordDistribution(Alphabet alphabet, std::size_t length, RealVector<Real> probabilities)
      : alphabet_(std::move(alphabet)), length_(length), probs_(std::move(probabilities)) {}

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t length() const noexcept { return length_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(probs_.size()); }
  const RealVector<Real>& probabilities() const noexcept { return probs_; }

  Real probability(std::size_t rank) const { return probs_[static_cast<Eigen::Index>(rank)]; }
  Real probability(std::string_view w) const {
    if (w.size() != length_) throw std::invalid_argument("word length does not match distribution");
    return probability(alphabet_.rank_of(w));
  }
  Word word(std::size_t rank) const { return alphabet_.word_at(rank, length_); }
  Real total() const { return probs_.sum(); }

 private:
  Alphabet alphabet_;
  std::size_t length_;
  RealVector<Real> probs_;
};

namespace detail {

template <StochasticProcess P>
void enumerate_subtree(const P& p, const typename P::State& x, std::size_t depth,
                       std::size_t length, std::size_t rank,
                       const LanguageOptions<typename P::RealScalar>& opts,
                       RealVector<typename P::RealScalar>& out) {
  const std::size_t k = p.alphabet().size();
  if (depth == length) {
    out[static_cast<Eigen::Index>(rank)] = clamp_probability(p.weight(x), opts.range_tol);
    return;
  }
  for (std::size_t s = 0; s < k; ++s) {
    const auto child = p.extend(x, s);
    const std::size_t child_rank = rank * k + s;
    // Every extension of a forbidden prefix is forbidden; its subtree stays zero.
    if (p.weight(child) <= opts.epsilon) continue;
    enumerate_subtree(p, child, depth + 1, length, child_rank, opts, out);
  }
}

inline void check_cap(std::size_t alphabet_size, std::size_t length, std::size_t cap) {
  if (word_count(alphabet_size, length, cap) > cap)
    throw ResourceCapError("enumerating all words of length " + std::to_string(length) +
                           " exceeds the word cap of " + std::to_string(cap) +
                           "; use a smaller length or raise the cap");
}

}  // namespace detail

/// Exact distribution over all words of length L by depth-first extension
/// with pruning of forbidden prefixes.
template <StochasticProcess P>
WordDistribution<typename P::RealScalar> enumerate_distribution(
    const P& p, std::size_t length, const LanguageOptions<typename P::RealScalar>& opts = {}) {
  using Real = typename P::RealScalar;
  const std::size_t k = p.alphabet().size();
  detail::check_cap(k, length, opts.word_cap);
  const std::size_t n = word_count(k, length, opts.word_cap);
  RealVector<Real> probs = RealVector<Real>::Zero(static_cast<Eigen::Index>(n));
  detail::enumerate_subtree(p, p.initial(), 0, length, 0, opts, probs);
  return {p.alphabet(), length, std::move(probs)};
}

template <typename Real>
WordDistribution<Real> enumerate_distribution(const QuantumGenerator<Real>& g, std::size_t length,
                                              const LanguageOptions<Real>& opts = {}) {
  return enumerate_distribution(QuantumProcess<Real>(g), length, opts);
}

struct ForbiddenWordReport {
  std::size_t max_length = 0;
  /// Sorted by (length, lexicographic in alphabet order).
  std::vector<Word> forbidden;
  std::vector<Word> irreducible;
};

/// Forbidden words up to `max_length` and the irreducible ones among them
/// (no proper contiguous factor is itself forbidden).
template <StochasticProcess P>
ForbiddenWordReport forbidden_words(const P& p, std::size_t max_length,
                                    const LanguageOptions<typename P::RealScalar>& opts = {}) {
  ForbiddenWordReport report;
  report.max_length = max_length;
  std::unordered_set<Word> forbidden;
  for (std::size_t len = 1; len <= max_length; ++len) {
    const auto dist = enumerate_distribution(p, len, opts);
    for (std::size_t r = 0; r < dist.size(); ++r) {
      if (dist.probability(r) > opts.epsilon) continue;
      Word w = dist.word(r);
      bool reducible = false;
      for (std::size_t flen = 1; flen < len && !reducible; ++flen)
        for (std::size_t start = 0; start + flen <= len && !reducible; ++start)
          reducible = forbidden.count(w.substr(start, flen)) > 0;
      if (!reducible) report.irreducible.push_back(w);
      report.forbidden.push_back(w);
      forbidden.insert(std::move(w));
    }
  }
  return report;
}

/// Shannon entropy of the distribution in bits, with 0 log 0 = 0.
template <typename Real>
Real block_entropy(const WordDistribution<Real>& dist) {
  Real h = 0;
  for (Eigen::Index i = 0; i < dist.probabilities().size(); ++i) {
    const Real q = dist.probabilities()[i];
    if (q > 0) h -= q * std::log2(q);
  }
  return h;
}

/// H(L) - H(L-1).
template <StochasticProcess P>
typename P::RealScalar entropy_rate_estimate(
    const P& p, std::size_t length, const LanguageOptions<typename P::RealScalar>& opts = {}) {
  if (length < 1) throw std::invalid_argument("entropy rate estimate needs L >= 1");
  return block_entropy(enumerate_distribution(p, length, opts)) -
         block_entropy(enumerate_distribution(p, length - 1, opts));
}

template <typename Real>
struct DensityPoint {
  Word word;
  /// 0.s1 s2 ... sL in base |A| (base 2 for binary alphabets).
  Real x;
  /// log2(|A|^L Pr(w)); -infinity marks a forbidden word.
  Real log2_density;

  bool forbidden() const { return std::isinf(log2_density) && log2_density < 0; }
};

template <typename Real>
inline constexpr Real kForbiddenDensity = -std::numeric_limits<Real>::infinity();

/// Word probabilities as densities on [0, 1): each word is placed at its
/// base-|A| expansion and its probability divided by the uniform measure
/// |A|^-L, making different lengths comparable.
template <typename Real>
std::vector<DensityPoint<Real>> figure_data(const WordDistribution<Real>& dist,
                                            Real epsilon = Real(1e-12)) {
  const Real base = static_cast<Real>(dist.alphabet().size());
  const Real scale = std::pow(base, static_cast<Real>(dist.length()));
  std::vector<DensityPoint<Real>> points;
  points.reserve(dist.size());
  for (std::size_t r = 0; r < dist.size(); ++r) {
    Word w = dist.word(r);
    Real x = 0;
    Real place = 1;
    for (char c : w) {
      place /= base;
      x += static_cast<Real>(dist.alphabet().index_of(c)) * place;
    }
    const Real q = dist.probability(r);
    const Real y = q <= epsilon ? kForbiddenDensity<Real> : std::log2(scale * q);
    points.push_back({std::move(w), x, y});
  }
  return points;
}

template <StochasticProcess P>
std::vector<DensityPoint<typename P::RealScalar>> figure2_data(
    const P& p, std::size_t length, const LanguageOptions<typename P::RealScalar>& opts = {}) {
  return figure_data(enumerate_distribution(p, length, opts), opts.epsilon);
}

template <typename Real>
struct Deviation {
  Real max_abs = 0;
  Word word;  // a word attaining the maximum
};

/// max |Pr_a(w) - Pr_b(w)| over all words of length 0..max_length.
template <StochasticProcess A, StochasticProcess B>
Deviation<typename A::RealScalar> max_word_deviation(
    const A& a, const B& b, std::size_t max_length,
    const LanguageOptions<typename A::RealScalar>& opts = {}) {
  if (!(a.alphabet() == b.alphabet()))
    throw std::invalid_argument("processes have different alphabets");
  Deviation<typename A::RealScalar> dev;
  for (std::size_t len = 0; len <= max_length; ++len) {
    const auto da = enumerate_distribution(a, len, opts);
    const auto db = enumerate_distribution(b, len, opts);
    for (std::size_t r = 0; r < da.size(); ++r) {
      const auto d = std::abs(da.probability(r) - db.probability(r));
      if (d > dev.max_abs) {
        dev.max_abs = d;
        dev.word = da.word(r);
      }
    }
  }
  return dev;
}

}  // namespace qfg
