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

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qfg/errors.hpp"

namespace qfg {

/// A word is a string of single-character symbols.
using Word = std::string;

/// Ordered set of distinct single-character symbols. The declared order
/// fixes lexicographic word order everywhere in the library.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::string_view symbols) : symbols_(symbols.begin(), symbols.end()) {
    validate();
  }
  Alphabet(std::initializer_list<char> symbols) : symbols_(symbols) { validate(); }
  explicit Alphabet(std::vector<char> symbols) : symbols_(std::move(symbols)) { validate(); }

  std::size_t size() const noexcept { return symbols_.size(); }
  char operator[](std::size_t i) const { return symbols_.at(i); }
  const std::vector<char>& symbols() const noexcept { return symbols_; }

  bool contains(char s) const noexcept {
    return std::find(symbols_.begin(), symbols_.end(), s) != symbols_.end();
  }

  std::size_t index_of(char s) const {
    auto it = std::find(symbols_.begin(), symbols_.end(), s);
    if (it == symbols_.end()) throw UnknownSymbolError(s);
    return static_cast<std::size_t>(it - symbols_.begin());
  }

  /// Throws UnknownSymbolError on the first symbol outside the alphabet.
  void check_word(std::string_view w) const {
    for (char c : w) (void)index_of(c);
  }

  /// The word of length `length` whose base-|A| rank (first symbol most
  /// significant) is `rank`.
  Word word_at(std::size_t rank, std::size_t length) const {
    Word w(length, symbols_.front());
    for (std::size_t i = length; i-- > 0;) {
      w[i] = symbols_[rank % size()];
      rank /= size();
    }
    return w;
  }

  std::size_t rank_of(std::string_view w) const {
    std::size_t r = 0;
    for (char c : w) r = r * size() + index_of(c);
    return r;
  }

  std::string to_string() const { return {symbols_.begin(), symbols_.end()}; }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  void validate() const {
    if (symbols_.empty()) throw std::invalid_argument("alphabet must be nonempty");
    for (std::size_t i = 0; i < symbols_.size(); ++i)
      for (std::size_t j = i + 1; j < symbols_.size(); ++j)
        if (symbols_[i] == symbols_[j])
          throw std::invalid_argument(std::string("duplicate alphabet symbol '") +
                                      symbols_[i] + "'");
  }

  std::vector<char> symbols_;
};

/// |A|^length, or `cap + 1` if that count would exceed `cap`.
inline std::size_t word_count(std::size_t alphabet_size, std::size_t length, std::size_t cap) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < length; ++i) {
    if (n > cap / alphabet_size) return cap + 1;
    n *= alphabet_size;
  }
  return n;
}

}  // namespace qfg
