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

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qfg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class UnknownSymbolError : public Error {
 public:
  explicit UnknownSymbolError(char symbol)
      : Error(std::string("symbol '") + symbol + "' is not in the alphabet"),
        symbol_(symbol) {}
  char symbol() const noexcept { return symbol_; }

 private:
  char symbol_;
};

/// U^dagger U differs from the identity; carries the Frobenius residual.
class UnitarityError : public Error {
 public:
  explicit UnitarityError(double residual)
      : Error("evolution operator is not unitary: |U^+ U - I|_F = " +
              std::to_string(residual)),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A projector family violates one of hermitian / idempotent / orthogonal /
/// complete (or the transition entries leave the unit disk).
class ProjectorAxiomError : public Error {
 public:
  ProjectorAxiomError(std::string axiom, std::vector<char> symbols,
                      double residual)
      : Error(format(axiom, symbols, residual)),
        axiom_(std::move(axiom)),
        symbols_(std::move(symbols)),
        residual_(residual) {}

  const std::string& axiom() const noexcept { return axiom_; }
  const std::vector<char>& symbols() const noexcept { return symbols_; }
  double residual() const noexcept { return residual_; }

 private:
  static std::string format(const std::string& axiom,
                            const std::vector<char>& symbols,
                            double residual) {
    std::string msg = "projector axiom '" + axiom + "' violated";
    if (!symbols.empty()) {
      msg += " by symbol(s)";
      for (char s : symbols) {
        msg += ' ';
        msg += s;
      }
    }
    return msg + " (residual " + std::to_string(residual) + ")";
  }

  std::string axiom_;
  std::vector<char> symbols_;
  double residual_;
};

/// Renormalization was requested for an outcome of (numerically) zero
/// probability.
class ForbiddenOutcomeError : public Error {
 public:
  ForbiddenOutcomeError(char symbol, double probability)
      : Error(std::string("outcome '") + symbol +
              "' has zero probability (" + std::to_string(probability) +
              "); cannot renormalize"),
        symbol_(symbol),
        probability_(probability) {}
  char symbol() const noexcept { return symbol_; }
  double probability() const noexcept { return probability_; }

 private:
  char symbol_;
  double probability_;
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(std::size_t iterations, double residual)
      : Error("stationary-state iteration did not converge after " +
              std::to_string(iterations) + " iterations (last residual " +
              std::to_string(residual) + ")"),
        iterations_(iterations),
        residual_(residual) {}
  std::size_t iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  std::size_t iterations_;
  double residual_;
};

/// Word enumeration would exceed the configured word-count cap.
class ResourceCapError : public Error {
 public:
  using Error::Error;
};

/// A computed probability left [-tol, 1 + tol]; indicates a bug or an
/// invalid generator, never round-off.
class ProbabilityRangeError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qfg
