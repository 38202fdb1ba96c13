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

// Text formats: the JSON model file and the word-distribution CSV.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qfg/language.hpp"

namespace qfg::io {

/// Parsed model document. Entries are [re, im] pairs; matrices are lists
/// of rows.
///
///   {
///     "dim": 3,
///     "alphabet": ["0", "1"],
///     "unitary": [[[0.7071067811865476, 0], ...], ...],
///     "projectors": {"0": [[...]], "1": [[...]]},
///     "initial_state": [[1, 0], [0, 0], [0, 0]]      (optional)
///   }
struct ModelFile {
  std::size_t dim = 0;
  Alphabet alphabet;
  ComplexMatrixd unitary;
  std::map<char, ComplexMatrixd> projectors;
  std::optional<StateVectord> initial_state;
};

/// Throws ParseError on malformed documents (shape errors included).
ModelFile parse_model(std::istream& in);
ModelFile load_model(const std::string& path);
void write_model(std::ostream& out, const ModelFile& model);

/// Validates the document; throws UnitarityError / ProjectorAxiomError.
QuantumGenerator<double> to_generator(const ModelFile& model,
                                      const GeneratorTolerances<double>& tol = {});
ModelFile from_generator(const QuantumGenerator<double>& g);

/// Formats a real with 15 significant digits; -infinity prints as "-inf".
std::string format_real(double v);

/// Header `word,probability,density,log2_density`, one row per word in
/// lexicographic order. Words with probability <= epsilon print
/// probability 0 and `-inf` for both density columns.
void write_distribution_csv(std::ostream& out, const WordDistribution<double>& dist,
                            double epsilon = 1e-12);

/// Rows of a distribution CSV as (word, probability).
std::vector<std::pair<Word, double>> read_distribution_csv(std::istream& in);

/// Header `x,log2_density`.
void write_density_csv(std::ostream& out, const std::vector<DensityPoint<double>>& points);

}  // namespace qfg::io
