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

#include "qfg/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace qfg::io {
namespace {

using nlohmann::json;

std::complex<double> parse_entry(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(where + ": expected [re, im] pair of numbers");
  return {j[0].get<double>(), j[1].get<double>()};
}

ComplexMatrixd parse_matrix(const json& j, std::size_t dim, const std::string& where) {
  if (!j.is_array() || j.size() != dim)
    throw ParseError(where + ": expected " + std::to_string(dim) + " rows");
  const auto n = static_cast<Eigen::Index>(dim);
  ComplexMatrixd m(n, n);
  for (std::size_t r = 0; r < dim; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != dim)
      throw ParseError(where + ": row " + std::to_string(r) + " must have " +
                       std::to_string(dim) + " entries");
    for (std::size_t c = 0; c < dim; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          parse_entry(row[c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

json entry_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const ComplexMatrixd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(entry_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

ModelFile parse_model(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("model file must be a JSON object");
  for (const char* key : {"dim", "alphabet", "unitary", "projectors"})
    if (!doc.contains(key)) throw ParseError(std::string("model file is missing '") + key + "'");

  ModelFile m;
  if (!doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1)
    throw ParseError("'dim' must be a positive integer");
  m.dim = doc["dim"].get<std::size_t>();

  std::vector<char> symbols;
  if (!doc["alphabet"].is_array()) throw ParseError("'alphabet' must be a list of strings");
  for (const auto& s : doc["alphabet"]) {
    if (!s.is_string() || s.get<std::string>().size() != 1)
      throw ParseError("alphabet symbols must be 1-character strings");
    symbols.push_back(s.get<std::string>()[0]);
  }
  try {
    m.alphabet = Alphabet(std::move(symbols));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("alphabet: ") + e.what());
  }

  m.unitary = parse_matrix(doc["unitary"], m.dim, "unitary");

  const json& proj = doc["projectors"];
  if (!proj.is_object()) throw ParseError("'projectors' must map symbols to matrices");
  for (const auto& [key, value] : proj.items()) {
    if (key.size() != 1 || !m.alphabet.contains(key[0]))
      throw ParseError("projector key '" + key + "' is not an alphabet symbol");
    m.projectors[key[0]] = parse_matrix(value, m.dim, "projectors." + key);
  }
  for (char s : m.alphabet.symbols())
    if (!m.projectors.count(s)) throw ParseError(std::string("no projector for symbol '") + s + "'");

  if (doc.contains("initial_state")) {
    const json& st = doc["initial_state"];
    if (!st.is_array() || st.size() != m.dim)
      throw ParseError("'initial_state' must have " + std::to_string(m.dim) + " entries");
    StateVectord psi(static_cast<Eigen::Index>(m.dim));
    for (std::size_t i = 0; i < m.dim; ++i)
      psi[static_cast<Eigen::Index>(i)] = parse_entry(st[i], "initial_state[" + std::to_string(i) + "]");
    m.initial_state = std::move(psi);
  }
  return m;
}

ModelFile load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file '" + path + "'");
  return parse_model(in);
}

void write_model(std::ostream& out, const ModelFile& model) {
  json doc;
  doc["dim"] = model.dim;
  json alpha = json::array();
  for (char s : model.alphabet.symbols()) alpha.push_back(std::string(1, s));
  doc["alphabet"] = alpha;
  doc["unitary"] = matrix_json(model.unitary);
  json proj = json::object();
  for (const auto& [s, p] : model.projectors) proj[std::string(1, s)] = matrix_json(p);
  doc["projectors"] = proj;
  if (model.initial_state) {
    json st = json::array();
    for (Eigen::Index i = 0; i < model.initial_state->size(); ++i)
      st.push_back(entry_json((*model.initial_state)[i]));
    doc["initial_state"] = st;
  }
  out << doc.dump(2) << '\n';
}

QuantumGenerator<double> to_generator(const ModelFile& model,
                                      const GeneratorTolerances<double>& tol) {
  return build_generator<double>(model.dim, model.alphabet, model.unitary, model.projectors, tol);
}

ModelFile from_generator(const QuantumGenerator<double>& g) {
  ModelFile m;
  m.dim = g.dim();
  m.alphabet = g.alphabet();
  m.unitary = g.unitary();
  for (std::size_t s = 0; s < g.alphabet().size(); ++s) m.projectors[g.alphabet()[s]] = g.projector(s);
  return m;
}

std::string format_real(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

void write_distribution_csv(std::ostream& out, const WordDistribution<double>& dist,
                            double epsilon) {
  const double scale = std::pow(static_cast<double>(dist.alphabet().size()),
                                static_cast<double>(dist.length()));
  out << "word,probability,density,log2_density\n";
  for (std::size_t r = 0; r < dist.size(); ++r) {
    const double p = dist.probability(r);
    out << dist.word(r) << ',';
    if (p <= epsilon) {
      out << "0,-inf,-inf\n";
    } else {
      out << format_real(p) << ',' << format_real(scale * p) << ','
          << format_real(std::log2(scale * p)) << '\n';
    }
  }
}

std::vector<std::pair<Word, double>> read_distribution_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "word,probability,density,log2_density")
    throw ParseError("distribution CSV header missing");
  std::vector<std::pair<Word, double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    const auto next = line.find(',', comma + 1);
    if (comma == std::string::npos || next == std::string::npos)
      throw ParseError("malformed distribution CSV row: " + line);
    try {
      rows.emplace_back(line.substr(0, comma), std::stod(line.substr(comma + 1, next - comma - 1)));
    } catch (const std::logic_error&) {
      throw ParseError("bad probability in row: " + line);
    }
  }
  return rows;
}

void write_density_csv(std::ostream& out, const std::vector<DensityPoint<double>>& points) {
  out << "x,log2_density\n";
  for (const auto& p : points) out << format_real(p.x) << ',' << format_real(p.log2_density) << '\n';
}

}  // namespace qfg::io
