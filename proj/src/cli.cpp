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

#include "qfg/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <variant>

#include <CLI11.hpp>

#include "qfg/io.hpp"
#include "qfg/qfg.hpp"

namespace qfg::cli {
namespace {

struct QuantumModel {
  QuantumGenerator<double> generator;
  std::optional<StateVectord> initial_state;
};

struct ClassicalModel {
  ClassicalGenerator<double> generator;
};

using Model = std::variant<QuantumModel, ClassicalModel>;

struct Settings {
  double tol = 1e-10;
  double epsilon = 1e-12;
  std::size_t cap = std::size_t{1} << 20;

  GeneratorTolerances<double> generator_tolerances() const { return {tol, epsilon}; }
  LanguageOptions<double> language_options() const { return {epsilon, cap, tol}; }
};

/// Failure carrying the process exit code.
struct CommandFailure {
  int code;
  std::string message;
};

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"spin1-y", "spin1-x", "spin1-z",
                                              "oracle-golden-mean", "oracle-even"};
  return names;
}

std::optional<io::ModelFile> builtin_quantum_file(const std::string& name) {
  if (name.rfind("spin1-", 0) == 0 && name.size() == 7) {
    const SpinAxis axis = parse_spin_axis(name[6]);
    const ComplexMatrixd j = spin_operator<double>(axis);
    io::ModelFile m;
    m.dim = 3;
    m.alphabet = Alphabet{'0', '1'};
    m.unitary = spin1_unitary<double>();
    m.projectors = {{'0', identity<double>(3) - j * j}, {'1', j * j}};
    return m;
  }
  return std::nullopt;
}

std::optional<ClassicalGenerator<double>> builtin_classical(const std::string& name) {
  if (name == "oracle-golden-mean") return classical_golden_mean<double>();
  if (name == "oracle-even") return classical_even<double>();
  return std::nullopt;
}

io::ModelFile model_document(const std::string& name) {
  if (auto m = builtin_quantum_file(name)) return *m;
  return io::load_model(name);
}

Model load(const std::string& name, const Settings& settings) {
  if (auto c = builtin_classical(name)) return ClassicalModel{*c};
  io::ModelFile doc = model_document(name);
  QuantumModel m{io::to_generator(doc, settings.generator_tolerances()), doc.initial_state};
  return m;
}

QuantumProcess<double> quantum_process(const QuantumModel& m) {
  if (m.initial_state) {
    return {m.generator, DensityMatrix<double>::from_state(*m.initial_state)};
  }
  return QuantumProcess<double>(m.generator);
}

/// Calls `fn` with the model's process (stationary unless the model file
/// names an initial state).
template <typename Fn>
auto with_process(const Model& model, Fn&& fn) {
  return std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, QuantumModel>) {
          return fn(quantum_process(m));
        } else {
          return fn(ClassicalProcess<double>(m.generator));
        }
      },
      model);
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw CommandFailure{kRuntimeError, "cannot open output file '" + path + "'"};
    }
    stream_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void print_check(std::ostream& out, const std::string& name, double residual, bool passed,
                 const std::vector<char>& symbols = {}) {
  out << std::left << std::setw(16) << name << " residual=" << io::format_real(residual) << "  "
      << (passed ? "PASS" : "FAIL");
  if (!symbols.empty()) {
    out << "  symbols:";
    for (char s : symbols) out << ' ' << s;
  }
  out << '\n';
}

int cmd_validate(const std::string& name, const Settings& settings, std::ostream& out,
                 std::ostream& err) {
  if (auto c = builtin_classical(name)) {
    // Construction already enforces the invariants; report their residuals.
    const auto& g = *c;
    RealMatrix<double> total = RealMatrix<double>::Zero(2, 2);
    for (std::size_t s = 0; s < g.alphabet().size(); ++s) total += g.transition(s);
    const double stochastic = (total.rowwise().sum().array() - 1.0).abs().maxCoeff();
    const double stationary = (g.stationary() * total - g.stationary()).cwiseAbs().maxCoeff();
    print_check(out, "row-stochastic", stochastic, stochastic <= settings.tol);
    print_check(out, "stationary", stationary, stationary <= settings.tol);
    out << "model " << name << ": valid\n";
    return kOk;
  }

  const io::ModelFile doc = model_document(name);
  const AxiomReport report =
      check_axioms<double>(doc.dim, doc.alphabet, doc.unitary, doc.projectors, settings.tol);
  for (const auto& c : report.checks) print_check(out, c.name, c.residual, c.passed, c.symbols);
  if (const AxiomCheck* bad = report.first_failure()) {
    if (bad->name == "unitary") {
      err << "UnitarityError: " << UnitarityError(bad->residual).what() << '\n';
    } else {
      err << "ProjectorAxiomError: "
          << ProjectorAxiomError(bad->name, bad->symbols, bad->residual).what() << '\n';
    }
    return kInvalidModel;
  }
  if (doc.initial_state) {
    const double norm_err = std::abs(doc.initial_state->squaredNorm() - 1.0);
    print_check(out, "initial-state", norm_err, norm_err <= settings.tol);
    if (norm_err > settings.tol) {
      err << "initial_state is not normalized\n";
      return kInvalidModel;
    }
  }
  out << "model " << name << ": valid\n";
  return kOk;
}

int cmd_words(const Model& model, std::size_t length, const std::string& path,
              const Settings& settings, std::ostream& out) {
  const auto dist = with_process(model, [&](const auto& p) {
    return enumerate_distribution(p, length, settings.language_options());
  });
  Output o(path, out);
  io::write_distribution_csv(o.stream(), dist, settings.epsilon);
  return kOk;
}

int cmd_forbidden(const Model& model, std::size_t max_length, const Settings& settings,
                  std::ostream& out) {
  const auto report = with_process(model, [&](const auto& p) {
    return forbidden_words(p, max_length, settings.language_options());
  });
  out << "# forbidden (max length " << max_length << ", " << report.forbidden.size() << " words)\n";
  for (const auto& w : report.forbidden) out << w << '\n';
  out << "# irreducible (" << report.irreducible.size() << " words)\n";
  for (const auto& w : report.irreducible) out << w << '\n';
  return kOk;
}

int cmd_entropy(const Model& model, std::size_t max_length, const Settings& settings,
                std::ostream& out) {
  out << "L,block_entropy,entropy_rate\n";
  with_process(model, [&](const auto& p) {
    double previous = 0.0;  // H(0) = 0
    for (std::size_t len = 1; len <= max_length; ++len) {
      const double h = block_entropy(enumerate_distribution(p, len, settings.language_options()));
      out << len << ',' << io::format_real(h) << ',' << io::format_real(h - previous) << '\n';
      previous = h;
    }
    return 0;
  });
  return kOk;
}

int cmd_sample(const Model& model, std::size_t n, std::uint64_t seed, const std::string& path,
               const Settings& settings, std::ostream& out) {
  Word w;
  const auto* q = std::get_if<QuantumModel>(&model);
  if (q && q->initial_state) {
    w = sample_trajectory(q->generator, StateVectord(q->initial_state->normalized()), n, seed);
  } else {
    w = with_process(model, [&](const auto& p) { return sample_process(p, n, seed, settings.epsilon); });
  }
  Output o(path, out);
  o.stream() << w;
  if (n > 0) o.stream() << '\n';
  return kOk;
}

int cmd_figdata(const Model& model, std::size_t length, const std::string& path,
                const Settings& settings, std::ostream& out) {
  const auto points = with_process(model, [&](const auto& p) {
    return figure2_data(p, length, settings.language_options());
  });
  Output o(path, out);
  io::write_density_csv(o.stream(), points);
  return kOk;
}

int cmd_compare(const Model& model, const Model& oracle, std::size_t max_length,
                const Settings& settings, std::ostream& out) {
  const auto dev = with_process(model, [&](const auto& a) {
    return with_process(oracle, [&](const auto& b) {
      return max_word_deviation(a, b, max_length, settings.language_options());
    });
  });
  const bool same = dev.max_abs < settings.tol;
  out << "max_deviation," << io::format_real(dev.max_abs) << '\n';
  out << "word," << dev.word << '\n';
  out << "max_length," << max_length << '\n';
  out << "result," << (same ? "equivalent" : "different") << '\n';
  return same ? kOk : kMismatch;
}

/// Nonzero entries of the per-symbol transition matrices as
/// `from,to,symbol,weight_re,weight_im`.
int cmd_edges(const Model& model, const Settings& settings, std::ostream& out) {
  out << "from,to,symbol,weight_re,weight_im\n";
  std::visit(
      [&](const auto& m) {
        const auto& g = m.generator;
        for (std::size_t s = 0; s < g.alphabet().size(); ++s) {
          const auto& t = g.transition(s);
          for (Eigen::Index i = 0; i < t.rows(); ++i)
            for (Eigen::Index j = 0; j < t.cols(); ++j) {
              const std::complex<double> z(t(i, j));
              if (std::abs(z) <= settings.epsilon) continue;
              out << i << ',' << j << ',' << g.alphabet()[s] << ',' << io::format_real(z.real())
                  << ',' << io::format_real(z.imag()) << '\n';
            }
        }
      },
      model);
  return kOk;
}

int cmd_export(const std::string& name, const Settings& settings, std::ostream& out) {
  if (builtin_classical(name))
    throw CommandFailure{kInvalidModel, "classical oracles have no model-file form"};
  const io::ModelFile doc = model_document(name);
  (void)io::to_generator(doc, settings.generator_tolerances());
  io::write_model(out, doc);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum finite-state generator analysis"};
  app.name("qfg");
  app.require_subcommand(1);
  app.fallthrough();

  Settings settings;
  app.add_option("--tol", settings.tol, "validation tolerance")->capture_default_str();
  app.add_option("--epsilon", settings.epsilon, "zero-probability threshold")->capture_default_str();
  app.add_option("--cap", settings.cap, "maximum number of words per enumerated length")
      ->capture_default_str();

  std::string model_name;
  std::string oracle_name;
  std::string out_path;
  std::size_t length = 0;
  std::uint64_t seed = 0;

  std::string model_help = "model file or built-in name (";
  for (const auto& n : builtin_names()) model_help += n + (n == builtin_names().back() ? ")" : ", ");

  auto add_model = [&](CLI::App* sub) { sub->add_option("--model", model_name, model_help)->required(); };

  auto* validate = app.add_subcommand("validate", "check the generator axioms");
  add_model(validate);

  auto* words = app.add_subcommand("words", "exact word distribution as CSV");
  add_model(words);
  words->add_option("--max-len,-L", length, "word length")->required();
  words->add_option("--out,-o", out_path, "output file (default stdout)");

  auto* forbidden = app.add_subcommand("forbidden", "forbidden and irreducible forbidden words");
  add_model(forbidden);
  forbidden->add_option("--max-len,-L", length, "maximum word length")->required();

  auto* entropy = app.add_subcommand("entropy", "block entropies and entropy-rate estimates");
  add_model(entropy);
  entropy->add_option("--max-len,-L", length, "maximum block length")->required();

  auto* sample = app.add_subcommand("sample", "sample a symbol sequence");
  add_model(sample);
  sample->add_option("--len,-n", length, "number of symbols")->required();
  sample->add_option("--seed", seed, "64-bit seed")->capture_default_str();
  sample->add_option("--out,-o", out_path, "output file (default stdout)");

  auto* figdata = app.add_subcommand("figdata", "word log-densities on the unit interval as CSV");
  add_model(figdata);
  figdata->add_option("--len,-L", length, "word length")->required();
  figdata->add_option("--out,-o", out_path, "output file (default stdout)");

  auto* compare = app.add_subcommand("compare", "maximum word-probability deviation from an oracle");
  add_model(compare);
  compare->add_option("--oracle", oracle_name, "oracle model")->required();
  compare->add_option("--max-len,-L", length, "maximum word length")->required();

  auto* edges = app.add_subcommand("edges", "nonzero transition entries as an edge list");
  add_model(edges);

  auto* exporter = app.add_subcommand("export", "write a quantum model as a model file");
  add_model(exporter);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (validate->parsed()) return cmd_validate(model_name, settings, out, err);
    if (exporter->parsed()) return cmd_export(model_name, settings, out);

    const Model model = load(model_name, settings);
    if (words->parsed()) return cmd_words(model, length, out_path, settings, out);
    if (forbidden->parsed()) return cmd_forbidden(model, length, settings, out);
    if (entropy->parsed()) return cmd_entropy(model, length, settings, out);
    if (sample->parsed()) return cmd_sample(model, length, seed, out_path, settings, out);
    if (figdata->parsed()) return cmd_figdata(model, length, out_path, settings, out);
    if (compare->parsed()) return cmd_compare(model, load(oracle_name, settings), length, settings, out);
    if (edges->parsed()) return cmd_edges(model, settings, out);
  } catch (const CommandFailure& f) {
    err << f.message << '\n';
    return f.code;
  } catch (const ParseError& e) {
    err << "ParseError: " << e.what() << '\n';
    return kInvalidModel;
  } catch (const UnitarityError& e) {
    err << "UnitarityError: " << e.what() << '\n';
    return kInvalidModel;
  } catch (const ProjectorAxiomError& e) {
    err << "ProjectorAxiomError: " << e.what() << '\n';
    return kInvalidModel;
  } catch (const DimensionError& e) {
    err << "DimensionError: " << e.what() << '\n';
    return kInvalidModel;
  } catch (const std::invalid_argument& e) {
    err << "invalid model: " << e.what() << '\n';
    return kInvalidModel;
  } catch (const ResourceCapError& e) {
    err << "ResourceCapError: " << e.what() << '\n';
    return kResourceCap;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kRuntimeError;
}

}  // namespace qfg::cli
