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

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracle.hpp"
#include "qfg/cli.hpp"
#include "qfg/io.hpp"
#include "qfg/qfg.hpp"

using namespace qfg;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qfg_test_" + name);
}

std::string write_temp(const std::string& name, const std::string& content) {
  const auto p = temp_path(name);
  std::ofstream(p) << content;
  return p.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string model_text(const io::ModelFile& m) {
  std::ostringstream os;
  io::write_model(os, m);
  return os.str();
}

io::ModelFile fair_coin_model() {
  io::ModelFile m;
  m.dim = 2;
  m.alphabet = Alphabet{'0', '1'};
  const double a = 1 / std::sqrt(2.0);
  m.unitary.resize(2, 2);
  m.unitary << a, a, a, -a;  // Hadamard: every outcome has probability 1/2
  ComplexMatrixd p0 = ComplexMatrixd::Zero(2, 2), p1 = ComplexMatrixd::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  m.projectors = {{'0', p0}, {'1', p1}};
  return m;
}

}  // namespace

TEST_CASE("model file round trip and parse errors") {
  const io::ModelFile spin = io::from_generator(spin1_generator<double>(SpinAxis::y));
  std::istringstream in(model_text(spin));
  const io::ModelFile back = io::parse_model(in);
  CHECK(back.dim == 3);
  CHECK(back.alphabet == spin.alphabet);
  CHECK(frobenius_distance(back.unitary, spin.unitary) == 0.0);
  CHECK_NOTHROW(io::to_generator(back));

  auto parse = [](const std::string& s) {
    std::istringstream is(s);
    return io::parse_model(is);
  };
  CHECK_THROWS_AS(parse("{"), ParseError);
  CHECK_THROWS_AS(parse("[]"), ParseError);
  CHECK_THROWS_AS(parse(R"({"dim": 1, "alphabet": ["0"], "unitary": [[[1, 0]]]})"), ParseError);
  CHECK_THROWS_AS(parse(R"({"dim": 1, "alphabet": ["0"], "unitary": [[[1]]], "projectors": {"0": [[[1, 0]]]}})"),
                  ParseError);
  CHECK_THROWS_AS(parse(R"({"dim": 1, "alphabet": ["00"], "unitary": [[[1, 0]]], "projectors": {}})"), ParseError);
  CHECK_THROWS_AS(parse(R"({"dim": 2, "alphabet": ["0"], "unitary": [[[1, 0]]], "projectors": {"0": [[[1, 0]]]}})"),
                  ParseError);
  const auto ok = parse(
      R"({"dim": 1, "alphabet": ["a"], "unitary": [[[0, 1]]], "projectors": {"a": [[[1, 0]]]}, "initial_state": [[1, 0]]})");
  CHECK(ok.initial_state.has_value());
  CHECK(ok.unitary(0, 0) == Complex<double>(0, 1));
}

TEST_CASE("validate") {
  for (const char* name : {"spin1-y", "spin1-x", "spin1-z", "oracle-even"}) {
    const auto r = run({"validate", "--model", name});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
  }
  const auto r = run({"validate", "--model", "spin1-y"});
  for (const char* check : {"unitary", "hermitian", "idempotent", "orthogonal", "complete"})
    CHECK(r.out.find(check) != std::string::npos);

  io::ModelFile broken = io::from_generator(spin1_generator<double>(SpinAxis::y));
  broken.unitary.row(0) *= 1.001;
  const auto path = write_temp("broken.qfg", model_text(broken));
  const auto b = run({"validate", "--model", path});
  CHECK(b.code == 2);
  CHECK(b.err.find("UnitarityError") != std::string::npos);
  CHECK(b.out.find("FAIL") != std::string::npos);

  io::ModelFile overlap = io::from_generator(spin1_generator<double>(SpinAxis::y));
  overlap.projectors['1'] = overlap.projectors['0'];
  const auto o = run({"validate", "--model", write_temp("overlap.qfg", model_text(overlap))});
  CHECK(o.code == 2);
  CHECK(o.err.find("ProjectorAxiomError") != std::string::npos);

  CHECK(run({"validate", "--model", write_temp("garbage.qfg", "not json")}).code == 2);
  CHECK(run({"validate", "--model", temp_path("missing.qfg").string()}).code == 2);
}

TEST_CASE("words") {
  const auto r = run({"words", "--model", "spin1-y", "--max-len", "2"});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "word,probability,density,log2_density");
  CHECK(rows[1] == "00,0,-inf,-inf");
  CHECK(rows[4].rfind("11,0.333333333333333,", 0) == 0);

  const auto e = run({"words", "--model", "spin1-x", "--max-len", "3"});
  CHECK(lines(e.out)[3] == "010,0,-inf,-inf");

  const auto z = run({"words", "--model", "spin1-x", "--max-len", "0"});
  REQUIRE(lines(z.out).size() == 2);
  CHECK(lines(z.out)[1] == ",1,1,0");

  const auto cap = run({"words", "--model", "spin1-x", "--max-len", "21"});
  CHECK(cap.code == 3);
  CHECK(run({"--cap", "100", "words", "--model", "spin1-x", "--max-len", "7"}).code == 3);

  // File output round-trips through the CSV reader.
  const auto path = temp_path("words.csv").string();
  CHECK(run({"words", "--model", "spin1-x", "--max-len", "10", "--out", path}).code == 0);
  std::ifstream in(path);
  const auto parsed = io::read_distribution_csv(in);
  REQUIRE(parsed.size() == 1024);
  double total = 0;
  for (const auto& [w, p] : parsed) total += p;
  const auto dist = enumerate_distribution(QuantumProcess<double>(spin1_generator<double>(SpinAxis::x)), 10);
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    CHECK(parsed[i].first == dist.word(i));
    const double exact = dist.probability(i) <= 1e-12 ? 0.0 : dist.probability(i);
    CHECK(std::abs(parsed[i].second / total - exact) < 1e-14);
  }
}

TEST_CASE("forbidden") {
  auto section = [](const std::string& out, const std::string& header) {
    std::vector<std::string> words;
    bool in = false;
    for (const auto& l : lines(out)) {
      if (l.rfind("# ", 0) == 0) {
        in = l.rfind("# " + header, 0) == 0;
        continue;
      }
      if (in) words.push_back(l);
    }
    return words;
  };
  const auto gm = run({"forbidden", "--model", "spin1-y", "--max-len", "6"});
  CHECK(gm.code == 0);
  CHECK(section(gm.out, "irreducible") == std::vector<std::string>{"00"});
  CHECK(section(gm.out, "forbidden").size() == 1 + 3 + 8 + 19 + 43);

  const auto ev = run({"forbidden", "--model", "spin1-x", "--max-len", "8"});
  CHECK(section(ev.out, "irreducible") == std::vector<std::string>{"010", "01110", "0111110"});

  const auto one = run({"forbidden", "--model", "spin1-y", "--max-len", "1"});
  CHECK(section(one.out, "irreducible").empty());
  CHECK(section(one.out, "forbidden").empty());
}

TEST_CASE("entropy") {
  const auto gm = run({"entropy", "--model", "spin1-y", "--max-len", "4"});
  CHECK(gm.code == 0);
  const auto rows = lines(gm.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "L,block_entropy,entropy_rate");
  CHECK(rows[1].rfind("1,0.918295834054", 0) == 0);
  for (int i = 2; i <= 4; ++i) CHECK(rows[i].substr(rows[i].rfind(',') + 1).rfind("0.66666666666", 0) == 0);

  const auto ev = run({"entropy", "--model", "oracle-even", "--max-len", "4"});
  double prev = 2;
  const auto ev_rows = lines(ev.out);
  for (std::size_t i = 1; i < ev_rows.size(); ++i) {
    const auto& l = ev_rows[i];
    const double rate = std::stod(l.substr(l.rfind(',') + 1));
    CHECK(rate < prev);
    CHECK(rate > 2.0 / 3);
    prev = rate;
  }

  const auto coin = run({"entropy", "--model", write_temp("coin.qfg", model_text(fair_coin_model())), "--max-len", "3"});
  CHECK(coin.code == 0);
  const auto coin_rows = lines(coin.out);
  for (int l = 1; l <= 3; ++l) {
    const auto& row = coin_rows[static_cast<std::size_t>(l)];
    const double h = std::stod(row.substr(row.find(',') + 1));
    CHECK(h == doctest::Approx(double(l)).epsilon(1e-12));
  }
}

TEST_CASE("sample") {
  const auto gm_path = temp_path("gm.txt").string();
  CHECK(run({"sample", "--model", "spin1-y", "--len", "100000", "--seed", "5", "--out", gm_path}).code == 0);
  const std::string gm = read_file(gm_path);
  CHECK(gm.size() == 100001);
  CHECK_FALSE(oracle::has_00(gm));

  const auto ev = run({"sample", "--model", "spin1-x", "--len", "100000", "--seed", "6"});
  CHECK_FALSE(oracle::has_odd_block(ev.out));

  const auto empty_path = temp_path("empty.txt").string();
  CHECK(run({"sample", "--model", "spin1-x", "--len", "0", "--out", empty_path}).code == 0);
  CHECK(read_file(empty_path).empty());

  // Deterministic in (model, flags, seed).
  CHECK(run({"sample", "--model", "spin1-y", "--len", "500", "--seed", "9"}).out ==
        run({"sample", "--model", "spin1-y", "--len", "500", "--seed", "9"}).out);
  CHECK(run({"sample", "--model", "oracle-golden-mean", "--len", "2000", "--seed", "9"}).out.find("00") ==
        std::string::npos);

  // A model file with an initial state samples the pure trajectory.
  io::ModelFile withstate = io::from_generator(spin1_generator<double>(SpinAxis::y));
  withstate.initial_state = StateVectord::Unit(3, 1);
  const auto s = run({"sample", "--model", write_temp("state.qfg", model_text(withstate)), "--len", "3"});
  CHECK(s.out.rfind("1", 0) == 0);  // e2 emits 1 with certainty
}

TEST_CASE("figdata") {
  const auto r = run({"figdata", "--model", "spin1-x", "--len", "6"});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 65);
  CHECK(rows[0] == "x,log2_density");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const Word w = Alphabet{'0', '1'}.word_at(i - 1, 6);
    const bool inf = rows[i].find("-inf") != std::string::npos;
    CHECK(inf == oracle::has_odd_block(w));
    CHECK(std::stod(rows[i].substr(0, rows[i].find(','))) == doctest::Approx((i - 1) / 64.0));
  }

  const auto coin = run({"figdata", "--model", write_temp("coin2.qfg", model_text(fair_coin_model())), "--len", "4"});
  const auto coin_rows = lines(coin.out);
  for (std::size_t i = 1; i < coin_rows.size(); ++i) {
    const auto& l = coin_rows[i];
    CHECK(std::abs(std::stod(l.substr(l.find(',') + 1))) < 1e-12);
  }

  const auto gm = run({"figdata", "--model", "spin1-y", "--len", "2"});
  const auto gm_rows = lines(gm.out);
  const auto& last = gm_rows[4];
  CHECK(last.rfind("0.75,", 0) == 0);
  CHECK(std::abs(std::stod(last.substr(last.find(',') + 1)) - std::log2(4.0 / 3)) < 1e-12);
}

TEST_CASE("compare") {
  const auto a = run({"compare", "--model", "spin1-y", "--oracle", "oracle-golden-mean", "--max-len", "8"});
  CHECK(a.code == 0);
  CHECK(a.out.find("result,equivalent") != std::string::npos);
  CHECK(run({"compare", "--model", "spin1-x", "--oracle", "oracle-even", "--max-len", "8"}).code == 0);

  const auto c = run({"compare", "--model", "spin1-y", "--oracle", "oracle-even", "--max-len", "3"});
  CHECK(c.code == 1);
  const auto first = lines(c.out)[0];
  CHECK(std::stod(first.substr(first.find(',') + 1)) >= 1.0 / 12);
}

TEST_CASE("edges and export") {
  const auto e = run({"edges", "--model", "spin1-x"});
  CHECK(e.code == 0);
  // T(0) = U diag(1,0,0) has two nonzero entries, T(1) = U diag(0,1,1) has three.
  CHECK(lines(e.out).size() == 1 + 2 + 3);

  const auto x = run({"export", "--model", "spin1-x"});
  CHECK(x.code == 0);
  std::istringstream in(x.out);
  CHECK_NOTHROW(io::to_generator(io::parse_model(in)));
  CHECK(run({"export", "--model", "oracle-even"}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code != 0);
  CHECK(run({"words", "--model", "spin1-y"}).code != 0);
  CHECK(run({"nonsense"}).code != 0);
}
