#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "pons/cli.hpp"
#include "pons/report.hpp"

using namespace pons;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string corpus(const std::string& file) { return std::string(PONS_CORPUS_DIR) + "/" + file; }

// A scratch directory removed on scope exit.
struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("pons_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name, std::ios::binary) << text;
    return (dir / name).string();
  }
};

const char* kBroken = R"(theorem broken
  tags: neutral
  points A B C
  assume h1: seg A B == seg A C
  assume h2: noncollinear A B C
  show ang A B C == ang A C B
  proof
    s1: ang B A C == ang C A B by ANG_REFL[B,A,C]
  qed from s1
)";

}  // namespace

TEST_CASE("check passes the provable corpus") {
  const auto r = run({"check", "--strict-degeneracy", corpus("pappus_pons.proof"), corpus("euclid_i5.proof"),
                      corpus("euclid_i6.proof")});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("ok      euclid_i5\n") != std::string::npos);
  CHECK(r.out.find("3 proofs checked, 0 failed") != std::string::npos);
}

TEST_CASE("check reports a failing proof with exit 1") {
  Scratch s;
  const auto r = run({"check", s.write("broken.proof", kBroken)});
  CHECK(r.code == cli::kExitFailed);
  CHECK(r.out.find("FAILED  broken") != std::string::npos);
}

TEST_CASE("syntax errors and unreadable files exit 2") {
  Scratch s;
  const auto bad = run({"check", s.write("bad.proof", "theorem\n")});
  CHECK(bad.code == cli::kExitUsage);
  CHECK(testing::starts_with(bad.err, "syntax error: "));
  CHECK(run({"check", (s.dir / "missing.proof").string()}).code == cli::kExitUsage);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({"check"}).code == cli::kExitUsage);
  CHECK(run({"model", "--model", "torus", corpus("pappus_pons.proof")}).code == cli::kExitUsage);
  CHECK(run({"model", "--trials", "-3", corpus("pappus_pons.proof")}).code == cli::kExitUsage);
  CHECK(run({"model", "--tol", "0", corpus("pappus_pons.proof")}).code == cli::kExitUsage);
}

TEST_CASE("help and version exit 0") {
  CHECK(run({"--help"}).code == cli::kExitOk);
  const auto v = run({"--version"});
  CHECK(v.code == cli::kExitOk);
  CHECK(v.out.find(std::string(kVersion)) != std::string::npos);
}

TEST_CASE("deps exits 1 on a cyclic corpus and 0 on an acyclic one") {
  const auto cyc = run({"deps", PONS_CORPUS_DIR});
  CHECK(cyc.code == cli::kExitFailed);
  CHECK(cyc.out.find("cycle: inscribed_angle_theorem, pons_via_inscribed") != std::string::npos);
  const auto acyc = run({"deps", corpus("euclid_i5.proof"), corpus("pons_via_area.proof")});
  CHECK(acyc.code == cli::kExitOk);
  CHECK(acyc.out.find("no cycles") != std::string::npos);
}

TEST_CASE("deps --dot writes the graph file") {
  Scratch s;
  const std::string dot = (s.dir / "g.dot").string();
  CHECK(run({"deps", corpus("euclid_i5.proof"), "--dot", dot}).code == cli::kExitOk);
  std::ifstream in(dot);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(testing::starts_with(text.str(), "digraph"));
  CHECK(run({"deps", corpus("euclid_i5.proof"), "--dot", (s.dir / "no/such/dir.dot").string()}).code ==
        cli::kExitUsage);
}

TEST_CASE("deps --json parses back into a report") {
  const auto r = run({"deps", PONS_CORPUS_DIR, "--json"});
  const RunReport rep = report_from_json(r.out);
  CHECK(rep.cycles.size() == 2);
  CHECK(run({"deps", PONS_CORPUS_DIR, "--json"}).out == r.out);
}

TEST_CASE("model passes neutral theorems and tolerates the expected divergence") {
  const auto ok = run({"model", corpus("pappus_pons.proof"), "--trials", "50"});
  CHECK(ok.code == cli::kExitOk);
  CHECK(ok.out.find("poincare") != std::string::npos);

  const auto conj = run({"model", corpus("conjectures/anglesum.conj"), "--trials", "50"});
  CHECK(conj.code == cli::kExitOk);
  CHECK(conj.out.find("expected-divergence") != std::string::npos);
  CHECK(conj.out.find("counterexample") != std::string::npos);

  const auto one = run({"model", corpus("pappus_pons.proof"), "--model", "sphere", "--trials", "5", "--json"});
  const RunReport rep = report_from_json(one.out);
  CHECK(rep.theorems.at(0).models.size() == 1);
  CHECK(rep.theorems.at(0).models.count("sphere") == 1);
}

TEST_CASE("model fails a statement that is false everywhere") {
  Scratch s;
  const auto path = s.write("false.proof", R"(theorem wrong
  tags: neutral
  points A B C
  assume h1: noncollinear A B C
  show seg A B == seg A C
)");
  const auto r = run({"model", path, "--trials", "20"});
  CHECK(r.code == cli::kExitFailed);
  CHECK(r.out.find("counterexample") != std::string::npos);
}

TEST_CASE("parse counts items and dumps the tree") {
  const auto r = run({"parse", corpus("euclid_chain.proof")});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find(" items\n") != std::string::npos);
  const auto dump = run({"parse", "--dump-ast", corpus("euclid_i5.proof")});
  CHECK(dump.code == cli::kExitOk);
  CHECK(testing::starts_with(dump.out, "{"));
}
