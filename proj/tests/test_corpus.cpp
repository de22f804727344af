#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "pons/corpus.hpp"
#include "pons/report.hpp"

using namespace pons;

namespace {

const TheoremReport* find_theorem(const RunReport& r, const std::string& name) {
  for (const auto& t : r.theorems)
    if (t.name == name) return &t;
  return nullptr;
}

}  // namespace

TEST_CASE("every corpus entry is embedded and matches the file on disk") {
  const auto disk = load_sources({PONS_CORPUS_DIR});
  for (const auto& e : bundled_corpus()) {
    CAPTURE(e.file);
    const auto it = std::find_if(disk.begin(), disk.end(), [&](const SourceFile& f) {
      return f.path.size() >= e.file.size() &&
             f.path.compare(f.path.size() - e.file.size(), e.file.size(), e.file) == 0;
    });
    REQUIRE(it != disk.end());
    CHECK(it->text == e.text);
  }
  CHECK(bundled_file("conjectures/anglesum.conj"));
  CHECK_FALSE(bundled_file("missing.proof"));
}

TEST_CASE("bundled sources leave out the conjectures") {
  for (const auto& f : bundled_sources()) CHECK(f.path.find("conjectures") == std::string::npos);
  CHECK(bundled_sources().size() == bundled_corpus().size());
}

TEST_CASE("corpus entries produce their recorded status, classification and edges") {
  for (const bool strict : {false, true}) {
    CAPTURE(strict);
    const Analysis a = testing::corpus_analysis(CheckOptions{strict});
    CHECK(a.errors.empty());
    const RunReport rep = make_report(a);
    for (const auto& e : bundled_corpus()) {
      CAPTURE(e.name);
      const auto* t = find_theorem(rep, e.node);
      REQUIRE(t);
      CHECK(t->status == e.expected_status);
      CHECK(deps::classify(a.graph, e.node) == e.expected_classification);
      for (const auto& [user, used] : e.expected_edges) {
        CAPTURE(user);
        CAPTURE(used);
        CHECK(a.graph.uses(user).count(used) == 1);
      }
    }
  }
}

TEST_CASE("the corpus graph has exactly the recorded edges") {
  const Analysis a = testing::corpus_analysis();
  std::set<std::pair<std::string, std::string>> recorded;
  for (const auto& e : bundled_corpus())
    for (const auto& edge : e.expected_edges) recorded.insert(edge);
  std::set<std::pair<std::string, std::string>> actual;
  for (const auto& [name, node] : a.graph.nodes())
    for (const auto& used : a.graph.uses(name)) actual.insert({name, used});
  CHECK(actual == recorded);
}

TEST_CASE("strict checking records no assumptions on the corpus") {
  const RunReport rep = make_report(testing::corpus_analysis(CheckOptions{true}));
  for (const auto& t : rep.theorems) {
    CAPTURE(t.name);
    CHECK(t.assumptions.empty());
  }
}

TEST_CASE("conjecture file elaborates and is classified euclidean only") {
  auto sources = bundled_sources();
  sources.push_back({"conjectures/anglesum.conj", std::string(*bundled_file("conjectures/anglesum.conj"))});
  const Analysis a = analyze(parse_sources(sources));
  CHECK(deps::classify(a.graph, "triangle_angle_sum") == deps::Classification::euclidean_only);
  const auto* t = find_theorem(make_report(a), "triangle_angle_sum");
  REQUIRE(t);
  CHECK(t->status == "declared");
}
