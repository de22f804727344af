#include <doctest.h>

#include <algorithm>
#include <random>

#include "errors.hpp"
#include "fixtures.hpp"
#include "harness.hpp"
#include "pons/corpus.hpp"
#include "pons/kernel.hpp"

using namespace pons;
using pons::testing::check_named;
using pons::testing::error_of;
using pons::testing::starts_with;

namespace {

PointId P(const char* n) { return point(n); }
std::vector<PointId> pts(std::initializer_list<const char*> names) {
  std::vector<PointId> out;
  for (const char* n : names) out.push_back(P(n));
  return out;
}

TheoremStatement isosceles(bool with_triangle = true) {
  TheoremStatement st;
  st.name = "iso";
  st.given = pts({"A", "B", "C"});
  st.hypotheses.push_back({"h1", seg_eq(canon_segment(P("A"), P("B")), canon_segment(P("A"), P("C")))});
  if (with_triangle) st.hypotheses.push_back({"h2", noncollinear(P("A"), P("B"), P("C"))});
  st.conclusions.push_back(ang_eq(canon_angle(P("A"), P("B"), P("C")), canon_angle(P("A"), P("C"), P("B"))));
  return st;
}

const char* kHeader = R"(theorem t
  tags: neutral
  points A B C
  assume h1: seg A B == seg A C
  assume h2: noncollinear A B C
  show ang A B C == ang A C B
  proof
)";

std::string with_body(const std::string& body) { return kHeader + body; }

}  // namespace

TEST_CASE("SAS on a triangle and its mirror image gives the base angles") {
  const ProofState state = initial_state(isosceles());
  const auto inst = pts({"A", "B", "C", "A", "C", "B"});
  const std::vector<Ref> refs{Ref::to("h1"), Ref::to("h1"), Ref::reflexive()};
  CheckReport trace;
  const auto out = apply_rule(state, RuleId::SasOrd, inst, refs, {true}, &trace);
  CHECK(std::find(out.begin(), out.end(), isosceles().conclusions[0]) != out.end());
  CHECK(trace.axioms_used.count("ANG_REFL") == 1);
  REQUIRE(trace.side_conditions.size() == 2);
  CHECK(trace.side_conditions[0].status == SideStatus::derived);
}

TEST_CASE("apply_rule rejects wrong citations and degenerate instantiations") {
  const ProofState state = initial_state(isosceles());
  const std::vector<Ref> refs{Ref::to("h1"), Ref::to("h2"), Ref::reflexive()};
  CHECK(error_of([&] { apply_rule(state, RuleId::SasOrd, pts({"A", "B", "C", "A", "C", "B"}), refs); }) ==
        ErrorCode::PremiseMismatch);
  const std::vector<Ref> missing{Ref::to("h1"), Ref::to("zz"), Ref::reflexive()};
  CHECK(error_of([&] { apply_rule(state, RuleId::SasOrd, pts({"A", "B", "C", "A", "C", "B"}), missing); }) ==
        ErrorCode::UnknownPremise);
  const std::vector<Ref> none;
  CHECK(error_of([&] { apply_rule(state, RuleId::SegRefl, pts({"A", "A"}), none); }) ==
        ErrorCode::DegenerateInstantiation);
  CHECK(error_of([&] { apply_rule(state, RuleId::SegRefl, pts({"A"}), none); }) ==
        ErrorCode::BadInstantiation);
  CHECK(error_of([&] { apply_rule(state, RuleId::SegRefl, pts({"A", "Q"}), none); }) ==
        ErrorCode::UnknownPoint);
}

TEST_CASE("side conditions: strict mode needs a derivation, permissive mode records an assumption") {
  const ProofState state = initial_state(isosceles(false));
  const auto inst = pts({"A", "B", "C", "A", "C", "B"});
  const std::vector<Ref> refs{Ref::to("h1"), Ref::to("h1"), Ref::reflexive()};
  CHECK(error_of([&] { apply_rule(state, RuleId::SasOrd, inst, refs, {true}); }) ==
        ErrorCode::SideConditionFailed);
  CheckReport trace;
  apply_rule(state, RuleId::SasOrd, inst, refs, {false}, &trace);
  CHECK(trace.assumptions.size() == 1);
  CHECK(check_side_condition(state, P("A"), P("B"), P("C"), {false}) == SideStatus::assumed);
  CHECK(check_side_condition(state, P("A"), P("B"), P("C"), {true}) == SideStatus::failed);
}

TEST_CASE("a point provably on a line of the triangle is never noncollinear") {
  const auto text = with_body(R"(    d: extend A B by seg A B as D
    s: ang A D C == ang B D C by ARM_SUBST[D,B,A,C] from d
  qed from s
)");
  // D lies on AB, so ARM_SUBST[D,A,B,C] would need noncollinear D A B.
  const auto bad = with_body(R"(    d: extend A B by seg A B as D
    s: ang D A C == ang B A C by ARM_SUBST[A,B,D,D] from d
  qed from s
)");
  const auto ok = check_named(text, "t", {true});
  REQUIRE(ok.failure);
  CHECK(ok.failure->label == "qed");
  const auto r = check_named(bad, "t", {false});
  REQUIRE(r.failure);
  CHECK(r.failure->label == "s");
}

TEST_CASE("transfer of noncollinearity along recorded lines") {
  const ProofState base = initial_state(isosceles());
  auto [d, facts] = apply_construction(
      base, Extend{P("A"), P("B"), canon_segment(P("A"), P("B"))}, P("D"));
  ProofState s = base;
  s.points[d] = PointOrigin::constructed;
  s.bind("d", facts);
  CHECK(check_side_condition(s, P("A"), P("D"), P("C"), {true}) == SideStatus::derived);
  CHECK(check_side_condition(s, P("B"), P("D"), P("C"), {true}) == SideStatus::derived);
  CHECK(check_side_condition(s, P("A"), P("B"), P("D"), {false}) == SideStatus::failed);
}

TEST_CASE("constructions introduce fresh points only") {
  const ProofState s = initial_state(isosceles());
  CHECK(error_of([&] {
          apply_construction(s, Extend{P("A"), P("B"), canon_segment(P("A"), P("B"))}, P("C"));
        }) == ErrorCode::PointAlreadyDefined);
  CHECK(error_of([&] {
          apply_construction(s, Layoff{P("A"), P("B"), canon_segment(P("A"), P("C"))}, P("D"));
        }) == ErrorCode::LayoffWithoutBound);
}

TEST_CASE("check_proof accepts the corpus proofs and reports where mutants fail") {
  const auto r = check_named(with_body("    s1: ang A B C == ang A C B by SAS_ORD[(A,B,C),(A,C,B)] from h1, h1, refl\n  qed from s1\n"),
                             "t", {true});
  CHECK(r.ok());
  CHECK(r.uses() == std::set<std::string>{"ANG_REFL", "SAS_ORD"});

  const auto wrong_claim = check_named(
      with_body("    s1: ang B A C == ang A C B by SAS_ORD[(A,B,C),(A,C,B)] from h1, h1, refl\n  qed from s1\n"),
      "t");
  REQUIRE(wrong_claim.failure);
  CHECK(wrong_claim.failure->label == "s1");
  CHECK(wrong_claim.failure->line == 8);

  const auto unclosed = check_named(
      with_body("    s1: seg B C == seg C B by SEG_REFL[B,C]\n  qed from s1\n"), "t");
  REQUIRE(unclosed.failure);
  CHECK(starts_with(unclosed.failure->message, "UnclosedGoal"));
}

TEST_CASE("absurd outside a case branch only closes a goal of absurd") {
  const std::string text = R"(theorem t
  tags: neutral
  points A B C D
  assume h1: seg A B < seg C D
  assume h2: seg A B == seg C D
  show GOAL
  proof
    s: absurd by ABSURD_LT_EQ_SEG[A,B,C,D] from h1, h2
  qed from s
)";
  auto with_goal = [&](const std::string& goal) {
    std::string t = text;
    t.replace(t.find("GOAL"), 4, goal);
    return check_named(t, "t");
  };
  const auto r = with_goal("seg A C < seg B D");
  REQUIRE(r.failure);
  CHECK(r.failure->label == "s");
  CHECK(starts_with(r.failure->message, "AbsurdOutsideCase"));
  CHECK(with_goal("absurd").ok());
}

TEST_CASE("trichotomy opens three branches that must each close") {
  const auto st = isosceles();
  const auto kids = open_trichotomy(initial_state(st), canon_segment(P("A"), P("B")),
                                    canon_segment(P("A"), P("C")), "c");
  CHECK(kids[0].labels.at("c") ==
        std::vector<Fact>{seg_lt(canon_segment(P("A"), P("B")), canon_segment(P("A"), P("C")))});
  CHECK(kids[2].labels.at("c") ==
        std::vector<Fact>{seg_lt(canon_segment(P("A"), P("C")), canon_segment(P("A"), P("B")))});

  // The gt branch of euclid_i6 closed with the eq assumption instead.
  std::string text(*bundled_file("euclid_i6.proof"));
  const auto last = text.rfind("close absurd from s5");
  text.replace(last, std::string("close absurd from s5").size(), "close goal from c");
  const auto r = check_named(text, "euclid_i6", {true});
  CHECK_FALSE(r.ok());
}

TEST_CASE("lemma application maps points and checks hypotheses") {
  const auto text = std::string(*bundled_file("bisector_pons.proof")) +
                    std::string(*bundled_file("euclid_chain.proof"));
  const auto r = check_named(text, "bisector_pons", {true});
  CHECK(r.ok());
  CHECK(r.lemma_uses == std::set<std::string>{"bisector_foot"});

  const auto e = pons::testing::elaborate_named(text, "bisector_pons");
  const ProofState s = initial_state(isosceles(false));
  const auto& lemma = e.registry.at("bisector_foot");
  const std::vector<std::pair<PointId, PointId>> map{{P("A"), P("A")}, {P("B"), P("B")}, {P("C"), P("C")}};
  const auto fresh = pts({"H"});
  CHECK(error_of([&] { apply_lemma(s, lemma, map, fresh, {true}); }) == ErrorCode::HypothesisNotSatisfied);
  const ProofState ok = initial_state(isosceles());
  const auto facts = apply_lemma(ok, lemma, map, fresh);
  CHECK(std::find(facts.begin(), facts.end(), between(P("B"), P("H"), P("C"))) != facts.end());
  CHECK(error_of([&] { apply_lemma(ok, lemma, map, pts({"C"})); }) == ErrorCode::PointAlreadyDefined);
}

TEST_CASE("every bundled passing proof keeps absurd inside case branches") {
  for (const auto& item : pons::testing::corpus_analysis({true}).items) {
    if (!item.checked_ok()) continue;
    for (const auto& step : item.item->proof->steps)
      if (const auto* r = std::get_if<RuleStep>(&step.body))
        for (const auto& c : r->claims) CHECK(kind_of(c) != FactKind::absurd);
  }
}

TEST_CASE("reordering independent steps does not change the outcome") {
  std::mt19937 rng(3);
  for (const char* name : {"euclid_i5", "euclid_i5_converse"}) {
    const auto e = pons::testing::elaborate_named(*bundled_file(std::string(name) + ".proof"), name);
    const Proof& proof = *e.item.proof;
    const auto n = proof.steps.size();

    // A step depends on the labels it cites and on the steps introducing its points.
    std::vector<std::set<std::size_t>> needs(n);
    std::map<std::string, std::size_t> by_label;
    std::map<PointId, std::size_t> by_point;
    for (std::size_t i = 0; i < n; ++i) {
      const Step& s = proof.steps[i];
      std::vector<PointId> mentioned;
      std::vector<Ref> refs;
      if (const auto* r = std::get_if<RuleStep>(&s.body)) {
        mentioned = r->inst;
        refs = r->refs;
      } else if (const auto* c = std::get_if<ConstructStep>(&s.body)) {
        std::visit([&](const auto& k) {
          mentioned = {k.from, k.length.first(), k.length.second()};
        }, c->kind);
        refs = c->refs;
        by_point[c->fresh] = i;
      }
      for (const auto& ref : refs)
        if (ref.kind != Ref::Kind::refl && by_label.count(ref.label)) needs[i].insert(by_label[ref.label]);
      for (const auto& p : mentioned)
        if (by_point.count(p) && by_point[p] != i) needs[i].insert(by_point[p]);
      by_label[s.label] = i;
    }

    for (int round = 0; round < 50; ++round) {
      std::vector<std::size_t> order;
      std::set<std::size_t> done;
      while (order.size() < n) {
        std::vector<std::size_t> ready;
        for (std::size_t i = 0; i < n; ++i)
          if (!done.count(i) && std::includes(done.begin(), done.end(), needs[i].begin(), needs[i].end()))
            ready.push_back(i);
        const auto pick = ready[rng() % ready.size()];
        order.push_back(pick);
        done.insert(pick);
      }
      Proof shuffled = proof;
      shuffled.steps.clear();
      for (auto i : order) shuffled.steps.push_back(proof.steps[i]);
      CHECK(check_proof(e.item.statement, shuffled, e.registry, {true}).ok());
    }
  }
}

TEST_CASE("every single-step deletion and label corruption of a corpus proof fails") {
  const auto analysis = pons::testing::corpus_analysis({true});
  int mutants = 0;
  for (const auto& item : analysis.items) {
    if (!item.checked_ok()) continue;
    for (const auto& m : pons::testing::proof_mutants(*item.item->proof)) {
      ++mutants;
      const auto r = check_proof(item.item->statement, m.proof, analysis.registry, {true});
      INFO(item.name << ": " << m.description);
      CHECK_FALSE(r.ok());
    }
  }
  CHECK(mutants >= 25);
}

TEST_CASE("substitute renames every point") {
  const Fact f = ang_eq(canon_angle(P("A"), P("B"), P("C")), canon_angle(P("A"), P("C"), P("B")));
  const Fact g = substitute(f, {{P("A"), P("X")}, {P("B"), P("Y")}, {P("C"), P("Z")}});
  CHECK(g == ang_eq(canon_angle(P("X"), P("Y"), P("Z")), canon_angle(P("X"), P("Z"), P("Y"))));
}
