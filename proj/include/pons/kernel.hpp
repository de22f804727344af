#pragma once

// Deduction kernel. A proof is a list of steps, each justified by one rule
// instantiation, a construction, a lemma application, or a trichotomy case
// split. The kernel only checks; it never searches.

#include <array>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pons/geom.hpp"
#include "pons/rules.hpp"

namespace pons {

enum class Tag { neutral, euclidean };

std::string_view tag_name(Tag tag);

struct Hypothesis {
  std::string label;
  Fact fact;
};

struct TheoremStatement {
  std::string name;
  std::set<Tag> tags;
  std::vector<PointId> given;
  std::vector<Hypothesis> hypotheses;
  std::vector<PointId> introduced;  // existential, may be empty
  std::vector<Fact> conclusions;    // or the single conclusion Absurd
};

using LemmaRegistry = std::map<std::string, TheoremStatement, std::less<>>;

// A premise citation: a label, `refl` for a reflexive equality, or
// `sym L` for the mirrored form of an equality bound to L.
struct Ref {
  enum class Kind { label, refl, sym };
  Kind kind = Kind::label;
  std::string label;

  static Ref to(std::string l) { return {Kind::label, std::move(l)}; }
  static Ref reflexive() { return {Kind::refl, {}}; }
  static Ref symmetric(std::string l) { return {Kind::sym, std::move(l)}; }
  bool operator==(const Ref&) const = default;
};

struct Extend {
  PointId from, through;  // fresh point lies beyond `through`
  Segment length;
};
struct Layoff {
  PointId from, toward;
  Segment length;
};
using ConstructionKind = std::variant<Extend, Layoff>;

struct Step;

struct RuleStep {
  std::vector<Fact> claims;
  RuleId rule;
  std::vector<PointId> inst;
  std::vector<Ref> refs;
};

struct ConstructStep {
  ConstructionKind kind;
  PointId fresh;
  std::vector<Ref> refs;
};

enum class CaseKind { lt, eq, gt };

std::string_view case_name(CaseKind kind);

struct CaseBranch {
  CaseKind kind = CaseKind::lt;
  int line = 0;
  std::vector<Step> steps;
  bool closes_absurd = false;
  std::vector<Ref> refs;
  int close_line = 0;
};

struct CasesStep {
  Segment lhs, rhs;
  std::vector<CaseBranch> branches;
};

struct LemmaStep {
  std::string lemma;
  std::vector<std::pair<PointId, PointId>> point_map;  // lemma point -> script point
  std::vector<PointId> introduced;
};

struct Step {
  std::string label;
  int line = 0;
  std::variant<RuleStep, ConstructStep, CasesStep, LemmaStep> body;
};

struct Proof {
  std::vector<Step> steps;
  std::vector<Ref> qed;
  int qed_line = 0;
};

struct ProofState {
  std::map<std::string, std::vector<Fact>> labels;
  std::set<Fact> known;
  LineTable lines;
  std::map<PointId, PointOrigin> points;
  std::vector<Fact> assumptions;
  std::vector<Fact> goals;

  bool has_point(const PointId& p) const { return points.count(p) > 0; }
  // Binds `facts` to `label` and adds them to `known` and `lines`.
  void bind(const std::string& label, const std::vector<Fact>& facts);
};

ProofState initial_state(const TheoremStatement& statement);

struct CheckOptions {
  bool strict_degeneracy = false;
};

enum class SideStatus { derived, assumed, failed };

std::string_view side_status_name(SideStatus s);

struct Discharge {
  NonCollinear triple;
  SideStatus status;
};

enum class CheckStatus { ok, failed };

struct StepResult {
  std::string label;
  int line = 0;
  bool ok = true;
  std::string message;
};

struct CheckReport {
  std::string theorem;
  CheckStatus status = CheckStatus::ok;
  std::vector<StepResult> steps;
  std::vector<Discharge> side_conditions;
  std::vector<Fact> assumptions;  // NonCollinear facts taken on trust (permissive mode)
  std::set<std::string> lemma_uses;
  std::set<std::string> axioms_used;
  std::optional<StepResult> failure;

  bool ok() const { return status == CheckStatus::ok; }
  // Lemmas plus axioms, the node's outgoing edges in a dependency graph.
  std::set<std::string> uses() const;
};

// Returns the canonical instantiated conclusions; the caller binds them.
std::vector<Fact> apply_rule(const ProofState& state, RuleId rule, std::span<const PointId> inst,
                             std::span<const Ref> refs, const CheckOptions& options = {},
                             CheckReport* trace = nullptr);

SideStatus check_side_condition(const ProofState& state, const PointId& a, const PointId& b,
                                const PointId& c, const CheckOptions& options = {});

std::pair<PointId, std::vector<Fact>> apply_construction(const ProofState& state,
                                                         const ConstructionKind& kind,
                                                         const PointId& fresh);

// Children carry the assumptions lhs<rhs, lhs=rhs, rhs<lhs, bound to `label`.
std::array<ProofState, 3> open_trichotomy(const ProofState& state, const Segment& lhs,
                                          const Segment& rhs, const std::string& label);

// `introduced` names the fresh points standing for the lemma's existentials.
std::vector<Fact> apply_lemma(const ProofState& state, const TheoremStatement& lemma,
                              std::span<const std::pair<PointId, PointId>> point_map,
                              std::span<const PointId> introduced,
                              const CheckOptions& options = {}, CheckReport* trace = nullptr);

CheckReport check_proof(const TheoremStatement& statement, const Proof& proof,
                        const LemmaRegistry& registry, const CheckOptions& options = {});

// Point renaming used for lemma application and instance building.
Fact substitute(const Fact& f, const std::map<PointId, PointId>& mapping);

}  // namespace pons
