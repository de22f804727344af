#pragma once

// Line-oriented proof-script language. One statement per line, `#` starts a
// comment. A file holds theorem, declare and axiom blocks:
//
//   theorem pappus_pons
//     tags: neutral
//     points A B C
//     assume h1: seg A B == seg A C
//     assume h2: noncollinear A B C
//     show ang A B C == ang A C B
//     proof
//       s1: ang A B C == ang A C B by SAS_ORD[(A,B,C),(A,C,B)] from h1, h1, refl
//     qed from s1
//
// A theorem without `proof` is a bare statement (a lemma taken on trust or a
// conjecture); its `uses` line records what it rests on.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "pons/error.hpp"
#include "pons/geom.hpp"
#include "pons/kernel.hpp"

namespace pons::script {

class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, std::string message, std::vector<std::string> expected);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& detail() const { return detail_; }

 private:
  int line_;
  int column_;
  std::string detail_;
  std::vector<std::string> expected_;
};

using PointPair = std::pair<PointId, PointId>;

// Rule instantiation as written: either "[(A,B,C),(A,C,B)]" (grouped) or a
// flat "[A,B,C]" (one group, grouped = false).
struct Inst {
  bool grouped = false;
  std::vector<std::vector<PointId>> groups;

  std::vector<PointId> flatten() const;
  bool operator==(const Inst&) const = default;
};

struct AstStep;

struct AstRule {
  std::vector<RawFact> claims;
  std::string rule;
  Inst inst;
  std::vector<Ref> refs;
  bool operator==(const AstRule&) const = default;
};

struct AstExtend {
  PointId from, through;
  PointPair length;
  PointId fresh;
  bool operator==(const AstExtend&) const = default;
};

struct AstLayoff {
  PointId from, toward;
  PointPair length;
  PointId fresh;
  std::vector<Ref> refs;
  bool operator==(const AstLayoff&) const = default;
};

struct AstBranch {
  CaseKind kind = CaseKind::lt;
  int line = 0;
  std::vector<AstStep> steps;
  bool closes_absurd = false;
  std::vector<Ref> refs;
  int close_line = 0;
  bool operator==(const AstBranch&) const;
};

struct AstCases {
  PointPair lhs, rhs;
  std::vector<AstBranch> branches;
  bool operator==(const AstCases&) const = default;
};

struct AstLemma {
  std::string lemma;
  std::vector<PointPair> point_map;
  std::vector<PointId> introduced;
  bool operator==(const AstLemma&) const = default;
};

struct AstStep {
  std::string label;
  int line = 0;
  std::variant<AstRule, AstExtend, AstLayoff, AstCases, AstLemma> body;
  bool operator==(const AstStep&) const = default;
};

struct AstProof {
  int line = 0;
  std::vector<AstStep> steps;
  std::vector<Ref> qed;
  int qed_line = 0;
  bool operator==(const AstProof&) const = default;
};

struct AstTheorem {
  std::string name;
  int line = 0;
  std::vector<Tag> tags;
  std::vector<PointId> points;
  std::vector<PointId> introduced;
  std::vector<std::pair<std::string, RawFact>> assumptions;
  std::vector<RawFact> shows;
  std::vector<std::string> uses;
  std::optional<AstProof> proof;
  bool operator==(const AstTheorem&) const = default;
};

struct AstDeclare {
  std::string name;
  int line = 0;
  std::vector<Tag> tags;
  std::vector<std::string> uses;
  bool operator==(const AstDeclare&) const = default;
};

struct AstAxiom {
  std::string name;
  int line = 0;
  std::vector<Tag> tags;
  bool operator==(const AstAxiom&) const = default;
};

using AstItem = std::variant<AstTheorem, AstDeclare, AstAxiom>;

struct ScriptAst {
  std::vector<AstItem> items;
  bool operator==(const ScriptAst&) const = default;
};

const std::string& item_name(const AstItem& item);

// Throws SyntaxError with line, column and the expected-token set.
ScriptAst parse(std::string_view text);

// Canonical text form; parse(print(a)) reproduces a modulo line numbers and
// print(parse(print(a))) == print(a).
std::string print(const ScriptAst& ast);

enum class ItemKind { theorem, declared, axiom };

// One block after label resolution. Declare and axiom blocks, and theorems
// without a proof, carry no proof.
struct Elaborated {
  ItemKind kind = ItemKind::theorem;
  int line = 0;
  TheoremStatement statement;
  std::optional<Proof> proof;
  std::vector<std::string> uses;
};

TheoremStatement elaborate_statement(const AstTheorem& theorem);

// Statements of every theorem block, usable as lemmas.
LemmaRegistry statements_of(const ScriptAst& ast);

Elaborated elaborate_item(const AstItem& item, const LemmaRegistry& registry);

// Throws on the first UnresolvedLabel / UnknownRule / UnknownLemma.
std::vector<Elaborated> elaborate(const ScriptAst& ast, const LemmaRegistry& registry);

}  // namespace pons::script
