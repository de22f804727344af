#pragma once

// The closed inventory of kernel inference rules. Each rule is a template
// over numbered point variables; an instantiation supplies one point per
// variable, in the order listed in `variables`.

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pons/geom.hpp"

namespace pons {

enum class RuleId {
  SegRefl,
  AngRefl,
  SegSym,
  AngSym,
  SegTrans,
  AngTrans,
  SasOrd,
  AsaOrd,
  SegSum,
  AngSum,
  SuppCong,
  ArmSubst,
  WholePartSeg,
  WholePartAng,
  LtSubstSeg,
  LtSubstAng,
  AbsurdLtEqSeg,
  AbsurdLtEqAng,
  NcTransfer,
};

// A fact shape whose points are variable indices, in RawFact source order.
struct FactPattern {
  FactKind kind;
  std::vector<int> vars;
};

struct RuleSchema {
  RuleId id;
  std::string_view name;
  std::vector<std::string_view> variables;
  std::vector<FactPattern> premises;
  // NonCollinear obligations discharged by the kernel, not cited.
  std::vector<std::array<int, 3>> side_conditions;
  // Points that must lie on one recorded line (NC_TRANSFER only).
  std::vector<int> collinear_condition;
  std::vector<FactPattern> conclusions;
};

const std::vector<RuleSchema>& rule_inventory();
const RuleSchema& rule_schema(RuleId id);
std::optional<RuleId> rule_by_name(std::string_view name);

// Instantiates one pattern; throws Error(DegenerateInstantiation) when the
// chosen points make a term degenerate.
Fact instantiate(const FactPattern& pattern, std::span<const PointId> inst);

// Constructions and case analysis are not rules, but proofs depend on them
// the same way; these names appear as axiom nodes in dependency graphs.
inline constexpr std::string_view kExtendAxiom = "EXTEND";
inline constexpr std::string_view kLayoffAxiom = "LAYOFF";
inline constexpr std::string_view kTrichotomyAxiom = "TRICHOTOMY";

// Every built-in axiom name: the rule names plus the three above.
std::vector<std::string_view> builtin_axioms();

}  // namespace pons
