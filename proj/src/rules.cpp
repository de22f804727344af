#include "pons/rules.hpp"

#include "pons/error.hpp"

namespace pons {

namespace {

using K = FactKind;

FactPattern seq(int a, int b, int c, int d) { return {K::seg_eq, {a, b, c, d}}; }
FactPattern slt(int a, int b, int c, int d) { return {K::seg_lt, {a, b, c, d}}; }
FactPattern aeq(int a, int b, int c, int d, int e, int f) { return {K::ang_eq, {a, b, c, d, e, f}}; }
FactPattern alt(int a, int b, int c, int d, int e, int f) { return {K::ang_lt, {a, b, c, d, e, f}}; }
FactPattern btw(int a, int m, int b) { return {K::between, {a, m, b}}; }
FactPattern ncl(int a, int b, int c) { return {K::noncollinear, {a, b, c}}; }
FactPattern contradiction() { return {K::absurd, {}}; }

std::vector<RuleSchema> build_inventory() {
  std::vector<RuleSchema> rules;

  rules.push_back({RuleId::SegRefl, "SEG_REFL", {"a", "b"}, {}, {}, {}, {seq(0, 1, 0, 1)}});
  rules.push_back(
      {RuleId::AngRefl, "ANG_REFL", {"p", "v", "q"}, {}, {}, {}, {aeq(0, 1, 2, 0, 1, 2)}});
  rules.push_back({RuleId::SegSym, "SEG_SYM", {"a", "b", "c", "d"}, {seq(0, 1, 2, 3)}, {}, {},
                   {seq(2, 3, 0, 1)}});
  rules.push_back({RuleId::AngSym,
                   "ANG_SYM",
                   {"p", "v", "q", "p'", "v'", "q'"},
                   {aeq(0, 1, 2, 3, 4, 5)},
                   {},
                   {},
                   {aeq(3, 4, 5, 0, 1, 2)}});
  rules.push_back({RuleId::SegTrans,
                   "SEG_TRANS",
                   {"a", "b", "c", "d", "e", "f"},
                   {seq(0, 1, 2, 3), seq(2, 3, 4, 5)},
                   {},
                   {},
                   {seq(0, 1, 4, 5)}});
  rules.push_back({RuleId::AngTrans,
                   "ANG_TRANS",
                   {"p", "v", "q", "p'", "v'", "q'", "p''", "v''", "q''"},
                   {aeq(0, 1, 2, 3, 4, 5), aeq(3, 4, 5, 6, 7, 8)},
                   {},
                   {},
                   {aeq(0, 1, 2, 6, 7, 8)}});

  // Ordered-triple criteria: P = (0,1,2), Q = (3,4,5).
  rules.push_back({RuleId::SasOrd,
                   "SAS_ORD",
                   {"p1", "p2", "p3", "q1", "q2", "q3"},
                   {seq(0, 1, 3, 4), seq(0, 2, 3, 5), aeq(1, 0, 2, 4, 3, 5)},
                   {{0, 1, 2}, {3, 4, 5}},
                   {},
                   {seq(1, 2, 4, 5), aeq(0, 1, 2, 3, 4, 5), aeq(0, 2, 1, 3, 5, 4)}});
  rules.push_back({RuleId::AsaOrd,
                   "ASA_ORD",
                   {"p1", "p2", "p3", "q1", "q2", "q3"},
                   {aeq(0, 1, 2, 3, 4, 5), aeq(0, 2, 1, 3, 5, 4), seq(1, 2, 4, 5)},
                   {{0, 1, 2}, {3, 4, 5}},
                   {},
                   {seq(0, 1, 3, 4), seq(0, 2, 3, 5), aeq(1, 0, 2, 4, 3, 5)}});

  rules.push_back({RuleId::SegSum,
                   "SEG_SUM",
                   {"a", "m", "b", "a'", "m'", "b'"},
                   {btw(0, 1, 2), btw(3, 4, 5), seq(0, 1, 3, 4), seq(1, 2, 4, 5)},
                   {},
                   {},
                   {seq(0, 2, 3, 5)}});
  rules.push_back({RuleId::AngSum,
                   "ANG_SUM",
                   {"a", "m", "b", "z", "a'", "m'", "b'", "z'"},
                   {btw(0, 1, 2), btw(4, 5, 6), aeq(0, 3, 1, 4, 7, 5), aeq(1, 3, 2, 5, 7, 6)},
                   {{0, 2, 3}, {4, 6, 7}},
                   {},
                   {aeq(0, 3, 2, 4, 7, 6)}});
  rules.push_back({RuleId::SuppCong,
                   "SUPP_CONG",
                   {"a", "b", "c", "d", "a'", "b'", "c'", "d'"},
                   {btw(0, 1, 3), btw(4, 5, 7), aeq(3, 1, 2, 7, 5, 6)},
                   {{0, 1, 2}, {4, 5, 6}},
                   {},
                   {aeq(0, 1, 2, 4, 5, 6)}});
  rules.push_back({RuleId::ArmSubst,
                   "ARM_SUBST",
                   {"v", "m", "w", "z"},
                   {btw(0, 1, 2)},
                   {{0, 2, 3}},
                   {},
                   {aeq(2, 0, 3, 1, 0, 3)}});
  rules.push_back({RuleId::WholePartSeg,
                   "WHOLE_PART_SEG",
                   {"a", "m", "b"},
                   {btw(0, 1, 2)},
                   {},
                   {},
                   {slt(0, 1, 0, 2)}});
  rules.push_back({RuleId::WholePartAng,
                   "WHOLE_PART_ANG",
                   {"a", "m", "b", "z"},
                   {btw(0, 1, 2)},
                   {{0, 2, 3}},
                   {},
                   {alt(0, 3, 1, 0, 3, 2)}});

  // Lt(a,b), Eq(a,c), Eq(b,d) |- Lt(c,d); cite refl to keep a side fixed.
  rules.push_back({RuleId::LtSubstSeg,
                   "LT_SUBST_SEG",
                   {"a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2"},
                   {slt(0, 1, 2, 3), seq(0, 1, 4, 5), seq(2, 3, 6, 7)},
                   {},
                   {},
                   {slt(4, 5, 6, 7)}});
  rules.push_back({RuleId::LtSubstAng,
                   "LT_SUBST_ANG",
                   {"a1", "a2", "a3", "b1", "b2", "b3", "c1", "c2", "c3", "d1", "d2", "d3"},
                   {alt(0, 1, 2, 3, 4, 5), aeq(0, 1, 2, 6, 7, 8), aeq(3, 4, 5, 9, 10, 11)},
                   {},
                   {},
                   {alt(6, 7, 8, 9, 10, 11)}});
  rules.push_back({RuleId::AbsurdLtEqSeg,
                   "ABSURD_LT_EQ_SEG",
                   {"a1", "a2", "b1", "b2"},
                   {slt(0, 1, 2, 3), seq(0, 1, 2, 3)},
                   {},
                   {},
                   {contradiction()}});
  rules.push_back({RuleId::AbsurdLtEqAng,
                   "ABSURD_LT_EQ_ANG",
                   {"a1", "a2", "a3", "b1", "b2", "b3"},
                   {alt(0, 1, 2, 3, 4, 5), aeq(0, 1, 2, 3, 4, 5)},
                   {},
                   {},
                   {contradiction()}});
  rules.push_back({RuleId::NcTransfer,
                   "NC_TRANSFER",
                   {"x", "y", "z", "p", "q"},
                   {ncl(0, 1, 2)},
                   {},
                   {3, 4, 0, 1},
                   {ncl(3, 4, 2)}});
  return rules;
}

}  // namespace

const std::vector<RuleSchema>& rule_inventory() {
  static const std::vector<RuleSchema> rules = build_inventory();
  return rules;
}

const RuleSchema& rule_schema(RuleId id) { return rule_inventory().at(static_cast<std::size_t>(id)); }

std::optional<RuleId> rule_by_name(std::string_view name) {
  for (const auto& r : rule_inventory())
    if (r.name == name) return r.id;
  return std::nullopt;
}

Fact instantiate(const FactPattern& pattern, std::span<const PointId> inst) {
  RawFact raw{pattern.kind, {}};
  for (int v : pattern.vars) raw.points.push_back(inst[static_cast<std::size_t>(v)]);
  try {
    return canon_fact(raw);
  } catch (const Error& e) {
    throw Error(ErrorCode::DegenerateInstantiation, e.what());
  }
}

std::vector<std::string_view> builtin_axioms() {
  std::vector<std::string_view> out;
  for (const auto& r : rule_inventory()) out.push_back(r.name);
  out.push_back(kExtendAxiom);
  out.push_back(kLayoffAxiom);
  out.push_back(kTrichotomyAxiom);
  return out;
}

}  // namespace pons
