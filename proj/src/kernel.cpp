#include "pons/kernel.hpp"

#include <algorithm>

#include "pons/error.hpp"

namespace pons {

std::string_view tag_name(Tag tag) { return tag == Tag::neutral ? "neutral" : "euclidean"; }

std::string_view case_name(CaseKind kind) {
  switch (kind) {
    case CaseKind::lt: return "lt";
    case CaseKind::eq: return "eq";
    case CaseKind::gt: return "gt";
  }
  return "?";
}

std::string_view side_status_name(SideStatus s) {
  switch (s) {
    case SideStatus::derived: return "derived";
    case SideStatus::assumed: return "assumed";
    case SideStatus::failed: return "failed";
  }
  return "?";
}

std::set<std::string> CheckReport::uses() const {
  std::set<std::string> out = axioms_used;
  out.insert(lemma_uses.begin(), lemma_uses.end());
  return out;
}

void ProofState::bind(const std::string& label, const std::vector<Fact>& facts) {
  labels[label] = facts;
  for (const auto& f : facts) {
    known.insert(f);
    if (const auto* b = std::get_if<Between>(&f)) lines = lines.record_between(*b);
  }
}

ProofState initial_state(const TheoremStatement& statement) {
  ProofState state;
  for (const auto& p : statement.given) state.points.emplace(p, PointOrigin::hypothesis);
  for (const auto& h : statement.hypotheses) {
    for (const auto& p : points_of(h.fact))
      if (!state.has_point(p))
        throw Error(ErrorCode::UnknownPoint, p.name + " in hypothesis " + h.label);
    state.bind(h.label, {h.fact});
  }
  state.goals = statement.conclusions;
  return state;
}

Fact substitute(const Fact& f, const std::map<PointId, PointId>& mapping) {
  RawFact raw = to_raw(f);
  for (auto& p : raw.points) {
    auto it = mapping.find(p);
    if (it != mapping.end()) p = it->second;
  }
  return canon_fact(raw);
}

namespace {

struct SideCheck {
  SideStatus status;
  bool via_transfer = false;
};

SideCheck side_condition(const ProofState& state, const PointId& a, const PointId& b,
                         const PointId& c, const CheckOptions& options) {
  if (a == b || b == c || a == c) return {SideStatus::failed};
  if (state.lines.provably_collinear(a, b, c)) return {SideStatus::failed};
  const Fact target = noncollinear(a, b, c);
  if (state.known.count(target)) return {SideStatus::derived};

  // One NC_TRANSFER step: known NonCollinear(x,y,z) and p,q,x,y on one line.
  const std::array<PointId, 3> query{a, b, c};
  for (const auto& f : state.known) {
    const auto* nc = std::get_if<NonCollinear>(&f);
    if (!nc) continue;
    for (std::size_t zi = 0; zi < 3; ++zi) {
      const PointId& z = nc->points[zi];
      auto qz = std::find(query.begin(), query.end(), z);
      if (qz == query.end()) continue;
      std::vector<PointId> pts;
      for (std::size_t i = 0; i < 3; ++i) {
        if (i != zi) pts.push_back(nc->points[i]);
        if (&query[i] != &*qz) pts.push_back(query[i]);
      }
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      if (state.lines.on_one_line(pts)) return {SideStatus::derived, true};
    }
  }
  return {options.strict_degeneracy ? SideStatus::failed : SideStatus::assumed};
}

void require_points(const ProofState& state, std::span<const PointId> pts) {
  for (const auto& p : pts)
    if (!state.has_point(p)) throw Error(ErrorCode::UnknownPoint, p.name);
}

void require_fresh(const ProofState& state, const PointId& p) {
  if (state.has_point(p)) throw Error(ErrorCode::PointAlreadyDefined, p.name);
}

std::string describe(const std::vector<Fact>& facts) {
  std::string s;
  for (const auto& f : facts) s += (s.empty() ? "" : "; ") + to_string(f);
  return s.empty() ? "<nothing>" : s;
}

const std::vector<Fact>& lookup(const ProofState& state, const std::string& label) {
  auto it = state.labels.find(label);
  if (it == state.labels.end()) throw Error(ErrorCode::UnknownPremise, label);
  return it->second;
}

bool is_reflexive(const Fact& f) {
  if (const auto* s = std::get_if<SegEq>(&f)) return s->lhs == s->rhs;
  if (const auto* a = std::get_if<AngEq>(&f)) return a->lhs == a->rhs;
  return false;
}

// Checks that `ref` supplies `expected`; records the equality axiom a refl or
// sym citation relies on.
void match_premise(const ProofState& state, const Fact& expected, const Ref& ref,
                   CheckReport* trace) {
  const bool is_seg = std::holds_alternative<SegEq>(expected);
  const bool is_ang = std::holds_alternative<AngEq>(expected);
  switch (ref.kind) {
    case Ref::Kind::refl:
      if (!is_reflexive(expected))
        throw Error(ErrorCode::PremiseMismatch,
                    "expected " + to_string(expected) + ", refl only supplies x == x");
      if (trace) trace->axioms_used.insert(is_seg ? "SEG_REFL" : "ANG_REFL");
      return;
    case Ref::Kind::sym:
      if (!is_seg && !is_ang)
        throw Error(ErrorCode::PremiseMismatch,
                    "expected " + to_string(expected) + ", sym only applies to equalities");
      if (trace) trace->axioms_used.insert(is_seg ? "SEG_SYM" : "ANG_SYM");
      [[fallthrough]];
    case Ref::Kind::label: {
      const auto& facts = lookup(state, ref.label);
      if (std::find(facts.begin(), facts.end(), expected) == facts.end())
        throw Error(ErrorCode::PremiseMismatch, "expected " + to_string(expected) + ", " +
                                                    ref.label + " gives " + describe(facts));
      return;
    }
  }
}

void discharge(const ProofState& state, const PointId& a, const PointId& b, const PointId& c,
               const CheckOptions& options, CheckReport* trace) {
  const SideCheck check = side_condition(state, a, b, c, options);
  const auto triple = std::get<NonCollinear>(noncollinear(a, b, c));
  if (check.status == SideStatus::failed)
    throw Error(ErrorCode::SideConditionFailed, "noncollinear " + a.name + " " + b.name + " " +
                                                    c.name + " not derivable");
  if (!trace) return;
  trace->side_conditions.push_back({triple, check.status});
  if (check.status == SideStatus::assumed &&
      std::find(trace->assumptions.begin(), trace->assumptions.end(), Fact{triple}) ==
          trace->assumptions.end())
    trace->assumptions.push_back(triple);
  if (check.via_transfer) trace->axioms_used.insert("NC_TRANSFER");
}

}  // namespace

SideStatus check_side_condition(const ProofState& state, const PointId& a, const PointId& b,
                                const PointId& c, const CheckOptions& options) {
  return side_condition(state, a, b, c, options).status;
}

std::vector<Fact> apply_rule(const ProofState& state, RuleId rule, std::span<const PointId> inst,
                             std::span<const Ref> refs, const CheckOptions& options,
                             CheckReport* trace) {
  const RuleSchema& schema = rule_schema(rule);
  if (inst.size() != schema.variables.size())
    throw Error(ErrorCode::BadInstantiation, std::string(schema.name) + " takes " +
                                                 std::to_string(schema.variables.size()) +
                                                 " points, got " + std::to_string(inst.size()));
  require_points(state, inst);
  if (refs.size() != schema.premises.size())
    throw Error(ErrorCode::PremiseMismatch, std::string(schema.name) + " needs " +
                                                std::to_string(schema.premises.size()) +
                                                " premises, got " + std::to_string(refs.size()));

  for (std::size_t i = 0; i < schema.premises.size(); ++i)
    match_premise(state, instantiate(schema.premises[i], inst), refs[i], trace);

  if (!schema.collinear_condition.empty()) {
    std::vector<PointId> pts;
    for (int v : schema.collinear_condition) pts.push_back(inst[static_cast<std::size_t>(v)]);
    if (pts[0] == pts[1])
      throw Error(ErrorCode::DegenerateInstantiation, "transfer needs two distinct points");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() > 2 && !state.lines.on_one_line(pts))
      throw Error(ErrorCode::SideConditionFailed, "points not on one recorded line");
  }

  for (const auto& sc : schema.side_conditions) {
    const auto& a = inst[static_cast<std::size_t>(sc[0])];
    const auto& b = inst[static_cast<std::size_t>(sc[1])];
    const auto& c = inst[static_cast<std::size_t>(sc[2])];
    if (a == b || b == c || a == c)
      throw Error(ErrorCode::DegenerateInstantiation,
                  "side condition on " + a.name + " " + b.name + " " + c.name);
    discharge(state, a, b, c, options, trace);
  }

  std::vector<Fact> out;
  for (const auto& c : schema.conclusions) out.push_back(instantiate(c, inst));
  if (trace) trace->axioms_used.insert(std::string(schema.name));
  return out;
}

std::pair<PointId, std::vector<Fact>> apply_construction(const ProofState& state,
                                                         const ConstructionKind& kind,
                                                         const PointId& fresh) {
  require_fresh(state, fresh);
  if (const auto* e = std::get_if<Extend>(&kind)) {
    if (e->from == e->through)
      throw Error(ErrorCode::DegenerateInstantiation, "extend needs two distinct points");
    const std::array<PointId, 4> used{e->from, e->through, e->length.first(), e->length.second()};
    require_points(state, used);
    return {fresh,
            {between(e->from, e->through, fresh),
             seg_eq(canon_segment(e->through, fresh), e->length)}};
  }
  const auto& l = std::get<Layoff>(kind);
  const std::array<PointId, 4> used{l.from, l.toward, l.length.first(), l.length.second()};
  require_points(state, used);
  const Fact bound = seg_lt(l.length, canon_segment(l.from, l.toward));
  if (!state.known.count(bound)) throw Error(ErrorCode::LayoffWithoutBound, to_string(bound));
  return {fresh, {between(l.from, fresh, l.toward), seg_eq(canon_segment(l.from, fresh), l.length)}};
}

std::array<ProofState, 3> open_trichotomy(const ProofState& state, const Segment& lhs,
                                          const Segment& rhs, const std::string& label) {
  std::array<ProofState, 3> out{state, state, state};
  const std::array<Fact, 3> cases{seg_lt(lhs, rhs), seg_eq(lhs, rhs), seg_lt(rhs, lhs)};
  for (std::size_t i = 0; i < 3; ++i) {
    out[i].assumptions.push_back(cases[i]);
    out[i].bind(label, {cases[i]});
  }
  return out;
}

std::vector<Fact> apply_lemma(const ProofState& state, const TheoremStatement& lemma,
                              std::span<const std::pair<PointId, PointId>> point_map,
                              std::span<const PointId> introduced, const CheckOptions& options,
                              CheckReport* trace) {
  std::map<PointId, PointId> mapping;
  for (const auto& [from, to] : point_map) {
    if (std::find(lemma.given.begin(), lemma.given.end(), from) == lemma.given.end())
      throw Error(ErrorCode::BadInstantiation, from.name + " is not a point of " + lemma.name);
    if (!state.has_point(to)) throw Error(ErrorCode::UnknownPoint, to.name);
    mapping[from] = to;
  }
  for (const auto& g : lemma.given)
    if (!mapping.count(g))
      throw Error(ErrorCode::BadInstantiation, "no image for " + g.name + " of " + lemma.name);
  if (introduced.size() != lemma.introduced.size())
    throw Error(ErrorCode::BadInstantiation,
                lemma.name + " introduces " + std::to_string(lemma.introduced.size()) + " points");
  for (std::size_t i = 0; i < introduced.size(); ++i) {
    require_fresh(state, introduced[i]);
    mapping[lemma.introduced[i]] = introduced[i];
  }

  for (const auto& h : lemma.hypotheses) {
    const Fact need = [&] {
      try {
        return substitute(h.fact, mapping);
      } catch (const Error& e) {
        throw Error(ErrorCode::DegenerateInstantiation, e.what());
      }
    }();
    if (const auto* nc = std::get_if<NonCollinear>(&need)) {
      try {
        discharge(state, nc->points[0], nc->points[1], nc->points[2], options, trace);
      } catch (const Error&) {
        throw Error(ErrorCode::HypothesisNotSatisfied, to_string(need));
      }
    } else if (!state.known.count(need) && !is_reflexive(need)) {
      throw Error(ErrorCode::HypothesisNotSatisfied, to_string(need));
    }
  }

  std::vector<Fact> out;
  for (const auto& c : lemma.conclusions) {
    try {
      out.push_back(substitute(c, mapping));
    } catch (const Error& e) {
      throw Error(ErrorCode::DegenerateInstantiation, e.what());
    }
  }
  if (trace) trace->lemma_uses.insert(lemma.name);
  return out;
}

namespace {

struct StepFailure {
  std::string label;
  int line;
  std::string message;
};

class Checker {
 public:
  Checker(const LemmaRegistry& registry, const CheckOptions& options, CheckReport& report)
      : registry_(registry), options_(options), report_(report) {}

  void run(ProofState& state, const std::vector<Step>& steps, const std::string& prefix) {
    for (const auto& step : steps) {
      const std::string where = prefix + step.label;
      try {
        if (state.labels.count(step.label))
          throw Error(ErrorCode::DuplicateLabel, step.label);
        std::visit([&](const auto& body) { apply(state, step, body, where); }, step.body);
      } catch (const Error& e) {
        throw StepFailure{where, step.line, e.what()};
      }
      report_.steps.push_back({where, step.line, true, {}});
    }
  }

 private:
  void apply(ProofState& state, const Step& step, const RuleStep& body, const std::string&) {
    const auto conclusions = apply_rule(state, body.rule, body.inst, body.refs, options_, &report_);
    if (body.claims.empty()) throw Error(ErrorCode::PremiseMismatch, "step claims nothing");
    for (const auto& claim : body.claims) {
      if (std::find(conclusions.begin(), conclusions.end(), claim) == conclusions.end())
        throw Error(ErrorCode::PremiseMismatch,
                    to_string(claim) + " is not a conclusion of " +
                        std::string(rule_schema(body.rule).name) + " (gives " +
                        describe(conclusions) + ")");
      if (std::holds_alternative<Absurd>(claim) && state.assumptions.empty() &&
          !std::holds_alternative<Absurd>(state.goals.front()))
        throw Error(ErrorCode::AbsurdOutsideCase, "absurd derived outside a case branch");
    }
    state.bind(step.label, body.claims);
  }

  void apply(ProofState& state, const Step& step, const ConstructStep& body, const std::string&) {
    if (const auto* l = std::get_if<Layoff>(&body.kind)) {
      const Fact bound = seg_lt(l->length, canon_segment(l->from, l->toward));
      bool cited = false;
      for (const auto& ref : body.refs) {
        if (ref.kind == Ref::Kind::refl) continue;
        const auto& facts = lookup(state, ref.label);
        cited = cited || std::find(facts.begin(), facts.end(), bound) != facts.end();
      }
      if (!cited) throw Error(ErrorCode::LayoffWithoutBound, to_string(bound) + " not cited");
      report_.axioms_used.insert(std::string(kLayoffAxiom));
    } else {
      report_.axioms_used.insert(std::string(kExtendAxiom));
    }
    auto [fresh, facts] = apply_construction(state, body.kind, body.fresh);
    state.points.emplace(fresh, PointOrigin::constructed);
    state.bind(step.label, facts);
  }

  void apply(ProofState& state, const Step& step, const LemmaStep& body, const std::string&) {
    auto it = registry_.find(body.lemma);
    if (it == registry_.end()) throw Error(ErrorCode::UnknownLemma, body.lemma);
    const auto facts =
        apply_lemma(state, it->second, body.point_map, body.introduced, options_, &report_);
    for (const auto& p : body.introduced) state.points.emplace(p, PointOrigin::lemma_introduced);
    state.bind(step.label, facts);
  }

  void apply(ProofState& state, const Step& step, const CasesStep& body, const std::string& where) {
    static constexpr std::array<CaseKind, 3> order{CaseKind::lt, CaseKind::eq, CaseKind::gt};
    if (body.branches.size() != 3)
      throw Error(ErrorCode::UnclosedGoal, "trichotomy needs exactly three branches");
    for (std::size_t i = 0; i < 3; ++i)
      if (body.branches[i].kind != order[i])
        throw Error(ErrorCode::UnclosedGoal, "branches must be lt, eq, gt in order");
    report_.axioms_used.insert(std::string(kTrichotomyAxiom));

    auto children = open_trichotomy(state, body.lhs, body.rhs, step.label);
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& branch = body.branches[i];
      const std::string branch_where = where + "/" + std::string(case_name(branch.kind)) + "/";
      run(children[i], branch.steps, branch_where);
      try {
        close(children[i], branch);
      } catch (const Error& e) {
        throw StepFailure{branch_where + "close", branch.close_line, e.what()};
      }
    }
    state.bind(step.label, state.goals);
  }

  void close(const ProofState& state, const CaseBranch& branch) {
    std::vector<Fact> cited;
    for (const auto& ref : branch.refs) {
      if (ref.kind == Ref::Kind::refl) continue;
      const auto& facts = lookup(state, ref.label);
      cited.insert(cited.end(), facts.begin(), facts.end());
    }
    auto has = [&](const Fact& f) { return std::find(cited.begin(), cited.end(), f) != cited.end(); };
    if (branch.closes_absurd) {
      if (!has(absurd())) throw Error(ErrorCode::UnclosedGoal, "close absurd cites no absurdity");
      return;
    }
    for (const auto& g : state.goals)
      if (!has(g)) throw Error(ErrorCode::UnclosedGoal, "goal " + to_string(g) + " not cited");
  }

  const LemmaRegistry& registry_;
  const CheckOptions& options_;
  CheckReport& report_;
};

}  // namespace

CheckReport check_proof(const TheoremStatement& statement, const Proof& proof,
                        const LemmaRegistry& registry, const CheckOptions& options) {
  CheckReport report;
  report.theorem = statement.name;
  auto fail = [&](StepFailure f) {
    report.status = CheckStatus::failed;
    StepResult r{std::move(f.label), f.line, false, std::move(f.message)};
    report.steps.push_back(r);
    report.failure = std::move(r);
  };
  if (statement.conclusions.empty()) {
    fail({"statement", 0, "theorem has no conclusion"});
    return report;
  }
  try {
    ProofState state = initial_state(statement);
    Checker checker(registry, options, report);
    checker.run(state, proof.steps, "");
    std::vector<Fact> cited;
    for (const auto& ref : proof.qed) {
      if (ref.kind == Ref::Kind::refl) continue;
      const auto& facts = lookup(state, ref.label);
      cited.insert(cited.end(), facts.begin(), facts.end());
    }
    for (const auto& g : statement.conclusions)
      if (std::find(cited.begin(), cited.end(), g) == cited.end())
        throw Error(ErrorCode::UnclosedGoal, "qed does not cite " + to_string(g));
  } catch (StepFailure& f) {
    fail(std::move(f));
  } catch (const Error& e) {
    fail({"qed", proof.qed_line, e.what()});
  }
  return report;
}

}  // namespace pons
