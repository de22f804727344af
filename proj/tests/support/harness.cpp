#include "harness.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>

#include "pons/error.hpp"
#include "pons/rules.hpp"

namespace pons::testing {

using models::Instance;
using models::ModelId;
using models::MPoint;
using models::Rng;

namespace {

constexpr double kPi = std::numbers::pi;

struct Gen {
  ModelId m;
  Rng& rng;

  MPoint any() { return models::random_point(m, rng); }
  double heading() { return rng.uniform(-kPi, kPi); }
  double sign() { return rng.uniform(0, 1) < 0.5 ? -1.0 : 1.0; }
  double arm() {
    switch (m) {
      case ModelId::euclidean: return rng.uniform(0.1, 1.5);
      case ModelId::poincare: return rng.uniform(0.1, 1.2);
      case ModelId::sphere: return rng.uniform(0.05, 0.4);
    }
    return 0;
  }
  double d(const MPoint& p, const MPoint& q) { return models::dist(m, p, q); }
  double ang(const MPoint& a, const MPoint& v, const MPoint& b) { return models::angle_at(m, a, v, b); }
  MPoint on(const MPoint& a, const MPoint& b, double lo = 0.1, double hi = 0.9) {
    return models::along(m, a, b, rng.uniform(lo, hi) * d(a, b));
  }
  MPoint shoot(const MPoint& v, double h, double s) { return models::shoot(m, v, h, s); }

  // A segment of the given length somewhere else.
  std::pair<MPoint, MPoint> seg_copy(double len) {
    const MPoint c = any();
    return {c, shoot(c, heading(), len)};
  }
  // An angle of the given measure with random arm lengths: (p, v, q).
  std::array<MPoint, 3> angle_copy(double theta) {
    const MPoint v = any();
    const double h = heading();
    return {shoot(v, h, arm()), v, shoot(v, h + sign() * theta, arm())};
  }
  // Congruent copy of triangle (p1, p2, p3), mirrored at random.
  std::array<MPoint, 3> triangle_copy(const MPoint& p1, const MPoint& p2, const MPoint& p3) {
    const MPoint q1 = any();
    const double h = heading();
    return {q1, shoot(q1, h, d(p1, p2)), shoot(q1, h + sign() * ang(p2, p1, p3), d(p1, p3))};
  }
};

using Points = std::vector<MPoint>;

std::optional<Points> generate(RuleId rule, Gen& g) {
  switch (rule) {
    case RuleId::SegRefl:
      return Points{g.any(), g.any()};
    case RuleId::AngRefl:
      return Points{g.any(), g.any(), g.any()};
    case RuleId::SegSym: {
      const MPoint a = g.any(), b = g.any();
      const auto [c, d] = g.seg_copy(g.d(a, b));
      return Points{a, b, c, d};
    }
    case RuleId::AngSym: {
      const MPoint p = g.any(), v = g.any(), q = g.any();
      const auto c = g.angle_copy(g.ang(p, v, q));
      return Points{p, v, q, c[0], c[1], c[2]};
    }
    case RuleId::SegTrans: {
      const MPoint a = g.any(), b = g.any();
      const auto [c, d] = g.seg_copy(g.d(a, b));
      const auto [e, f] = g.seg_copy(g.d(a, b));
      return Points{a, b, c, d, e, f};
    }
    case RuleId::AngTrans: {
      const MPoint p = g.any(), v = g.any(), q = g.any();
      const double t = g.ang(p, v, q);
      const auto c = g.angle_copy(t);
      const auto e = g.angle_copy(t);
      return Points{p, v, q, c[0], c[1], c[2], e[0], e[1], e[2]};
    }
    case RuleId::SasOrd: {
      const MPoint p1 = g.any(), p2 = g.any(), p3 = g.any();
      const auto q = g.triangle_copy(p1, p2, p3);
      return Points{p1, p2, p3, q[0], q[1], q[2]};
    }
    case RuleId::AsaOrd: {
      // Base q2q3 copied, apex found where the two base-angle rays meet.
      const MPoint p1 = g.any(), p2 = g.any(), p3 = g.any();
      const double s = g.sign();
      const MPoint q2 = g.any();
      const MPoint q3 = g.shoot(q2, g.heading(), g.d(p2, p3));
      const MPoint r2 = models::offset(g.m, q2, q3, s * g.ang(p1, p2, p3), 0.05);
      const MPoint r3 = models::offset(g.m, q3, q2, -s * g.ang(p1, p3, p2), 0.05);
      const auto q1 = models::intersect_lines(g.m, q2, r2, q3, r3);
      if (!q1) return std::nullopt;
      return Points{p1, p2, p3, *q1, q2, q3};
    }
    case RuleId::SegSum: {
      const MPoint a = g.any(), b = g.any();
      const MPoint mid = g.on(a, b);
      const MPoint a2 = g.any();
      const double h = g.heading();
      return Points{a, mid, b, a2, g.shoot(a2, h, g.d(a, mid)), g.shoot(a2, h, g.d(a, b))};
    }
    case RuleId::AngSum: {
      // a' and b' anywhere on the copied rays; m' where a'b' crosses the middle ray.
      const MPoint a = g.any(), b = g.any(), z = g.any();
      const MPoint mid = g.on(a, b);
      const double t1 = g.ang(a, z, mid), t2 = g.ang(mid, z, b);
      const MPoint z2 = g.any();
      const double h = g.heading(), s = g.sign();
      const MPoint a2 = g.shoot(z2, h, g.arm());
      const MPoint b2 = g.shoot(z2, h + s * (t1 + t2), g.arm());
      const auto m2 = models::intersect_lines(g.m, a2, b2, z2, g.shoot(z2, h + s * t1, 0.05));
      if (!m2) return std::nullopt;
      return Points{a, mid, b, z, a2, *m2, b2, z2};
    }
    case RuleId::SuppCong: {
      const MPoint b = g.any();
      const double h = g.heading(), phi = g.sign() * g.rng.uniform(0.05, kPi - 0.05);
      const MPoint a = g.shoot(b, h, g.arm()), d = g.shoot(b, h + kPi, g.arm());
      const MPoint c = g.shoot(b, h + phi, g.arm());
      const MPoint b2 = g.any();
      const double h2 = g.heading();
      const double turn = g.sign() * (kPi - std::abs(phi));
      const MPoint a2 = g.shoot(b2, h2, g.arm()), d2 = g.shoot(b2, h2 + kPi, g.arm());
      const MPoint c2 = g.shoot(b2, h2 + kPi + turn, g.arm());
      return Points{a, b, c, d, a2, b2, c2, d2};
    }
    case RuleId::ArmSubst: {
      const MPoint v = g.any(), w = g.any(), z = g.any();
      return Points{v, g.on(v, w), w, z};
    }
    case RuleId::WholePartSeg: {
      const MPoint a = g.any(), b = g.any();
      return Points{a, g.on(a, b, 0.01, 0.99), b};
    }
    case RuleId::WholePartAng: {
      const MPoint a = g.any(), b = g.any(), z = g.any();
      return Points{a, g.on(a, b, 0.01, 0.99), b, z};
    }
    case RuleId::LtSubstSeg: {
      const MPoint a1 = g.any(), a2 = g.any(), b1 = g.any(), b2 = g.any();
      const auto [c1, c2] = g.seg_copy(g.d(a1, a2));
      const auto [d1, d2] = g.seg_copy(g.d(b1, b2));
      return Points{a1, a2, b1, b2, c1, c2, d1, d2};
    }
    case RuleId::LtSubstAng: {
      const MPoint a1 = g.any(), a2 = g.any(), a3 = g.any();
      const MPoint b1 = g.any(), b2 = g.any(), b3 = g.any();
      const auto c = g.angle_copy(g.ang(a1, a2, a3));
      const auto d = g.angle_copy(g.ang(b1, b2, b3));
      return Points{a1, a2, a3, b1, b2, b3, c[0], c[1], c[2], d[0], d[1], d[2]};
    }
    case RuleId::AbsurdLtEqSeg: {
      // Equal lengths up to a perturbation around the tolerance scale.
      const MPoint a1 = g.any(), a2 = g.any();
      const double len = g.d(a1, a2);
      const auto [b1, b2] = g.seg_copy(len * (1 + g.rng.uniform(-1e-5, 1e-5)));
      return Points{a1, a2, b1, b2};
    }
    case RuleId::AbsurdLtEqAng: {
      const MPoint p = g.any(), v = g.any(), q = g.any();
      const auto c = g.angle_copy(g.ang(p, v, q) * (1 + g.rng.uniform(-1e-5, 1e-5)));
      return Points{p, v, q, c[0], c[1], c[2]};
    }
    case RuleId::NcTransfer: {
      const MPoint x = g.any(), y = g.any(), z = g.any();
      const double len = g.d(x, y);
      const double s1 = g.rng.uniform(-0.5, 1.5), s2 = g.rng.uniform(-0.5, 1.5);
      if (std::abs(s1 - s2) < 0.05) return std::nullopt;
      return Points{x, y, z, models::along(g.m, x, y, s1 * len), models::along(g.m, x, y, s2 * len)};
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<PointId> rule_points(RuleId rule) {
  std::vector<PointId> out;
  for (std::size_t i = 0; i < rule_schema(rule).variables.size(); ++i)
    out.push_back(point("V" + std::to_string(i)));
  return out;
}

RuleSoundness check_rule_soundness(RuleId rule, ModelId m, int trials, std::uint64_t seed) {
  const RuleSchema& schema = rule_schema(rule);
  const auto names = rule_points(rule);
  const auto tol = models::ToleranceProfile::defaults(m);

  RuleSoundness out;
  out.rule = rule;
  out.model = m;
  out.vacuous = schema.conclusions.size() == 1 && schema.conclusions[0].kind == FactKind::absurd;

  std::vector<Fact> premises, conclusions;
  for (const auto& p : schema.premises) premises.push_back(instantiate(p, names));
  for (const auto& [a, b, c] : schema.side_conditions)
    premises.push_back(noncollinear(names[a], names[b], names[c]));
  if (!out.vacuous)
    for (const auto& c : schema.conclusions) conclusions.push_back(instantiate(c, names));

  const int max_attempts = trials * 200;
  Rng rng(seed, static_cast<std::uint64_t>(rule) * 16 + static_cast<std::uint64_t>(m));
  Gen gen{m, rng};
  while (out.trials < trials && out.attempts < max_attempts) {
    ++out.attempts;
    Instance inst;
    try {
      const auto pts = generate(rule, gen);
      if (!pts) continue;
      for (std::size_t i = 0; i < pts->size(); ++i) inst[names[i]] = (*pts)[i];
      if (!models::within_limits(m, inst)) continue;
    } catch (const Error&) {
      continue;  // left the model's domain while constructing
    }

    if (out.vacuous) {
      // At least one premise must fail on every instance.
      ++out.trials;
      bool all = true;
      for (const auto& p : premises) all = all && models::eval_fact(m, inst, p, tol);
      if (all) {
        ++out.failures;
        if (out.first_failure.empty())
          out.first_failure = "premises hold jointly at attempt " + std::to_string(out.attempts);
      }
      continue;
    }

    bool holds = true;
    for (const auto& p : premises) holds = holds && models::eval_fact(m, inst, p, tol);
    if (!holds) continue;
    ++out.trials;
    for (const auto& c : conclusions) {
      if (models::eval_fact(m, inst, c, tol)) continue;
      ++out.failures;
      if (out.first_failure.empty())
        out.first_failure = to_string(c) + ": " + models::describe_values(m, inst, c);
      break;
    }
  }
  return out;
}

namespace {

std::size_t count_steps(const std::vector<Step>& steps) {
  std::size_t n = 0;
  for (const auto& s : steps) {
    ++n;
    if (const auto* c = std::get_if<CasesStep>(&s.body))
      for (const auto& b : c->branches) n += count_steps(b.steps);
  }
  return n;
}

// Deletes the k-th step in pre-order; returns its label.
std::optional<std::string> delete_nth(std::vector<Step>& steps, std::size_t& k) {
  for (auto it = steps.begin(); it != steps.end(); ++it) {
    if (k == 0) {
      std::string label = it->label;
      steps.erase(it);
      return label;
    }
    --k;
    if (auto* c = std::get_if<CasesStep>(&it->body))
      for (auto& b : c->branches)
        if (auto l = delete_nth(b.steps, k)) return l;
  }
  return std::nullopt;
}

using RefVisitor = std::function<void(Ref&, const std::string& where)>;

void visit_refs(std::vector<Step>& steps, const RefVisitor& f) {
  for (auto& s : steps) {
    std::visit(
        [&](auto& body) {
          using T = std::decay_t<decltype(body)>;
          if constexpr (std::is_same_v<T, RuleStep> || std::is_same_v<T, ConstructStep>) {
            for (auto& r : body.refs) f(r, "step " + s.label);
          } else if constexpr (std::is_same_v<T, CasesStep>) {
            for (auto& b : body.branches) {
              visit_refs(b.steps, f);
              for (auto& r : b.refs)
                f(r, "close of case " + s.label + "." + std::string(case_name(b.kind)));
            }
          }
        },
        s.body);
  }
}

void visit_refs(Proof& p, const RefVisitor& f) {
  visit_refs(p.steps, f);
  for (auto& r : p.qed) f(r, "qed");
}

}  // namespace

std::vector<Mutant> proof_mutants(const Proof& proof) {
  std::vector<Mutant> out;
  const std::size_t steps = count_steps(proof.steps);
  for (std::size_t i = 0; i < steps; ++i) {
    Mutant m{"", proof};
    std::size_t k = i;
    const auto label = delete_nth(m.proof.steps, k);
    m.description = "delete step " + label.value_or("?");
    out.push_back(std::move(m));
  }

  std::size_t cites = 0;
  Proof scratch = proof;
  visit_refs(scratch, [&](Ref& r, const std::string&) {
    if (r.kind != Ref::Kind::refl) ++cites;
  });
  for (std::size_t i = 0; i < cites; ++i) {
    Mutant m{"", proof};
    std::size_t seen = 0;
    visit_refs(m.proof, [&](Ref& r, const std::string& where) {
      if (r.kind == Ref::Kind::refl) return;
      if (seen++ != i) return;
      m.description = "corrupt " + r.label + " in " + where;
      r.label += "_x";
    });
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace pons::testing
