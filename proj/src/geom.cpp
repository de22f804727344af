#include "pons/geom.hpp"

#include <algorithm>

#include "pons/error.hpp"

namespace pons {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateSegment: return "DegenerateSegment";
    case ErrorCode::DegenerateAngle: return "DegenerateAngle";
    case ErrorCode::DegenerateFact: return "DegenerateFact";
    case ErrorCode::UnknownPremise: return "UnknownPremise";
    case ErrorCode::PremiseMismatch: return "PremiseMismatch";
    case ErrorCode::SideConditionFailed: return "SideConditionFailed";
    case ErrorCode::DegenerateInstantiation: return "DegenerateInstantiation";
    case ErrorCode::BadInstantiation: return "BadInstantiation";
    case ErrorCode::UnknownPoint: return "UnknownPoint";
    case ErrorCode::PointAlreadyDefined: return "PointAlreadyDefined";
    case ErrorCode::LayoffWithoutBound: return "LayoffWithoutBound";
    case ErrorCode::HypothesisNotSatisfied: return "HypothesisNotSatisfied";
    case ErrorCode::AbsurdOutsideCase: return "AbsurdOutsideCase";
    case ErrorCode::UnclosedGoal: return "UnclosedGoal";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnresolvedLabel: return "UnresolvedLabel";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::UnknownRule: return "UnknownRule";
    case ErrorCode::UnknownLemma: return "UnknownLemma";
    case ErrorCode::DuplicateNode: return "DuplicateNode";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::InvalidNode: return "InvalidNode";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::MissingPoint: return "MissingPoint";
    case ErrorCode::SamplingFailed: return "SamplingFailed";
    case ErrorCode::GeodesicOutOfDomain: return "GeodesicOutOfDomain";
  }
  return "Error";
}

Segment canon_segment(const PointId& p, const PointId& q) {
  if (p == q) throw Error(ErrorCode::DegenerateSegment, "seg " + p.name + " " + q.name);
  return p < q ? Segment(p, q) : Segment(q, p);
}

Angle canon_angle(const PointId& p, const PointId& v, const PointId& q) {
  if (p == v || q == v || p == q)
    throw Error(ErrorCode::DegenerateAngle, "ang " + p.name + " " + v.name + " " + q.name);
  return p < q ? Angle(v, p, q) : Angle(v, q, p);
}

Fact seg_eq(const Segment& s, const Segment& t) {
  return t < s ? SegEq{t, s} : SegEq{s, t};
}

Fact ang_eq(const Angle& a, const Angle& b) {
  return b < a ? AngEq{b, a} : AngEq{a, b};
}

Fact seg_lt(const Segment& s, const Segment& t) { return SegLt{s, t}; }

Fact ang_lt(const Angle& a, const Angle& b) { return AngLt{a, b}; }

Fact between(const PointId& outer_a, const PointId& mid, const PointId& outer_b) {
  if (mid == outer_a || mid == outer_b || outer_a == outer_b)
    throw Error(ErrorCode::DegenerateFact,
                "between " + outer_a.name + " " + mid.name + " " + outer_b.name);
  return outer_a < outer_b ? Between{mid, outer_a, outer_b} : Between{mid, outer_b, outer_a};
}

namespace {

std::array<PointId, 3> sorted_triple(const PointId& a, const PointId& b, const PointId& c,
                                     std::string_view what) {
  if (a == b || b == c || a == c)
    throw Error(ErrorCode::DegenerateFact,
                std::string(what) + " " + a.name + " " + b.name + " " + c.name);
  std::array<PointId, 3> t{a, b, c};
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace

Fact noncollinear(const PointId& a, const PointId& b, const PointId& c) {
  return NonCollinear{sorted_triple(a, b, c, "noncollinear")};
}

Fact angle_sum_pi(const PointId& a, const PointId& b, const PointId& c) {
  return AngleSumPi{sorted_triple(a, b, c, "anglesum")};
}

Fact absurd() { return Absurd{}; }

std::size_t arity(FactKind kind) {
  switch (kind) {
    case FactKind::seg_eq:
    case FactKind::seg_lt: return 4;
    case FactKind::ang_eq:
    case FactKind::ang_lt: return 6;
    case FactKind::between:
    case FactKind::noncollinear:
    case FactKind::angle_sum_pi: return 3;
    case FactKind::absurd: return 0;
  }
  return 0;
}

FactKind kind_of(const Fact& f) { return static_cast<FactKind>(f.index()); }

Fact canon_fact(const RawFact& raw) {
  const auto& p = raw.points;
  if (p.size() != arity(raw.kind))
    throw Error(ErrorCode::DegenerateFact, "wrong number of points in " + to_string(raw));
  switch (raw.kind) {
    case FactKind::seg_eq: return seg_eq(canon_segment(p[0], p[1]), canon_segment(p[2], p[3]));
    case FactKind::seg_lt: return seg_lt(canon_segment(p[0], p[1]), canon_segment(p[2], p[3]));
    case FactKind::ang_eq:
      return ang_eq(canon_angle(p[0], p[1], p[2]), canon_angle(p[3], p[4], p[5]));
    case FactKind::ang_lt:
      return ang_lt(canon_angle(p[0], p[1], p[2]), canon_angle(p[3], p[4], p[5]));
    case FactKind::between: return between(p[0], p[1], p[2]);
    case FactKind::noncollinear: return noncollinear(p[0], p[1], p[2]);
    case FactKind::angle_sum_pi: return angle_sum_pi(p[0], p[1], p[2]);
    case FactKind::absurd: return absurd();
  }
  return absurd();
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Fact canon_fact(const Fact& f) {
  auto seg = [](const Segment& s) { return canon_segment(s.first(), s.second()); };
  auto ang = [](const Angle& a) { return canon_angle(a.arm1(), a.vertex(), a.arm2()); };
  return std::visit(
      overloaded{
          [&](const SegEq& x) { return seg_eq(seg(x.lhs), seg(x.rhs)); },
          [&](const AngEq& x) { return ang_eq(ang(x.lhs), ang(x.rhs)); },
          [&](const SegLt& x) { return seg_lt(seg(x.lhs), seg(x.rhs)); },
          [&](const AngLt& x) { return ang_lt(ang(x.lhs), ang(x.rhs)); },
          [](const Between& x) { return between(x.outer_a, x.mid, x.outer_b); },
          [](const NonCollinear& x) { return noncollinear(x.points[0], x.points[1], x.points[2]); },
          [](const AngleSumPi& x) { return angle_sum_pi(x.points[0], x.points[1], x.points[2]); },
          [](const Absurd&) { return absurd(); },
      },
      f);
}

RawFact to_raw(const Fact& f) {
  auto seg = [](const Segment& s) { return std::vector<PointId>{s.first(), s.second()}; };
  auto ang = [](const Angle& a) { return std::vector<PointId>{a.arm1(), a.vertex(), a.arm2()}; };
  auto join = [](std::vector<PointId> a, const std::vector<PointId>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  return std::visit(
      overloaded{
          [&](const SegEq& x) { return RawFact{FactKind::seg_eq, join(seg(x.lhs), seg(x.rhs))}; },
          [&](const AngEq& x) { return RawFact{FactKind::ang_eq, join(ang(x.lhs), ang(x.rhs))}; },
          [&](const SegLt& x) { return RawFact{FactKind::seg_lt, join(seg(x.lhs), seg(x.rhs))}; },
          [&](const AngLt& x) { return RawFact{FactKind::ang_lt, join(ang(x.lhs), ang(x.rhs))}; },
          [](const Between& x) {
            return RawFact{FactKind::between, {x.outer_a, x.mid, x.outer_b}};
          },
          [](const NonCollinear& x) {
            return RawFact{FactKind::noncollinear, {x.points.begin(), x.points.end()}};
          },
          [](const AngleSumPi& x) {
            return RawFact{FactKind::angle_sum_pi, {x.points.begin(), x.points.end()}};
          },
          [](const Absurd&) { return RawFact{FactKind::absurd, {}}; },
      },
      f);
}

std::vector<PointId> points_of(const Fact& f) {
  std::set<PointId> out;
  auto seg = [&](const Segment& s) {
    out.insert(s.first());
    out.insert(s.second());
  };
  auto ang = [&](const Angle& a) {
    out.insert(a.vertex());
    out.insert(a.arm1());
    out.insert(a.arm2());
  };
  std::visit(overloaded{
                 [&](const SegEq& x) { seg(x.lhs), seg(x.rhs); },
                 [&](const AngEq& x) { ang(x.lhs), ang(x.rhs); },
                 [&](const SegLt& x) { seg(x.lhs), seg(x.rhs); },
                 [&](const AngLt& x) { ang(x.lhs), ang(x.rhs); },
                 [&](const Between& x) { out.insert({x.mid, x.outer_a, x.outer_b}); },
                 [&](const NonCollinear& x) { out.insert(x.points.begin(), x.points.end()); },
                 [&](const AngleSumPi& x) { out.insert(x.points.begin(), x.points.end()); },
                 [](const Absurd&) {},
             },
             f);
  return {out.begin(), out.end()};
}

std::string to_string(const PointId& p) { return p.name; }

std::string to_string(const Segment& s) { return "seg " + s.first().name + " " + s.second().name; }

std::string to_string(const Angle& a) {
  return "ang " + a.arm1().name + " " + a.vertex().name + " " + a.arm2().name;
}

std::string to_string(const Fact& f) {
  return std::visit(
      overloaded{
          [](const SegEq& x) { return to_string(x.lhs) + " == " + to_string(x.rhs); },
          [](const AngEq& x) { return to_string(x.lhs) + " == " + to_string(x.rhs); },
          [](const SegLt& x) { return to_string(x.lhs) + " < " + to_string(x.rhs); },
          [](const AngLt& x) { return to_string(x.lhs) + " < " + to_string(x.rhs); },
          [](const Between& x) {
            return "between " + x.outer_a.name + " " + x.mid.name + " " + x.outer_b.name;
          },
          [](const NonCollinear& x) {
            return "noncollinear " + x.points[0].name + " " + x.points[1].name + " " +
                   x.points[2].name;
          },
          [](const AngleSumPi& x) {
            return "anglesum " + x.points[0].name + " " + x.points[1].name + " " +
                   x.points[2].name + " == pi";
          },
          [](const Absurd&) { return std::string("absurd"); },
      },
      f);
}

std::string to_string(const RawFact& f) {
  const auto& p = f.points;
  auto names = [&](std::size_t from, std::size_t n) {
    std::string s;
    for (std::size_t i = from; i < from + n && i < p.size(); ++i) s += " " + p[i].name;
    return s;
  };
  if (p.size() != arity(f.kind)) return "<malformed fact>";
  switch (f.kind) {
    case FactKind::seg_eq: return "seg" + names(0, 2) + " == seg" + names(2, 2);
    case FactKind::seg_lt: return "seg" + names(0, 2) + " < seg" + names(2, 2);
    case FactKind::ang_eq: return "ang" + names(0, 3) + " == ang" + names(3, 3);
    case FactKind::ang_lt: return "ang" + names(0, 3) + " < ang" + names(3, 3);
    case FactKind::between: return "between" + names(0, 3);
    case FactKind::noncollinear: return "noncollinear" + names(0, 3);
    case FactKind::angle_sum_pi: return "anglesum" + names(0, 3) + " == pi";
    case FactKind::absurd: return "absurd";
  }
  return "absurd";
}

LineTable LineTable::record_between(const Between& f) const {
  Line merged{f.mid, f.outer_a, f.outer_b};
  std::vector<Line> rest(lines_.begin(), lines_.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = rest.begin(); it != rest.end();) {
      std::size_t shared = 0;
      for (const auto& p : *it) shared += merged.count(p);
      if (shared >= 2) {
        merged.insert(it->begin(), it->end());
        it = rest.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  LineTable out;
  out.lines_.insert(rest.begin(), rest.end());
  out.lines_.insert(std::move(merged));
  return out;
}

bool LineTable::on_one_line(std::span<const PointId> pts) const {
  return std::any_of(lines_.begin(), lines_.end(), [&](const Line& line) {
    return std::all_of(pts.begin(), pts.end(), [&](const PointId& p) { return line.count(p) > 0; });
  });
}

bool LineTable::provably_collinear(const PointId& a, const PointId& b, const PointId& c) const {
  const std::array<PointId, 3> pts{a, b, c};
  return on_one_line(pts);
}

LineTable record_between(const LineTable& table, const Between& f) {
  return table.record_between(f);
}

bool provably_collinear(const LineTable& table, const PointId& a, const PointId& b,
                        const PointId& c) {
  return table.provably_collinear(a, b, c);
}

}  // namespace pons
