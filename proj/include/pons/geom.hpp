#pragma once

// Symbolic vocabulary shared by the kernel, the script language and the
// numeric models: points, segments, angles, normalized facts and the table
// of lines implied by betweenness.

#include <array>
#include <compare>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pons {

enum class PointOrigin { hypothesis, constructed, lemma_introduced };

struct PointId {
  std::string name;

  auto operator<=>(const PointId&) const = default;
};

inline PointId point(std::string_view name) { return PointId{std::string(name)}; }

// Unordered pair of distinct points; endpoints stored in name order.
class Segment {
 public:
  const PointId& first() const { return first_; }
  const PointId& second() const { return second_; }
  bool has(const PointId& p) const { return p == first_ || p == second_; }

  auto operator<=>(const Segment&) const = default;

 private:
  friend Segment canon_segment(const PointId& p, const PointId& q);
  Segment(PointId a, PointId b) : first_(std::move(a)), second_(std::move(b)) {}

  PointId first_;
  PointId second_;
};

// Vertex plus an unordered pair of arm points, arms stored in name order.
class Angle {
 public:
  const PointId& vertex() const { return vertex_; }
  const PointId& arm1() const { return arm1_; }
  const PointId& arm2() const { return arm2_; }

  auto operator<=>(const Angle&) const = default;

 private:
  friend Angle canon_angle(const PointId& p, const PointId& v, const PointId& q);
  Angle(PointId v, PointId a, PointId b)
      : vertex_(std::move(v)), arm1_(std::move(a)), arm2_(std::move(b)) {}

  PointId vertex_;
  PointId arm1_;
  PointId arm2_;
};

Segment canon_segment(const PointId& p, const PointId& q);
Angle canon_angle(const PointId& p, const PointId& v, const PointId& q);

struct SegEq {
  Segment lhs, rhs;
  auto operator<=>(const SegEq&) const = default;
};
struct AngEq {
  Angle lhs, rhs;
  auto operator<=>(const AngEq&) const = default;
};
struct SegLt {
  Segment lhs, rhs;
  auto operator<=>(const SegLt&) const = default;
};
struct AngLt {
  Angle lhs, rhs;
  auto operator<=>(const AngLt&) const = default;
};
// mid strictly between outer_a and outer_b; outer pair in name order.
struct Between {
  PointId mid, outer_a, outer_b;
  auto operator<=>(const Between&) const = default;
};
struct NonCollinear {
  std::array<PointId, 3> points;
  auto operator<=>(const NonCollinear&) const = default;
};
// Measure-only predicate: the three interior angles of the triangle sum to a
// straight angle. No kernel rule concludes it; it exists for conjectures.
struct AngleSumPi {
  std::array<PointId, 3> points;
  auto operator<=>(const AngleSumPi&) const = default;
};
struct Absurd {
  auto operator<=>(const Absurd&) const = default;
};

using Fact = std::variant<SegEq, AngEq, SegLt, AngLt, Between, NonCollinear, AngleSumPi, Absurd>;

// Smart constructors; each returns the canonical value or throws.
Fact seg_eq(const Segment& s, const Segment& t);
Fact ang_eq(const Angle& a, const Angle& b);
Fact seg_lt(const Segment& s, const Segment& t);
Fact ang_lt(const Angle& a, const Angle& b);
Fact between(const PointId& outer_a, const PointId& mid, const PointId& outer_b);
Fact noncollinear(const PointId& a, const PointId& b, const PointId& c);
Fact angle_sum_pi(const PointId& a, const PointId& b, const PointId& c);
Fact absurd();

enum class FactKind { seg_eq, ang_eq, seg_lt, ang_lt, between, noncollinear, angle_sum_pi, absurd };

// A fact exactly as written, before normalization. Points are listed in
// source order: 4 for segment facts, 6 for angle facts, 3 for the rest
// ("between A D B" is {A, D, B} with D in the middle), none for absurd.
struct RawFact {
  FactKind kind = FactKind::absurd;
  std::vector<PointId> points;

  bool operator==(const RawFact&) const = default;
};

std::size_t arity(FactKind kind);
FactKind kind_of(const Fact& f);

Fact canon_fact(const RawFact& raw);
Fact canon_fact(const Fact& f);
// Inverse of canon_fact up to normalization: canon_fact(to_raw(f)) == f.
RawFact to_raw(const Fact& f);

// Every point a fact mentions, in name order.
std::vector<PointId> points_of(const Fact& f);

std::string to_string(const PointId& p);
std::string to_string(const Segment& s);
std::string to_string(const Angle& a);
std::string to_string(const Fact& f);
std::string to_string(const RawFact& f);

// Lines known to exist from the betweenness facts asserted so far. Values
// are immutable; record_between returns an updated copy.
class LineTable {
 public:
  using Line = std::set<PointId>;

  LineTable record_between(const Between& f) const;
  bool provably_collinear(const PointId& a, const PointId& b, const PointId& c) const;
  // True when one stored line contains every listed point.
  bool on_one_line(std::span<const PointId> pts) const;

  const std::set<Line>& lines() const { return lines_; }
  bool operator==(const LineTable&) const = default;

 private:
  std::set<Line> lines_;
};

LineTable record_between(const LineTable& table, const Between& f);
bool provably_collinear(const LineTable& table, const PointId& a, const PointId& b,
                        const PointId& c);

}  // namespace pons
