#include "pons/models.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "pons/error.hpp"

namespace pons::models {

namespace {

constexpr double kPi = std::numbers::pi;

struct V3 {
  double a = 0, b = 0, c = 0;
};

V3 operator+(V3 u, V3 v) { return {u.a + v.a, u.b + v.b, u.c + v.c}; }
V3 operator-(V3 u, V3 v) { return {u.a - v.a, u.b - v.b, u.c - v.c}; }
V3 operator*(double k, V3 v) { return {k * v.a, k * v.b, k * v.c}; }
double dot(V3 u, V3 v) { return u.a * v.a + u.b * v.b + u.c * v.c; }
V3 cross(V3 u, V3 v) {
  return {u.b * v.c - u.c * v.b, u.c * v.a - u.a * v.c, u.a * v.b - u.b * v.a};
}
double norm(V3 v) { return std::sqrt(dot(v, v)); }

// Minkowski form of signature (-,+,+); the hyperboloid is <P,P> = -1, P.a > 0.
double ldot(V3 u, V3 v) { return -u.a * v.a + u.b * v.b + u.c * v.c; }

V3 to_hyp(const MPoint& p) {
  const double r2 = p.x * p.x + p.y * p.y;
  const double d = 1 - r2;
  return {(1 + r2) / d, 2 * p.x / d, 2 * p.y / d};
}

MPoint from_hyp(V3 h) { return {h.b / (1 + h.a), h.c / (1 + h.a), 0}; }

V3 as_v3(const MPoint& p) { return {p.x, p.y, p.z}; }
MPoint as_point(V3 v) { return {v.a, v.b, v.c}; }

// Orthonormal tangent frame at a point; headings are measured from e1
// toward e2.
struct Frame {
  ModelId model;
  V3 origin, e1, e2;
};

Frame frame_at(ModelId m, const MPoint& p) {
  switch (m) {
    case ModelId::euclidean:
      return {m, {p.x, p.y, 0}, {1, 0, 0}, {0, 1, 0}};
    case ModelId::poincare: {
      // Push the disk's coordinate directions through the differential of
      // the disk-to-hyperboloid map; the disk is conformal, so they stay
      // orthogonal.
      const double r2 = p.x * p.x + p.y * p.y;
      const double d = 1 - r2;
      const double d2 = d * d;
      V3 e1{4 * p.x / d2, 2 / d + 4 * p.x * p.x / d2, 4 * p.x * p.y / d2};
      V3 e2{4 * p.y / d2, 4 * p.x * p.y / d2, 2 / d + 4 * p.y * p.y / d2};
      e1 = (1 / std::sqrt(ldot(e1, e1))) * e1;
      e2 = e2 - ldot(e2, e1) * e1;
      e2 = (1 / std::sqrt(ldot(e2, e2))) * e2;
      return {m, to_hyp(p), e1, e2};
    }
    case ModelId::sphere: {
      const V3 o = as_v3(p);
      V3 axis{1, 0, 0};
      if (std::abs(o.a) > std::abs(o.b) && std::abs(o.a) > std::abs(o.c)) axis = {0, 1, 0};
      V3 e1 = axis - dot(axis, o) * o;
      e1 = (1 / norm(e1)) * e1;
      return {m, o, e1, cross(o, e1)};
    }
  }
  throw Error(ErrorCode::DomainError, "unknown model");
}

double heading_to(const Frame& f, const MPoint& q) {
  switch (f.model) {
    case ModelId::euclidean:
      return std::atan2(q.y - f.origin.b, q.x - f.origin.a);
    case ModelId::poincare: {
      const V3 h = to_hyp(q);
      const V3 u = h + ldot(f.origin, h) * f.origin;
      return std::atan2(ldot(u, f.e2), ldot(u, f.e1));
    }
    case ModelId::sphere: {
      const V3 v = as_v3(q);
      const V3 u = v - dot(f.origin, v) * f.origin;
      return std::atan2(dot(u, f.e2), dot(u, f.e1));
    }
  }
  return 0;
}

MPoint point_at(const Frame& f, double heading, double s) {
  const V3 u = std::cos(heading) * f.e1 + std::sin(heading) * f.e2;
  switch (f.model) {
    case ModelId::euclidean:
      return {f.origin.a + s * u.a, f.origin.b + s * u.b, 0};
    case ModelId::poincare:
      return from_hyp(std::cosh(s) * f.origin + std::sinh(s) * u);
    case ModelId::sphere: {
      const V3 v = std::cos(s) * f.origin + std::sin(s) * u;
      return as_point((1 / norm(v)) * v);
    }
  }
  return {};
}

void require_domain(ModelId m, const MPoint& p) {
  if (!in_domain(m, p)) {
    std::ostringstream s;
    s << std::setprecision(17) << "point (" << p.x << ", " << p.y;
    if (m == ModelId::sphere) s << ", " << p.z;
    s << ") outside the " << model_name(m) << " model";
    throw Error(ErrorCode::DomainError, s.str());
  }
}

double sampling_scale(ModelId m, double euclidean, double poincare, double sphere) {
  switch (m) {
    case ModelId::euclidean: return euclidean;
    case ModelId::poincare: return poincare;
    case ModelId::sphere: return sphere;
  }
  return euclidean;
}

// Random point at intrinsic distance <= radius from the model's centre.
MPoint random_within(ModelId m, Rng& rng, double radius) {
  switch (m) {
    case ModelId::euclidean:
      return {rng.uniform(-radius, radius), rng.uniform(-radius, radius), 0};
    case ModelId::poincare: {
      const double rho = rng.uniform(0, radius);
      const double phi = rng.uniform(0, 2 * kPi);
      const double r = std::tanh(rho / 2);
      return {r * std::cos(phi), r * std::sin(phi), 0};
    }
    case ModelId::sphere: {
      const double theta = rng.uniform(0, radius);
      const double phi = rng.uniform(0, 2 * kPi);
      return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
    }
  }
  return {};
}

const MPoint& lookup(const Instance& inst, const PointId& p) {
  auto it = inst.find(p);
  if (it == inst.end()) throw Error(ErrorCode::MissingPoint, p.name);
  return it->second;
}

double seg_len(ModelId m, const Instance& inst, const Segment& s) {
  return dist(m, lookup(inst, s.first()), lookup(inst, s.second()));
}

std::optional<double> ang_measure(ModelId m, const Instance& inst, const Angle& a,
                                  const ToleranceProfile& tol) {
  try {
    return angle_at(m, lookup(inst, a.arm1()), lookup(inst, a.vertex()), lookup(inst, a.arm2()),
                    tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DegenerateAngle) return std::nullopt;
    throw;
  }
}

// d(a,m) + d(m,b) - d(a,b), and the two parts.
struct Additivity {
  double defect, am, mb, ab;
};

Additivity additivity(ModelId m, const MPoint& a, const MPoint& mid, const MPoint& b) {
  const double am = dist(m, a, mid), mb = dist(m, mid, b), ab = dist(m, a, b);
  return {am + mb - ab, am, mb, ab};
}

// Distance from p to the geodesic line through a and b (a != b).
double line_gap(ModelId m, const MPoint& p, const MPoint& a, const MPoint& b) {
  switch (m) {
    case ModelId::euclidean: {
      const double ux = b.x - a.x, uy = b.y - a.y;
      return std::abs(ux * (p.y - a.y) - uy * (p.x - a.x)) / std::hypot(ux, uy);
    }
    case ModelId::poincare: {
      // Spacelike normal of the plane through the origin cutting out the line.
      V3 n = cross(to_hyp(a), to_hyp(b));
      n.a = -n.a;
      return std::asinh(std::abs(ldot(n, to_hyp(p))) / std::sqrt(ldot(n, n)));
    }
    case ModelId::sphere: {
      const V3 n = cross(as_v3(a), as_v3(b));
      return std::asin(std::min(1.0, std::abs(dot(n, as_v3(p))) / norm(n)));
    }
  }
  return 0;
}

}  // namespace

std::string_view model_name(ModelId m) {
  switch (m) {
    case ModelId::euclidean: return "euclidean";
    case ModelId::poincare: return "poincare";
    case ModelId::sphere: return "sphere";
  }
  return "?";
}

std::optional<ModelId> model_by_name(std::string_view name) {
  for (ModelId m : kAllModels)
    if (model_name(m) == name) return m;
  return std::nullopt;
}

bool in_domain(ModelId m, const MPoint& p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) return false;
  switch (m) {
    case ModelId::euclidean: return p.z == 0;
    case ModelId::poincare: return p.z == 0 && p.x * p.x + p.y * p.y < 1;
    case ModelId::sphere: return std::abs(norm(as_v3(p)) - 1) <= 1e-9;
  }
  return false;
}

ToleranceProfile ToleranceProfile::defaults(ModelId m) {
  return with_eq(m == ModelId::euclidean ? 1e-9 : 1e-7);
}

bool approx_eq(double x, double y, const ToleranceProfile& tol) {
  return std::abs(x - y) <= tol.eq_tol * (1 + std::max(std::abs(x), std::abs(y)));
}

bool definitely_lt(double x, double y, const ToleranceProfile& tol) {
  return x < y - tol.lt_margin * (1 + std::max(std::abs(x), std::abs(y)));
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed;
  const std::uint64_t a = splitmix64(s);
  std::uint64_t t = a ^ (stream * 0xd1b54a32d192ed03ULL);
  return splitmix64(t);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : engine_(mix(seed, stream)) {}

double Rng::uniform(double lo, double hi) {
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

double dist(ModelId m, const MPoint& p, const MPoint& q) {
  require_domain(m, p);
  require_domain(m, q);
  switch (m) {
    case ModelId::euclidean:
      return std::hypot(p.x - q.x, p.y - q.y);
    case ModelId::poincare: {
      // arccosh(1 + 2|p-q|^2 / ((1-|p|^2)(1-|q|^2))), in the half-argument
      // form that keeps short distances accurate.
      const double dd = std::hypot(p.x - q.x, p.y - q.y);
      const double den = (1 - (p.x * p.x + p.y * p.y)) * (1 - (q.x * q.x + q.y * q.y));
      return 2 * std::asinh(dd / std::sqrt(den));
    }
    case ModelId::sphere: {
      const V3 u = as_v3(p), v = as_v3(q);
      return std::atan2(norm(cross(u, v)), dot(u, v));
    }
  }
  return 0;
}

double angle_at(ModelId m, const MPoint& a, const MPoint& v, const MPoint& b,
                const ToleranceProfile& tol) {
  const double p = dist(m, v, a);
  const double q = dist(m, v, b);
  const double r = dist(m, a, b);
  if (p < tol.eq_tol || q < tol.eq_tol)
    throw Error(ErrorCode::DegenerateAngle, "arm shorter than tolerance");
  // Law of cosines written as 1 - cos and 1 + cos in product form, which
  // avoids cancellation for very small and nearly straight angles.
  double one_minus = 0, one_plus = 0;
  const double s1 = std::max(0.0, r + p - q), s2 = std::max(0.0, r - p + q);
  const double s3 = p + q + r, s4 = std::max(0.0, p + q - r);
  switch (m) {
    case ModelId::euclidean:
      one_minus = s1 * s2 / (2 * p * q);
      one_plus = s3 * s4 / (2 * p * q);
      break;
    case ModelId::poincare: {
      const double den = std::sinh(p) * std::sinh(q);
      one_minus = 2 * std::sinh(s1 / 2) * std::sinh(s2 / 2) / den;
      one_plus = 2 * std::sinh(s3 / 2) * std::sinh(s4 / 2) / den;
      break;
    }
    case ModelId::sphere: {
      const double den = std::sin(p) * std::sin(q);
      one_minus = 2 * std::sin(s1 / 2) * std::sin(s2 / 2) / den;
      one_plus = 2 * std::sin(s3 / 2) * std::sin(s4 / 2) / den;
      break;
    }
  }
  return 2 * std::atan2(std::sqrt(std::max(0.0, one_minus)), std::sqrt(std::max(0.0, one_plus)));
}

double angle_at(ModelId m, const MPoint& a, const MPoint& v, const MPoint& b) {
  return angle_at(m, a, v, b, ToleranceProfile::defaults(m));
}

bool eval_fact(ModelId m, const Instance& inst, const Fact& f, const ToleranceProfile& tol) {
  for (const auto& p : points_of(f)) lookup(inst, p);
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SegEq>) {
          return approx_eq(seg_len(m, inst, x.lhs), seg_len(m, inst, x.rhs), tol);
        } else if constexpr (std::is_same_v<T, SegLt>) {
          return definitely_lt(seg_len(m, inst, x.lhs), seg_len(m, inst, x.rhs), tol);
        } else if constexpr (std::is_same_v<T, AngEq> || std::is_same_v<T, AngLt>) {
          const auto l = ang_measure(m, inst, x.lhs, tol);
          const auto r = ang_measure(m, inst, x.rhs, tol);
          if (!l || !r) return false;
          if constexpr (std::is_same_v<T, AngEq>)
            return approx_eq(*l, *r, tol);
          else
            return definitely_lt(*l, *r, tol);
        } else if constexpr (std::is_same_v<T, Between>) {
          const auto ad = additivity(m, lookup(inst, x.outer_a), lookup(inst, x.mid),
                                     lookup(inst, x.outer_b));
          return approx_eq(ad.am + ad.mb, ad.ab, tol) && ad.am > tol.eq_tol &&
                 ad.mb > tol.eq_tol;
        } else if constexpr (std::is_same_v<T, NonCollinear>) {
          const auto& [a, b, c] = x.points;
          const MPoint &pa = lookup(inst, a), &pb = lookup(inst, b), &pc = lookup(inst, c);
          // Every side and every height clears the margin. Heights are
          // linear in the offset from a line, so a point kept off a line
          // stays off it for any two points of that line.
          const std::array<std::array<const MPoint*, 3>, 3> orders{
              {{&pa, &pb, &pc}, {&pb, &pc, &pa}, {&pc, &pa, &pb}}};
          for (const auto& o : orders)
            if (!definitely_lt(0, dist(m, *o[1], *o[2]), tol)) return false;
          for (const auto& o : orders)
            if (!definitely_lt(0, line_gap(m, *o[0], *o[1], *o[2]), tol)) return false;
          return true;
        } else if constexpr (std::is_same_v<T, AngleSumPi>) {
          const auto& [a, b, c] = x.points;
          const MPoint &pa = lookup(inst, a), &pb = lookup(inst, b), &pc = lookup(inst, c);
          try {
            const double sum = angle_at(m, pb, pa, pc, tol) + angle_at(m, pa, pb, pc, tol) +
                               angle_at(m, pa, pc, pb, tol);
            return approx_eq(sum, kPi, tol);
          } catch (const Error& e) {
            if (e.code() == ErrorCode::DegenerateAngle) return false;
            throw;
          }
        } else {
          return false;
        }
      },
      f);
}

std::string describe_values(ModelId m, const Instance& inst, const Fact& f) {
  std::ostringstream out;
  out << std::setprecision(12);
  auto ang = [&](const Angle& a) {
    const auto v = ang_measure(m, inst, a, ToleranceProfile::defaults(m));
    out << to_string(a) << " = ";
    if (v)
      out << *v;
    else
      out << "undefined";
  };
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SegEq> || std::is_same_v<T, SegLt>) {
          out << to_string(x.lhs) << " = " << seg_len(m, inst, x.lhs) << ", " << to_string(x.rhs)
              << " = " << seg_len(m, inst, x.rhs);
        } else if constexpr (std::is_same_v<T, AngEq> || std::is_same_v<T, AngLt>) {
          ang(x.lhs);
          out << ", ";
          ang(x.rhs);
        } else if constexpr (std::is_same_v<T, Between>) {
          const auto ad = additivity(m, lookup(inst, x.outer_a), lookup(inst, x.mid),
                                     lookup(inst, x.outer_b));
          out << "parts " << ad.am << " + " << ad.mb << " = " << ad.am + ad.mb << ", whole "
              << ad.ab;
        } else if constexpr (std::is_same_v<T, NonCollinear>) {
          const auto& [a, b, c] = x.points;
          const MPoint &pa = lookup(inst, a), &pb = lookup(inst, b), &pc = lookup(inst, c);
          out << "sides " << dist(m, pa, pb) << ", " << dist(m, pb, pc) << ", " << dist(m, pa, pc);
          if (dist(m, pa, pb) > 0 && dist(m, pb, pc) > 0 && dist(m, pa, pc) > 0)
            out << "; heights " << line_gap(m, pa, pb, pc) << ", " << line_gap(m, pb, pa, pc) << ", "
                << line_gap(m, pc, pa, pb);
        } else if constexpr (std::is_same_v<T, AngleSumPi>) {
          const auto& [a, b, c] = x.points;
          const MPoint &pa = lookup(inst, a), &pb = lookup(inst, b), &pc = lookup(inst, c);
          const double sum =
              angle_at(m, pb, pa, pc) + angle_at(m, pa, pb, pc) + angle_at(m, pa, pc, pb);
          out << "angle sum " << sum << ", pi " << kPi << ", difference " << sum - kPi;
        } else {
          out << "absurd";
        }
      },
      f);
  return out.str();
}

MPoint along(ModelId m, const MPoint& a, const MPoint& b, double s) {
  require_domain(m, a);
  require_domain(m, b);
  const Frame f = frame_at(m, a);
  return point_at(f, heading_to(f, b), s);
}

MPoint offset(ModelId m, const MPoint& v, const MPoint& ref, double turn, double s) {
  require_domain(m, v);
  require_domain(m, ref);
  const Frame f = frame_at(m, v);
  return point_at(f, heading_to(f, ref) + turn, s);
}

MPoint shoot(ModelId m, const MPoint& v, double heading, double s) {
  require_domain(m, v);
  return point_at(frame_at(m, v), heading, s);
}

std::optional<MPoint> intersect_lines(ModelId m, const MPoint& p1, const MPoint& q1,
                                      const MPoint& p2, const MPoint& q2) {
  switch (m) {
    case ModelId::euclidean: {
      const double dx1 = q1.x - p1.x, dy1 = q1.y - p1.y;
      const double dx2 = q2.x - p2.x, dy2 = q2.y - p2.y;
      const double den = dx1 * dy2 - dy1 * dx2;
      if (std::abs(den) < 1e-14) return std::nullopt;
      const double t = ((p2.x - p1.x) * dy2 - (p2.y - p1.y) * dx2) / den;
      return MPoint{p1.x + t * dx1, p1.y + t * dy1, 0};
    }
    case ModelId::poincare: {
      // Geodesics are the hyperboloid's sections by planes through the
      // origin; two of them meet where the planes' common line is timelike.
      const V3 d = cross(cross(to_hyp(p1), to_hyp(q1)), cross(to_hyp(p2), to_hyp(q2)));
      const double l = ldot(d, d);
      if (!(l < 0)) return std::nullopt;
      V3 h = (1 / std::sqrt(-l)) * d;
      if (h.a < 0) h = -1.0 * h;
      const MPoint out = from_hyp(h);
      if (!in_domain(m, out)) return std::nullopt;
      return out;
    }
    case ModelId::sphere: {
      const V3 d = cross(cross(as_v3(p1), as_v3(q1)), cross(as_v3(p2), as_v3(q2)));
      const double n = norm(d);
      if (n < 1e-14) return std::nullopt;
      V3 u = (1 / n) * d;
      if (u.c < 0) u = -1.0 * u;
      return as_point(u);
    }
  }
  return std::nullopt;
}

MPoint random_point(ModelId m, Rng& rng) {
  return random_within(m, rng, sampling_scale(m, 1.0, 0.8, 0.4));
}

bool within_limits(ModelId m, const Instance& inst) {
  for (const auto& [id, p] : inst) {
    if (!in_domain(m, p)) return false;
    if (m == ModelId::poincare && std::hypot(p.x, p.y) > 0.9) return false;
    if (m == ModelId::sphere && !(p.z > 0)) return false;
  }
  if (m == ModelId::sphere)
    for (auto i = inst.begin(); i != inst.end(); ++i)
      for (auto j = std::next(i); j != inst.end(); ++j)
        if (dist(m, i->second, j->second) > 1.0) return false;
  return true;
}

namespace {

struct IsoscelesPattern {
  PointId apex, left, right;
  bool from_sides = true;  // equal legs; otherwise equal base angles
};

std::optional<IsoscelesPattern> find_isosceles(const TheoremStatement& st) {
  std::set<PointId> given(st.given.begin(), st.given.end());
  auto all_given = [&](const IsoscelesPattern& p) {
    return given.count(p.apex) && given.count(p.left) && given.count(p.right);
  };
  for (const auto& h : st.hypotheses) {
    if (const auto* e = std::get_if<SegEq>(&h.fact)) {
      const Segment &s = e->lhs, &t = e->rhs;
      for (const PointId& x : {s.first(), s.second()}) {
        if (!t.has(x)) continue;
        const PointId& y = s.first() == x ? s.second() : s.first();
        const PointId& z = t.first() == x ? t.second() : t.first();
        IsoscelesPattern p{x, y, z, true};
        if (y != z && all_given(p)) return p;
      }
    }
    if (const auto* e = std::get_if<AngEq>(&h.fact)) {
      const PointId& y = e->lhs.vertex();
      const PointId& z = e->rhs.vertex();
      if (y == z) continue;
      auto other = [](const Angle& a, const PointId& p) -> std::optional<PointId> {
        if (a.arm1() == p) return a.arm2();
        if (a.arm2() == p) return a.arm1();
        return std::nullopt;
      };
      const auto x1 = other(e->lhs, z);
      const auto x2 = other(e->rhs, y);
      if (x1 && x2 && *x1 == *x2) {
        IsoscelesPattern p{*x1, y, z, false};
        if (all_given(p)) return p;
      }
    }
  }
  return std::nullopt;
}

bool place_isosceles(ModelId m, Rng& rng, const IsoscelesPattern& pat, Instance& inst) {
  const double h = rng.uniform(0, 2 * kPi);
  if (pat.from_sides) {
    const MPoint apex = random_within(m, rng, sampling_scale(m, 1.0, 0.8, 0.1));
    const double leg = rng.uniform(sampling_scale(m, 0.2, 0.2, 0.1), sampling_scale(m, 2.0, 1.2, 0.4));
    const double opening = rng.uniform(0.3, kPi - 0.3);
    inst[pat.apex] = apex;
    inst[pat.left] = shoot(m, apex, h, leg);
    inst[pat.right] = shoot(m, apex, h + opening, leg);
    return true;
  }
  const MPoint left = random_within(m, rng, sampling_scale(m, 1.0, 0.6, 0.1));
  const double base = rng.uniform(sampling_scale(m, 0.2, 0.2, 0.1), sampling_scale(m, 2.0, 1.2, 0.5));
  const MPoint right = shoot(m, left, h, base);
  const double beta = rng.uniform(0.3, 1.4);
  const MPoint toward_l = offset(m, left, right, beta, base / 2);
  const MPoint toward_r = offset(m, right, left, -beta, base / 2);
  const auto apex = intersect_lines(m, left, toward_l, right, toward_r);
  if (!apex) return false;
  inst[pat.apex] = *apex;
  inst[pat.left] = left;
  inst[pat.right] = right;
  return true;
}

bool place_betweens(ModelId m, Rng& rng, const TheoremStatement& st, Instance& inst) {
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& h : st.hypotheses) {
      const auto* b = std::get_if<Between>(&h.fact);
      if (!b || inst.count(b->mid) || !inst.count(b->outer_a) || !inst.count(b->outer_b))
        continue;
      const MPoint& a = inst.at(b->outer_a);
      const MPoint& c = inst.at(b->outer_b);
      const double d = dist(m, a, c);
      inst[b->mid] = along(m, a, c, rng.uniform(0.1, 0.9) * d);
      progress = true;
    }
  }
  return true;
}

}  // namespace

Instance sample_instance(ModelId m, const TheoremStatement& statement, Rng& rng,
                         const ToleranceProfile& tol, const SampleLimits& limits) {
  const auto pattern = find_isosceles(statement);
  for (int attempt = 0; attempt < limits.max_attempts; ++attempt) {
    Instance inst;
    try {
      if (pattern && !place_isosceles(m, rng, *pattern, inst)) continue;
      place_betweens(m, rng, statement, inst);
      for (const auto& p : statement.given)
        if (!inst.count(p)) inst[p] = random_point(m, rng);
      if (!within_limits(m, inst)) continue;
      const bool ok = std::all_of(statement.hypotheses.begin(), statement.hypotheses.end(),
                                  [&](const Hypothesis& h) { return eval_fact(m, inst, h.fact, tol); });
      if (ok) return inst;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DomainError && e.code() != ErrorCode::DegenerateAngle) throw;
    }
  }
  throw Error(ErrorCode::SamplingFailed, statement.name + " in the " + std::string(model_name(m)) +
                                             " model after " + std::to_string(limits.max_attempts) +
                                             " attempts");
}

Instance sample_instance(ModelId m, const TheoremStatement& statement, std::uint64_t seed,
                         const SampleLimits& limits) {
  Rng rng(seed, 0);
  return sample_instance(m, statement, rng, ToleranceProfile::defaults(m), limits);
}

Instance realize_construction(ModelId m, const Instance& inst, const ConstructionKind& kind,
                              const PointId& fresh) {
  Instance out = inst;
  const MPoint p = std::visit(
      [&](const auto& k) -> MPoint {
        using T = std::decay_t<decltype(k)>;
        const double len = seg_len(m, inst, k.length);
        if constexpr (std::is_same_v<T, Extend>) {
          const MPoint& a = lookup(inst, k.from);
          const MPoint& b = lookup(inst, k.through);
          return along(m, a, b, dist(m, a, b) + len);
        } else {
          const MPoint& a = lookup(inst, k.from);
          const MPoint& b = lookup(inst, k.toward);
          if (!(len < dist(m, a, b)))
            throw Error(ErrorCode::DomainError,
                        "lay-off length exceeds " + to_string(canon_segment(k.from, k.toward)));
          return along(m, a, b, len);
        }
      },
      kind);
  if (!in_domain(m, p) || (m == ModelId::sphere && !(p.z > 0)))
    throw Error(ErrorCode::GeodesicOutOfDomain,
                fresh.name + " leaves the " + std::string(model_name(m)) + " domain");
  out[fresh] = p;
  return out;
}

namespace {

enum class Outcome { ok, failed, skip };

class TrialRunner {
 public:
  TrialRunner(ModelId m, Instance inst, const ToleranceProfile& tol, const LemmaRegistry& registry)
      : m_(m), inst_(std::move(inst)), tol_(tol), registry_(registry) {}

  Outcome steps(const std::vector<Step>& steps) {
    for (const auto& st : steps) {
      if (truncated_) return Outcome::ok;
      const Outcome o = step(st);
      if (o != Outcome::ok) return o;
    }
    return Outcome::ok;
  }

  Outcome check(const Fact& f, const std::string& label) {
    for (const auto& p : points_of(f))
      if (!inst_.count(p)) return Outcome::skip;
    if (eval_fact(m_, inst_, f, tol_)) return Outcome::ok;
    failure_ = Counterexample{0, inst_, to_string(f), describe_values(m_, inst_, f), label};
    return Outcome::failed;
  }

  const Instance& instance() const { return inst_; }
  const std::optional<Counterexample>& failure() const { return failure_; }
  bool truncated() const { return truncated_; }

 private:
  Outcome step(const Step& st) {
    return std::visit(
        [&](const auto& body) -> Outcome {
          using T = std::decay_t<decltype(body)>;
          if constexpr (std::is_same_v<T, RuleStep>) {
            for (const auto& c : body.claims)
              if (auto o = check(c, st.label); o != Outcome::ok) return o;
            return Outcome::ok;
          } else if constexpr (std::is_same_v<T, ConstructStep>) {
            try {
              inst_ = realize_construction(m_, inst_, body.kind, body.fresh);
            } catch (const Error& e) {
              if (e.code() == ErrorCode::GeodesicOutOfDomain || e.code() == ErrorCode::DomainError)
                return Outcome::skip;
              throw;
            }
            for (const auto& f : construction_facts(body))
              if (auto o = check(f, st.label); o != Outcome::ok) return o;
            return Outcome::ok;
          } else if constexpr (std::is_same_v<T, CasesStep>) {
            const double l = seg_len(m_, inst_, body.lhs);
            const double r = seg_len(m_, inst_, body.rhs);
            std::optional<CaseKind> kind;
            if (definitely_lt(l, r, tol_))
              kind = CaseKind::lt;
            else if (definitely_lt(r, l, tol_))
              kind = CaseKind::gt;
            else if (approx_eq(l, r, tol_))
              kind = CaseKind::eq;
            if (!kind) return Outcome::skip;
            for (const auto& b : body.branches)
              if (b.kind == *kind) return steps(b.steps);
            return Outcome::skip;
          } else {
            auto it = registry_.find(body.lemma);
            if (it == registry_.end() || !it->second.introduced.empty()) {
              // Existential points cannot be placed generically; stop here and
              // let the caller evaluate the conclusions only.
              truncated_ = true;
              return Outcome::ok;
            }
            std::map<PointId, PointId> mapping(body.point_map.begin(), body.point_map.end());
            for (const auto& c : it->second.conclusions)
              if (auto o = check(substitute(c, mapping), st.label); o != Outcome::ok) return o;
            return Outcome::ok;
          }
        },
        st.body);
  }

  static std::vector<Fact> construction_facts(const ConstructStep& c) {
    return std::visit(
        [&](const auto& k) -> std::vector<Fact> {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, Extend>)
            return {between(k.from, k.through, c.fresh),
                    seg_eq(canon_segment(k.through, c.fresh), k.length)};
          else
            return {between(k.from, c.fresh, k.toward),
                    seg_eq(canon_segment(k.from, c.fresh), k.length)};
        },
        c.kind);
  }

  ModelId m_;
  Instance inst_;
  ToleranceProfile tol_;
  const LemmaRegistry& registry_;
  std::optional<Counterexample> failure_;
  bool truncated_ = false;
};

}  // namespace

ModelReport model_check(ModelId m, const TheoremStatement& statement, const Proof* proof,
                        const LemmaRegistry& registry, const ModelCheckOptions& options) {
  ModelReport report;
  report.model = m;
  report.trials = std::max(0, options.trials);
  const ToleranceProfile tol = options.tol.value_or(ToleranceProfile::defaults(m));

  std::set<PointId> introduced(statement.introduced.begin(), statement.introduced.end());
  bool evaluable = true;
  for (const auto& c : statement.conclusions)
    for (const auto& p : points_of(c))
      if (introduced.count(p)) evaluable = false;
  if (!evaluable && !proof) {
    report.skipped = report.trials;
    report.note = "conclusions mention introduced points";
    return report;
  }

  for (int trial = 0; trial < report.trials; ++trial) {
    Rng rng(options.seed, static_cast<std::uint64_t>(trial));
    Instance inst;
    try {
      inst = sample_instance(m, statement, rng, tol, options.limits);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SamplingFailed) throw;
      ++report.skipped;
      continue;
    }
    TrialRunner run(m, std::move(inst), tol, registry);
    Outcome outcome = proof ? run.steps(proof->steps) : Outcome::ok;
    if (outcome == Outcome::ok)
      for (const auto& c : statement.conclusions) {
        outcome = run.check(c, "");
        if (outcome != Outcome::ok) break;
      }
    if (run.truncated())
      report.note = "steps after a lemma with introduced points are not evaluated";
    if (outcome == Outcome::skip) {
      ++report.skipped;
      continue;
    }
    ++report.trials_run;
    if (outcome == Outcome::failed) {
      ++report.failures;
      if (!report.first_counterexample) {
        report.first_counterexample = run.failure();
        report.first_counterexample->trial = trial;
      }
    }
  }
  return report;
}

}  // namespace pons::models
