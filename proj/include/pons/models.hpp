#pragma once

// Numeric semantics in three constant-curvature models: the Euclidean plane,
// the Poincare disk (geodesic work is done on the hyperboloid), and the unit
// sphere restricted to the open upper hemisphere.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "pons/geom.hpp"
#include "pons/kernel.hpp"

namespace pons::models {

enum class ModelId { euclidean, poincare, sphere };

inline constexpr std::array<ModelId, 3> kAllModels{ModelId::euclidean, ModelId::poincare,
                                                   ModelId::sphere};

std::string_view model_name(ModelId m);
std::optional<ModelId> model_by_name(std::string_view name);

// euclidean and poincare use (x, y); sphere uses the unit vector (x, y, z).
struct MPoint {
  double x = 0, y = 0, z = 0;
  bool operator==(const MPoint&) const = default;
};

bool in_domain(ModelId m, const MPoint& p);

struct ToleranceProfile {
  double eq_tol = 1e-9;
  double lt_margin = 1e-8;

  static ToleranceProfile defaults(ModelId m);
  static ToleranceProfile with_eq(double eq_tol) { return {eq_tol, 10 * eq_tol}; }
};

// |x - y| <= eq_tol * (1 + max(|x|, |y|))
bool approx_eq(double x, double y, const ToleranceProfile& tol);
// x < y - lt_margin * (1 + max(|x|, |y|))
bool definitely_lt(double x, double y, const ToleranceProfile& tol);

using Instance = std::map<PointId, MPoint>;

// Deterministic generator; Rng(seed, stream) gives independent per-trial
// substreams. uniform() is built from raw bits so results do not depend on
// the standard library's distributions.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream = 0);
  double uniform(double lo, double hi);
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

double dist(ModelId m, const MPoint& p, const MPoint& q);

// Angle at v, from the model's law of cosines. Throws DegenerateAngle when
// an arm is shorter than tol.eq_tol.
double angle_at(ModelId m, const MPoint& a, const MPoint& v, const MPoint& b,
                const ToleranceProfile& tol);
double angle_at(ModelId m, const MPoint& a, const MPoint& v, const MPoint& b);

// Equalities hold within eq_tol, strict orders by lt_margin, Between by
// additivity of distances. NonCollinear needs every side and every
// point-to-line height above lt_margin. Facts whose measures are undefined
// on the instance (a collapsed angle) evaluate to false. Throws MissingPoint.
bool eval_fact(ModelId m, const Instance& inst, const Fact& f, const ToleranceProfile& tol);

// Measured values behind a fact, for counterexample messages.
std::string describe_values(ModelId m, const Instance& inst, const Fact& f);

// Geodesic helpers.
// Point at intrinsic distance s from a, on the geodesic from a toward b.
MPoint along(ModelId m, const MPoint& a, const MPoint& b, double s);
// Point at distance s from v on the geodesic leaving v at signed angle
// `turn` from the direction toward ref.
MPoint offset(ModelId m, const MPoint& v, const MPoint& ref, double turn, double s);
// Point at distance s from v with absolute heading in v's tangent frame.
MPoint shoot(ModelId m, const MPoint& v, double heading, double s);
// Common point of the geodesic lines p1q1 and p2q2, if they meet (on the
// sphere the one in the upper hemisphere).
std::optional<MPoint> intersect_lines(ModelId m, const MPoint& p1, const MPoint& q1,
                                      const MPoint& p2, const MPoint& q2);

// Random point inside the sampling region: euclidean [-1,1]^2, poincare
// hyperbolic radius <= 0.8 around the origin, sphere within 0.4 rad of the
// north pole.
MPoint random_point(ModelId m, Rng& rng);

// Instance-wide sampling limits: poincare |p| <= 0.9, sphere pairwise
// distance <= 1.0 rad inside the open upper hemisphere.
bool within_limits(ModelId m, const Instance& inst);

struct SampleLimits {
  int max_attempts = 1000;
};

// Isosceles-looking hypotheses are sampled constructively (apex plus two
// equal arms, or a base plus two equal base angles); Between hypotheses put
// the middle point on the geodesic; other points are random. Every candidate
// is verified with eval_fact. Throws SamplingFailed after max_attempts.
Instance sample_instance(ModelId m, const TheoremStatement& statement, Rng& rng,
                         const ToleranceProfile& tol, const SampleLimits& limits = {});
Instance sample_instance(ModelId m, const TheoremStatement& statement, std::uint64_t seed,
                         const SampleLimits& limits = {});

// Adds `fresh` to the instance. Throws GeodesicOutOfDomain when the point
// leaves the model's domain, DomainError when a lay-off is longer than its
// target segment, MissingPoint for unknown inputs.
Instance realize_construction(ModelId m, const Instance& inst, const ConstructionKind& kind,
                              const PointId& fresh);

struct Counterexample {
  int trial = 0;
  Instance instance;
  std::string fact;
  std::string values;
  std::string step;  // label of the failing step, empty for a conclusion
  bool operator==(const Counterexample&) const = default;
};

struct ModelReport {
  ModelId model = ModelId::euclidean;
  int trials = 0;      // requested
  int trials_run = 0;  // sampled and fully evaluated
  int skipped = 0;     // sampling or realization failed, or a case was numerically ambiguous
  int failures = 0;
  std::optional<Counterexample> first_counterexample;
  std::string note;
};

struct ModelCheckOptions {
  int trials = 1000;
  std::uint64_t seed = 42;
  std::optional<ToleranceProfile> tol;  // model default when unset
  SampleLimits limits;
};

// With a proof, every fact derived along the numerically true branch is
// evaluated, then the conclusions; without one, only the conclusions.
ModelReport model_check(ModelId m, const TheoremStatement& statement, const Proof* proof,
                        const LemmaRegistry& registry, const ModelCheckOptions& options);

}  // namespace pons::models
