#include "ordkin/collisions.hpp"

#include <cmath>
#include <string>

#include "ordkin/errors.hpp"

namespace ordkin {

namespace {

void require_unit_normal(const Vec3& n) {
  if (std::abs(n.norm() - 1.0) > 1e-12) throw ConfigurationError("collision normal must be a unit vector");
}

void require_elastic(const CollisionGeometry& g) {
  if (g.restitution_v != 1.0 || g.restitution_omega != 1.0) {
    throw ConfigurationError("only elastic collisions (restitution 1) are supported");
  }
}

void require_planar(const Vec3& v, const char* what) {
  if (v.z() != 0.0) throw ConfigurationError(std::string(what) + " must lie in the plane (z = 0)");
}

}  // namespace

CollisionRule rule_from_name(std::string_view name) {
  if (name == "hard_sphere") return CollisionRule::HardSphere;
  if (name == "bubbles") return CollisionRule::Bubbles;
  if (name == "calamitic3d") return CollisionRule::Calamitic3D;
  if (name == "calamitic2d") return CollisionRule::Calamitic2D;
  if (name == "headtail2d") return CollisionRule::HeadTail2D;
  throw ConfigurationError("unknown collision rule '" + std::string(name) +
                           "' (expected hard_sphere, bubbles, calamitic3d, calamitic2d, headtail2d)");
}

std::string_view rule_name(CollisionRule rule) {
  switch (rule) {
    case CollisionRule::HardSphere: return "hard_sphere";
    case CollisionRule::Bubbles: return "bubbles";
    case CollisionRule::Calamitic3D: return "calamitic3d";
    case CollisionRule::Calamitic2D: return "calamitic2d";
    case CollisionRule::HeadTail2D: return "headtail2d";
  }
  return "?";
}

ManifoldSpec natural_manifold(CollisionRule rule) {
  switch (rule) {
    case CollisionRule::HardSphere:
    case CollisionRule::Bubbles: return ManifoldSpec::of(ManifoldKind::Interval01);
    case CollisionRule::Calamitic3D: return ManifoldSpec::of(ManifoldKind::SphereS2);
    case CollisionRule::Calamitic2D: return ManifoldSpec::of(ManifoldKind::CircleS1);
    case CollisionRule::HeadTail2D: return ManifoldSpec::of(ManifoldKind::ProjectiveRP1);
  }
  throw ConfigurationError("unknown collision rule");
}

bool rule_compatible(CollisionRule rule, const ManifoldSpec& spec) {
  if (rule == CollisionRule::HardSphere) return true;
  return natural_manifold(rule).kind == spec.kind;
}

std::pair<Vec3, Vec3> hard_sphere_collide(const Vec3& v1, const Vec3& v2, const Vec3& n) {
  require_unit_normal(n);
  const Vec3 dv = n * n.dot(v1 - v2);
  return {v1 - dv, v2 + dv};
}

CollisionOutcome hard_sphere_collide(const ParticleState& s1, const ParticleState& s2, const CollisionGeometry& geom) {
  require_elastic(geom);
  if (s1.mass != s2.mass) throw ConfigurationError("hard-sphere rule requires equal masses");
  const auto [v1, v2] = hard_sphere_collide(s1.velocity(), s2.velocity(), geom.n);
  CollisionOutcome out{s1, s2, 0.0};
  out.s1.p = s1.mass * v1;
  out.s2.p = s2.mass * v2;
  out.impulse = -0.5 * s1.mass * geom.n.dot(s1.velocity() - s2.velocity());
  return out;
}

CollisionOutcome bubble_collide(const ParticleState& s1, const ParticleState& s2, const CollisionGeometry& geom) {
  const double q = geom.exchange_fraction;
  if (!(q >= 0.0 && q <= 1.0)) throw ConfigurationError("exchange_fraction must lie in [0, 1]");
  CollisionOutcome out = hard_sphere_collide(s1, s2, geom);
  const double a = s1.nu.coordinate, b = s2.nu.coordinate;
  const double moved = q * (b - a);
  out.s1.nu.coordinate = a + moved;
  out.s2.nu.coordinate = b - moved;
  return out;
}

namespace {

double impulse(double normal_velocity, double denom) {
  if (!(denom > 0.0) || !std::isfinite(denom)) {
    throw DegenerateGeometryError("impulse denominator is not positive");
  }
  return -normal_velocity / denom;
}

}  // namespace

double rigid_impulse(const Vec3& v, const Vec3& n, const Vec3& r1, const Vec3& r2, const Mat3& inv_inertia1,
                     const Mat3& inv_inertia2, double m1, double m2) {
  const Vec3 a1 = r1.cross(n), a2 = r2.cross(n);
  return impulse(v.dot(n), 1.0 / m1 + 1.0 / m2 + a1.dot(inv_inertia1 * a1) + a2.dot(inv_inertia2 * a2));
}

Mat3 segment_inertia_pinv(const Vec3& nu, double inertia) {
  return (Mat3::Identity() - nu * nu.transpose()) / inertia;
}

CollisionOutcome calamitic_collide_3d(const ParticleState& s1, const ParticleState& s2, const CollisionGeometry& geom) {
  require_elastic(geom);
  require_unit_normal(geom.n);
  // With omega = nu x sigma / I the spin part of the normal contact velocity
  // is sigma.b / I for b = (r x n) x nu, and the pseudo-inverse kick is
  // 2J b on sigma. Using b in all three places keeps the update exactly
  // energy consistent in floating point.
  const Vec3 b1 = geom.r1.cross(geom.n).cross(s1.nu.direction);
  const Vec3 b2 = geom.r2.cross(geom.n).cross(s2.nu.direction);
  const double vn = (s1.velocity() - s2.velocity()).dot(geom.n) + s1.sigma.vector.dot(b1) / s1.inertia -
                    s2.sigma.vector.dot(b2) / s2.inertia;
  const double j =
      impulse(vn, 1.0 / s1.mass + 1.0 / s2.mass + b1.squaredNorm() / s1.inertia + b2.squaredNorm() / s2.inertia);
  CollisionOutcome out{s1, s2, j};
  out.s1.p = s1.p + 2.0 * j * geom.n;
  out.s2.p = s2.p - 2.0 * j * geom.n;
  out.s1.sigma.vector = s1.sigma.vector + 2.0 * j * b1;
  out.s2.sigma.vector = s2.sigma.vector - 2.0 * j * b2;
  return out;
}

CollisionOutcome calamitic_collide_2d(const ParticleState& s1, const ParticleState& s2, const CollisionGeometry& geom) {
  require_elastic(geom);
  require_unit_normal(geom.n);
  require_planar(geom.n, "normal");
  require_planar(geom.r1, "contact offset r1");
  require_planar(geom.r2, "contact offset r2");
  const double w1 = s1.sigma.scalar / s1.inertia, w2 = s2.sigma.scalar / s2.inertia;
  const Vec3 z = Vec3::UnitZ();
  const Vec3 vc = s1.velocity() + w1 * z.cross(geom.r1) - s2.velocity() - w2 * z.cross(geom.r2);
  const double a1 = cross_z(geom.r1, geom.n), a2 = cross_z(geom.r2, geom.n);
  const double j =
      impulse(vc.dot(geom.n), 1.0 / s1.mass + 1.0 / s2.mass + a1 * a1 / s1.inertia + a2 * a2 / s2.inertia);
  CollisionOutcome out{s1, s2, j};
  out.s1.p = s1.p + 2.0 * j * geom.n;
  out.s2.p = s2.p - 2.0 * j * geom.n;
  out.s1.sigma.scalar = s1.sigma.scalar + 2.0 * j * a1;
  out.s2.sigma.scalar = s2.sigma.scalar - 2.0 * j * a2;
  return out;
}

ParticleState resolve_parity(const ParticleState& s1, int parity) {
  if (parity != 0 && parity != 1) throw ConfigurationError("parity must be 0 or 1");
  ParticleState s = s1;
  if (parity == 1) s.sigma.scalar = -s.sigma.scalar;
  return s;
}

CollisionOutcome headtail_collide_2d(const ParticleState& s1, const ParticleState& s2, const CollisionGeometry& geom) {
  return calamitic_collide_2d(resolve_parity(s1, geom.parity), s2, geom);
}

CollisionOutcome collide(CollisionRule rule, const ParticleState& s1, const ParticleState& s2,
                         const CollisionGeometry& geom) {
  switch (rule) {
    case CollisionRule::HardSphere: return hard_sphere_collide(s1, s2, geom);
    case CollisionRule::Bubbles: return bubble_collide(s1, s2, geom);
    case CollisionRule::Calamitic3D: return calamitic_collide_3d(s1, s2, geom);
    case CollisionRule::Calamitic2D: return calamitic_collide_2d(s1, s2, geom);
    case CollisionRule::HeadTail2D: return headtail_collide_2d(s1, s2, geom);
  }
  throw ConfigurationError("unknown collision rule");
}

std::pair<ParticleState, ParticleState> effective_pre_state(CollisionRule rule, const ParticleState& s1,
                                                            const ParticleState& s2, const CollisionGeometry& geom) {
  if (rule == CollisionRule::HeadTail2D) return {resolve_parity(s1, geom.parity), s2};
  return {s1, s2};
}

namespace {

bool carries_conjugate(CollisionRule rule) {
  return rule == CollisionRule::Calamitic3D || rule == CollisionRule::Calamitic2D || rule == CollisionRule::HeadTail2D;
}

}  // namespace

VecX momentum_coordinates(CollisionRule rule, const ManifoldSpec& spec, const ParticleState& s1,
                          const ParticleState& s2) {
  const int d = spec.space_dim;
  const int c = carries_conjugate(rule) ? spec.chart_dim : 0;
  VecX z(2 * d + 2 * c);
  z.head(d) = s1.p.head(d);
  z.segment(d, d) = s2.p.head(d);
  if (c > 0) {
    z.segment(2 * d, c) = order_rate(spec, s1) * s1.inertia;
    z.segment(2 * d + c, c) = order_rate(spec, s2) * s2.inertia;
  }
  return z;
}

void set_momentum_coordinates(CollisionRule rule, const ManifoldSpec& spec, const VecX& z, ParticleState& s1,
                              ParticleState& s2) {
  const int d = spec.space_dim;
  const int c = carries_conjugate(rule) ? spec.chart_dim : 0;
  if (z.size() != 2 * d + 2 * c) throw ConfigurationError("momentum coordinate vector has the wrong size");
  s1.p.head(d) = z.head(d);
  s2.p.head(d) = z.segment(d, d);
  if (c > 0) {
    set_order_rate(spec, s1, z.segment(2 * d, c) / s1.inertia);
    set_order_rate(spec, s2, z.segment(2 * d + c, c) / s2.inertia);
  }
}

}  // namespace ordkin
