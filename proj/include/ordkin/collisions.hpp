#pragma once

#include <optional>
#include <string_view>
#include <utility>

#include "ordkin/manifold.hpp"
#include "ordkin/mechanics.hpp"
#include "ordkin/rng.hpp"

namespace ordkin {

enum class CollisionRule { HardSphere, Bubbles, Calamitic3D, Calamitic2D, HeadTail2D };

/// "hard_sphere", "bubbles", "calamitic3d", "calamitic2d", "headtail2d".
CollisionRule rule_from_name(std::string_view name);
std::string_view rule_name(CollisionRule rule);

/// Manifold the rule is defined on. Hard spheres accept any manifold and
/// leave the order parameter and its conjugate untouched.
bool rule_compatible(CollisionRule rule, const ManifoldSpec& spec);
ManifoldSpec natural_manifold(CollisionRule rule);

struct CollisionGeometry {
  Vec3 n = Vec3::UnitX();   // unit normal from body 1 to body 2
  Vec3 r1 = Vec3::Zero();   // centre of mass to contact point
  Vec3 r2 = Vec3::Zero();
  int parity = 0;           // head-tail: 1 flips omega_1 before the rule
  double exchange_fraction = 0.0;
  double restitution_v = 1.0;
  double restitution_omega = 1.0;
};

struct CollisionOutcome {
  ParticleState s1;
  ParticleState s2;
  double impulse = 0.0;
};

std::pair<Vec3, Vec3> hard_sphere_collide(const Vec3& v1, const Vec3& v2, const Vec3& n);

/// Hard-sphere velocities with nu and sigma left unchanged.
CollisionOutcome hard_sphere_collide(const ParticleState& s1, const ParticleState& s2, const CollisionGeometry& geom);

CollisionOutcome bubble_collide(const ParticleState& s1, const ParticleState& s2, const CollisionGeometry& geom);

/// J = -(V.n) / (1/m1 + 1/m2 + (r1 x n).K1 (r1 x n) + (r2 x n).K2 (r2 x n)) with
/// K the (pseudo-)inverse inertia tensors. V is the relative velocity of the
/// contact points.
double rigid_impulse(const Vec3& v, const Vec3& n, const Vec3& r1, const Vec3& r2, const Mat3& inv_inertia1,
                     const Mat3& inv_inertia2, double m1, double m2);

/// Minimum-norm pseudo-inverse of the segment inertia I (Id - nu nu^T).
Mat3 segment_inertia_pinv(const Vec3& nu, double inertia);

CollisionOutcome calamitic_collide_3d(const ParticleState& s1, const ParticleState& s2, const CollisionGeometry& geom);
CollisionOutcome calamitic_collide_2d(const ParticleState& s1, const ParticleState& s2, const CollisionGeometry& geom);

/// First particle with omega_1 replaced by (-1)^parity omega_1.
ParticleState resolve_parity(const ParticleState& s1, int parity);
CollisionOutcome headtail_collide_2d(const ParticleState& s1, const ParticleState& s2, const CollisionGeometry& geom);

CollisionOutcome collide(CollisionRule rule, const ParticleState& s1, const ParticleState& s2,
                         const CollisionGeometry& geom);

/// The pre-collision pair the outcome is measured against: identical to
/// the input except for the head-tail parity flip.
std::pair<ParticleState, ParticleState> effective_pre_state(CollisionRule rule, const ParticleState& s1,
                                                            const ParticleState& s2, const CollisionGeometry& geom);

/// Momentum coordinates of a pair: both momenta (d components each) and,
/// for rod rules, both conjugate momenta in chart coefficients.
VecX momentum_coordinates(CollisionRule rule, const ManifoldSpec& spec, const ParticleState& s1,
                          const ParticleState& s2);
void set_momentum_coordinates(CollisionRule rule, const ManifoldSpec& spec, const VecX& z, ParticleState& s1,
                              ParticleState& s2);

/// Sphere radius used for hard-sphere and bubble contacts.
inline constexpr double kSphereRadius = 0.5;

/// Random contact geometry for a pair: n uniform on the unit sphere (circle
/// in the plane), rod offsets s nu with s uniform in [-1/2, 1/2], parity
/// uniform in {0, 1}. A missing exchange fraction is drawn uniformly.
template <class Rng>
CollisionGeometry sample_geometry(CollisionRule rule, const ManifoldSpec& spec, const ParticleState& s1,
                                  const ParticleState& s2, Rng& rng, std::optional<double> exchange = std::nullopt) {
  CollisionGeometry g;
  g.n = random_unit(rng, spec.space_dim);
  switch (rule) {
    case CollisionRule::HardSphere:
    case CollisionRule::Bubbles:
      g.r1 = kSphereRadius * g.n;
      g.r2 = -kSphereRadius * g.n;
      g.exchange_fraction = exchange ? *exchange : uniform01(rng);
      break;
    case CollisionRule::Calamitic3D:
    case CollisionRule::Calamitic2D:
    case CollisionRule::HeadTail2D:
      g.r1 = uniform(rng, -0.5, 0.5) * director(spec, s1.nu);
      g.r2 = uniform(rng, -0.5, 0.5) * director(spec, s2.nu);
      if (rule == CollisionRule::HeadTail2D) g.parity = static_cast<int>(rng() >> 63);
      break;
  }
  return g;
}

/// Moves the second particle so the contact points coincide: x2 = x1 + r1 - r2.
inline void place_contact(const ParticleState& s1, ParticleState& s2, const CollisionGeometry& geom) {
  s2.x = s1.x + geom.r1 - geom.r2;
}

}  // namespace ordkin
