#pragma once

#include <cmath>
#include <cstdint>

#include "ordkin/collisions.hpp"
#include "ordkin/manifold.hpp"
#include "ordkin/mechanics.hpp"
#include "ordkin/rng.hpp"

namespace ordkin::test {

inline OrderParameter random_point(const ManifoldSpec& spec, Philox& rng) {
  switch (spec.kind) {
    case ManifoldKind::Interval01:
      return OrderParameter::scalar(uniform(rng, 0.05, 0.95));
    case ManifoldKind::CircleS1:
      return OrderParameter::scalar(uniform(rng, 0.0, kTwoPi));
    case ManifoldKind::ProjectiveRP1:
      return OrderParameter::scalar(uniform(rng, 0.0, kPi));
    case ManifoldKind::SphereS2:
      return OrderParameter::unit(random_unit(rng, 3));
  }
  return {};
}

/// Random particle with O(1) momenta and spin on `spec`.
inline ParticleState random_state(const ManifoldSpec& spec, Philox& rng, double mass = 1.0,
                                  double inertia = 1.0 / 12.0) {
  ParticleState s;
  s.mass = mass;
  s.inertia = inertia;
  s.nu = random_point(spec, rng);
  for (int k = 0; k < spec.space_dim; ++k) {
    s.x(k) = standard_normal(rng);
    s.p(k) = standard_normal(rng);
  }
  if (spec.transitive()) {
    Vec3 omega = Vec3::Zero();
    if (spec.space_dim == 2) {
      omega.z() = 3.0 * standard_normal(rng);
    } else {
      omega = 3.0 * Vec3(standard_normal(rng), standard_normal(rng), standard_normal(rng));
    }
    set_angular_velocity(spec, s, omega);
  }
  return s;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

inline double vrel(const Vec3& a, const Vec3& b) { return (a - b).norm() / std::max({1.0, a.norm(), b.norm()}); }

}  // namespace ordkin::test
