#include "doctest.h"
#include "ordkin/collisions.hpp"
#include "ordkin/errors.hpp"
#include "support.hpp"

using namespace ordkin;

namespace {

const CollisionRule kRules[] = {CollisionRule::HardSphere, CollisionRule::Bubbles, CollisionRule::Calamitic3D,
                                CollisionRule::Calamitic2D, CollisionRule::HeadTail2D};

// Worst relative change of P, L, E over `events` random contacts.
InvariantDrift conservation_sweep(CollisionRule rule, int events, std::uint64_t seed) {
  const ManifoldSpec spec = natural_manifold(rule);
  Philox rng(seed);
  InvariantDrift worst;
  for (int i = 0; i < events; ++i) {
    ParticleState a = test::random_state(spec, rng);
    ParticleState b = test::random_state(spec, rng);
    const CollisionGeometry g = sample_geometry(rule, spec, a, b, rng);
    place_contact(a, b, g);
    const CollisionOutcome out = collide(rule, a, b, g);
    const auto [pa, pb] = effective_pre_state(rule, a, b, g);
    const std::vector<ParticleState> pre{pa, pb};
    const InvariantDrift d =
        relative_drift(invariants(pre, spec), invariants({out.s1, out.s2}, spec), invariant_magnitudes(pre, spec));
    worst.P = std::max(worst.P, d.P);
    worst.L = std::max(worst.L, d.L);
    worst.E = std::max(worst.E, d.E);
  }
  return worst;
}

Mat3 reflection(const Vec3& m) { return Mat3::Identity() - 2.0 * m * m.transpose(); }

}  // namespace

TEST_CASE("rule names and compatibility") {
  for (CollisionRule r : kRules) {
    CHECK(rule_from_name(rule_name(r)) == r);
    CHECK(rule_compatible(r, natural_manifold(r)));
    CHECK(rule_compatible(CollisionRule::HardSphere, natural_manifold(r)));
  }
  CHECK_FALSE(rule_compatible(CollisionRule::Calamitic3D, ManifoldSpec::of(ManifoldKind::ProjectiveRP1)));
  CHECK_FALSE(rule_compatible(CollisionRule::Bubbles, ManifoldSpec::of(ManifoldKind::CircleS1)));
  CHECK_THROWS_AS(rule_from_name("soft"), ConfigurationError);
}

TEST_CASE("hard sphere head-on exchange") {
  const auto [v1, v2] = hard_sphere_collide(Vec3(1, 0, 0), Vec3(-1, 0, 0), Vec3::UnitX());
  CHECK((v1 - Vec3(-1, 0, 0)).norm() < 1e-15);
  CHECK((v2 - Vec3(1, 0, 0)).norm() < 1e-15);
  const auto [w1, w2] = hard_sphere_collide(Vec3(0, 1, 0), Vec3(0, -1, 0), Vec3::UnitX());
  CHECK(w1 == Vec3(0, 1, 0));
  CHECK(w2 == Vec3(0, -1, 0));
}

TEST_CASE("bubble exchange examples") {
  ParticleState a, b;
  a.nu = OrderParameter::scalar(0.2);
  b.nu = OrderParameter::scalar(0.6);
  a.p = Vec3(1, 0, 0);
  CollisionGeometry g;
  g.exchange_fraction = 0.5;
  CollisionOutcome out = bubble_collide(a, b, g);
  CHECK(out.s1.nu.coordinate == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(out.s2.nu.coordinate == doctest::Approx(0.4).epsilon(1e-15));
  g.exchange_fraction = 0.0;
  out = bubble_collide(a, b, g);
  CHECK(out.s1.nu.coordinate == 0.2);
  CHECK(out.s2.nu.coordinate == 0.6);
  g.exchange_fraction = 1.0;
  out = bubble_collide(a, b, g);
  CHECK(out.s1.nu.coordinate == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(out.s2.nu.coordinate == doctest::Approx(0.2).epsilon(1e-15));
  g.exchange_fraction = 1.5;
  CHECK_THROWS_AS(bubble_collide(a, b, g), ConfigurationError);

  Philox rng(21);
  double worst = 0.0;
  for (int i = 0; i < 1000000; ++i) {
    a.nu = OrderParameter::scalar(uniform01(rng));
    b.nu = OrderParameter::scalar(uniform01(rng));
    g.exchange_fraction = uniform01(rng);
    out = bubble_collide(a, b, g);
    worst = std::max(worst, std::abs(out.s1.nu.coordinate + out.s2.nu.coordinate - a.nu.coordinate - b.nu.coordinate));
  }
  CHECK(worst <= 1e-15);
}

TEST_CASE("rigid impulse examples") {
  const Mat3 k = Mat3::Identity() * 3.0;
  CHECK(rigid_impulse(Vec3(0, 1, 0), Vec3::UnitX(), Vec3(0.1, 0.2, 0), Vec3(0, -0.3, 0.1), k, k, 1, 1) == 0.0);
  Philox rng(22);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 n = random_unit(rng, 3);
    const Vec3 v(standard_normal(rng), standard_normal(rng), standard_normal(rng));
    const double m = uniform(rng, 0.5, 2.0);
    const double j = rigid_impulse(v, n, uniform(rng, -1, 1) * n, uniform(rng, -1, 1) * n, k, k, m, m);
    CHECK(std::abs(j + m * v.dot(n) / 2.0) < 1e-12);
  }
}

TEST_CASE("rod collisions with sphere-like contact reduce to hard spheres") {
  Philox rng(23);
  const ManifoldSpec s2 = ManifoldSpec::of(ManifoldKind::SphereS2);
  const ManifoldSpec s1 = ManifoldSpec::of(ManifoldKind::CircleS1);
  for (int i = 0; i < 1000; ++i) {
    ParticleState a = test::random_state(s2, rng);
    ParticleState b = test::random_state(s2, rng);
    CollisionGeometry g;
    g.n = a.nu.direction;
    b.nu = OrderParameter::unit(g.n);
    set_angular_velocity(s2, b, Vec3(standard_normal(rng), standard_normal(rng), standard_normal(rng)));
    g.r1 = uniform(rng, -0.5, 0.5) * g.n;
    g.r2 = uniform(rng, -0.5, 0.5) * g.n;
    const CollisionOutcome out = calamitic_collide_3d(a, b, g);
    const auto [v1, v2] = hard_sphere_collide(a.velocity(), b.velocity(), g.n);
    CHECK(test::vrel(out.s1.velocity(), v1) < 1e-12);
    CHECK(test::vrel(out.s2.velocity(), v2) < 1e-12);
    CHECK((out.s1.sigma.vector - a.sigma.vector).norm() < 1e-12);
  }
  for (int i = 0; i < 1000; ++i) {
    const ParticleState a = test::random_state(s1, rng);
    const ParticleState b = test::random_state(s1, rng);
    CollisionGeometry g;
    g.n = random_unit(rng, 2);
    const CollisionOutcome out = calamitic_collide_2d(a, b, g);
    const auto [v1, v2] = hard_sphere_collide(a.velocity(), b.velocity(), g.n);
    CHECK(test::vrel(out.s1.velocity(), v1) < 1e-12);
    CHECK(test::vrel(out.s2.velocity(), v2) < 1e-12);
    CHECK(out.s1.sigma.scalar == a.sigma.scalar);
  }
}

TEST_CASE("zero impulse leaves the states unchanged") {
  ParticleState a, b;
  a.nu = OrderParameter::unit(Vec3::UnitZ());
  b.nu = OrderParameter::unit(Vec3::UnitY());
  a.p = Vec3(0, 1, 0);
  b.p = Vec3(0, 1, 0);
  CollisionGeometry g;
  g.n = Vec3::UnitX();
  const CollisionOutcome out = calamitic_collide_3d(a, b, g);
  CHECK(out.impulse == 0.0);
  CHECK(out.s1.p == a.p);
  CHECK(out.s2.p == b.p);
}

TEST_CASE("per-event conservation for every rule") {
  for (CollisionRule r : kRules) {
    const InvariantDrift d = conservation_sweep(r, 100000, 24);
    INFO(rule_name(r));
    CHECK(d.P < 1e-10);
    CHECK(d.L < 1e-10);
    CHECK(d.E < 1e-10);
  }
}

TEST_CASE("calamitic 3d mirror symmetry") {
  Philox rng(25);
  const ManifoldSpec s2 = ManifoldSpec::of(ManifoldKind::SphereS2);
  for (int i = 0; i < 500; ++i) {
    ParticleState a = test::random_state(s2, rng);
    ParticleState b = test::random_state(s2, rng);
    const CollisionGeometry g = sample_geometry(CollisionRule::Calamitic3D, s2, a, b, rng);
    place_contact(a, b, g);
    const Mat3 m = reflection(random_unit(rng, 3));
    auto reflect = [&](ParticleState s) {
      s.x = m * s.x;
      s.p = m * s.p;
      s.nu = OrderParameter::unit(m * s.nu.direction);
      s.sigma.vector = m * s.sigma.vector;
      return s;
    };
    CollisionGeometry h = g;
    h.n = m * g.n;
    h.r1 = m * g.r1;
    h.r2 = m * g.r2;
    const CollisionOutcome out = calamitic_collide_3d(a, b, g);
    const CollisionOutcome mirrored = calamitic_collide_3d(reflect(a), reflect(b), h);
    CHECK(test::vrel(mirrored.s1.p, m * out.s1.p) < 1e-12);
    CHECK(test::vrel(mirrored.s2.p, m * out.s2.p) < 1e-12);
    CHECK(test::vrel(mirrored.s1.sigma.vector, m * out.s1.sigma.vector) < 1e-12);
    CHECK(test::vrel(mirrored.s2.sigma.vector, m * out.s2.sigma.vector) < 1e-12);
  }
}

TEST_CASE("mirror-symmetric planar rods counter-rotate") {
  const ManifoldSpec s1 = ManifoldSpec::of(ManifoldKind::CircleS1);
  Philox rng(26);
  for (int i = 0; i < 200; ++i) {
    const double theta = uniform(rng, 0.0, kPi);
    const double s = uniform(rng, -0.5, 0.5);
    const double w = standard_normal(rng);
    ParticleState a, b;
    a.inertia = b.inertia = 1.0 / 12.0;
    a.p = Vec3(1.0 + uniform01(rng), standard_normal(rng), 0);
    b.p = Vec3(-a.p.x(), a.p.y(), 0);
    a.nu = OrderParameter::scalar(theta);
    b.nu = OrderParameter::scalar(kPi - theta);
    set_angular_velocity(s1, a, Vec3(0, 0, w));
    set_angular_velocity(s1, b, Vec3(0, 0, -w));
    CollisionGeometry g;
    g.n = Vec3::UnitX();
    g.r1 = s * director(s1, a.nu);
    g.r2 = s * director(s1, b.nu);
    place_contact(a, b, g);
    const CollisionOutcome out = calamitic_collide_2d(a, b, g);
    CHECK(std::abs(angular_velocity(s1, out.s1).z() + angular_velocity(s1, out.s2).z()) < 1e-12);
  }
}

TEST_CASE("head-tail parity") {
  const ManifoldSpec rp1 = ManifoldSpec::of(ManifoldKind::ProjectiveRP1);
  Philox rng(27);
  for (int i = 0; i < 200; ++i) {
    ParticleState a = test::random_state(rp1, rng);
    ParticleState b = test::random_state(rp1, rng);
    CollisionGeometry g = sample_geometry(CollisionRule::HeadTail2D, rp1, a, b, rng);
    place_contact(a, b, g);
    g.parity = 0;
    const CollisionOutcome h0 = headtail_collide_2d(a, b, g);
    const CollisionOutcome c0 = calamitic_collide_2d(a, b, g);
    CHECK(h0.s1.p == c0.s1.p);
    CHECK(h0.s1.sigma.scalar == c0.s1.sigma.scalar);
    CHECK(h0.s2.sigma.scalar == c0.s2.sigma.scalar);

    a.sigma.scalar = 0.0;
    const CollisionOutcome z0 = headtail_collide_2d(a, b, g);
    g.parity = 1;
    const CollisionOutcome z1 = headtail_collide_2d(a, b, g);
    CHECK(z0.s1.p == z1.s1.p);
    CHECK(z0.s1.sigma.scalar == z1.s1.sigma.scalar);
    CHECK(z0.s2.sigma.scalar == z1.s2.sigma.scalar);
  }
  ParticleState s;
  s.sigma.scalar = 0.7;
  CHECK(resolve_parity(s, 1).sigma.scalar == -0.7);
  CHECK(resolve_parity(s, 0).sigma.scalar == 0.7);
}

TEST_CASE("inelastic restitution is rejected") {
  ParticleState a, b;
  CollisionGeometry g;
  g.restitution_v = 0.9;
  CHECK_THROWS_AS(calamitic_collide_2d(a, b, g), ConfigurationError);
}

TEST_CASE("momentum coordinates round trip") {
  Philox rng(28);
  for (CollisionRule r : kRules) {
    const ManifoldSpec spec = natural_manifold(r);
    const ParticleState a = test::random_state(spec, rng);
    const ParticleState b = test::random_state(spec, rng);
    const VecX z = momentum_coordinates(r, spec, a, b);
    ParticleState c = a, d = b;
    c.p.setZero();
    d.p.setZero();
    set_momentum_coordinates(r, spec, z, c, d);
    CHECK((momentum_coordinates(r, spec, c, d) - z).norm() < 1e-15);
    CHECK((c.p - a.p).norm() == 0.0);
  }
}
