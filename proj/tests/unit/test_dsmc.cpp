#include "doctest.h"
#include "ordkin/dsmc.hpp"
#include "ordkin/errors.hpp"
#include "support.hpp"

using namespace ordkin;

namespace {

bool same_particles(const Ensemble& a, const Ensemble& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const ParticleState &s = a.particles[i], &t = b.particles[i];
    if (s.p != t.p || s.nu.coordinate != t.nu.coordinate || s.nu.direction != t.nu.direction ||
        s.sigma.scalar != t.sigma.scalar || s.sigma.vector != t.sigma.vector)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("zero time step leaves the ensemble unchanged") {
  const ManifoldSpec s1 = ManifoldSpec::of(ManifoldKind::CircleS1);
  const Ensemble ens = sample_maxwellian({}, s1, 2000, 51, 1.0, 1.0 / 12.0);
  KernelSpec k;
  k.rule = CollisionRule::Calamitic2D;
  DsmcSolver solver(ens, k, 1);
  solver.step(0.0);
  CHECK(same_particles(solver.ensemble(), ens));
  CHECK(solver.counters().accepted == 0);
}

TEST_CASE("a cold ensemble never collides") {
  const ManifoldSpec s1 = ManifoldSpec::of(ManifoldKind::CircleS1);
  Philox rng(52);
  std::vector<ParticleState> ps(2000);
  for (auto& s : ps) {
    s.p = Vec3(0.3, -0.2, 0);
    s.inertia = 1.0 / 12.0;
    s.nu = OrderParameter::scalar(uniform(rng, 0.0, kTwoPi));
  }
  KernelSpec k;
  k.rule = CollisionRule::Calamitic2D;
  DsmcSolver solver(Ensemble::create(s1, ps), k, 2);
  solver.run(0.1, 50);
  CHECK(solver.counters().candidates > 0);
  CHECK(solver.counters().accepted == 0);
}

TEST_CASE("hard sphere collision counts match the analytic rate") {
  // Per pair and unit time the expected number of accepted events is
  // E[max(g.n, 0)] = E|g| / 4 in 3D and E|g| / pi in 2D. With velocity
  // variance s^2 per component both equal s / sqrt(pi).
  for (ManifoldKind kind : {ManifoldKind::Interval01, ManifoldKind::CircleS1}) {
    const ManifoldSpec spec = ManifoldSpec::of(kind);
    const long n = 20000, steps = 50;
    const double dt = 0.02, s = 1.0;
    const Ensemble ens = sample_maxwellian({}, spec, n, 53, 1.0, 1.0);
    KernelSpec k;
    DsmcSolver solver(ens, k, 54);
    solver.run(dt, steps);
    const double per_pair = s / std::sqrt(kPi);
    const double exposure = static_cast<double>(steps) * (n / 2) * dt;
    const double expected = exposure * per_pair;
    // Poisson noise plus the spread of the sampled ensemble's mean pair rate.
    const double geometric = spec.space_dim == 3 ? 0.25 : 1.0 / kPi;
    Philox rng(55);
    double m1 = 0.0, m2 = 0.0;
    const int pairs = 100000;
    for (int i = 0; i < pairs; ++i) {
      const auto a = static_cast<std::size_t>(rng() % n), b = static_cast<std::size_t>(rng() % n);
      const double r = geometric * (ens.particles[a].p - ens.particles[b].p).norm();
      m1 += r;
      m2 += r * r;
    }
    m1 /= pairs;
    const double var_rate = m2 / pairs - m1 * m1;
    const double sigma = std::sqrt(expected + exposure * exposure * 2.0 * var_rate / static_cast<double>(n));
    const double observed = static_cast<double>(solver.counters().accepted);
    MESSAGE(spec.name() << " expected " << expected << " observed " << observed << " sigma " << sigma);
    CHECK(std::abs(observed - expected) < 3.0 * sigma);
    CHECK(solver.counters().majorant_violations == 0);
  }
}

TEST_CASE("maxwellian sampling moments") {
  const ManifoldSpec s1 = ManifoldSpec::of(ManifoldKind::CircleS1);
  const long n = 100000;
  const double m = 2.0;
  MaxwellianParams mp;
  mp.d = -0.5;
  Moments mo = moments(sample_maxwellian(mp, s1, n, 56, m, 0.5));
  const double var = -m / (2.0 * mp.d);
  CHECK(std::abs(mo.mean_p.x()) < 3.0 * std::sqrt(var / n));
  CHECK(std::abs(mo.mean_p.y()) < 3.0 * std::sqrt(var / n));
  CHECK(std::abs(mo.var_p.x() - var) < 3.0 * var * std::sqrt(2.0 / n));
  CHECK(std::abs(mo.var_p.y() - var) < 3.0 * var * std::sqrt(2.0 / n));

  mp.b = Vec3(0.4, -0.2, 0);
  mo = moments(sample_maxwellian(mp, s1, n, 57, m, 0.5));
  CHECK(std::abs(mo.mean_p.x() - (-m * 0.4 / (2.0 * mp.d))) < 3.0 * std::sqrt(var / n));
  CHECK(std::abs(mo.mean_p.y() - (-m * -0.2 / (2.0 * mp.d))) < 3.0 * std::sqrt(var / n));

  mp.d = 0.0;
  CHECK_THROWS_AS(sample_maxwellian(mp, s1, 10, 1), ConfigurationError);
}

TEST_CASE("printed planar contact velocity") {
  const ManifoldSpec s1 = ManifoldSpec::of(ManifoldKind::CircleS1);
  ParticleState a, b;
  a.inertia = b.inertia = 1.0;
  a.nu = OrderParameter::scalar(kPi / 2);
  set_angular_velocity(s1, a, Vec3(0, 0, 1));
  const Vec3 g = contact_velocity(s1, a, b, Vec3(0, 1, 0), Vec3::Zero(), ContactConvention::Printed);
  CHECK((g - Vec3(1, 0, 0)).norm() < 1e-15);
  const Vec3 rigid = contact_velocity(s1, a, b, Vec3(0, 1, 0), Vec3::Zero(), ContactConvention::RigidBody);
  CHECK((rigid - Vec3(-1, 0, 0)).norm() < 1e-15);
  b.p = a.p;
  a.sigma.scalar = 0.0;
  CHECK(contact_velocity(s1, a, b, Vec3(0, 1, 0), Vec3(1, 0, 0), ContactConvention::Printed).norm() == 0.0);
}

TEST_CASE("spatial contact velocity reduces to the planar form") {
  const ManifoldSpec s1 = ManifoldSpec::of(ManifoldKind::CircleS1);
  const ManifoldSpec s2 = ManifoldSpec::of(ManifoldKind::SphereS2);
  Philox rng(58);
  for (ContactConvention c : {ContactConvention::Printed, ContactConvention::RigidBody}) {
    for (int i = 0; i < 1000; ++i) {
      ParticleState a = test::random_state(s1, rng), b = test::random_state(s1, rng);
      ParticleState a3 = a, b3 = b;
      a3.nu = OrderParameter::unit(director(s1, a.nu));
      b3.nu = OrderParameter::unit(director(s1, b.nu));
      set_angular_velocity(s2, a3, angular_velocity(s1, a));
      set_angular_velocity(s2, b3, angular_velocity(s1, b));
      const Vec3 r1 = uniform(rng, -0.5, 0.5) * a3.nu.direction;
      const Vec3 r2 = uniform(rng, -0.5, 0.5) * b3.nu.direction;
      CHECK(test::vrel(contact_velocity(s1, a, b, r1, r2, c), contact_velocity(s2, a3, b3, r1, r2, c)) < 1e-12);
    }
  }
}

TEST_CASE("kernel rate edge cases") {
  const ManifoldSpec interval = ManifoldSpec::of(ManifoldKind::Interval01);
  ParticleState a, b;
  a.p = Vec3(-1, 0, 0);
  CollisionGeometry g;
  g.n = Vec3::UnitX();
  KernelSpec k;
  CHECK(kernel_rate(k, interval, a, b, g) == 0.0);
  a.p = Vec3(1, 0, 0);
  CHECK(kernel_rate(k, interval, a, b, g) == doctest::Approx(1.0));
  k.rule = CollisionRule::Bubbles;
  k.prefactor = PrefactorKind::BubbleMean;
  a.nu = b.nu = OrderParameter::scalar(0.0);
  CHECK(kernel_rate(k, interval, a, b, g) == 0.0);
  a.nu = OrderParameter::scalar(0.5);
  b.nu = OrderParameter::scalar(0.3);
  CHECK(kernel_rate(k, interval, a, b, g) == doctest::Approx(0.4));
  CHECK(prefactor_from_name(prefactor_name(PrefactorKind::BubbleMean)) == PrefactorKind::BubbleMean);
}

TEST_CASE("solver conserves P and E exactly and L through the orbital ledger") {
  for (CollisionRule rule : {CollisionRule::Calamitic2D, CollisionRule::Calamitic3D, CollisionRule::Bubbles}) {
    const ManifoldSpec spec = natural_manifold(rule);
    const Ensemble ens = sample_maxwellian({}, spec, 4000, 59, 1.0, 1.0 / 12.0);
    KernelSpec k;
    k.rule = rule;
    DsmcSolver solver(ens, k, 60);
    const InvariantSet before = solver.invariants();
    const InvariantSet mag = invariant_magnitudes(ens.particles, spec);
    solver.run(0.01, 100);
    INFO(rule_name(rule));
    CHECK(solver.counters().accepted > 1000);
    const InvariantDrift d = relative_drift(before, solver.invariants(), mag);
    CHECK(d.P < 1e-12);
    CHECK(d.E < 1e-12);
    CHECK(d.L < 1e-10);
  }
}

TEST_CASE("results do not depend on the thread count") {
  const ManifoldSpec s1 = ManifoldSpec::of(ManifoldKind::CircleS1);
  const Ensemble ens = sample_maxwellian({}, s1, 5000, 61, 1.0, 1.0 / 12.0);
  KernelSpec k;
  k.rule = CollisionRule::Calamitic2D;
  DsmcSolver one(ens, k, 62, 1), four(ens, k, 62, 4);
  one.run(0.01, 40);
  four.run(0.01, 40);
  CHECK(same_particles(one.ensemble(), four.ensemble()));
  CHECK(one.counters().accepted == four.counters().accepted);
}

TEST_CASE("oversized time steps are rejected") {
  const ManifoldSpec s1 = ManifoldSpec::of(ManifoldKind::CircleS1);
  KernelSpec k;
  k.rule = CollisionRule::Calamitic2D;
  k.majorant = 10.0;
  DsmcSolver solver(sample_maxwellian({}, s1, 100, 63, 1.0, 1.0 / 12.0), k, 1);
  CHECK_THROWS_AS(solver.step(0.1), ConfigurationError);
}
