#include "doctest.h"
#include "ordkin/errors.hpp"
#include "ordkin/manifold.hpp"
#include "ordkin/rotation.hpp"
#include "support.hpp"

using namespace ordkin;

namespace {

const ManifoldKind kAllKinds[] = {ManifoldKind::Interval01, ManifoldKind::CircleS1, ManifoldKind::ProjectiveRP1,
                                  ManifoldKind::SphereS2};

Rotation random_algebra(Philox& rng, int dim) {
  if (dim == 2) return Rotation::planar(standard_normal(rng));
  return Rotation::spatial(Vec3(standard_normal(rng), standard_normal(rng), standard_normal(rng)));
}

}  // namespace

TEST_CASE("rodrigues agrees with the matrix exponential and its log") {
  Philox rng(3);
  for (int i = 0; i < 200; ++i) {
    const Vec3 q = 1.5 * Vec3(standard_normal(rng), standard_normal(rng), standard_normal(rng)) / 3.0;
    const Mat3 r = rodrigues(q);
    const Mat3 reference = Eigen::AngleAxisd(q.norm(), q.normalized()).toRotationMatrix();
    CHECK((r - reference).norm() < 1e-12);
    CHECK((r * r.transpose() - Mat3::Identity()).norm() < 1e-12);
    CHECK(r.determinant() == doctest::Approx(1.0).epsilon(1e-12));
    if (q.norm() < kPi) CHECK((rotation_log(r) - q).norm() < 1e-10);
  }
  CHECK((rodrigues(Vec3::Zero()) - Mat3::Identity()).norm() == 0.0);
}

TEST_CASE("rotation composition and inverse") {
  Philox rng(4);
  for (int dim : {2, 3}) {
    for (int i = 0; i < 100; ++i) {
      const Rotation a = random_rotation(rng, dim);
      const Rotation b = random_rotation(rng, dim);
      CHECK((a.compose(b).matrix() - a.matrix() * b.matrix()).norm() < 1e-12);
      CHECK((a.compose(a.inverse()).matrix() - Mat3::Identity()).norm() < 1e-12);
    }
  }
  CHECK(Rotation::planar(kPi / 2).apply(Vec3::UnitX()).isApprox(Vec3::UnitY(), 1e-15));
}

TEST_CASE("manifold names and chart dimensions") {
  const int expected[] = {1, 1, 1, 2};
  int i = 0;
  for (ManifoldKind k : kAllKinds) {
    const ManifoldSpec spec = ManifoldSpec::of(k);
    CHECK(spec.chart_dim == expected[i++]);
    CHECK(ManifoldSpec::from_name(spec.name()).kind == k);
  }
  CHECK_THROWS_AS(ManifoldSpec::from_name("torus"), ConfigurationError);
}

TEST_CASE("act examples") {
  const ManifoldSpec s2 = ManifoldSpec::of(ManifoldKind::SphereS2);
  CHECK(act(s2, Rotation::identity(3), OrderParameter::unit(Vec3::UnitZ())).direction == Vec3::UnitZ());

  const ManifoldSpec s1 = ManifoldSpec::of(ManifoldKind::CircleS1);
  CHECK(act(s1, Rotation::planar(kPi / 2), OrderParameter::scalar(0.0)).coordinate ==
        doctest::Approx(kPi / 2).epsilon(1e-15));

  const ManifoldSpec rp1 = ManifoldSpec::of(ManifoldKind::ProjectiveRP1);
  const OrderParameter nu = OrderParameter::scalar(0.3);
  CHECK(chart_distance(rp1, act(rp1, Rotation::planar(kPi), nu), nu) < 1e-12);

  const ManifoldSpec interval = ManifoldSpec::of(ManifoldKind::Interval01);
  CHECK(act(interval, Rotation::planar(1.0), OrderParameter::scalar(0.3)).coordinate == 0.3);

  CHECK_THROWS_AS(act(s2, Rotation::planar(1.0), OrderParameter::unit(Vec3::UnitX())), ConfigurationError);
  CHECK_THROWS_AS(act(s1, Rotation::spatial(Vec3::UnitX()), OrderParameter::scalar(0.0)), ConfigurationError);
}

TEST_CASE("group action law and norm preservation") {
  Philox rng(5);
  for (ManifoldKind k : kAllKinds) {
    const ManifoldSpec spec = ManifoldSpec::of(k);
    const int d = spec.space_dim;
    for (int i = 0; i < 1000; ++i) {
      const Rotation q1 = random_rotation(rng, d);
      const Rotation q2 = random_rotation(rng, d);
      const OrderParameter nu = test::random_point(spec, rng);
      const OrderParameter lhs = act(spec, q2, act(spec, q1, nu));
      const OrderParameter rhs = act(spec, q2.compose(q1), nu);
      CHECK((embed(spec, lhs) - embed(spec, rhs)).norm() < 1e-10);
      const VecX e = embed(spec, lhs);
      if (k == ManifoldKind::CircleS1 || k == ManifoldKind::SphereS2) CHECK(std::abs(e.norm() - 1.0) < 1e-12);
      if (k == ManifoldKind::ProjectiveRP1) {
        Mat2 x;
        x << e(0), e(1), e(2), e(3);
        CHECK(std::abs(x.trace() - 1.0) < 1e-12);
        CHECK(std::abs(x(0, 1) - x(1, 0)) < 1e-12);
        CHECK(std::abs(x.determinant()) < 1e-12);
      }
    }
  }
}

TEST_CASE("chart round trip modulo identification") {
  Philox rng(6);
  for (ManifoldKind k : kAllKinds) {
    const ManifoldSpec spec = ManifoldSpec::of(k);
    for (int i = 0; i < 1000; ++i) {
      const OrderParameter nu = test::random_point(spec, rng);
      const OrderParameter back = from_embedding(spec, embed(spec, nu));
      CHECK(chart_distance(spec, nu, back) < 1e-12);
    }
  }
  const ManifoldSpec s1 = ManifoldSpec::of(ManifoldKind::CircleS1);
  CHECK(chart_distance(s1, OrderParameter::scalar(0.1), OrderParameter::scalar(0.1 + kTwoPi)) < 1e-12);
}

TEST_CASE("infinitesimal generator examples") {
  const ManifoldSpec s2 = ManifoldSpec::of(ManifoldKind::SphereS2);
  const TangentVector t = infinitesimal_generator(s2, OrderParameter::unit(Vec3::UnitX()), Rotation::spatial(Vec3::UnitZ()));
  CHECK((to_embedding(s2, t) - Vec3::UnitY()).norm() < 1e-15);

  const ManifoldSpec interval = ManifoldSpec::of(ManifoldKind::Interval01);
  const TangentVector z = infinitesimal_generator(interval, OrderParameter::scalar(0.5), Rotation::planar(0.7));
  CHECK(z.components.norm() == 0.0);
}

TEST_CASE("generator matches central difference of the orbit map") {
  Philox rng(7);
  const double eps = 1e-5;
  for (ManifoldKind k : kAllKinds) {
    const ManifoldSpec spec = ManifoldSpec::of(k);
    for (int i = 0; i < 500; ++i) {
      const OrderParameter nu = test::random_point(spec, rng);
      const Rotation q = random_algebra(rng, spec.space_dim);
      const VecX plus = embed(spec, act(spec, q.scaled(eps), nu));
      const VecX minus = embed(spec, act(spec, q.scaled(-eps), nu));
      const VecX fd = (plus - minus) / (2.0 * eps);
      const TangentVector a = infinitesimal_generator(spec, nu, q);
      CHECK((fd - to_embedding(spec, a)).norm() < 1e-8);
    }
  }
}

TEST_CASE("tangent vectors are tangent") {
  Philox rng(8);
  for (ManifoldKind k : {ManifoldKind::CircleS1, ManifoldKind::SphereS2}) {
    const ManifoldSpec spec = ManifoldSpec::of(k);
    for (int i = 0; i < 200; ++i) {
      const OrderParameter nu = test::random_point(spec, rng);
      const TangentVector t = infinitesimal_generator(spec, nu, random_algebra(rng, spec.space_dim));
      CHECK(std::abs(to_embedding(spec, t).dot(embed(spec, nu))) < 1e-10);
    }
  }
  const Vec3 nu = Vec3(0.3, -0.4, 0.5).normalized();
  const auto [e1, e2] = tangent_frame(nu);
  CHECK((e1.cross(e2) - nu).norm() < 1e-15);
  CHECK(std::abs(e1.dot(nu)) < 1e-15);
}

TEST_CASE("chart_step examples") {
  const ManifoldSpec s1 = ManifoldSpec::of(ManifoldKind::CircleS1);
  VecX rate(1);
  rate << 1.0;
  CHECK(chart_step(s1, OrderParameter::scalar(0.0), rate, 0.1).point.coordinate == doctest::Approx(0.1));

  const ManifoldSpec rp1 = ManifoldSpec::of(ManifoldKind::ProjectiveRP1);
  rate << 2.0;
  CHECK(chart_step(rp1, OrderParameter::scalar(3.0), rate, 0.1).point.coordinate ==
        doctest::Approx(3.2 - kPi).epsilon(1e-14));

  const ManifoldSpec interval = ManifoldSpec::of(ManifoldKind::Interval01);
  rate << 1.0;
  const ChartStep edge = chart_step(interval, OrderParameter::scalar(0.99), rate, 0.05);
  CHECK(edge.point.coordinate == 1.0);
  CHECK(edge.clamped);

  const ManifoldSpec s2 = ManifoldSpec::of(ManifoldKind::SphereS2);
  VecX r2(2);
  r2 << 0.3, -0.2;
  const ChartStep step = chart_step(s2, OrderParameter::unit(Vec3(1, 2, 3)), r2, 0.1);
  CHECK(std::abs(step.point.direction.norm() - 1.0) < 1e-15);
}
