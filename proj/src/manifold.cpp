#include "ordkin/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ordkin/errors.hpp"

namespace ordkin {

namespace {

void require_dimension(const ManifoldSpec& spec, const Rotation& q) {
  if (spec.action == ActionKind::Trivial) return;
  if (q.dimension() != spec.space_dim) {
    throw ConfigurationError(std::string("rotation of dimension ") + std::to_string(q.dimension()) +
                             " cannot act on manifold " + std::string(spec.name()));
  }
}

// d(nu (x) nu)/dtheta for nu = (cos, sin): nu_perp (x) nu + nu (x) nu_perp, flattened row-major.
VecX rp1_tangent(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  VecX t(4);
  t << -2.0 * s * c, c * c - s * s, c * c - s * s, 2.0 * s * c;
  return t;
}

}  // namespace

ManifoldSpec ManifoldSpec::of(ManifoldKind kind) {
  switch (kind) {
    case ManifoldKind::Interval01: return {kind, 1, 1, ActionKind::Trivial, 3};
    case ManifoldKind::CircleS1: return {kind, 1, 2, ActionKind::VectorRotation, 2};
    case ManifoldKind::ProjectiveRP1: return {kind, 1, 4, ActionKind::Conjugation, 2};
    case ManifoldKind::SphereS2: return {kind, 2, 3, ActionKind::VectorRotation, 3};
  }
  throw ConfigurationError("unknown manifold kind");
}

ManifoldSpec ManifoldSpec::from_name(std::string_view name) {
  if (name == "interval") return of(ManifoldKind::Interval01);
  if (name == "s1") return of(ManifoldKind::CircleS1);
  if (name == "rp1") return of(ManifoldKind::ProjectiveRP1);
  if (name == "s2") return of(ManifoldKind::SphereS2);
  throw ConfigurationError("unknown manifold '" + std::string(name) + "' (expected interval, s1, rp1, s2)");
}

std::string_view ManifoldSpec::name() const {
  switch (kind) {
    case ManifoldKind::Interval01: return "interval";
    case ManifoldKind::CircleS1: return "s1";
    case ManifoldKind::ProjectiveRP1: return "rp1";
    case ManifoldKind::SphereS2: return "s2";
  }
  return "?";
}

double ManifoldSpec::chart_period() const {
  if (kind == ManifoldKind::CircleS1) return kTwoPi;
  if (kind == ManifoldKind::ProjectiveRP1) return kPi;
  return 0.0;
}

double wrap_angle(double theta, double period) {
  double w = theta - period * std::floor(theta / period);
  if (w >= period) w -= period;
  if (w < 0.0) w = 0.0;
  return w;
}

std::pair<Vec3, Vec3> tangent_frame(const Vec3& nu) {
  int axis = 0;
  if (std::abs(nu.y()) < std::abs(nu(axis))) axis = 1;
  if (std::abs(nu.z()) < std::abs(nu(axis))) axis = 2;
  const Vec3 e1 = Vec3::Unit(axis).cross(nu).normalized();
  const Vec3 e2 = nu.cross(e1);
  return {e1, e2};
}

OrderParameter canonical(const ManifoldSpec& spec, const OrderParameter& nu) {
  switch (spec.kind) {
    case ManifoldKind::Interval01: return OrderParameter::scalar(std::clamp(nu.coordinate, 0.0, 1.0));
    case ManifoldKind::CircleS1:
    case ManifoldKind::ProjectiveRP1: return OrderParameter::scalar(wrap_angle(nu.coordinate, spec.chart_period()));
    case ManifoldKind::SphereS2: return OrderParameter::unit(nu.direction);
  }
  return nu;
}

VecX embed(const ManifoldSpec& spec, const OrderParameter& nu) {
  VecX e(spec.embed_dim);
  switch (spec.kind) {
    case ManifoldKind::Interval01: e << nu.coordinate; break;
    case ManifoldKind::CircleS1: e << std::cos(nu.coordinate), std::sin(nu.coordinate); break;
    case ManifoldKind::ProjectiveRP1: {
      const double c = std::cos(nu.coordinate), s = std::sin(nu.coordinate);
      e << c * c, c * s, c * s, s * s;
      break;
    }
    case ManifoldKind::SphereS2: e = nu.direction; break;
  }
  return e;
}

OrderParameter from_embedding(const ManifoldSpec& spec, const VecX& e) {
  switch (spec.kind) {
    case ManifoldKind::Interval01: return OrderParameter::scalar(e(0));
    case ManifoldKind::CircleS1: return OrderParameter::scalar(wrap_angle(std::atan2(e(1), e(0)), kTwoPi));
    case ManifoldKind::ProjectiveRP1:
      // nu (x) nu = [[c^2, cs], [cs, s^2]]: 2 theta = atan2(2cs, c^2 - s^2).
      return OrderParameter::scalar(wrap_angle(0.5 * std::atan2(e(1) + e(2), e(0) - e(3)), kPi));
    case ManifoldKind::SphereS2: return OrderParameter::unit(Vec3(e(0), e(1), e(2)));
  }
  throw ConfigurationError("unknown manifold kind");
}

Vec3 director(const ManifoldSpec& spec, const OrderParameter& nu) {
  switch (spec.kind) {
    case ManifoldKind::CircleS1:
    case ManifoldKind::ProjectiveRP1: return {std::cos(nu.coordinate), std::sin(nu.coordinate), 0.0};
    case ManifoldKind::SphereS2: return nu.direction;
    case ManifoldKind::Interval01: break;
  }
  throw ConfigurationError("the interval manifold has no director");
}

OrderParameter act(const ManifoldSpec& spec, const Rotation& q, const OrderParameter& nu) {
  require_dimension(spec, q);
  switch (spec.kind) {
    case ManifoldKind::Interval01: return nu;
    case ManifoldKind::CircleS1:
    case ManifoldKind::ProjectiveRP1:
      return OrderParameter::scalar(wrap_angle(nu.coordinate + q.angle(), spec.chart_period()));
    case ManifoldKind::SphereS2: return OrderParameter::unit(q.apply(nu.direction));
  }
  return nu;
}

VecX act_embedded(const ManifoldSpec& spec, const Rotation& q, const VecX& e) {
  require_dimension(spec, q);
  switch (spec.kind) {
    case ManifoldKind::Interval01: return e;
    case ManifoldKind::CircleS1: return q.matrix2() * e;
    case ManifoldKind::ProjectiveRP1: {
      const Mat2 r = q.matrix2();
      const Mat2 x = Eigen::Map<const Eigen::Matrix<double, 2, 2, Eigen::RowMajor>>(e.data());
      const Eigen::Matrix<double, 2, 2, Eigen::RowMajor> y = r * x * r.transpose();
      return Eigen::Map<const VecX>(y.data(), 4);
    }
    case ManifoldKind::SphereS2: return q.matrix() * e;
  }
  return e;
}

MatX chart_basis(const ManifoldSpec& spec, const OrderParameter& nu) {
  MatX b(spec.embed_dim, spec.chart_dim);
  switch (spec.kind) {
    case ManifoldKind::Interval01: b << 1.0; break;
    case ManifoldKind::CircleS1: b << -std::sin(nu.coordinate), std::cos(nu.coordinate); break;
    case ManifoldKind::ProjectiveRP1: b.col(0) = rp1_tangent(nu.coordinate); break;
    case ManifoldKind::SphereS2: {
      const auto [e1, e2] = tangent_frame(nu.direction);
      b.col(0) = e1;
      b.col(1) = e2;
      break;
    }
  }
  return b;
}

VecX to_embedding(const ManifoldSpec& spec, const TangentVector& v) {
  return chart_basis(spec, v.base) * v.components;
}

TangentVector to_tangent(const ManifoldSpec& spec, const OrderParameter& nu, const VecX& embedded) {
  const MatX b = chart_basis(spec, nu);
  // Least-squares coefficients; the basis columns are orthogonal for every kind.
  VecX c = (b.transpose() * b).ldlt().solve(b.transpose() * embedded);
  return {nu, c};
}

TangentVector infinitesimal_generator(const ManifoldSpec& spec, const OrderParameter& nu, const Rotation& q) {
  require_dimension(spec, q);
  VecX c = VecX::Zero(spec.chart_dim);
  switch (spec.kind) {
    case ManifoldKind::Interval01: break;
    case ManifoldKind::CircleS1:
    case ManifoldKind::ProjectiveRP1:
      // q x nu with q = angle * e_z is angle * nu_perp, i.e. d theta = angle.
      c(0) = q.angle();
      break;
    case ManifoldKind::SphereS2: {
      const Vec3 t = q.rotation_vector().cross(nu.direction);
      const auto [e1, e2] = tangent_frame(nu.direction);
      c << t.dot(e1), t.dot(e2);
      break;
    }
  }
  return {nu, c};
}

ChartStep chart_step(const ManifoldSpec& spec, const OrderParameter& nu, const VecX& velocity, double dt) {
  switch (spec.kind) {
    case ManifoldKind::Interval01: {
      const double next = nu.coordinate + velocity(0) * dt;
      if (next <= 0.0) return {OrderParameter::scalar(0.0), true};
      if (next >= 1.0) return {OrderParameter::scalar(1.0), true};
      return {OrderParameter::scalar(next), false};
    }
    case ManifoldKind::CircleS1:
    case ManifoldKind::ProjectiveRP1:
      return {OrderParameter::scalar(wrap_angle(nu.coordinate + velocity(0) * dt, spec.chart_period())), false};
    case ManifoldKind::SphereS2: {
      const auto [e1, e2] = tangent_frame(nu.direction);
      const Vec3 v = velocity(0) * e1 + velocity(1) * e2;
      return {OrderParameter::unit(nu.direction + dt * v), false};
    }
  }
  return {nu, false};
}

double chart_distance(const ManifoldSpec& spec, const OrderParameter& a, const OrderParameter& b) {
  switch (spec.kind) {
    case ManifoldKind::Interval01: return std::abs(a.coordinate - b.coordinate);
    case ManifoldKind::CircleS1:
    case ManifoldKind::ProjectiveRP1: {
      const double p = spec.chart_period();
      const double d = wrap_angle(a.coordinate - b.coordinate, p);
      return std::min(d, p - d);
    }
    case ManifoldKind::SphereS2:
      return std::atan2(a.direction.cross(b.direction).norm(), a.direction.dot(b.direction));
  }
  return 0.0;
}

}  // namespace ordkin
