#include "ordkin/mechanics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ordkin/errors.hpp"
#include "ordkin/rng.hpp"

namespace ordkin {

namespace {

void require_positive(const ParticleState& s) {
  if (!(s.mass > 0.0)) throw ConfigurationError("particle mass must be positive");
  if (!(s.inertia > 0.0)) throw ConfigurationError("moment of inertia must be positive");
}

/// Conjugate momentum in chart coefficients.
VecX chart_conjugate(const ManifoldSpec& spec, const ParticleState& s) {
  VecX c(spec.chart_dim);
  if (spec.kind == ManifoldKind::SphereS2) {
    const auto [e1, e2] = tangent_frame(s.nu.direction);
    c << s.sigma.vector.dot(e1), s.sigma.vector.dot(e2);
  } else {
    c << s.sigma.scalar;
  }
  return c;
}

std::vector<Rotation> algebra_basis(const ManifoldSpec& spec) {
  if (spec.space_dim == 2) return {Rotation::planar(1.0)};
  return {Rotation::spatial(Vec3::UnitX()), Rotation::spatial(Vec3::UnitY()), Rotation::spatial(Vec3::UnitZ())};
}

template <class Rng>
OrderParameter random_point(const ManifoldSpec& spec, Rng& rng) {
  switch (spec.kind) {
    case ManifoldKind::Interval01: return OrderParameter::scalar(uniform01(rng));
    case ManifoldKind::CircleS1: return OrderParameter::scalar(uniform(rng, 0.0, kTwoPi));
    case ManifoldKind::ProjectiveRP1: return OrderParameter::scalar(uniform(rng, 0.0, kPi));
    case ManifoldKind::SphereS2: return OrderParameter::unit(random_unit(rng, 3));
  }
  return {};
}

}  // namespace

Vec3 angular_velocity(const ManifoldSpec& spec, const ParticleState& s) {
  switch (spec.kind) {
    case ManifoldKind::Interval01: return Vec3::Zero();
    case ManifoldKind::CircleS1:
    case ManifoldKind::ProjectiveRP1: return {0.0, 0.0, s.sigma.scalar / s.inertia};
    case ManifoldKind::SphereS2: return s.nu.direction.cross(s.sigma.vector) / s.inertia;
  }
  return Vec3::Zero();
}

void set_angular_velocity(const ManifoldSpec& spec, ParticleState& s, const Vec3& omega) {
  switch (spec.kind) {
    case ManifoldKind::Interval01:
      if (omega.norm() != 0.0) throw ConfigurationError("the interval manifold carries no angular velocity");
      break;
    case ManifoldKind::CircleS1:
    case ManifoldKind::ProjectiveRP1: s.sigma.scalar = s.inertia * omega.z(); break;
    case ManifoldKind::SphereS2: s.sigma.vector = s.inertia * omega.cross(s.nu.direction); break;
  }
}

VecX order_rate(const ManifoldSpec& spec, const ParticleState& s) {
  return chart_conjugate(spec, s) / s.inertia;
}

void set_order_rate(const ManifoldSpec& spec, ParticleState& s, const VecX& nu_dot) {
  if (nu_dot.size() != spec.chart_dim) throw ConfigurationError("order rate has wrong chart dimension");
  if (spec.kind == ManifoldKind::SphereS2) {
    const auto [e1, e2] = tangent_frame(s.nu.direction);
    s.sigma.vector = s.inertia * (nu_dot(0) * e1 + nu_dot(1) * e2);
  } else {
    s.sigma.scalar = s.inertia * nu_dot(0);
  }
}

Vec3 linear_momentum(const std::vector<ParticleState>& states) {
  Vec3 total = Vec3::Zero();
  for (const auto& s : states) total += s.p;
  return total;
}

Vec3 spin_momentum_direct(const ManifoldSpec& spec, const ParticleState& s) {
  const Vec3 omega = angular_velocity(spec, s);
  if (spec.kind == ManifoldKind::SphereS2) {
    const Vec3& nu = s.nu.direction;
    return s.inertia * (omega - nu * nu.dot(omega));
  }
  return s.inertia * omega;
}

Vec3 spin_momentum_contracted(const ManifoldSpec& spec, const ParticleState& s) {
  if (!spec.transitive()) return Vec3::Zero();
  const MatX b = chart_basis(spec, s.nu);
  // Embedded conjugate pi with b^T pi = sigma_chart and pi in the span of b.
  const VecX pi = b * (b.transpose() * b).ldlt().solve(chart_conjugate(spec, s));
  Vec3 l = Vec3::Zero();
  const auto basis = algebra_basis(spec);
  const int offset = spec.space_dim == 2 ? 2 : 0;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const VecX g = to_embedding(spec, infinitesimal_generator(spec, s.nu, basis[k]));
    l(offset + static_cast<int>(k)) = pi.dot(g);
  }
  return l;
}

Vec3 generalized_angular_momentum(const std::vector<ParticleState>& states, const ManifoldSpec& spec) {
  Vec3 total = Vec3::Zero();
  for (const auto& s : states) {
    if (spec.space_dim == 2) {
      total.z() += cross_z(s.x, s.p);
    } else {
      total += s.x.cross(s.p);
    }
    total += spin_momentum_contracted(spec, s);
  }
  return total;
}

double kinetic_energy(const std::vector<ParticleState>& states, const ManifoldSpec& spec) {
  double e = 0.0;
  for (const auto& s : states) {
    require_positive(s);
    const VecX c = chart_conjugate(spec, s);
    e += 0.5 * s.p.squaredNorm() / s.mass + 0.5 * c.squaredNorm() / s.inertia;
  }
  return e;
}

double lagrangian_kinetic(const ManifoldSpec& spec, const ParticleState& s) {
  require_positive(s);
  const Vec3 v = s.velocity();
  double rot = 0.0;
  switch (spec.kind) {
    case ManifoldKind::Interval01: {
      const double rate = s.sigma.scalar / s.inertia;
      rot = 0.5 * s.inertia * rate * rate;
      break;
    }
    case ManifoldKind::CircleS1:
    case ManifoldKind::ProjectiveRP1:
    case ManifoldKind::SphereS2: {
      const Vec3 omega = angular_velocity(spec, s);
      rot = 0.5 * omega.dot(spin_momentum_direct(spec, s));
      break;
    }
  }
  return 0.5 * s.mass * v.squaredNorm() + rot;
}

InvariantSet invariants(const std::vector<ParticleState>& states, const ManifoldSpec& spec) {
  return {linear_momentum(states), generalized_angular_momentum(states, spec), kinetic_energy(states, spec)};
}

InvariantSet invariant_magnitudes(const std::vector<ParticleState>& states, const ManifoldSpec& spec) {
  InvariantSet m;
  double p = 0.0, l = 0.0;
  for (const auto& s : states) {
    p += s.p.norm();
    l += (spec.space_dim == 2 ? std::abs(cross_z(s.x, s.p)) : s.x.cross(s.p).norm()) +
         spin_momentum_direct(spec, s).norm();
  }
  m.P = Vec3::Constant(p);
  m.L = Vec3::Constant(l);
  m.E = kinetic_energy(states, spec);
  return m;
}

InvariantDrift relative_drift(const InvariantSet& before, const InvariantSet& after, const InvariantSet& magnitudes) {
  auto rel = [](double delta, double scale) { return scale > 0.0 ? delta / scale : delta; };
  return {rel((after.P - before.P).norm(), magnitudes.P.x()), rel((after.L - before.L).norm(), magnitudes.L.x()),
          rel(std::abs(after.E - before.E), magnitudes.E)};
}

double check_frame_indifference(const ManifoldSpec& spec, const OrderLagrangian& lagrangian, int samples,
                                std::uint64_t seed) {
  if (samples < 1) throw ConfigurationError("frame-indifference check needs at least one sample");
  constexpr double eps = 1e-5;
  Philox rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Rotation q = random_rotation(rng, spec.space_dim);
    const OrderParameter nu = random_point(spec, rng);
    VecX c(spec.chart_dim);
    for (int k = 0; k < spec.chart_dim; ++k) c(k) = standard_normal(rng);
    const VecX e = embed(spec, nu);
    const VecX v = to_embedding(spec, {nu, c});
    const VecX e_rot = act_embedded(spec, q, e);
    VecX v_rot = v;
    if (spec.transitive()) {
      v_rot = (act_embedded(spec, q, e + eps * v) - act_embedded(spec, q, e - eps * v)) / (2.0 * eps);
    }
    worst = std::max(worst, std::abs(lagrangian(e_rot, v_rot) - lagrangian(e, v)));
  }
  return worst;
}

KineticLagrangian KineticLagrangian::create(const ManifoldSpec& spec, Metric metric, int samples,
                                            std::uint64_t seed) {
  auto l = [&metric](const VecX& nu, const VecX& nu_dot) { return 0.5 * nu_dot.dot(metric(nu) * nu_dot); };
  const double deviation = check_frame_indifference(spec, l, samples, seed);
  if (!(deviation < 1e-10)) {
    throw ConfigurationError("kinetic Lagrangian is not frame indifferent (deviation " + std::to_string(deviation) +
                             ")");
  }
  return KineticLagrangian(spec, std::move(metric), deviation);
}

double KineticLagrangian::operator()(const VecX& nu, const VecX& nu_dot) const {
  return 0.5 * nu_dot.dot(metric_(nu) * nu_dot);
}

MatX KineticLagrangian::chart_metric(const OrderParameter& nu) const {
  const MatX b = chart_basis(spec_, nu);
  return b.transpose() * metric_(embed(spec_, nu)) * b;
}

Ensemble Ensemble::create(const ManifoldSpec& spec, std::vector<ParticleState> particles) {
  if (particles.empty()) throw ConfigurationError("ensemble must contain at least one particle");
  const double m = particles.front().mass;
  const double inertia = particles.front().inertia;
  for (const auto& s : particles) {
    require_positive(s);
    if (s.mass != m || s.inertia != inertia) {
      throw ConfigurationError("ensemble must be homogeneous: all masses and inertias equal");
    }
    if (spec.kind == ManifoldKind::SphereS2) {
      if (std::abs(s.nu.direction.norm() - 1.0) > 1e-12) throw ConfigurationError("director must be a unit vector");
    } else {
      const double hi = spec.kind == ManifoldKind::Interval01 ? 1.0 : spec.chart_period();
      const bool closed = spec.kind == ManifoldKind::Interval01;
      if (s.nu.coordinate < 0.0 || s.nu.coordinate > hi || (!closed && s.nu.coordinate == hi)) {
        throw ConfigurationError("order parameter outside the fundamental domain");
      }
    }
  }
  return Ensemble{spec, std::move(particles), 0.0};
}

}  // namespace ordkin
