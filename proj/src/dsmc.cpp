#include "ordkin/dsmc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "ordkin/errors.hpp"
#include "ordkin/parallel.hpp"
#include "ordkin/rng.hpp"

namespace ordkin {

namespace {

constexpr std::size_t kPairChunks = 64;
constexpr double kHalfLength = 0.5;

struct ChunkTally {
  DsmcCounters counters;
  Vec3 orbital = Vec3::Zero();
};

}  // namespace

Vec3 contact_velocity(const ManifoldSpec& spec, const ParticleState& s1, const ParticleState& s2, const Vec3& r1,
                      const Vec3& r2, ContactConvention convention) {
  const Vec3 dv = s1.velocity() - s2.velocity();
  if (!spec.transitive()) return dv;
  if (convention == ContactConvention::RigidBody) {
    return dv + angular_velocity(spec, s1).cross(r1) - angular_velocity(spec, s2).cross(r2);
  }
  if (spec.space_dim == 2) {
    const double w1 = s1.sigma.scalar / s1.inertia, w2 = s2.sigma.scalar / s2.inertia;
    return dv + Vec3(w1 * r1.y() - w2 * r2.y(), w2 * r2.x() - w1 * r1.x(), 0.0);
  }
  const Vec3& n1 = s1.nu.direction;
  const Vec3& n2 = s2.nu.direction;
  const Vec3& g1 = s1.sigma.vector;
  const Vec3& g2 = s2.sigma.vector;
  return dv + (g1.dot(r1) * n1 - n1.dot(r1) * g1) / s1.inertia - (g2.dot(r2) * n2 - n2.dot(r2) * g2) / s2.inertia;
}

PrefactorKind prefactor_from_name(std::string_view name) {
  if (name == "unit") return PrefactorKind::Unit;
  if (name == "bubble_mean") return PrefactorKind::BubbleMean;
  if (name == "custom") return PrefactorKind::Custom;
  throw ConfigurationError("unknown prefactor kind '" + std::string(name) + "' (expected unit, bubble_mean, custom)");
}

std::string_view prefactor_name(PrefactorKind kind) {
  switch (kind) {
    case PrefactorKind::Unit: return "unit";
    case PrefactorKind::BubbleMean: return "bubble_mean";
    case PrefactorKind::Custom: return "custom";
  }
  return "?";
}

double prefactor(const KernelSpec& kernel, const ParticleState& s1, const ParticleState& s2) {
  double s = 1.0;
  switch (kernel.prefactor) {
    case PrefactorKind::Unit: break;
    case PrefactorKind::BubbleMean: s = 0.5 * (s1.nu.coordinate + s2.nu.coordinate); break;
    case PrefactorKind::Custom:
      if (!kernel.custom) throw ConfigurationError("custom prefactor selected without a function");
      s = kernel.custom(s1.nu, s2.nu);
      break;
  }
  if (!(s >= 0.0)) throw ConfigurationError("kernel prefactor must be non-negative");
  return s;
}

double kernel_rate(const KernelSpec& kernel, const ManifoldSpec& spec, const ParticleState& s1,
                   const ParticleState& s2, const CollisionGeometry& geom) {
  const double s = prefactor(kernel, s1, s2);
  const Vec3 g = contact_velocity(spec, s1, s2, geom.r1, geom.r2, kernel.convention);
  return std::max(g.dot(geom.n), 0.0) * s;
}

double majorant_bound(const KernelSpec& kernel, const Ensemble& ens) {
  double vmax = 0.0, wmax = 0.0, smax = 1.0;
  for (const auto& s : ens.particles) {
    vmax = std::max(vmax, s.velocity().norm());
    wmax = std::max(wmax, angular_velocity(ens.spec, s).norm());
  }
  switch (kernel.prefactor) {
    case PrefactorKind::Unit: break;
    case PrefactorKind::BubbleMean:
      smax = 0.0;
      for (const auto& s : ens.particles) smax = std::max(smax, s.nu.coordinate);
      break;
    case PrefactorKind::Custom:
      throw ConfigurationError("a custom prefactor needs an explicit majorant");
  }
  return smax * (2.0 * vmax + 2.0 * kHalfLength * wmax);
}

DsmcSolver::DsmcSolver(Ensemble ensemble, KernelSpec kernel, std::uint64_t seed, int threads)
    : ens_(std::move(ensemble)), kernel_(std::move(kernel)), seed_(seed), threads_(std::max(1, threads)) {
  if (!rule_compatible(kernel_.rule, ens_.spec)) {
    throw ConfigurationError("collision rule " + std::string(rule_name(kernel_.rule)) +
                             " is incompatible with manifold " + std::string(ens_.spec.name()));
  }
  if (kernel_.majorant < 0.0) throw ConfigurationError("majorant must be non-negative");
  if (kernel_.exchange_fraction && !(*kernel_.exchange_fraction >= 0.0 && *kernel_.exchange_fraction <= 1.0)) {
    throw ConfigurationError("exchange_fraction must lie in [0, 1]");
  }
}

void DsmcSolver::step(double dt) {
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw ConfigurationError("time step must be finite and non-negative");
  if (dt == 0.0) return;
  const std::size_t n = ens_.size();
  if (n < 2) throw ConfigurationError("collision steps need at least two particles");

  const double majorant = kernel_.majorant > 0.0 ? kernel_.majorant : majorant_bound(kernel_, ens_);
  last_majorant_ = majorant;
  const double p_cand = majorant * dt;
  if (p_cand > 0.5) {
    throw ConfigurationError("majorant * dt = " + std::to_string(p_cand) +
                             " exceeds 0.5 expected candidates per particle per step; reduce dt");
  }

  if (majorant > 0.0) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Philox shuffle = Philox::substream(seed_, static_cast<std::uint64_t>(step_), ~std::uint64_t{0});
    for (std::size_t i = n - 1; i > 0; --i) {
      const auto j = static_cast<std::size_t>(uniform01(shuffle) * static_cast<double>(i + 1));
      std::swap(order[i], order[std::min(j, i)]);
    }

    const std::size_t pairs = n / 2;
    std::vector<ChunkTally> tally(kPairChunks);
    auto& particles = ens_.particles;
    parallel_chunks(pairs, kPairChunks, threads_, [&](std::size_t b, std::size_t e, std::size_t chunk) {
      ChunkTally& t = tally[chunk];
      for (std::size_t k = b; k < e; ++k) {
        Philox rng = Philox::substream(seed_, static_cast<std::uint64_t>(step_), k);
        if (uniform01(rng) >= p_cand) continue;
        ParticleState& s1 = particles[order[2 * k]];
        ParticleState& s2 = particles[order[2 * k + 1]];
        ++t.counters.candidates;
        const CollisionGeometry geom = sample_geometry(kernel_.rule, ens_.spec, s1, s2, rng, kernel_.exchange_fraction);
        const double ratio = kernel_rate(kernel_, ens_.spec, s1, s2, geom) / majorant;
        t.counters.max_rate_ratio = std::max(t.counters.max_rate_ratio, ratio);
        if (ratio > 1.0) ++t.counters.majorant_violations;
        if (!(uniform01(rng) < ratio)) continue;
        const CollisionOutcome out = collide(kernel_.rule, s1, s2, geom);
        t.orbital += (geom.r2 - geom.r1).cross(out.s1.p - s1.p);
        s1 = out.s1;
        s2 = out.s2;
        ++t.counters.accepted;
      }
    });
    for (const auto& t : tally) {
      counters_.candidates += t.counters.candidates;
      counters_.accepted += t.counters.accepted;
      counters_.majorant_violations += t.counters.majorant_violations;
      counters_.max_rate_ratio = std::max(counters_.max_rate_ratio, t.counters.max_rate_ratio);
      orbital_ += t.orbital;
    }
  }

  stream(dt);
  ens_.time += dt;
  ++step_;
}

void DsmcSolver::run(double dt, long steps) {
  for (long i = 0; i < steps; ++i) step(dt);
}

void DsmcSolver::stream(double dt) {
  const ManifoldSpec& spec = ens_.spec;
  if (!spec.transitive()) return;
  for (auto& s : ens_.particles) {
    if (spec.space_dim == 2) {
      VecX rate(1);
      rate << s.sigma.scalar / s.inertia;
      s.nu = chart_step(spec, s.nu, rate, dt).point;
    } else {
      const Vec3 w = angular_velocity(spec, s);
      s.nu = OrderParameter::unit(rodrigues(w * dt) * s.nu.direction);
      set_angular_velocity(spec, s, w);
    }
  }
}

InvariantSet DsmcSolver::invariants() const {
  InvariantSet inv = ordkin::invariants(ens_.particles, ens_.spec);
  inv.L += orbital_;
  return inv;
}

Ensemble sample_maxwellian(const MaxwellianParams& params, const ManifoldSpec& spec, long n, std::uint64_t seed,
                           double mass, double inertia) {
  if (!(params.d < 0.0)) throw ConfigurationError("Maxwellian needs d < 0 to be integrable");
  if (n < 1) throw ConfigurationError("Maxwellian sample size must be positive");
  if (!(mass > 0.0) || !(inertia > 0.0)) throw ConfigurationError("mass and inertia must be positive");
  const int d = spec.space_dim;
  const double sd_p = std::sqrt(-mass / (2.0 * params.d));
  const double sd_s = std::sqrt(-inertia / (2.0 * params.d));
  const Vec3 mean_p = -mass * params.b / (2.0 * params.d);
  std::vector<ParticleState> particles(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    Philox rng = Philox::substream(seed, static_cast<std::uint64_t>(i), 0x6d617877ULL);
    ParticleState& s = particles[static_cast<std::size_t>(i)];
    s.mass = mass;
    s.inertia = inertia;
    for (int k = 0; k < d; ++k) s.p(k) = mean_p(k) + sd_p * standard_normal(rng);
    switch (spec.kind) {
      case ManifoldKind::Interval01:
        s.nu = OrderParameter::scalar(uniform01(rng));
        s.sigma.scalar = sd_s * standard_normal(rng);
        break;
      case ManifoldKind::CircleS1:
      case ManifoldKind::ProjectiveRP1:
        s.nu = OrderParameter::scalar(uniform(rng, 0.0, spec.chart_period()));
        s.sigma.scalar = -inertia * params.c.z() / (2.0 * params.d) + sd_s * standard_normal(rng);
        break;
      case ManifoldKind::SphereS2: {
        s.nu = OrderParameter::unit(random_unit(rng, 3));
        const auto [e1, e2] = tangent_frame(s.nu.direction);
        const Vec3 shift = -inertia * params.c.cross(s.nu.direction) / (2.0 * params.d);
        s.sigma.vector = shift + sd_s * (standard_normal(rng) * e1 + standard_normal(rng) * e2);
        break;
      }
    }
  }
  return Ensemble::create(spec, std::move(particles));
}

Moments moments(const Ensemble& ens) {
  Moments m;
  const double n = static_cast<double>(ens.size());
  if (ens.size() == 0) return m;
  for (const auto& s : ens.particles) {
    m.mean_p += s.p;
    m.mean_sigma += order_rate(ens.spec, s)(0) * s.inertia;
  }
  m.mean_p /= n;
  m.mean_sigma /= n;
  double m4 = 0.0;
  for (const auto& s : ens.particles) {
    const Vec3 dp = s.p - m.mean_p;
    m.var_p += dp.cwiseProduct(dp);
    m4 += std::pow(dp.x(), 4);
    const VecX c = order_rate(ens.spec, s) * s.inertia;
    m.var_sigma += (c(0) - m.mean_sigma) * (c(0) - m.mean_sigma);
    for (int k = 1; k < c.size(); ++k) m.var_sigma += c(k) * c(k);
  }
  m.var_p /= n;
  m.var_sigma /= n;
  m4 /= n;
  m.kurt_px = m.var_p.x() > 0.0 ? m4 / (m.var_p.x() * m.var_p.x()) : 0.0;
  return m;
}

}  // namespace ordkin
