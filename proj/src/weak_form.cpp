#include "ordkin/weak_form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ordkin/errors.hpp"
#include "ordkin/parallel.hpp"
#include "ordkin/rng.hpp"

namespace ordkin {

namespace {

constexpr std::size_t kSampleChunks = 64;

struct Partial {
  double sum = 0.0;
  double sum_sq = 0.0;
  double magnitude = 0.0;
};

Vec3 particle_l(const ManifoldSpec& spec, const ParticleState& s) {
  Vec3 l = s.x.cross(s.p);
  if (spec.space_dim == 2) l = Vec3(0.0, 0.0, cross_z(s.x, s.p));
  return l + spin_momentum_contracted(spec, s);
}

// Quadratic observables in extended precision; the four-term difference of
// double-rounded energies is otherwise biased at the 1e-16 level.
long double precise_observable(Observable psi, const ManifoldSpec& spec, const ParticleState& s,
                               const std::function<double(const ParticleState&)>& custom) {
  if (psi == Observable::PxSquared) return static_cast<long double>(s.p.x()) * s.p.x();
  if (psi != Observable::Energy) return evaluate_observable(psi, spec, s, custom);
  long double p2 = 0.0L, c2 = 0.0L;
  for (int k = 0; k < 3; ++k) p2 += static_cast<long double>(s.p(k)) * s.p(k);
  if (spec.kind == ManifoldKind::SphereS2) {
    // Tangential part of sigma without going through the rounded frame.
    long double ss = 0.0L, sn = 0.0L, nn = 0.0L;
    for (int k = 0; k < 3; ++k) {
      const long double sk = s.sigma.vector(k), nk = s.nu.direction(k);
      ss += sk * sk;
      sn += sk * nk;
      nn += nk * nk;
    }
    c2 = ss - sn * sn / nn;
  } else {
    c2 = static_cast<long double>(s.sigma.scalar) * s.sigma.scalar;
  }
  return 0.5L * p2 / s.mass + 0.5L * c2 / s.inertia;
}

template <class Rng>
ParticleState random_state(const ManifoldSpec& spec, Rng& rng) {
  ParticleState s;
  s.inertia = 1.0 / 12.0;
  for (int k = 0; k < spec.space_dim; ++k) s.p(k) = standard_normal(rng);
  switch (spec.kind) {
    case ManifoldKind::Interval01: s.nu = OrderParameter::scalar(uniform01(rng)); break;
    case ManifoldKind::CircleS1:
    case ManifoldKind::ProjectiveRP1:
      s.nu = OrderParameter::scalar(uniform(rng, 0.0, spec.chart_period()));
      s.sigma.scalar = s.inertia * standard_normal(rng);
      break;
    case ManifoldKind::SphereS2: {
      s.nu = OrderParameter::unit(random_unit(rng, 3));
      const auto [e1, e2] = tangent_frame(s.nu.direction);
      s.sigma.vector = s.inertia * (standard_normal(rng) * e1 + standard_normal(rng) * e2);
      break;
    }
  }
  return s;
}

}  // namespace

Observable observable_from_name(std::string_view name) {
  if (name == "one") return Observable::One;
  if (name == "px") return Observable::Px;
  if (name == "py") return Observable::Py;
  if (name == "pz") return Observable::Pz;
  if (name == "L") return Observable::L;
  if (name == "Lx") return Observable::Lx;
  if (name == "Ly") return Observable::Ly;
  if (name == "energy") return Observable::Energy;
  if (name == "px2") return Observable::PxSquared;
  throw ConfigurationError("unknown observable '" + std::string(name) +
                           "' (expected one, px, py, pz, L, Lx, Ly, energy, px2)");
}

std::string_view observable_name(Observable psi) {
  switch (psi) {
    case Observable::One: return "one";
    case Observable::Px: return "px";
    case Observable::Py: return "py";
    case Observable::Pz: return "pz";
    case Observable::L: return "L";
    case Observable::Lx: return "Lx";
    case Observable::Ly: return "Ly";
    case Observable::Energy: return "energy";
    case Observable::PxSquared: return "px2";
    case Observable::Custom: return "custom";
  }
  return "?";
}

double evaluate_observable(Observable psi, const ManifoldSpec& spec, const ParticleState& s,
                           const std::function<double(const ParticleState&)>& custom) {
  switch (psi) {
    case Observable::One: return 1.0;
    case Observable::Px: return s.p.x();
    case Observable::Py: return s.p.y();
    case Observable::Pz: return s.p.z();
    case Observable::L: return particle_l(spec, s).z();
    case Observable::Lx: return particle_l(spec, s).x();
    case Observable::Ly: return particle_l(spec, s).y();
    case Observable::Energy: return kinetic_energy({s}, spec);
    case Observable::PxSquared: return s.p.x() * s.p.x();
    case Observable::Custom:
      if (!custom) throw ConfigurationError("custom observable selected without a function");
      return custom(s);
  }
  return 0.0;
}

bool WeakFormResult::zero_consistent() const { return std::abs(estimate) <= 3.0 * std_error + floor; }

WeakFormResult weak_form_test(const Ensemble& ens, const KernelSpec& kernel, Observable psi, long samples,
                              std::uint64_t seed, int threads,
                              const std::function<double(const ParticleState&)>& custom) {
  if (samples < 2) throw ConfigurationError("weak-form test needs at least two samples");
  if (ens.size() < 2) throw ConfigurationError("weak-form test needs at least two particles");
  if (!rule_compatible(kernel.rule, ens.spec)) throw ConfigurationError("rule and manifold are incompatible");
  const ManifoldSpec& spec = ens.spec;
  const std::size_t n = ens.size();
  std::vector<Partial> parts(kSampleChunks);
  parallel_chunks(static_cast<std::size_t>(samples), kSampleChunks, threads,
                  [&](std::size_t b, std::size_t e, std::size_t chunk) {
                    Partial& acc = parts[chunk];
                    for (std::size_t k = b; k < e; ++k) {
                      Philox rng = Philox::substream(seed, k, 0x77666dULL);
                      const auto i = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
                      auto j = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n - 1));
                      if (j >= i) ++j;
                      ParticleState s1 = ens.particles[std::min(i, n - 1)];
                      ParticleState s2 = ens.particles[std::min(j, n - 1)];
                      const CollisionGeometry g =
                          sample_geometry(kernel.rule, spec, s1, s2, rng, kernel.exchange_fraction);
                      s1.x = Vec3::Zero();
                      place_contact(s1, s2, g);
                      const double rate = kernel_rate(kernel, spec, s1, s2, g);
                      double term = 0.0, mag = 0.0;
                      if (rate > 0.0) {
                        const auto [a, c] = effective_pre_state(kernel.rule, s1, s2, g);
                        const CollisionOutcome out = collide(kernel.rule, s1, s2, g);
                        const long double v1 = precise_observable(psi, spec, out.s1, custom);
                        const long double v2 = precise_observable(psi, spec, out.s2, custom);
                        const long double u1 = precise_observable(psi, spec, a, custom);
                        const long double u2 = precise_observable(psi, spec, c, custom);
                        term = rate * static_cast<double>((v1 + v2) - (u1 + u2));
                        mag = rate * static_cast<double>(std::abs(v1) + std::abs(v2) + std::abs(u1) + std::abs(u2));
                      }
                      acc.sum += term;
                      acc.sum_sq += term * term;
                      acc.magnitude += mag;
                    }
                  });
  Partial total;
  for (const auto& p : parts) {
    total.sum += p.sum;
    total.sum_sq += p.sum_sq;
    total.magnitude += p.magnitude;
  }
  const double m = static_cast<double>(samples);
  WeakFormResult r;
  r.samples = samples;
  r.estimate = total.sum / m;
  const double var = std::max(0.0, (total.sum_sq - m * r.estimate * r.estimate) / (m - 1.0));
  r.std_error = std::sqrt(var / m);
  r.floor = 64.0 * std::numeric_limits<double>::epsilon() * total.magnitude / m;
  return r;
}

ReciprocityResult reciprocity_check(CollisionRule rule, int trials, std::uint64_t seed) {
  if (trials < 1) throw ConfigurationError("reciprocity check needs at least one trial");
  const ManifoldSpec spec = natural_manifold(rule);
  ReciprocityResult res;
  for (int t = 0; t < trials; ++t) {
    Philox rng = Philox::substream(seed, static_cast<std::uint64_t>(t), 0x726563ULL);
    ParticleState s1 = random_state(spec, rng);
    ParticleState s2 = random_state(spec, rng);
    const CollisionGeometry g = sample_geometry(rule, spec, s1, s2, rng);
    place_contact(s1, s2, g);

    const VecX z0 = momentum_coordinates(rule, spec, s1, s2);
    auto map = [&](const VecX& z) {
      ParticleState a = s1, b = s2;
      set_momentum_coordinates(rule, spec, z, a, b);
      const CollisionOutcome out = collide(rule, a, b, g);
      return momentum_coordinates(rule, spec, out.s1, out.s2);
    };
    MatX jac(z0.size(), z0.size());
    constexpr double h = 1e-6;
    for (int k = 0; k < z0.size(); ++k) {
      VecX zp = z0, zm = z0;
      zp(k) += h;
      zm(k) -= h;
      jac.col(k) = (map(zp) - map(zm)) / (2.0 * h);
    }
    res.max_det_deviation = std::max(res.max_det_deviation, std::abs(std::abs(jac.determinant()) - 1.0));

    const auto [a, b] = effective_pre_state(rule, s1, s2, g);
    CollisionGeometry g2 = g;
    g2.parity = 0;
    const CollisionRule inner = rule == CollisionRule::HeadTail2D ? CollisionRule::Calamitic2D : rule;
    const CollisionOutcome once = collide(inner, a, b, g2);
    const CollisionOutcome twice = collide(inner, once.s1, once.s2, g2);
    const VecX before = momentum_coordinates(rule, spec, a, b);
    const VecX after = momentum_coordinates(rule, spec, twice.s1, twice.s2);
    res.max_involution_error = std::max(res.max_involution_error, (after - before).cwiseAbs().maxCoeff());
  }
  return res;
}

}  // namespace ordkin
