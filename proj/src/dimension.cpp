#include "ordkin/dimension.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <vector>

#include "ordkin/errors.hpp"

namespace ordkin {

namespace {

struct Layout {
  CollisionRule rule;
  ManifoldSpec spec;
  int d;
  int ambient() const {
    switch (rule) {
      case CollisionRule::HardSphere: return 2 * d;
      case CollisionRule::Bubbles: return 2 * d + 2;
      default: return 2 * d + 2 * spec.chart_dim;
    }
  }
};

VecX pack(const Layout& l, const ParticleState& a, const ParticleState& b) {
  VecX z(l.ambient());
  z.head(l.d) = a.p.head(l.d);
  z.segment(l.d, l.d) = b.p.head(l.d);
  if (l.rule == CollisionRule::Bubbles) {
    z(2 * l.d) = a.nu.coordinate;
    z(2 * l.d + 1) = b.nu.coordinate;
  } else if (l.rule != CollisionRule::HardSphere) {
    const int c = l.spec.chart_dim;
    z.segment(2 * l.d, c) = order_rate(l.spec, a) * a.inertia;
    z.segment(2 * l.d + c, c) = order_rate(l.spec, b) * b.inertia;
  }
  return z;
}

void unpack(const Layout& l, const VecX& z, ParticleState& a, ParticleState& b) {
  a.p.head(l.d) = z.head(l.d);
  b.p.head(l.d) = z.segment(l.d, l.d);
  if (l.rule == CollisionRule::Bubbles) {
    a.nu.coordinate = z(2 * l.d);
    b.nu.coordinate = z(2 * l.d + 1);
  } else if (l.rule != CollisionRule::HardSphere) {
    const int c = l.spec.chart_dim;
    set_order_rate(l.spec, a, z.segment(2 * l.d, c) / a.inertia);
    set_order_rate(l.spec, b, z.segment(2 * l.d + c, c) / b.inertia);
  }
}

VecX constraints(const Layout& l, const ParticleState& a, const ParticleState& b) {
  const std::vector<ParticleState> pair{a, b};
  std::vector<double> c;
  const Vec3 p = linear_momentum(pair);
  for (int k = 0; k < l.d; ++k) c.push_back(p(k));
  if (l.rule != CollisionRule::HardSphere && l.rule != CollisionRule::Bubbles) {
    const Vec3 am = generalized_angular_momentum(pair, l.spec);
    if (l.d == 2) {
      c.push_back(am.z());
    } else {
      for (int k = 0; k < 3; ++k) c.push_back(am(k));
    }
  }
  c.push_back(kinetic_energy(pair, l.spec));
  if (l.rule == CollisionRule::Bubbles) c.push_back(a.nu.coordinate + b.nu.coordinate);
  return Eigen::Map<VecX>(c.data(), static_cast<Eigen::Index>(c.size()));
}

}  // namespace

DimensionProbe probe_dimension(CollisionRule rule, const ManifoldSpec& spec, const ParticleState& s1,
                               const ParticleState& s2, const CollisionGeometry& geom, double rank_tol) {
  if (!rule_compatible(rule, spec)) throw ConfigurationError("rule and manifold are incompatible");
  const Layout l{rule, spec, spec.space_dim};
  ParticleState a = s1, b = s2;
  place_contact(a, b, geom);
  const CollisionOutcome out = collide(rule, a, b, geom);
  ParticleState pa = out.s1, pb = out.s2;
  const VecX z0 = pack(l, pa, pb);
  const VecX c0 = constraints(l, pa, pb);
  MatX jac(c0.size(), z0.size());
  for (int k = 0; k < z0.size(); ++k) {
    const double h = 1e-6 * std::max(1.0, std::abs(z0(k)));
    VecX zp = z0, zm = z0;
    zp(k) += h;
    zm(k) -= h;
    ParticleState ap = pa, bp = pb, am = pa, bm = pb;
    unpack(l, zp, ap, bp);
    unpack(l, zm, am, bm);
    jac.col(k) = (constraints(l, ap, bp) - constraints(l, am, bm)) / (2.0 * h);
  }
  const Eigen::JacobiSVD<MatX> svd(jac);
  const VecX sv = svd.singularValues();
  int rank = 0;
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  for (int k = 0; k < sv.size(); ++k) {
    if (sv(k) > rank_tol * top) ++rank;
  }
  return {static_cast<int>(z0.size()), rank, static_cast<int>(c0.size())};
}

int post_collision_manifold_dim(CollisionRule rule, const ManifoldSpec& spec,
                                const std::pair<ParticleState, ParticleState>& base, int probes, std::uint64_t seed,
                                double rank_tol) {
  if (probes < 1) throw ConfigurationError("at least one probe is required");
  Philox rng(seed);
  int best = -1;
  for (int i = 0; i < probes; ++i) {
    const CollisionGeometry g = sample_geometry(rule, spec, base.first, base.second, rng);
    const DimensionProbe p = probe_dimension(rule, spec, base.first, base.second, g, rank_tol);
    if (p.rank == p.constraints) best = best < 0 ? p.dimension() : std::min(best, p.dimension());
  }
  if (best < 0) throw DegenerateInputError("constraint Jacobian is rank deficient at every probe");
  return best;
}

int tabulated_dimension(CollisionRule rule) {
  switch (rule) {
    case CollisionRule::HardSphere: return 3 + 0 - 1;
    case CollisionRule::Bubbles: return 3 + 1 - 1;
    case CollisionRule::Calamitic3D: return 3 + 2 - 1;
    case CollisionRule::Calamitic2D: return 2 + 1 - 1;
    case CollisionRule::HeadTail2D: return 2 + 2 - 1;
  }
  return -1;
}

}  // namespace ordkin
