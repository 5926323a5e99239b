#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "ordkin/collisions.hpp"
#include "ordkin/mechanics.hpp"

namespace ordkin {

/// Sign of the rotational part of the contact velocity. `Printed` uses
/// g = (p1 - p2)/m + (w1 r1y - w2 r2y, w2 r2x - w1 r1x) in the plane and
/// g = (p1 - p2)/m + ((s1.r1) nu1 - (nu1.r1) s1)/I - ((s2.r2) nu2 - (nu2.r2) s2)/I
/// in space (s the conjugate momentum); `RigidBody` uses
/// g = v1 + w1 x r1 - v2 - w2 x r2, the velocity the impulse acts on.
enum class ContactConvention { Printed, RigidBody };

Vec3 contact_velocity(const ManifoldSpec& spec, const ParticleState& s1, const ParticleState& s2, const Vec3& r1,
                      const Vec3& r2, ContactConvention convention = ContactConvention::RigidBody);

enum class PrefactorKind { Unit, BubbleMean, Custom };

struct KernelSpec {
  CollisionRule rule = CollisionRule::HardSphere;
  PrefactorKind prefactor = PrefactorKind::Unit;
  /// Upper bound on kernel_rate. Zero selects a bound recomputed each step
  /// from the largest speeds in the ensemble.
  double majorant = 0.0;
  /// Bubble exchange fraction; drawn uniformly per event when empty.
  std::optional<double> exchange_fraction;
  ContactConvention convention = ContactConvention::RigidBody;
  std::function<double(const OrderParameter&, const OrderParameter&)> custom;
};

PrefactorKind prefactor_from_name(std::string_view name);
std::string_view prefactor_name(PrefactorKind kind);

double prefactor(const KernelSpec& kernel, const ParticleState& s1, const ParticleState& s2);

/// max(g.n, 0) S(nu1, nu2).
double kernel_rate(const KernelSpec& kernel, const ManifoldSpec& spec, const ParticleState& s1,
                   const ParticleState& s2, const CollisionGeometry& geom);

/// Bound on kernel_rate over all pairs of the ensemble and all geometries.
double majorant_bound(const KernelSpec& kernel, const Ensemble& ens);

struct DsmcCounters {
  std::uint64_t candidates = 0;
  std::uint64_t accepted = 0;
  std::uint64_t majorant_violations = 0;
  double max_rate_ratio = 0.0;
};

/// Homogeneous stochastic collision solver.
///
/// Each step shuffles the particles into disjoint pairs. A pair becomes a
/// candidate with probability majorant * dt, draws a geometry and collides
/// with probability kernel_rate / majorant. Every pair draws from its own
/// counter-based substream keyed by (seed, step, pair), so results do not
/// depend on the thread count. Orientations then stream freely for dt.
class DsmcSolver {
 public:
  DsmcSolver(Ensemble ensemble, KernelSpec kernel, std::uint64_t seed, int threads = 1);

  void step(double dt);
  void run(double dt, long steps);

  const Ensemble& ensemble() const { return ens_; }
  Ensemble& ensemble() { return ens_; }
  const KernelSpec& kernel() const { return kernel_; }
  const DsmcCounters& counters() const { return counters_; }
  long steps_taken() const { return step_; }
  double last_majorant() const { return last_majorant_; }

  /// Orbital angular momentum accumulated from the collisions; the
  /// homogeneous ensemble keeps no positions.
  const Vec3& orbital_momentum() const { return orbital_; }
  InvariantSet invariants() const;

 private:
  void stream(double dt);

  Ensemble ens_;
  KernelSpec kernel_;
  std::uint64_t seed_;
  int threads_;
  long step_ = 0;
  DsmcCounters counters_;
  Vec3 orbital_ = Vec3::Zero();
  double last_majorant_ = 0.0;
};

/// Coefficients of the exponential family exp(a + b.p + c.L + d(|p|^2/m + sigma.B^-1 sigma)).
struct MaxwellianParams {
  double a = 0.0;
  Vec3 b = Vec3::Zero();
  Vec3 c = Vec3::Zero();
  double d = -0.5;
};

/// Samples p and sigma from the Maxwellian, nu uniform on the manifold.
/// Requires d < 0.
Ensemble sample_maxwellian(const MaxwellianParams& params, const ManifoldSpec& spec, long n, std::uint64_t seed,
                           double mass = 1.0, double inertia = 1.0);

/// Low-order moments tracked for relaxation and stationarity runs.
struct Moments {
  Vec3 mean_p = Vec3::Zero();
  Vec3 var_p = Vec3::Zero();
  double kurt_px = 0.0;
  double mean_sigma = 0.0;
  /// Spread of the conjugate momentum: first chart component about
  /// mean_sigma plus the remaining components about zero.
  double var_sigma = 0.0;
};

Moments moments(const Ensemble& ens);

}  // namespace ordkin
