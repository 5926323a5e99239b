#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "ordkin/manifold.hpp"
#include "ordkin/types.hpp"

namespace ordkin {

/// Conjugate momentum of the order parameter. One-dimensional manifolds use
/// `scalar` (I times the chart rate); the sphere stores a tangent vector
/// orthogonal to nu in `vector`.
struct Conjugate {
  double scalar = 0.0;
  Vec3 vector = Vec3::Zero();
};

/// Phase-space point (x, nu, p, sigma) with mass and scalar moment of inertia.
/// Planar problems keep z components at zero.
struct ParticleState {
  Vec3 x = Vec3::Zero();
  OrderParameter nu;
  Vec3 p = Vec3::Zero();
  Conjugate sigma;
  double mass = 1.0;
  double inertia = 1.0;

  Vec3 velocity() const { return p / mass; }
};

/// Angular velocity: omega_z in the plane, nu x nu_dot on the sphere.
/// Zero for the interval, which has no rotational degree of freedom.
Vec3 angular_velocity(const ManifoldSpec& spec, const ParticleState& s);
/// Inverse of angular_velocity(): sets sigma from omega (component along nu dropped on S2).
void set_angular_velocity(const ManifoldSpec& spec, ParticleState& s, const Vec3& omega);

/// Chart rate nu_dot = B^-1 sigma, in chart coefficients.
VecX order_rate(const ManifoldSpec& spec, const ParticleState& s);
/// sigma = B nu_dot from chart coefficients.
void set_order_rate(const ManifoldSpec& spec, ParticleState& s, const VecX& nu_dot);

struct InvariantSet {
  Vec3 P = Vec3::Zero();
  Vec3 L = Vec3::Zero();  // planar problems use L.z()
  double E = 0.0;
};

Vec3 linear_momentum(const std::vector<ParticleState>& states);

/// Orbital plus spin part, one component per so(d) generator. The spin
/// part is the contraction of the embedded conjugate momentum with the
/// generator A_nu e_k.
Vec3 generalized_angular_momentum(const std::vector<ParticleState>& states, const ManifoldSpec& spec);

/// Spin contribution of one particle computed as I * omega (3D: inertia
/// tensor I (Id - nu nu^T) applied to omega).
Vec3 spin_momentum_direct(const ManifoldSpec& spec, const ParticleState& s);
/// Spin contribution of one particle via the generator contraction.
Vec3 spin_momentum_contracted(const ManifoldSpec& spec, const ParticleState& s);

double kinetic_energy(const std::vector<ParticleState>& states, const ManifoldSpec& spec);
/// 1/2 m |v|^2 + 1/2 nu_dot B nu_dot from velocities.
double lagrangian_kinetic(const ManifoldSpec& spec, const ParticleState& s);

InvariantSet invariants(const std::vector<ParticleState>& states, const ManifoldSpec& spec);

/// Natural magnitudes for relative drift: P.x() = sum |p|, L.x() = sum of
/// orbital and spin magnitudes, E = kinetic energy.
InvariantSet invariant_magnitudes(const std::vector<ParticleState>& states, const ManifoldSpec& spec);

struct InvariantDrift {
  double P = 0.0, L = 0.0, E = 0.0;
  double max() const { return std::max({P, L, E}); }
};

InvariantDrift relative_drift(const InvariantSet& before, const InvariantSet& after, const InvariantSet& magnitudes);

/// Lagrangian of the order parameter alone, in embedding coordinates.
using OrderLagrangian = std::function<double(const VecX& nu, const VecX& nu_dot)>;

/// Max |L(A(Q, nu), DA_Q nu_dot) - L(nu, nu_dot)| over random samples. The
/// tangent map is the central difference of the embedded action along
/// nu_dot with step 1e-5.
double check_frame_indifference(const ManifoldSpec& spec, const OrderLagrangian& lagrangian, int samples,
                                std::uint64_t seed);

/// Quadratic kinetic Lagrangian 1/2 nu_dot^T B(nu) nu_dot with B given on the embedding.
class KineticLagrangian {
 public:
  using Metric = std::function<MatX(const VecX& nu)>;

  /// Builds the Lagrangian after checking frame indifference on `samples`
  /// random rotations; throws ConfigurationError when the deviation exceeds 1e-10.
  static KineticLagrangian create(const ManifoldSpec& spec, Metric metric, int samples = 1000,
                                  std::uint64_t seed = 1);

  double operator()(const VecX& nu, const VecX& nu_dot) const;
  /// B restricted to the chart basis at nu.
  MatX chart_metric(const OrderParameter& nu) const;
  double deviation() const { return deviation_; }

 private:
  KineticLagrangian(ManifoldSpec spec, Metric metric, double deviation)
      : spec_(spec), metric_(std::move(metric)), deviation_(deviation) {}

  ManifoldSpec spec_;
  Metric metric_;
  double deviation_;
};

/// Particle ensemble on one manifold. Construction rejects mixed masses or
/// inertias and points outside the fundamental domain.
struct Ensemble {
  ManifoldSpec spec;
  std::vector<ParticleState> particles;
  double time = 0.0;

  static Ensemble create(const ManifoldSpec& spec, std::vector<ParticleState> particles);
  std::size_t size() const { return particles.size(); }
};

}  // namespace ordkin
