#pragma once

#include <string>
#include <string_view>

#include "ordkin/rotation.hpp"
#include "ordkin/types.hpp"

namespace ordkin {

enum class ManifoldKind { Interval01, CircleS1, ProjectiveRP1, SphereS2 };
enum class ActionKind { Trivial, VectorRotation, Conjugation };

/// An order-parameter manifold together with its SO(d) action.
struct ManifoldSpec {
  ManifoldKind kind;
  int chart_dim;   // iota
  int embed_dim;   // 1, 2, 4 (flattened 2x2 matrix), 3
  ActionKind action;
  int space_dim;   // d of the ambient Euclidean space the particles move in

  static ManifoldSpec of(ManifoldKind kind);
  /// "interval", "s1", "rp1", "s2".
  static ManifoldSpec from_name(std::string_view name);

  std::string_view name() const;
  bool transitive() const { return action != ActionKind::Trivial; }
  /// Period of the chart angle for S1 (2 pi) and RP1 (pi); zero otherwise.
  double chart_period() const;
};

/// A point of the manifold in its chart. One-dimensional manifolds use
/// `coordinate` (volume fraction or angle); the sphere uses the unit vector
/// `direction`.
struct OrderParameter {
  double coordinate = 0.0;
  Vec3 direction = Vec3::UnitZ();

  static OrderParameter scalar(double c) { return {c, Vec3::UnitZ()}; }
  static OrderParameter unit(const Vec3& d) { return {0.0, d.normalized()}; }
};

/// Tangent vector at `base`, stored as coefficients in the chart basis.
/// For S2 the basis is the orthonormal frame returned by tangent_frame().
struct TangentVector {
  OrderParameter base;
  VecX components;
};

/// Wraps an angle into [0, period).
double wrap_angle(double theta, double period);

/// Orthonormal basis (e1, e2) of the tangent plane of S2 at `nu`, with
/// e1 x e2 = nu. Deterministic in `nu`.
std::pair<Vec3, Vec3> tangent_frame(const Vec3& nu);

/// Maps the chart point into the fundamental domain.
OrderParameter canonical(const ManifoldSpec& spec, const OrderParameter& nu);

VecX embed(const ManifoldSpec& spec, const OrderParameter& nu);
OrderParameter from_embedding(const ManifoldSpec& spec, const VecX& e);

/// Unit director in R^3 for S1/RP1/S2 (a representative for RP1).
Vec3 director(const ManifoldSpec& spec, const OrderParameter& nu);

/// The group action A(Q, nu).
OrderParameter act(const ManifoldSpec& spec, const Rotation& q, const OrderParameter& nu);

/// Linear extension of the action to the embedding space (Q v for vector
/// actions, Q X Q^T for the conjugation action on RP1, identity if trivial).
VecX act_embedded(const ManifoldSpec& spec, const Rotation& q, const VecX& e);

/// Embedding of the chart basis vectors at nu, one per column.
MatX chart_basis(const ManifoldSpec& spec, const OrderParameter& nu);

VecX to_embedding(const ManifoldSpec& spec, const TangentVector& v);
/// Orthogonal projection of an embedded vector onto T_nu, in chart coefficients.
TangentVector to_tangent(const ManifoldSpec& spec, const OrderParameter& nu, const VecX& embedded);

/// A_nu q, the infinitesimal generator of the action evaluated on the algebra element q.
TangentVector infinitesimal_generator(const ManifoldSpec& spec, const OrderParameter& nu, const Rotation& q);

struct ChartStep {
  OrderParameter point;
  bool clamped = false;  // Interval01 hit a boundary; caller zeroes the conjugate momentum
};

/// First-order retraction nu + dt * nu_dot, renormalised into the fundamental domain.
ChartStep chart_step(const ManifoldSpec& spec, const OrderParameter& nu, const VecX& velocity, double dt);

/// Geodesic-free chart distance modulo the chart identification.
double chart_distance(const ManifoldSpec& spec, const OrderParameter& a, const OrderParameter& b);

}  // namespace ordkin
