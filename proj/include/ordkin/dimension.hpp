#pragma once

#include <cstdint>
#include <utility>

#include "ordkin/collisions.hpp"

namespace ordkin {

/// Dimension of the set of post-collision states allowed by the
/// conservation laws, measured as ambient dimension minus the numerical
/// rank of the constraint Jacobian.
///
/// Post-state coordinates: both momenta, plus both volume fractions for
/// bubbles, plus both conjugate momenta in chart coordinates for rods.
/// Constraints: P, E, total volume for bubbles, and generalized L for rods
/// (L is evaluated at contact positions x2 = x1 + r1 - r2). For spheres the
/// contact normal is an outcome variable, so orbital L does not constrain
/// the momenta.
struct DimensionProbe {
  int ambient = 0;
  int rank = 0;
  int constraints = 0;
  int dimension() const { return ambient - rank; }
};

/// Single probe at the post state of `base` under `geom`.
DimensionProbe probe_dimension(CollisionRule rule, const ManifoldSpec& spec, const ParticleState& s1,
                               const ParticleState& s2, const CollisionGeometry& geom, double rank_tol = 1e-8);

/// Runs `probes` random geometries from the base pair and returns the
/// smallest dimension found. Throws DegenerateInputError when every probe
/// is rank deficient.
int post_collision_manifold_dim(CollisionRule rule, const ManifoldSpec& spec,
                                const std::pair<ParticleState, ParticleState>& base, int probes, std::uint64_t seed,
                                double rank_tol = 1e-8);

/// d + iota - 1 with the (d, iota) pairs listed for the five examples: 2, 3, 4, 2, 3.
int tabulated_dimension(CollisionRule rule);

}  // namespace ordkin
