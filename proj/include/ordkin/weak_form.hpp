#pragma once

#include <cstdint>
#include <functional>
#include <string_view>

#include "ordkin/dsmc.hpp"

namespace ordkin {

enum class Observable { One, Px, Py, Pz, L, Lx, Ly, Energy, PxSquared, Custom };

/// "one", "px", "py", "pz", "L" (z component), "Lx", "Ly", "energy", "px2".
Observable observable_from_name(std::string_view name);
std::string_view observable_name(Observable psi);

/// Per-particle test function psi(state) on the given manifold.
double evaluate_observable(Observable psi, const ManifoldSpec& spec, const ParticleState& s,
                           const std::function<double(const ParticleState&)>& custom = {});

struct WeakFormResult {
  double estimate = 0.0;
  double std_error = 0.0;
  /// Rounding allowance: 64 eps times the mean |rate * psi| of the terms.
  double floor = 0.0;
  long samples = 0;
  bool zero_consistent() const;  // |estimate| <= 3 std_error + floor
};

/// Monte Carlo estimate of int psi C[f, f]: the mean over random pairs and
/// geometries of rate * (psi(1') + psi(2') - psi(1) - psi(2)). Pairs are
/// placed in contact (x1 = 0, x2 = r1 - r2) so orbital L is meaningful;
/// head-tail events are measured from the parity-resolved pre state.
WeakFormResult weak_form_test(const Ensemble& ens, const KernelSpec& kernel, Observable psi, long samples,
                              std::uint64_t seed, int threads = 1,
                              const std::function<double(const ParticleState&)>& custom = {});

struct ReciprocityResult {
  double max_det_deviation = 0.0;  // max ||det J| - 1|
  double max_involution_error = 0.0;
};

/// Jacobian of the pre to post momentum map (p1, p2, sigma1, sigma2) at
/// fixed geometry by central differences, and the error of applying the
/// rule twice. Random states use the rule's natural manifold.
ReciprocityResult reciprocity_check(CollisionRule rule, int trials, std::uint64_t seed);

}  // namespace ordkin
