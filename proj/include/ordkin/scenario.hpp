#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ordkin/collisions.hpp"
#include "ordkin/config.hpp"
#include "ordkin/csv.hpp"
#include "ordkin/dsmc.hpp"
#include "ordkin/meanfield.hpp"

namespace ordkin {

struct RunOptions {
  int threads = 1;
  std::optional<std::string> output_path;  // overrides the config
  bool write_file = true;
};

struct RunResult {
  int exit_code = 0;
  /// Machine-readable failure line, "REASON <code>: <detail>", empty on success.
  std::string reason;
  std::string output_path;
  CsvTable table{{"t"}};
  std::vector<std::string> summary;
};

/// Runs the pipeline named by config.scenario and writes its CSV.
RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

/// theta uniform in [-pi, pi), omega uniform in [-omega_range, omega_range].
std::vector<AlignmentParticle> alignment_initial(long n, double omega_range, std::uint64_t seed);

MeanFieldSpec meanfield_spec(const ScenarioConfig& config);
KernelSpec kernel_spec(const ScenarioConfig& config);

/// Initial ensemble for collision scenarios (bimodal, maxwellian or uniform).
Ensemble collision_initial(const ScenarioConfig& config);

/// Ensemble with p_x spread `anisotropy` times wider than the other components.
Ensemble anisotropic_ensemble(const ManifoldSpec& spec, long n, double anisotropy, std::uint64_t seed,
                              double mass, double inertia);

struct FuzzReport {
  long events = 0;
  InvariantDrift max_event;   // largest single-event relative drift
  InvariantDrift cumulative;  // pool totals after all events versus the start
  double max_volume_drift = 0.0;
};

/// Collides random pairs drawn from a pool of `pool` random particles,
/// writing results back so drift accumulates. Per-event drift compares the
/// pair (placed in contact, parity resolved) before and after; cumulative
/// drift tracks pool P, E and L with the orbital change of every event and
/// the head-tail relabelling booked separately.
FuzzReport invariant_fuzz(CollisionRule rule, const ManifoldSpec& spec, long events, long pool, std::uint64_t seed,
                          double mass = 1.0, double inertia = 1.0 / 12.0,
                          const std::function<void(long, const FuzzReport&)>& progress = {});

}  // namespace ordkin
