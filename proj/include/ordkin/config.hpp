#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ordkin/errors.hpp"

namespace ordkin {

enum class ScenarioKind { Relaxation, Alignment, Stability, InvariantFuzz, Weakform, Equilibrium };

ScenarioKind scenario_from_name(std::string_view name);
std::string_view scenario_name(ScenarioKind kind);

/// Run description. Text form is one `key = value` per line with dotted
/// keys; `#` starts a comment.
///
///   scenario            relaxation | alignment | stability | invariant_fuzz | weakform | equilibrium
///   manifold            interval | s1 | rp1 | s2
///   rule                hard_sphere | bubbles | calamitic3d | calamitic2d | headtail2d
///   n_particles, dt, t_end, checkpoint_every, seed
///   potential.kind      quadratic | cosine
///   potential.alpha, potential.beta
///   potential.theta_hat number | mean
///   potential.transport_factor, potential.stats (lifted | circular)
///   kernel.prefactor_kind unit | bubble_mean
///   kernel.majorant     0 selects the automatic bound
///   kernel.exchange_fraction number | random
///   init.kind           bimodal | maxwellian | uniform
///   init.speed, init.noise, init.temperature, init.omega_range
///   mass, inertia
///   fuzz.events, weakform.samples, weakform.psi (comma list), weakform.anisotropy
///   output_path
struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::Relaxation;
  std::string manifold = "s1";
  std::string rule = "calamitic2d";
  long n_particles = 10000;
  double dt = 0.01;
  double t_end = 1.0;
  long checkpoint_every = 10;
  std::uint64_t seed = 0;
  bool seed_set = false;

  std::string potential_kind = "quadratic";
  double alpha = 1.0;
  double beta = 1.0;
  std::optional<double> theta_hat = 0.4;  // empty means ensemble mean
  double transport_factor = 1.0;
  std::string angle_stats = "lifted";

  std::string prefactor_kind = "unit";
  double majorant = 0.0;
  std::optional<double> exchange_fraction;  // empty means random per event

  std::string init_kind = "bimodal";
  double init_speed = 1.0;
  double init_noise = 0.1;
  double init_temperature = 1.0;
  double init_omega_range = 1.0;
  double mass = 1.0;
  double inertia = 1.0 / 12.0;

  long fuzz_events = 1000000;
  long weakform_samples = 1000000;
  std::vector<std::string> weakform_psi = {"one", "px", "py", "L", "energy"};
  double weakform_anisotropy = 2.0;

  std::string output_path = "out.csv";

  long steps() const;
};

/// All problems found while parsing, one per line, each naming its key.
class ConfigError : public ConfigurationError {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// `seed_override` replaces any seed in the text before validation.
ScenarioConfig parse_config(std::string_view text, std::optional<std::uint64_t> seed_override = std::nullopt);
ScenarioConfig load_config(const std::string& path, std::optional<std::uint64_t> seed_override = std::nullopt);

/// Canonical text form; parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const ScenarioConfig& config);

/// Checks every invariant and the rule/manifold pairing; returns the
/// problems found (empty when valid).
std::vector<std::string> validate(const ScenarioConfig& config);

/// Formats a double with 17 significant digits.
std::string format_double(double v);

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b);

}  // namespace ordkin
