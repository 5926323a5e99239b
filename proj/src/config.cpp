#include "ordkin/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "ordkin/collisions.hpp"
#include "ordkin/dsmc.hpp"
#include "ordkin/manifold.hpp"
#include "ordkin/meanfield.hpp"
#include "ordkin/weak_form.hpp"

namespace ordkin {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
bool parse_number(const std::string& text, T& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

using Setter = std::function<bool(ScenarioConfig&, const std::string&)>;

template <class T>
Setter number(T ScenarioConfig::*field) {
  return [field](ScenarioConfig& c, const std::string& v) { return parse_number(v, c.*field); };
}

Setter text(std::string ScenarioConfig::*field) {
  return [field](ScenarioConfig& c, const std::string& v) {
    c.*field = v;
    return !v.empty();
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"scenario",
       [](ScenarioConfig& c, const std::string& v) {
         c.scenario = scenario_from_name(v);
         return true;
       }},
      {"manifold", text(&ScenarioConfig::manifold)},
      {"rule", text(&ScenarioConfig::rule)},
      {"n_particles", number(&ScenarioConfig::n_particles)},
      {"dt", number(&ScenarioConfig::dt)},
      {"t_end", number(&ScenarioConfig::t_end)},
      {"checkpoint_every", number(&ScenarioConfig::checkpoint_every)},
      {"seed",
       [](ScenarioConfig& c, const std::string& v) {
         c.seed_set = parse_number(v, c.seed);
         return c.seed_set;
       }},
      {"potential.kind", text(&ScenarioConfig::potential_kind)},
      {"potential.alpha", number(&ScenarioConfig::alpha)},
      {"potential.beta", number(&ScenarioConfig::beta)},
      {"potential.theta_hat",
       [](ScenarioConfig& c, const std::string& v) {
         if (v == "mean") {
           c.theta_hat.reset();
           return true;
         }
         double x = 0.0;
         if (!parse_number(v, x)) return false;
         c.theta_hat = x;
         return true;
       }},
      {"potential.transport_factor", number(&ScenarioConfig::transport_factor)},
      {"potential.stats", text(&ScenarioConfig::angle_stats)},
      {"kernel.prefactor_kind", text(&ScenarioConfig::prefactor_kind)},
      {"kernel.majorant", number(&ScenarioConfig::majorant)},
      {"kernel.exchange_fraction",
       [](ScenarioConfig& c, const std::string& v) {
         if (v == "random") {
           c.exchange_fraction.reset();
           return true;
         }
         double x = 0.0;
         if (!parse_number(v, x)) return false;
         c.exchange_fraction = x;
         return true;
       }},
      {"init.kind", text(&ScenarioConfig::init_kind)},
      {"init.speed", number(&ScenarioConfig::init_speed)},
      {"init.noise", number(&ScenarioConfig::init_noise)},
      {"init.temperature", number(&ScenarioConfig::init_temperature)},
      {"init.omega_range", number(&ScenarioConfig::init_omega_range)},
      {"mass", number(&ScenarioConfig::mass)},
      {"inertia", number(&ScenarioConfig::inertia)},
      {"fuzz.events", number(&ScenarioConfig::fuzz_events)},
      {"weakform.samples", number(&ScenarioConfig::weakform_samples)},
      {"weakform.psi",
       [](ScenarioConfig& c, const std::string& v) {
         c.weakform_psi = split_list(v);
         return !c.weakform_psi.empty();
       }},
      {"weakform.anisotropy", number(&ScenarioConfig::weakform_anisotropy)},
      {"output_path", text(&ScenarioConfig::output_path)},
  };
  return table;
}

bool collision_scenario(ScenarioKind k) {
  return k == ScenarioKind::Relaxation || k == ScenarioKind::InvariantFuzz || k == ScenarioKind::Weakform ||
         k == ScenarioKind::Equilibrium;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
  return out;
}

}  // namespace

ScenarioKind scenario_from_name(std::string_view name) {
  if (name == "relaxation") return ScenarioKind::Relaxation;
  if (name == "alignment") return ScenarioKind::Alignment;
  if (name == "stability") return ScenarioKind::Stability;
  if (name == "invariant_fuzz") return ScenarioKind::InvariantFuzz;
  if (name == "weakform") return ScenarioKind::Weakform;
  if (name == "equilibrium") return ScenarioKind::Equilibrium;
  throw ConfigurationError("unknown scenario '" + std::string(name) +
                           "' (expected relaxation, alignment, stability, invariant_fuzz, weakform, equilibrium)");
}

std::string_view scenario_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Relaxation: return "relaxation";
    case ScenarioKind::Alignment: return "alignment";
    case ScenarioKind::Stability: return "stability";
    case ScenarioKind::InvariantFuzz: return "invariant_fuzz";
    case ScenarioKind::Weakform: return "weakform";
    case ScenarioKind::Equilibrium: return "equilibrium";
  }
  return "?";
}

long ScenarioConfig::steps() const { return std::lround(t_end / dt); }

ConfigError::ConfigError(std::vector<std::string> problems)
    : ConfigurationError([&] {
        std::string msg = "invalid configuration:";
        for (const auto& p : problems) msg += "\n  " + p;
        return msg;
      }()),
      problems_(std::move(problems)) {}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> validate(const ScenarioConfig& c) {
  std::vector<std::string> bad;
  auto check = [&](bool ok, const std::string& msg) {
    if (!ok) bad.push_back(msg);
  };
  check(c.seed_set, "seed: required (no default seed is drawn from the environment)");
  check(std::isfinite(c.dt) && c.dt > 0.0, "dt: must be positive");
  check(std::isfinite(c.t_end) && c.t_end >= 0.0, "t_end: must be non-negative");
  check(c.checkpoint_every >= 1, "checkpoint_every: must be at least 1");
  check(c.mass > 0.0, "mass: must be positive");
  check(c.inertia > 0.0, "inertia: must be positive");
  if (collision_scenario(c.scenario)) check(c.n_particles >= 2, "n_particles: collision scenarios need at least 2");
  check(c.n_particles >= 1, "n_particles: must be positive");

  std::optional<ManifoldSpec> spec;
  try {
    spec = ManifoldSpec::from_name(c.manifold);
  } catch (const ConfigurationError& e) {
    bad.push_back(std::string("manifold: ") + e.what());
  }
  std::optional<CollisionRule> rule;
  try {
    rule = rule_from_name(c.rule);
  } catch (const ConfigurationError& e) {
    bad.push_back(std::string("rule: ") + e.what());
  }
  if (spec && rule && !rule_compatible(*rule, *spec)) {
    bad.push_back("rule: " + c.rule + " is incompatible with manifold " + c.manifold);
  }
  try {
    const PotentialKind k = potential_from_name(c.potential_kind);
    check(k != PotentialKind::Table, "potential.kind: table potentials are only available through the library");
  } catch (const ConfigurationError& e) {
    bad.push_back(std::string("potential.kind: ") + e.what());
  }
  check(std::isfinite(c.alpha), "potential.alpha: must be finite");
  check(std::isfinite(c.beta), "potential.beta: must be finite");
  check(!c.theta_hat || std::isfinite(*c.theta_hat), "potential.theta_hat: must be finite or 'mean'");
  check(std::isfinite(c.transport_factor), "potential.transport_factor: must be finite");
  try {
    angle_stats_from_name(c.angle_stats);
  } catch (const ConfigurationError& e) {
    bad.push_back(std::string("potential.stats: ") + e.what());
  }
  try {
    const PrefactorKind k = prefactor_from_name(c.prefactor_kind);
    check(k != PrefactorKind::Custom, "kernel.prefactor_kind: custom prefactors are only available through the library");
    if (k == PrefactorKind::BubbleMean) {
      check(c.manifold == "interval", "kernel.prefactor_kind: bubble_mean needs the interval manifold");
    }
  } catch (const ConfigurationError& e) {
    bad.push_back(std::string("kernel.prefactor_kind: ") + e.what());
  }
  check(c.majorant >= 0.0, "kernel.majorant: must be non-negative");
  check(!c.exchange_fraction || (*c.exchange_fraction >= 0.0 && *c.exchange_fraction <= 1.0),
        "kernel.exchange_fraction: must lie in [0, 1] or be 'random'");
  check(c.init_kind == "bimodal" || c.init_kind == "maxwellian" || c.init_kind == "uniform",
        "init.kind: expected bimodal, maxwellian or uniform");
  check(c.init_temperature > 0.0, "init.temperature: must be positive");
  check(c.init_noise >= 0.0, "init.noise: must be non-negative");
  check(c.init_omega_range >= 0.0, "init.omega_range: must be non-negative");
  check(c.fuzz_events >= 1, "fuzz.events: must be positive");
  check(c.weakform_samples >= 2, "weakform.samples: must be at least 2");
  check(c.weakform_anisotropy > 0.0, "weakform.anisotropy: must be positive");
  for (const auto& name : c.weakform_psi) {
    try {
      observable_from_name(name);
    } catch (const ConfigurationError& e) {
      bad.push_back(std::string("weakform.psi: ") + e.what());
    }
  }
  check(!c.output_path.empty(), "output_path: must not be empty");
  return bad;
}

ScenarioConfig parse_config(std::string_view input, std::optional<std::uint64_t> seed_override) {
  ScenarioConfig c;
  std::vector<std::string> bad;
  std::set<std::string> seen;
  std::istringstream in{std::string(input)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      bad.push_back("line " + std::to_string(number) + ": expected 'key = value'");
      continue;
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      bad.push_back(key + ": unknown key");
      continue;
    }
    if (!seen.insert(key).second) {
      bad.push_back(key + ": given more than once");
      continue;
    }
    try {
      if (!it->second(c, value)) bad.push_back(key + ": cannot parse '" + value + "'");
    } catch (const ConfigurationError& e) {
      bad.push_back(key + ": " + e.what());
    }
  }
  if (!seen.count("scenario")) bad.push_back("scenario: required key missing");
  if (seed_override) {
    c.seed = *seed_override;
    c.seed_set = true;
  }
  auto more = validate(c);
  bad.insert(bad.end(), more.begin(), more.end());
  if (!bad.empty()) throw ConfigError(std::move(bad));
  return c;
}

ScenarioConfig load_config(const std::string& path, std::optional<std::uint64_t> seed_override) {
  std::ifstream f(path);
  if (!f) throw ConfigurationError("cannot open config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), seed_override);
}

std::string serialize_config(const ScenarioConfig& c) {
  std::ostringstream o;
  o << "scenario = " << scenario_name(c.scenario) << '\n'
    << "manifold = " << c.manifold << '\n'
    << "rule = " << c.rule << '\n'
    << "n_particles = " << c.n_particles << '\n'
    << "dt = " << format_double(c.dt) << '\n'
    << "t_end = " << format_double(c.t_end) << '\n'
    << "checkpoint_every = " << c.checkpoint_every << '\n';
  if (c.seed_set) o << "seed = " << c.seed << '\n';
  o << "potential.kind = " << c.potential_kind << '\n'
    << "potential.alpha = " << format_double(c.alpha) << '\n'
    << "potential.beta = " << format_double(c.beta) << '\n'
    << "potential.theta_hat = " << (c.theta_hat ? format_double(*c.theta_hat) : "mean") << '\n'
    << "potential.transport_factor = " << format_double(c.transport_factor) << '\n'
    << "potential.stats = " << c.angle_stats << '\n'
    << "kernel.prefactor_kind = " << c.prefactor_kind << '\n'
    << "kernel.majorant = " << format_double(c.majorant) << '\n'
    << "kernel.exchange_fraction = " << (c.exchange_fraction ? format_double(*c.exchange_fraction) : "random")
    << '\n'
    << "init.kind = " << c.init_kind << '\n'
    << "init.speed = " << format_double(c.init_speed) << '\n'
    << "init.noise = " << format_double(c.init_noise) << '\n'
    << "init.temperature = " << format_double(c.init_temperature) << '\n'
    << "init.omega_range = " << format_double(c.init_omega_range) << '\n'
    << "mass = " << format_double(c.mass) << '\n'
    << "inertia = " << format_double(c.inertia) << '\n'
    << "fuzz.events = " << c.fuzz_events << '\n'
    << "weakform.samples = " << c.weakform_samples << '\n'
    << "weakform.psi = " << join(c.weakform_psi) << '\n'
    << "weakform.anisotropy = " << format_double(c.weakform_anisotropy) << '\n'
    << "output_path = " << c.output_path << '\n';
  return o.str();
}

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b) {
  return serialize_config(a) == serialize_config(b);
}

}  // namespace ordkin
