#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "ordkin/config.hpp"
#include "ordkin/errors.hpp"
#include "ordkin/meanfield.hpp"
#include "ordkin/scenario.hpp"

namespace {

struct Globals {
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::optional<std::string> out;
};

int report(const ordkin::RunResult& r) {
  for (const auto& line : r.summary) std::cout << line << '\n';
  if (!r.output_path.empty()) std::cout << "wrote " << r.output_path << '\n';
  if (r.exit_code != 0) {
    std::cout << r.reason << '\n';
    std::cerr << "property check failed: " << r.reason << '\n';
  }
  return r.exit_code;
}

int run_file(const std::string& path, std::optional<ordkin::ScenarioKind> force, const Globals& g) {
  ordkin::ScenarioConfig c = ordkin::load_config(path, g.seed);
  if (force) c.scenario = *force;
  ordkin::RunOptions o;
  o.threads = g.threads;
  o.output_path = g.out;
  return report(ordkin::run_scenario(c, o));
}

int stability(double alpha, double beta, const Globals& g) {
  const auto type = ordkin::classify_fixed_point(alpha, beta);
  const auto [l1, l2] = ordkin::eigenvalues(alpha, beta);
  std::cout << "classification " << ordkin::fixed_point_name(type) << '\n';
  std::cout << "lambda1 " << ordkin::format_double(l1.real()) << ' ' << ordkin::format_double(l1.imag()) << '\n';
  std::cout << "lambda2 " << ordkin::format_double(l2.real()) << ' ' << ordkin::format_double(l2.imag()) << '\n';
  try {
    std::cout << "decay_rate " << ordkin::format_double(ordkin::linear_decay_rate(alpha, beta)) << '\n';
  } catch (const ordkin::NotApplicableError&) {
    std::cout << "decay_rate nan\n";
  }
  if (g.out) {
    ordkin::ScenarioConfig c;
    c.scenario = ordkin::ScenarioKind::Stability;
    c.alpha = alpha;
    c.beta = beta;
    c.seed = g.seed.value_or(0);
    c.seed_set = true;
    c.output_path = *g.out;
    return report(ordkin::run_scenario(c));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kinetic simulations of fluids with orientational order"};
  app.require_subcommand(1);
  Globals g;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Override the config seed")->expected(1);
  app.add_option("--threads", g.threads, "Worker threads (results do not depend on this)")
      ->check(CLI::PositiveNumber);
  std::string out;
  auto* out_opt = app.add_option("--out", out, "Output CSV path");

  std::string config;
  auto* simulate = app.add_subcommand("simulate", "Run the scenario described by a config file");
  simulate->add_option("config", config, "Config file")->required()->check(CLI::ExistingFile);
  auto* invariants = app.add_subcommand("invariants", "Conservation fuzz for the configured collision rule");
  invariants->add_option("config", config, "Config file")->required()->check(CLI::ExistingFile);
  auto* htest = app.add_subcommand("htest", "Relaxation run with H-functional monitoring");
  htest->add_option("config", config, "Config file")->required()->check(CLI::ExistingFile);
  auto* weakform = app.add_subcommand("weakform", "Monte Carlo weak-form tests of the collision operator");
  weakform->add_option("config", config, "Config file")->required()->check(CLI::ExistingFile);
  double alpha = 0.0, beta = 0.0;
  auto* stab = app.add_subcommand("stability", "Classify the alignment fixed point");
  stab->add_option("--alpha", alpha, "Quadratic potential stiffness")->required();
  stab->add_option("--beta", beta, "Damping coefficient")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  if (*seed_opt) g.seed = seed;
  if (*out_opt) g.out = out;

  try {
    if (*simulate) return run_file(config, std::nullopt, g);
    if (*invariants) return run_file(config, ordkin::ScenarioKind::InvariantFuzz, g);
    if (*htest) return run_file(config, ordkin::ScenarioKind::Relaxation, g);
    if (*weakform) return run_file(config, ordkin::ScenarioKind::Weakform, g);
    if (*stab) return stability(alpha, beta, g);
  } catch (const ordkin::ConfigurationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    std::cout << "REASON configuration: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    std::cout << "REASON runtime: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
