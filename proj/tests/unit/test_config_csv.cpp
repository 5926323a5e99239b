#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "ordkin/config.hpp"
#include "ordkin/csv.hpp"
#include "ordkin/scenario.hpp"

using namespace ordkin;

namespace {

const char* kAlignment = R"(# middle panel
scenario = alignment
manifold = s1
n_particles = 1000
dt = 0.01
t_end = 30
checkpoint_every = 100
seed = 7
potential.kind = quadratic
potential.alpha = 1
potential.beta = 1
potential.theta_hat = 0.4
init.omega_range = 1
output_path = unused.csv
)";

bool mentions(const ConfigError& e, const std::string& key) {
  for (const auto& p : e.problems())
    if (p.find(key) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("parse and serialize round trip") {
  const ScenarioConfig c = parse_config(kAlignment);
  CHECK(c.scenario == ScenarioKind::Alignment);
  CHECK(c.alpha == 1.0);
  CHECK(c.beta == 1.0);
  CHECK(c.theta_hat.value() == 0.4);
  const ScenarioConfig back = parse_config(serialize_config(c));
  CHECK(back == c);
  CHECK(serialize_config(back) == serialize_config(c));
}

TEST_CASE("round trip keeps awkward values") {
  ScenarioConfig c;
  c.seed = 18446744073709551615ULL;
  c.seed_set = true;
  c.dt = 0.1 + 0.2;
  c.theta_hat.reset();
  c.exchange_fraction = 1.0 / 3.0;
  c.weakform_psi = {"px", "px2"};
  c.rule = "bubbles";
  c.manifold = "interval";
  c.prefactor_kind = "bubble_mean";
  const ScenarioConfig back = parse_config(serialize_config(c));
  CHECK(back == c);
  CHECK(back.dt == c.dt);
  CHECK(!back.theta_hat.has_value());
  CHECK(back.exchange_fraction.value() == 1.0 / 3.0);
}

TEST_CASE("every problem is reported") {
  try {
    parse_config("scenario = relaxation\nrule = calamitic3d\nmanifold = rp1\ndt = -1\nbogus = 3\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(mentions(e, "seed"));
    CHECK(mentions(e, "bogus"));
    CHECK(mentions(e, "dt"));
    CHECK(mentions(e, "rp1"));
  }
  CHECK_THROWS_AS(parse_config("scenario = alignment\nseed = 1\nseed = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("seed = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("scenario = alignment\nseed = 1\ndt = abc\n"), ConfigError);
}

TEST_CASE("seed override") {
  const ScenarioConfig c = parse_config(kAlignment, 99);
  CHECK(c.seed == 99);
  const ScenarioConfig d = parse_config("scenario = stability\n", 5);
  CHECK(d.seed == 5);
}

TEST_CASE("csv formatting") {
  CsvTable t({"a", "b"});
  t.comment("note");
  t.add_row({0.1, 1.0 / 3.0});
  CHECK(t.str() == "# note\na,b\n0.10000000000000001,0.33333333333333331\n");
  CHECK_THROWS(t.add_row({1.0}));
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("atomic write") {
  const auto path = std::filesystem::temp_directory_path() / "ordkin_atomic_test.csv";
  CsvTable t({"x"});
  t.add_row({2.0});
  t.write_atomic(path.string());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == t.str());
  std::filesystem::remove(path);
}

TEST_CASE("alignment scenario output") {
  RunOptions o;
  o.write_file = false;
  const RunResult a = run_scenario(parse_config(kAlignment), o);
  CHECK(a.exit_code == 0);
  const std::string text = a.table.str();
  CHECK(text.find("# schema_version = 1") != std::string::npos);
  CHECK(text.find("# seed = 7") != std::string::npos);
  CHECK(text.find(std::string("# build = ") + build_id()) != std::string::npos);
  CHECK(text.find("# config: potential.alpha = 1") != std::string::npos);
  const auto& last = a.table.row(a.table.rows() - 1);
  CHECK(std::stod(last[0]) == doctest::Approx(30.0));
  CHECK(std::abs(std::stod(last[1]) - 0.4) < 0.02);

  o.threads = 3;
  CHECK(run_scenario(parse_config(kAlignment), o).table.str() == text);
}

TEST_CASE("stability scenario") {
  RunOptions o;
  o.write_file = false;
  const RunResult r = run_scenario(parse_config("scenario = stability\nseed = 1\npotential.alpha = -1\npotential.beta = 0\n"), o);
  CHECK(r.table.row(0)[2] == "saddle");
}
