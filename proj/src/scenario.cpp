#include "ordkin/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ordkin/entropy.hpp"
#include "ordkin/errors.hpp"
#include "ordkin/rng.hpp"
#include "ordkin/weak_form.hpp"

namespace ordkin {

namespace {

constexpr std::uint64_t kInitStream = 0x696e6974ULL;

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

void header(CsvTable& t, const ScenarioConfig& c) {
  t.comment("schema_version = " + std::to_string(kCsvSchemaVersion));
  t.comment(std::string("build = ") + build_id());
  t.comment("scenario = " + std::string(scenario_name(c.scenario)));
  t.comment("seed = " + std::to_string(c.seed));
  t.comment("columns = " + join(t.columns(), ","));
  t.comment_block("config: ", serialize_config(c));
}

ManifoldSpec manifold_of(const ScenarioConfig& c) { return ManifoldSpec::from_name(c.manifold); }

template <class Rng>
void set_random_order(const ManifoldSpec& spec, ParticleState& s, Rng& rng) {
  switch (spec.kind) {
    case ManifoldKind::Interval01: s.nu = OrderParameter::scalar(uniform01(rng)); break;
    case ManifoldKind::CircleS1:
    case ManifoldKind::ProjectiveRP1: s.nu = OrderParameter::scalar(uniform(rng, 0.0, spec.chart_period())); break;
    case ManifoldKind::SphereS2: s.nu = OrderParameter::unit(random_unit(rng, 3)); break;
  }
}

template <class Rng>
Vec3 random_spin(const ManifoldSpec& spec, const ParticleState& s, Rng& rng, double scale) {
  if (!spec.transitive()) return Vec3::Zero();
  if (spec.space_dim == 2) return {0.0, 0.0, scale * standard_normal(rng)};
  const auto [e1, e2] = tangent_frame(s.nu.direction);
  return scale * (standard_normal(rng) * e1 + standard_normal(rng) * e2);
}

std::vector<std::string> momentum_columns(int d) {
  std::vector<std::string> c{"Px", "Py"};
  if (d == 3) c.push_back("Pz");
  return c;
}

std::vector<std::string> l_columns(int d) {
  if (d == 2) return {"L"};
  return {"Lx", "Ly", "Lz"};
}

void append(std::vector<double>& row, const Vec3& v, int n) {
  for (int k = 0; k < n; ++k) row.push_back(v(k));
}

RunResult finish(RunResult r, const ScenarioConfig& c, const RunOptions& o) {
  r.output_path = o.output_path ? *o.output_path : c.output_path;
  if (o.write_file) r.table.write_atomic(r.output_path);
  return r;
}

RunResult run_alignment(const ScenarioConfig& c, const RunOptions& o) {
  RunResult r;
  r.table = CsvTable({"t", "mean_theta", "std_theta", "mean_omega", "std_omega", "theta_hat"});
  header(r.table, c);
  r.table.comment("angle_stats = " + c.angle_stats);
  const MeanFieldSpec spec = meanfield_spec(c);
  auto ens = alignment_initial(c.n_particles, c.init_omega_range, c.seed);
  const auto stats = integrate_ensemble(ens, spec, c.dt, c.steps(), c.checkpoint_every, o.threads);
  for (const auto& s : stats) r.table.add_row({s.t, s.mean_theta, s.std_theta, s.mean_omega, s.std_omega, s.theta_hat});
  const auto& last = stats.back();
  r.summary.push_back("classification " + std::string(fixed_point_name(classify_fixed_point(c.alpha, c.beta))));
  r.summary.push_back("final mean_theta " + format_double(last.mean_theta) + " std_theta " +
                      format_double(last.std_theta));
  return finish(std::move(r), c, o);
}

RunResult run_stability(const ScenarioConfig& c, const RunOptions& o) {
  RunResult r;
  r.table = CsvTable({"alpha", "beta", "classification", "re_lambda1", "im_lambda1", "re_lambda2", "im_lambda2",
                      "decay_rate"});
  header(r.table, c);
  const auto [l1, l2] = eigenvalues(c.alpha, c.beta);
  const FixedPointType type = classify_fixed_point(c.alpha, c.beta);
  std::string decay = "nan";
  try {
    decay = format_double(linear_decay_rate(c.alpha, c.beta));
  } catch (const NotApplicableError&) {
  }
  r.table.add_text_row({format_double(c.alpha), format_double(c.beta), std::string(fixed_point_name(type)),
                        format_double(l1.real()), format_double(l1.imag()), format_double(l2.real()),
                        format_double(l2.imag()), decay});
  r.summary.push_back("classification " + std::string(fixed_point_name(type)));
  return finish(std::move(r), c, o);
}

RunResult run_relaxation(const ScenarioConfig& c, const RunOptions& o) {
  const ManifoldSpec spec = manifold_of(c);
  const int d = spec.space_dim;
  std::vector<std::string> cols{"t", "H", "H_sigma"};
  for (auto& s : momentum_columns(d)) cols.push_back(s);
  for (auto& s : l_columns(d)) cols.push_back(s);
  for (const char* s : {"E", "m2_px", "m2_py", "kurt_px", "n_collisions"}) cols.push_back(s);
  RunResult r;
  r.table = CsvTable(cols);
  header(r.table, c);
  const bool with_order = !spec.transitive();
  r.table.comment(std::string("entropy_variables = p") + (spec.transitive() ? ",sigma" : "") +
                  (with_order ? ",nu" : ""));

  DsmcSolver solver(collision_initial(c), kernel_spec(c), c.seed, o.threads);
  EntropyOptions eo;
  eo.threads = o.threads;
  std::vector<EntropyEstimate> hs;
  auto record = [&](double t) {
    const EntropyEstimate h = h_functional(solver.ensemble(), eo, with_order);
    hs.push_back(h);
    const InvariantSet inv = solver.invariants();
    const Moments m = moments(solver.ensemble());
    std::vector<double> row{t, h.H, h.sigma};
    append(row, inv.P, d);
    if (d == 2) {
      row.push_back(inv.L.z());
    } else {
      append(row, inv.L, 3);
    }
    row.insert(row.end(), {inv.E, m.var_p.x(), m.var_p.y(), m.kurt_px,
                           static_cast<double>(solver.counters().accepted)});
    r.table.add_row(row);
  };
  record(0.0);
  const long steps = c.steps();
  for (long k = 1; k <= steps; ++k) {
    solver.step(c.dt);
    if (k % c.checkpoint_every == 0 || k == steps) record(static_cast<double>(k) * c.dt);
  }
  int increases = 0;
  for (std::size_t k = 1; k < hs.size(); ++k) {
    const double tol = 3.0 * std::hypot(hs[k].sigma, hs[k - 1].sigma);
    if (hs[k].H > hs[k - 1].H + tol) ++increases;
  }
  const Moments m = moments(solver.ensemble());
  r.summary.push_back("checkpoints " + std::to_string(hs.size()) + " H_increases " + std::to_string(increases));
  r.summary.push_back("final kurt_px " + format_double(m.kurt_px) + " m2_px " + format_double(m.var_p.x()) +
                      " m2_py " + format_double(m.var_p.y()));
  r.summary.push_back("collisions " + std::to_string(solver.counters().accepted) + " majorant_violations " +
                      std::to_string(solver.counters().majorant_violations));
  if (solver.counters().majorant_violations > 0) {
    r.exit_code = 3;
    r.reason = "REASON majorant_violation: " + std::to_string(solver.counters().majorant_violations) + " events";
  } else if (increases > 0) {
    r.exit_code = 3;
    r.reason = "REASON h_increase: " + std::to_string(increases) + " checkpoints exceed 3 sigma";
  }
  return finish(std::move(r), c, o);
}

RunResult run_equilibrium(const ScenarioConfig& c, const RunOptions& o) {
  const ManifoldSpec spec = manifold_of(c);
  RunResult r;
  r.table = CsvTable({"t", "mean_px", "mean_py", "m2_px", "m2_py", "var_sigma", "kurt_px", "E", "n_collisions"});
  header(r.table, c);
  MaxwellianParams mp;
  mp.d = -1.0 / (2.0 * c.init_temperature);
  DsmcSolver solver(sample_maxwellian(mp, spec, c.n_particles, c.seed, c.mass, c.inertia), kernel_spec(c), c.seed,
                    o.threads);
  const double n = static_cast<double>(c.n_particles);
  std::vector<std::vector<double>> rows;
  auto record = [&](double t) {
    const Moments m = moments(solver.ensemble());
    const double e = kinetic_energy(solver.ensemble().particles, spec);
    rows.push_back({t, m.mean_p.x(), m.mean_p.y(), m.var_p.x(), m.var_p.y(), m.var_sigma,
                    m.kurt_px, e, static_cast<double>(solver.counters().accepted)});
    r.table.add_row(rows.back());
  };
  record(0.0);
  const long steps = c.steps();
  for (long k = 1; k <= steps; ++k) {
    solver.step(c.dt);
    if (k % c.checkpoint_every == 0 || k == steps) record(static_cast<double>(k) * c.dt);
  }
  // Standard error of the difference of two estimates, per tracked moment.
  const auto& first = rows.front();
  const std::vector<std::pair<int, double>> tracked = {
      {1, std::sqrt(first[3] / n)},         {2, std::sqrt(first[4] / n)},
      {3, first[3] * std::sqrt(2.0 / n)},   {4, first[4] * std::sqrt(2.0 / n)},
      {5, first[5] * std::sqrt(2.0 / n)},   {6, std::sqrt(24.0 / n)}};
  const std::vector<std::string> names = r.table.columns();
  double worst = 0.0;
  std::string worst_name;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    for (const auto& [col, se] : tracked) {
      if (se <= 0.0) continue;
      const double z = std::abs(rows[k][col] - first[col]) / (std::sqrt(2.0) * se);
      if (z > worst) {
        worst = z;
        worst_name = names[col];
      }
    }
  }
  r.summary.push_back("checkpoints " + std::to_string(rows.size() - 1) + " worst_z " + format_double(worst) + " (" +
                      worst_name + ")");
  if (worst > 3.0) {
    r.exit_code = 3;
    r.reason = "REASON moment_drift: " + worst_name + " moved " + format_double(worst) + " sigma";
  }
  return finish(std::move(r), c, o);
}

RunResult run_fuzz(const ScenarioConfig& c, const RunOptions& o) {
  const ManifoldSpec spec = manifold_of(c);
  const CollisionRule rule = rule_from_name(c.rule);
  RunResult r;
  r.table = CsvTable({"events", "drift_P", "drift_L", "drift_E", "cumulative_P", "cumulative_L", "cumulative_E",
                      "drift_volume"});
  header(r.table, c);
  auto row = [&](long, const FuzzReport& f) {
    r.table.add_row({static_cast<double>(f.events), f.max_event.P, f.max_event.L, f.max_event.E, f.cumulative.P,
                     f.cumulative.L, f.cumulative.E, f.max_volume_drift});
  };
  const FuzzReport f = invariant_fuzz(rule, spec, c.fuzz_events, c.n_particles, c.seed, c.mass, c.inertia, row);
  r.summary.push_back("events " + std::to_string(f.events) + " max_event_drift " + format_double(f.max_event.max()) +
                      " cumulative_drift " + format_double(f.cumulative.max()));
  if (f.max_event.max() >= 1e-10 || f.max_volume_drift >= 1e-15) {
    r.exit_code = 3;
    r.reason = "REASON event_drift: " + format_double(std::max(f.max_event.max(), f.max_volume_drift));
  } else if (f.cumulative.max() >= 1e-8) {
    r.exit_code = 3;
    r.reason = "REASON cumulative_drift: " + format_double(f.cumulative.max());
  }
  return finish(std::move(r), c, o);
}

RunResult run_weakform(const ScenarioConfig& c, const RunOptions& o) {
  const ManifoldSpec spec = manifold_of(c);
  RunResult r;
  r.table = CsvTable({"psi", "estimate", "std_error", "floor", "zero_consistent"});
  header(r.table, c);
  const Ensemble ens = anisotropic_ensemble(spec, c.n_particles, c.weakform_anisotropy, c.seed, c.mass, c.inertia);
  const KernelSpec kernel = kernel_spec(c);
  std::vector<std::string> failed;
  for (std::size_t i = 0; i < c.weakform_psi.size(); ++i) {
    const Observable psi = observable_from_name(c.weakform_psi[i]);
    const WeakFormResult w = weak_form_test(ens, kernel, psi, c.weakform_samples, Philox::mix(c.seed + i), o.threads);
    const bool zero = w.zero_consistent();
    r.table.add_text_row({c.weakform_psi[i], format_double(w.estimate), format_double(w.std_error),
                          format_double(w.floor), zero ? "1" : "0"});
    const bool invariant = psi != Observable::PxSquared;
    r.summary.push_back(c.weakform_psi[i] + " " + format_double(w.estimate) + " " + format_double(w.std_error) + " " +
                        (zero == invariant ? "pass" : "fail"));
    if (zero != invariant) failed.push_back(c.weakform_psi[i]);
  }
  if (!failed.empty()) {
    r.exit_code = 3;
    r.reason = "REASON weak_form: " + join(failed, ",");
  }
  return finish(std::move(r), c, o);
}

}  // namespace

std::vector<AlignmentParticle> alignment_initial(long n, double omega_range, std::uint64_t seed) {
  if (n < 1) throw ConfigurationError("alignment ensemble needs at least one particle");
  std::vector<AlignmentParticle> ens(static_cast<std::size_t>(n));
  Philox rng(seed, kInitStream);
  for (auto& p : ens) {
    p.theta = uniform(rng, -kPi, kPi);
    p.omega = uniform(rng, -omega_range, omega_range);
  }
  return ens;
}

MeanFieldSpec meanfield_spec(const ScenarioConfig& c) {
  MeanFieldSpec s;
  s.kind = potential_from_name(c.potential_kind);
  s.alpha = c.alpha;
  s.beta = c.beta;
  s.mode = c.theta_hat ? ThetaHatMode::Fixed : ThetaHatMode::EnsembleMean;
  s.theta_hat = c.theta_hat.value_or(0.0);
  s.transport_factor = c.transport_factor;
  s.stats = angle_stats_from_name(c.angle_stats);
  return s;
}

KernelSpec kernel_spec(const ScenarioConfig& c) {
  KernelSpec k;
  k.rule = rule_from_name(c.rule);
  k.prefactor = prefactor_from_name(c.prefactor_kind);
  k.majorant = c.majorant;
  k.exchange_fraction = c.exchange_fraction;
  return k;
}

Ensemble collision_initial(const ScenarioConfig& c) {
  const ManifoldSpec spec = manifold_of(c);
  if (c.init_kind == "maxwellian") {
    MaxwellianParams mp;
    mp.d = -1.0 / (2.0 * c.init_temperature);
    return sample_maxwellian(mp, spec, c.n_particles, c.seed, c.mass, c.inertia);
  }
  std::vector<ParticleState> ps(static_cast<std::size_t>(c.n_particles));
  for (std::size_t i = 0; i < ps.size(); ++i) {
    Philox rng = Philox::substream(c.seed, i, kInitStream);
    ParticleState& s = ps[i];
    s.mass = c.mass;
    s.inertia = c.inertia;
    set_random_order(spec, s, rng);
    for (int k = 0; k < spec.space_dim; ++k) {
      if (c.init_kind == "uniform") {
        s.p(k) = c.mass * uniform(rng, -c.init_speed, c.init_speed);
      } else {
        s.p(k) = c.mass * c.init_noise * standard_normal(rng);
      }
    }
    if (c.init_kind == "bimodal") s.p.x() += c.mass * ((rng() >> 63) ? c.init_speed : -c.init_speed);
    if (spec.transitive()) {
      Vec3 omega = Vec3::Zero();
      if (spec.space_dim == 2) {
        omega.z() = uniform(rng, -c.init_omega_range, c.init_omega_range);
      } else {
        const auto [e1, e2] = tangent_frame(s.nu.direction);
        omega = uniform(rng, -c.init_omega_range, c.init_omega_range) * e1 +
                uniform(rng, -c.init_omega_range, c.init_omega_range) * e2;
      }
      set_angular_velocity(spec, s, omega);
    }
  }
  return Ensemble::create(spec, std::move(ps));
}

Ensemble anisotropic_ensemble(const ManifoldSpec& spec, long n, double anisotropy, std::uint64_t seed, double mass,
                              double inertia) {
  if (n < 2) throw ConfigurationError("anisotropic ensemble needs at least two particles");
  std::vector<ParticleState> ps(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < ps.size(); ++i) {
    Philox rng = Philox::substream(seed, i, kInitStream + 1);
    ParticleState& s = ps[i];
    s.mass = mass;
    s.inertia = inertia;
    set_random_order(spec, s, rng);
    for (int k = 0; k < spec.space_dim; ++k) s.p(k) = std::sqrt(mass) * standard_normal(rng);
    s.p.x() *= anisotropy;
    const Vec3 spin = random_spin(spec, s, rng, std::sqrt(inertia));
    if (spec.space_dim == 2) {
      s.sigma.scalar = spin.z();
    } else {
      s.sigma.vector = spin;
    }
  }
  return Ensemble::create(spec, std::move(ps));
}

FuzzReport invariant_fuzz(CollisionRule rule, const ManifoldSpec& spec, long events, long pool, std::uint64_t seed,
                          double mass, double inertia, const std::function<void(long, const FuzzReport&)>& progress) {
  if (!rule_compatible(rule, spec)) throw ConfigurationError("rule and manifold are incompatible");
  if (pool < 2) throw ConfigurationError("fuzz pool needs at least two particles");
  std::vector<ParticleState> ps(static_cast<std::size_t>(pool));
  for (std::size_t i = 0; i < ps.size(); ++i) {
    Philox rng = Philox::substream(seed, i, kInitStream + 2);
    ParticleState& s = ps[i];
    s.mass = mass;
    s.inertia = inertia;
    set_random_order(spec, s, rng);
    for (int k = 0; k < spec.space_dim; ++k) s.p(k) = std::sqrt(mass) * standard_normal(rng);
    const Vec3 spin = random_spin(spec, s, rng, std::sqrt(inertia));
    if (spec.space_dim == 2) {
      s.sigma.scalar = spin.z();
    } else {
      s.sigma.vector = spin;
    }
  }
  const InvariantSet start = invariants(ps, spec);
  InvariantSet scale = invariant_magnitudes(ps, spec);
  scale.L += Vec3::Constant(scale.P.x());  // unit lever arm for the orbital part

  Vec3 orbital = Vec3::Zero(), relabel = Vec3::Zero();
  FuzzReport rep;
  const long every = std::max(1L, events / 20);
  const auto n = static_cast<std::size_t>(pool);
  for (long e = 0; e < events; ++e) {
    Philox rng = Philox::substream(seed, static_cast<std::uint64_t>(e), 0x66757a7aULL);
    const auto i = std::min(n - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)));
    auto j = std::min(n - 2, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n - 1)));
    if (j >= i) ++j;
    ParticleState a = ps[i], b = ps[j];
    a.x = Vec3::Zero();
    const CollisionGeometry g = sample_geometry(rule, spec, a, b, rng);
    place_contact(a, b, g);
    const auto [pa, pb] = effective_pre_state(rule, a, b, g);
    const CollisionOutcome out = collide(rule, a, b, g);
    const std::vector<ParticleState> before{pa, pb}, after{out.s1, out.s2};
    const InvariantDrift dr = relative_drift(invariants(before, spec), invariants(after, spec),
                                             invariant_magnitudes(before, spec));
    rep.max_event.P = std::max(rep.max_event.P, dr.P);
    rep.max_event.L = std::max(rep.max_event.L, dr.L);
    rep.max_event.E = std::max(rep.max_event.E, dr.E);
    if (rule == CollisionRule::Bubbles) {
      const double dv = std::abs((out.s1.nu.coordinate + out.s2.nu.coordinate) - (a.nu.coordinate + b.nu.coordinate));
      rep.max_volume_drift = std::max(rep.max_volume_drift, dv);
    }
    relabel += spin_momentum_contracted(spec, pa) - spin_momentum_contracted(spec, a);
    orbital += (g.r2 - g.r1).cross(out.s1.p - pa.p);
    ParticleState na = out.s1, nb = out.s2;
    na.x = Vec3::Zero();
    nb.x = Vec3::Zero();
    ps[i] = na;
    ps[j] = nb;
    rep.events = e + 1;
    if (rep.events % every == 0 || rep.events == events) {
      InvariantSet now = invariants(ps, spec);
      now.L += orbital - relabel;
      const InvariantDrift cum = relative_drift(start, now, scale);
      rep.cumulative = cum;
      if (progress) progress(rep.events, rep);
    }
  }
  return rep;
}

RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  const auto problems = validate(config);
  if (!problems.empty()) throw ConfigError(problems);
  switch (config.scenario) {
    case ScenarioKind::Alignment: return run_alignment(config, options);
    case ScenarioKind::Stability: return run_stability(config, options);
    case ScenarioKind::Relaxation: return run_relaxation(config, options);
    case ScenarioKind::Equilibrium: return run_equilibrium(config, options);
    case ScenarioKind::InvariantFuzz: return run_fuzz(config, options);
    case ScenarioKind::Weakform: return run_weakform(config, options);
  }
  throw ConfigurationError("unknown scenario");
}

}  // namespace ordkin
