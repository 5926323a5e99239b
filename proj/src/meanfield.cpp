#include "ordkin/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ordkin/errors.hpp"
#include "ordkin/parallel.hpp"
#include "ordkin/types.hpp"

namespace ordkin {

namespace {

constexpr std::size_t kChunks = 64;

double nearest_representative(double theta, double center) {
  return theta - kTwoPi * std::round((theta - center) / kTwoPi);
}

double table_slope(const std::vector<double>& w, double delta) {
  const auto k = static_cast<long>(w.size());
  const double h = kTwoPi / static_cast<double>(k);
  const double u = (nearest_representative(delta, 0.0) + kPi) / h;
  const long i = static_cast<long>(std::floor(u));
  const double f = u - static_cast<double>(i);
  auto at = [&](long j) { return w[static_cast<std::size_t>(((j % k) + k) % k)]; };
  auto slope = [&](long j) { return (at(j + 1) - at(j - 1)) / (2.0 * h); };
  return (1.0 - f) * slope(i) + f * slope(i + 1);
}

double table_value(const std::vector<double>& w, double delta) {
  const auto k = static_cast<long>(w.size());
  const double h = kTwoPi / static_cast<double>(k);
  const double u = (nearest_representative(delta, 0.0) + kPi) / h;
  const long i = static_cast<long>(std::floor(u));
  const double f = u - static_cast<double>(i);
  auto at = [&](long j) { return w[static_cast<std::size_t>(((j % k) + k) % k)]; };
  return (1.0 - f) * at(i) + f * at(i + 1);
}

void require_table(const MeanFieldSpec& spec) {
  if (spec.kind == PotentialKind::Table && spec.table.size() < 3) {
    throw ConfigurationError("table potential needs at least three samples");
  }
}

}  // namespace

PotentialKind potential_from_name(std::string_view name) {
  if (name == "quadratic") return PotentialKind::Quadratic;
  if (name == "cosine") return PotentialKind::Cosine;
  if (name == "table") return PotentialKind::Table;
  throw ConfigurationError("unknown potential '" + std::string(name) + "' (expected quadratic, cosine, table)");
}

std::string_view potential_name(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::Quadratic: return "quadratic";
    case PotentialKind::Cosine: return "cosine";
    case PotentialKind::Table: return "table";
  }
  return "?";
}

AngleStats angle_stats_from_name(std::string_view name) {
  if (name == "lifted") return AngleStats::Lifted;
  if (name == "circular") return AngleStats::Circular;
  throw ConfigurationError("unknown angle statistics '" + std::string(name) + "' (expected lifted, circular)");
}

std::string_view angle_stats_name(AngleStats stats) {
  return stats == AngleStats::Lifted ? "lifted" : "circular";
}

double mean_direction(const std::vector<AlignmentParticle>& ensemble) {
  if (ensemble.empty()) throw DegenerateInputError("mean direction of an empty ensemble");
  double c = 0.0, s = 0.0;
  for (const auto& p : ensemble) {
    c += std::cos(p.theta);
    s += std::sin(p.theta);
  }
  c /= static_cast<double>(ensemble.size());
  s /= static_cast<double>(ensemble.size());
  if (std::hypot(c, s) < 1e-12) throw DegenerateInputError("mean director vanishes; reference angle undefined");
  return std::atan2(s, c);
}

double vlasov_force(const MeanFieldSpec& spec, double theta_hat, double theta, double omega) {
  const double delta = theta - theta_hat;
  switch (spec.kind) {
    case PotentialKind::Quadratic: return -spec.alpha * delta - spec.beta * omega;
    case PotentialKind::Cosine: return -std::sin(delta);
    case PotentialKind::Table: require_table(spec); return -table_slope(spec.table, delta) - spec.beta * omega;
  }
  return 0.0;
}

double reference_angle(const MeanFieldSpec& spec, const std::vector<AlignmentParticle>& ensemble) {
  if (spec.mode == ThetaHatMode::Fixed) return spec.theta_hat;
  const double dir = mean_direction(ensemble);
  double lifted = 0.0;
  for (const auto& p : ensemble) lifted += p.theta;
  lifted /= static_cast<double>(ensemble.size());
  return nearest_representative(dir, lifted);
}

double vlasov_force(const MeanFieldSpec& spec, const std::vector<AlignmentParticle>& ensemble, double theta,
                    double omega) {
  if (ensemble.empty()) throw DegenerateInputError("mean-field force needs a nonempty ensemble");
  return vlasov_force(spec, reference_angle(spec, ensemble), theta, omega);
}

double potential_energy(const MeanFieldSpec& spec, double theta_hat, double theta) {
  const double delta = theta - theta_hat;
  switch (spec.kind) {
    case PotentialKind::Quadratic: return 0.5 * spec.alpha * delta * delta;
    case PotentialKind::Cosine: return -std::cos(delta);
    case PotentialKind::Table: require_table(spec); return table_value(spec.table, delta);
  }
  return 0.0;
}

EnsembleStats ensemble_stats(const MeanFieldSpec& spec, const std::vector<AlignmentParticle>& ensemble, double t) {
  EnsembleStats st;
  st.t = t;
  const double n = static_cast<double>(ensemble.size());
  if (ensemble.empty()) return st;
  st.theta_hat = reference_angle(spec, ensemble);
  const double center = spec.stats == AngleStats::Circular ? mean_direction(ensemble) : 0.0;
  auto angle = [&](const AlignmentParticle& p) {
    return spec.stats == AngleStats::Circular ? nearest_representative(p.theta, center) : p.theta;
  };
  for (const auto& p : ensemble) {
    st.mean_theta += angle(p);
    st.mean_omega += p.omega;
  }
  st.mean_theta /= n;
  st.mean_omega /= n;
  double vt = 0.0, vw = 0.0;
  for (const auto& p : ensemble) {
    vt += (angle(p) - st.mean_theta) * (angle(p) - st.mean_theta);
    vw += (p.omega - st.mean_omega) * (p.omega - st.mean_omega);
  }
  st.std_theta = std::sqrt(vt / n);
  st.std_omega = std::sqrt(vw / n);
  if (spec.stats == AngleStats::Circular) {
    // Report the mean in the same branch as the reference angle.
    st.mean_theta = nearest_representative(st.mean_theta, st.theta_hat);
  }
  return st;
}

std::vector<EnsembleStats> integrate_ensemble(std::vector<AlignmentParticle>& ensemble, const MeanFieldSpec& spec,
                                              double dt, long steps, long checkpoint_every, int threads) {
  if (!(dt > 0.0)) throw ConfigurationError("dt must be positive");
  if (steps < 0) throw ConfigurationError("step count must be non-negative");
  if (checkpoint_every < 1) throw ConfigurationError("checkpoint_every must be at least 1");
  require_table(spec);
  std::vector<EnsembleStats> out;
  out.push_back(ensemble_stats(spec, ensemble, 0.0));
  for (long k = 1; k <= steps; ++k) {
    const double theta_hat = reference_angle(spec, ensemble);
    parallel_chunks(ensemble.size(), kChunks, threads, [&](std::size_t b, std::size_t e, std::size_t) {
      for (std::size_t i = b; i < e; ++i) {
        AlignmentParticle& p = ensemble[i];
        p.omega += dt * vlasov_force(spec, theta_hat, p.theta, p.omega);
        p.theta += dt * spec.transport_factor * p.omega;
      }
    });
    if (k % checkpoint_every == 0 || k == steps) {
      out.push_back(ensemble_stats(spec, ensemble, static_cast<double>(k) * dt));
    }
  }
  return out;
}

std::string_view fixed_point_name(FixedPointType type) {
  switch (type) {
    case FixedPointType::Center: return "center";
    case FixedPointType::Saddle: return "saddle";
    case FixedPointType::StableSpiral: return "stable_spiral";
    case FixedPointType::StableNode: return "stable_node";
    case FixedPointType::UnstableSpiral: return "unstable_spiral";
    case FixedPointType::UnstableNode: return "unstable_node";
    case FixedPointType::Degenerate: return "degenerate";
  }
  return "?";
}

std::pair<std::complex<double>, std::complex<double>> eigenvalues(double alpha, double beta) {
  const std::complex<double> root = std::sqrt(std::complex<double>(beta * beta - 4.0 * alpha, 0.0));
  return {(-beta + root) / 2.0, (-beta - root) / 2.0};
}

FixedPointType classify_fixed_point(double alpha, double beta) {
  if (alpha < 0.0) return FixedPointType::Saddle;
  if (alpha == 0.0) return FixedPointType::Degenerate;
  const double disc = beta * beta - 4.0 * alpha;
  if (beta == 0.0) return FixedPointType::Center;
  if (beta > 0.0) return disc < 0.0 ? FixedPointType::StableSpiral : FixedPointType::StableNode;
  return disc < 0.0 ? FixedPointType::UnstableSpiral : FixedPointType::UnstableNode;
}

double linear_decay_rate(double alpha, double beta) {
  const FixedPointType t = classify_fixed_point(alpha, beta);
  if (t != FixedPointType::StableSpiral && t != FixedPointType::StableNode && t != FixedPointType::Center) {
    throw NotApplicableError("decay rate is only defined for stable or center fixed points, got " +
                             std::string(fixed_point_name(t)));
  }
  const auto [l1, l2] = eigenvalues(alpha, beta);
  return -std::max(l1.real(), l2.real());
}

}  // namespace ordkin
