#pragma once

#include <complex>
#include <string_view>
#include <utility>
#include <vector>

namespace ordkin {

enum class PotentialKind { Quadratic, Cosine, Table };
enum class ThetaHatMode { Fixed, EnsembleMean };

/// How angle statistics are summarised. `Lifted` uses the integrated
/// angles on the real line as they are; `Circular` takes the mean
/// direction of the embedded points and the representative of every angle
/// nearest to it.
enum class AngleStats { Lifted, Circular };

struct MeanFieldSpec {
  PotentialKind kind = PotentialKind::Quadratic;
  double alpha = 1.0;
  double beta = 0.0;
  ThetaHatMode mode = ThetaHatMode::Fixed;
  double theta_hat = 0.0;
  /// Multiplier of omega in the angle equation (1 for rigid rotation).
  double transport_factor = 1.0;
  AngleStats stats = AngleStats::Lifted;
  /// Potential samples W(k 2 pi / K - pi), k = 0..K-1, for the table kind;
  /// the force is -dW/d(theta - theta_hat) - beta omega by periodic
  /// central differences with linear interpolation.
  std::vector<double> table;
};

PotentialKind potential_from_name(std::string_view name);
std::string_view potential_name(PotentialKind kind);
AngleStats angle_stats_from_name(std::string_view name);
std::string_view angle_stats_name(AngleStats stats);

struct AlignmentParticle {
  double theta = 0.0;  // lifted angle
  double omega = 0.0;
};

/// atan2 of the mean of (cos theta, sin theta). Throws DegenerateInputError
/// when the mean vector vanishes.
double mean_direction(const std::vector<AlignmentParticle>& ensemble);

/// Force on omega for one particle given the reference angle.
double vlasov_force(const MeanFieldSpec& spec, double theta_hat, double theta, double omega);

/// Force with theta_hat fixed or taken from the ensemble.
double vlasov_force(const MeanFieldSpec& spec, const std::vector<AlignmentParticle>& ensemble, double theta,
                    double omega);

/// Reference angle used for a step. In ensemble-mean mode it is the mean
/// direction shifted by a multiple of 2 pi to sit nearest the arithmetic
/// mean of the lifted angles.
double reference_angle(const MeanFieldSpec& spec, const std::vector<AlignmentParticle>& ensemble);

/// Mean potential energy of the ensemble, used for finite-difference checks.
double potential_energy(const MeanFieldSpec& spec, double theta_hat, double theta);

struct EnsembleStats {
  double t = 0.0;
  double mean_theta = 0.0;
  double std_theta = 0.0;
  double mean_omega = 0.0;
  double std_omega = 0.0;
  double theta_hat = 0.0;
};

EnsembleStats ensemble_stats(const MeanFieldSpec& spec, const std::vector<AlignmentParticle>& ensemble, double t);

/// Kick-drift integration: omega += dt V(theta, omega), then
/// theta += dt * transport_factor * omega. Emits stats at t = 0 and every
/// `checkpoint_every` steps.
std::vector<EnsembleStats> integrate_ensemble(std::vector<AlignmentParticle>& ensemble, const MeanFieldSpec& spec,
                                              double dt, long steps, long checkpoint_every, int threads = 1);

enum class FixedPointType { Center, Saddle, StableSpiral, StableNode, UnstableSpiral, UnstableNode, Degenerate };

std::string_view fixed_point_name(FixedPointType type);

/// lambda = (-beta +- sqrt(beta^2 - 4 alpha)) / 2, larger real part first.
std::pair<std::complex<double>, std::complex<double>> eigenvalues(double alpha, double beta);

FixedPointType classify_fixed_point(double alpha, double beta);

/// -max Re lambda for stable or center configurations; NotApplicableError otherwise.
double linear_decay_rate(double alpha, double beta);

}  // namespace ordkin
