#include "ordkin/entropy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "ordkin/errors.hpp"
#include "ordkin/parallel.hpp"

namespace ordkin {

namespace {

constexpr long kMinSamples = 1000;

EntropyEstimate finish(const std::vector<double>& log_density) {
  const double n = static_cast<double>(log_density.size());
  double mean = 0.0;
  for (double v : log_density) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : log_density) var += (v - mean) * (v - mean);
  var /= (n - 1.0);
  return {mean, std::sqrt(var / n)};
}

EntropyEstimate histogram(const MatX& x) {
  const long n = x.rows();
  const int dim = static_cast<int>(x.cols());
  const double scale = 3.49 * std::pow(static_cast<double>(n), -1.0 / (dim + 2.0));
  VecX width(dim), lo(dim);
  double cell_volume = 1.0;
  for (int j = 0; j < dim; ++j) {
    const double mean = x.col(j).mean();
    const double sd = std::sqrt((x.col(j).array() - mean).square().sum() / (n - 1.0));
    if (!(sd > 0.0)) throw DegenerateInputError("entropy estimate needs non-degenerate samples in every dimension");
    width(j) = scale * sd;
    lo(j) = x.col(j).minCoeff();
    cell_volume *= width(j);
  }
  std::vector<std::vector<long>> keys(n, std::vector<long>(dim));
  std::map<std::vector<long>, long> counts;
  for (long i = 0; i < n; ++i) {
    for (int j = 0; j < dim; ++j) keys[i][j] = static_cast<long>(std::floor((x(i, j) - lo(j)) / width(j)));
    ++counts[keys[i]];
  }
  std::vector<double> logf(n);
  for (long i = 0; i < n; ++i) {
    logf[i] = std::log(static_cast<double>(counts[keys[i]]) / (static_cast<double>(n) * cell_volume));
  }
  return finish(logf);
}

EntropyEstimate knn(const MatX& x, int k, int threads) {
  const long n = x.rows();
  const int dim = static_cast<int>(x.cols());
  if (k < 1 || k >= n) throw ConfigurationError("knn entropy needs 1 <= k < N");
  const double log_ball = 0.5 * dim * std::log(kPi) - std::lgamma(0.5 * dim + 1.0);
  const double offset = digamma_int(n) - digamma_int(k) + log_ball;
  std::vector<double> logf(n);
  std::atomic<bool> coincident{false};
  parallel_chunks(static_cast<std::size_t>(n), 64, threads, [&](std::size_t b, std::size_t e, std::size_t) {
    std::vector<double> d2(n);
    for (std::size_t i = b; i < e; ++i) {
      for (long j = 0; j < n; ++j) d2[j] = (x.row(j) - x.row(static_cast<long>(i))).squaredNorm();
      d2[i] = std::numeric_limits<double>::infinity();
      std::nth_element(d2.begin(), d2.begin() + (k - 1), d2.end());
      const double r = std::sqrt(d2[k - 1]);
      if (!(r > 0.0)) coincident = true;
      logf[i] = -(offset + dim * std::log(r));
    }
  });
  if (coincident) throw DegenerateInputError("knn entropy found coincident samples");
  return finish(logf);
}

}  // namespace

double digamma_int(long n) {
  if (n < 1) throw ConfigurationError("digamma_int needs a positive argument");
  double s = -0.57721566490153286061;
  for (long j = 1; j < n; ++j) s += 1.0 / static_cast<double>(j);
  return s;
}

EntropyEstimate h_functional(const MatX& samples, const EntropyOptions& options) {
  if (samples.rows() < kMinSamples) throw ConfigurationError("entropy estimate needs at least 1000 samples");
  if (samples.cols() < 1) throw ConfigurationError("entropy estimate needs at least one variable");
  EntropyEstimator kind = options.estimator;
  if (kind == EntropyEstimator::Auto) kind = samples.cols() <= 3 ? EntropyEstimator::Histogram : EntropyEstimator::Knn;
  return kind == EntropyEstimator::Histogram ? histogram(samples) : knn(samples, options.k, options.threads);
}

MatX reduced_variables(const Ensemble& ens, bool with_order) {
  const ManifoldSpec& spec = ens.spec;
  const int d = spec.space_dim;
  const bool order = with_order && spec.chart_dim == 1;
  const int conj = spec.transitive() ? spec.chart_dim : 0;
  const int cols = d + conj + (order ? 1 : 0);
  MatX x(static_cast<long>(ens.size()), cols);
  for (std::size_t i = 0; i < ens.size(); ++i) {
    const ParticleState& s = ens.particles[i];
    const long r = static_cast<long>(i);
    x.block(r, 0, 1, d) = s.p.head(d).transpose();
    if (conj > 0) x.block(r, d, 1, conj) = (order_rate(spec, s) * s.inertia).transpose();
    if (order) x(r, cols - 1) = s.nu.coordinate;
  }
  return x;
}

EntropyEstimate h_functional(const Ensemble& ens, const EntropyOptions& options, bool with_order) {
  return h_functional(reduced_variables(ens, with_order), options);
}

}  // namespace ordkin
