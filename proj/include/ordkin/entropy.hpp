#pragma once

#include "ordkin/mechanics.hpp"
#include "ordkin/types.hpp"

namespace ordkin {

enum class EntropyEstimator { Auto, Histogram, Knn };

struct EntropyOptions {
  EntropyEstimator estimator = EntropyEstimator::Auto;  // histogram up to 3 dims, knn above
  int k = 4;
  int threads = 1;
};

/// Estimate of H = int f log f with its standard error
/// sigma = sqrt(Var(log f_hat) / N).
struct EntropyEstimate {
  double H = 0.0;
  double sigma = 0.0;
};

/// Rows are samples. Histogram bins follow Scott's rule
/// h_j = 3.49 s_j N^(-1/(D+2)); empty cells are skipped. The knn branch is
/// the Kozachenko-Leonenko estimator with Euclidean distance.
EntropyEstimate h_functional(const MatX& samples, const EntropyOptions& options = {});

/// Reduced phase variables of an ensemble: p components (d of them), the
/// conjugate momentum in chart coefficients for rotating particles, and the
/// chart point when `with_order` is set and the chart is one dimensional.
MatX reduced_variables(const Ensemble& ens, bool with_order = false);

EntropyEstimate h_functional(const Ensemble& ens, const EntropyOptions& options = {}, bool with_order = false);

/// Digamma at a positive integer.
double digamma_int(long n);

}  // namespace ordkin
