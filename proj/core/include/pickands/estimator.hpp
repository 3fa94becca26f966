#pragma once

#include "pickands/fbm.hpp"

#include <span>

namespace pickands {

// One realization of the truncated Dieker-Yakir estimator with diagnostics.
// xi = exp(z_max) / (delta * sum_t exp(Z(t))), evaluated in the log domain.
struct EstimatorSample {
    double xi;              // in [1/(delta n), 1/delta]
    double argmax_t;        // grid time of the maximal Z (first on ties)
    double log_denominator; // log(delta * sum exp Z)
    double z_max;
};

// Kernel over a strided view z[j * stride], j = 0..count-1, with effective
// step delta_eff and times t0 + j * dt. Exposed so restrictions of one path
// (coarser delta, shorter horizon) reuse the sampled field.
EstimatorSample xi_kernel(std::span<const double> z, int count, int stride, double delta_eff,
                          double t0, double dt);

// Full-grid estimator for a sampled path.
EstimatorSample xi_truncated(const FbmPath& path);

// Restriction of the same path to the sub-grid of step stride*delta with
// half_count points on each side of zero (common-random-number ladders).
EstimatorSample xi_restricted(const FbmPath& path, int half_count, int stride);

// Classical definitional estimator (1/S) sup exp(Z) over the one-sided prefix
// [0, S]; kept only for the variance blow-up demonstration.
double definitional_estimator(const OnesidedPath& path, double S);
double definitional_estimator(std::span<const double> z, double delta, double S);

} // namespace pickands
