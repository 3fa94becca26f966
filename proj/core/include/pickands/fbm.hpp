#pragma once

#include "pickands/grid.hpp"
#include "pickands/rng.hpp"

#include <memory>
#include <vector>

namespace pickands {

// Covariance (|t|^a + |s|^a - |t-s|^a)/2 of fractional Brownian motion with
// Hurst parameter a/2. Throws std::domain_error for alpha outside (0, 2].
double fbm_covariance(double alpha, double t, double s);

// Autocovariance delta^a (|k+1|^a + |k-1|^a - 2|k|^a)/2 of the fGn increment
// sequence at lag k >= 0.
double fgn_autocovariance(double alpha, double delta, int k);

// Circulant embedding of the fGn covariance on a power-of-two ring of size
// m >= 2 * increment count. Immutable once built; one plan is shared across
// replications and worker threads (synthesis uses per-thread scratch).
class SpectralPlan {
public:
    ~SpectralPlan();
    SpectralPlan(SpectralPlan&&) noexcept;
    SpectralPlan& operator=(SpectralPlan&&) noexcept;
    SpectralPlan(const SpectralPlan&) = delete;
    SpectralPlan& operator=(const SpectralPlan&) = delete;

    double alpha() const;
    double delta() const;
    int embedding_size() const;   // m, a power of two
    int increment_count() const;  // increments produced per synthesis
    // Clamped circulant eigenvalues, all >= 0; size m.
    const std::vector<double>& eigenvalues() const;
    // fGn autocovariance gamma(0..m/2) used to build the ring; gamma[0] = delta^alpha.
    const std::vector<double>& gamma() const;

    // Draws increment_count() fGn increments, consuming exactly m normals in
    // a fixed order. Thread-safe across concurrent calls on one plan.
    void synthesize(NormalStream& rng, double* out) const;

private:
    SpectralPlan();
    struct Impl;
    std::unique_ptr<Impl> impl_;
    friend SpectralPlan build_spectral_plan_increments(double alpha, double delta, int n_inc);
};

// Embedding for the two-sided grid (2 * floor(T/delta) increments). Requires
// alpha in (0, 2): alpha = 2 has a one-normal exact sampler instead. Throws
// EmbeddingNotPSD if an eigenvalue falls below -1e-8 times the largest.
SpectralPlan build_spectral_plan(const GridSpec& grid);

// Same embedding for an explicit increment count (one-sided horizons).
SpectralPlan build_spectral_plan_increments(double alpha, double delta, int n_inc);

// Exact fBm sample on a two-sided grid plus the drifted field
// Z(t) = sqrt(2) B(t) - |t|^alpha. B and Z vanish identically at t = 0.
struct FbmPath {
    GridSpec grid;
    std::vector<double> b;
    std::vector<double> z;
};

// Spectral route: one-sided fGn synthesis, cumulative sum, then the
// stationary-increment shift B(k delta) = W((k+K) delta) - W(K delta).
void sample_path(const SpectralPlan& plan, const GridSpec& grid, NormalStream& rng, FbmPath& out);
FbmPath sample_path(const SpectralPlan& plan, const GridSpec& grid, NormalStream& rng);

// Dispatching route: alpha = 1 uses iid N(0, delta) increments, alpha = 2 a
// single random slope; other alpha build a throwaway plan (prefer the plan
// overload in replication loops).
void sample_path(const GridSpec& grid, NormalStream& rng, FbmPath& out);
FbmPath sample_path(const GridSpec& grid, NormalStream& rng);

// One-sided field on {0, delta, ..., n delta} for the definitional estimator:
// w = fBm values (w[0] = 0), z = drifted field on the same points.
struct OnesidedPath {
    double alpha;
    double delta;
    std::vector<double> w;
    std::vector<double> z;
};

// plan may be null when alpha is 1 or 2 (special-cased exactly as above);
// otherwise it must be a plan for (alpha, delta) with increment_count() >= n_inc.
void sample_onesided(double alpha, double delta, int n_inc, const SpectralPlan* plan,
                     NormalStream& rng, OnesidedPath& out);
OnesidedPath sample_onesided(double alpha, double delta, int n_inc, const SpectralPlan* plan,
                             NormalStream& rng);

} // namespace pickands
