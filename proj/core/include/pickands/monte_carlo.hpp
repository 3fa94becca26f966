#pragma once

#include "pickands/grid.hpp"
#include "pickands/rng.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace pickands {

// Streaming mean and variance (Welford), mergeable across thread blocks
// (Chan). Merge order is fixed by thread index so a given thread count
// reproduces bit-identical summaries.
struct RunningMoments {
    long count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double x);
    void merge(const RunningMoments& other);
    double variance() const; // unbiased, count >= 2
    double std_error() const;
};

// Moments of one statistic over all replications.
struct StatSummary {
    long reps;
    double mean;
    double variance;
    double std_err;
    double min;
    double max;
};

struct CampaignConfig {
    double alpha;
    double delta;
    double T;
    long reps;
    std::uint64_t seed = 1;
    int threads = 0;              // 0 = all hardware threads
    std::uint64_t first_rep = 0;  // replication-counter offset (half campaigns)
};

// Campaign record: parameters, streaming statistics of xi, and wall time.
// Everything except wall_time is reproducible bit-for-bit for a fixed seed
// and thread count; the per-replication value stream is reproducible
// regardless of thread count.
struct McSummary {
    double alpha;
    double delta;
    double T;
    long reps;
    std::uint64_t seed;
    double mean;
    double variance;
    double std_err;
    double min;
    double max;
    double wall_time; // seconds
};

// fn(rep, rng) for one replication; rng is NormalStream(seed, first_rep + rep),
// so the value of a replication never depends on the thread that ran it.
using RepFn = std::function<double(long, NormalStream&)>;

// fn(rep, rng, out) writing `width` values per replication, for ladders that
// evaluate several statistics on one common path.
using MultiRepFn = std::function<void(long, NormalStream&, std::span<double>)>;

// Static contiguous block partition over `reps` replications; per-thread
// moments merged in thread order. samples, when non-null, receives the
// per-replication values in replication-major order (reps * width doubles).
// Throws ConfigError for reps < 2.
std::vector<StatSummary> parallel_reps_multi(long reps, std::uint64_t seed, int threads, int width,
                                             const MultiRepFn& fn,
                                             std::vector<double>* samples = nullptr,
                                             std::uint64_t first_rep = 0);

StatSummary parallel_reps(long reps, std::uint64_t seed, int threads, const RepFn& fn,
                          std::vector<double>* samples = nullptr, std::uint64_t first_rep = 0);

// Campaign of the truncated estimator xi on the two-sided grid of cfg.
// One spectral plan is shared by all workers (alpha in {1, 2} skip it).
McSummary run_campaign(const CampaignConfig& cfg, std::vector<double>* samples = nullptr);

// Exceedance probability of xi over one threshold, with a Wilson score
// interval at z = 1.96.
struct TailEstimate {
    double threshold;
    long exceed_count;
    long reps;
    double p_hat;
    double wilson_low;
    double wilson_high;
};

// One shared set of replications evaluated against every threshold.
// Thresholds must be >= 1 and strictly increasing (ConfigError otherwise).
std::vector<TailEstimate> estimate_tail(const CampaignConfig& cfg,
                                        std::span<const double> thresholds);

// Wilson score interval for count successes out of n at z = 1.96.
TailEstimate wilson_interval(double threshold, long count, long n);

} // namespace pickands
