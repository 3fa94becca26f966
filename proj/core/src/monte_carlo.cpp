#include "pickands/monte_carlo.hpp"

#include "pickands/errors.hpp"
#include "pickands/estimator.hpp"
#include "pickands/fbm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>

namespace pickands {

void RunningMoments::push(double x) {
    ++count;
    double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
}

void RunningMoments::merge(const RunningMoments& other) {
    if (other.count == 0) {
        return;
    }
    if (count == 0) {
        *this = other;
        return;
    }
    double n1 = static_cast<double>(count);
    double n2 = static_cast<double>(other.count);
    double d = other.mean - mean;
    double n = n1 + n2;
    mean += d * n2 / n;
    m2 += other.m2 + d * d * n1 * n2 / n;
    count += other.count;
}

double RunningMoments::variance() const {
    if (count < 2) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return m2 / static_cast<double>(count - 1);
}

double RunningMoments::std_error() const {
    return std::sqrt(variance() / static_cast<double>(count));
}

namespace {

int resolve_threads(int threads, long reps) {
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads <= 0) {
            threads = 1;
        }
    }
    return static_cast<int>(std::min<long>(threads, reps));
}

struct BlockStats {
    std::vector<RunningMoments> moments;
    std::vector<double> min;
    std::vector<double> max;

    explicit BlockStats(int width)
        : moments(width),
          min(width, std::numeric_limits<double>::infinity()),
          max(width, -std::numeric_limits<double>::infinity()) {}
};

} // namespace

std::vector<StatSummary> parallel_reps_multi(long reps, std::uint64_t seed, int threads,
                                             int width, const MultiRepFn& fn,
                                             std::vector<double>* samples,
                                             std::uint64_t first_rep) {
    if (reps < 2) {
        throw ConfigError("campaign needs at least 2 replications");
    }
    if (width < 1) {
        throw ConfigError("replication width must be positive");
    }
    int nthreads = resolve_threads(threads, reps);
    long chunk = (reps + nthreads - 1) / nthreads;
    if (samples != nullptr) {
        samples->assign(static_cast<size_t>(reps) * width, 0.0);
    }

    std::vector<BlockStats> blocks(nthreads, BlockStats(width));
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&](int tid) {
        long lo = tid * chunk;
        long hi = std::min(reps, lo + chunk);
        std::vector<double> out(width);
        BlockStats& stats = blocks[tid];
        try {
            for (long r = lo; r < hi; ++r) {
                NormalStream rng(seed, first_rep + static_cast<std::uint64_t>(r));
                fn(r, rng, std::span<double>(out));
                for (int j = 0; j < width; ++j) {
                    stats.moments[j].push(out[j]);
                    stats.min[j] = std::min(stats.min[j], out[j]);
                    stats.max[j] = std::max(stats.max[j], out[j]);
                }
                if (samples != nullptr) {
                    std::copy(out.begin(), out.end(),
                              samples->begin() + static_cast<size_t>(r) * width);
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
        }
    };

    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) {
            pool.emplace_back(worker, t);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    std::vector<StatSummary> result(width);
    for (int j = 0; j < width; ++j) {
        RunningMoments total;
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const BlockStats& b : blocks) {
            total.merge(b.moments[j]);
            lo = std::min(lo, b.min[j]);
            hi = std::max(hi, b.max[j]);
        }
        result[j] = {total.count, total.mean, total.variance(), total.std_error(), lo, hi};
    }
    return result;
}

StatSummary parallel_reps(long reps, std::uint64_t seed, int threads, const RepFn& fn,
                          std::vector<double>* samples, std::uint64_t first_rep) {
    auto wrapped = [&fn](long r, NormalStream& rng, std::span<double> out) {
        out[0] = fn(r, rng);
    };
    return parallel_reps_multi(reps, seed, threads, 1, wrapped, samples, first_rep)[0];
}

McSummary run_campaign(const CampaignConfig& cfg, std::vector<double>* samples) {
    const auto t0 = std::chrono::steady_clock::now();
    GridSpec grid = GridSpec::make(cfg.alpha, cfg.delta, cfg.T);
    std::optional<SpectralPlan> plan;
    const SpectralPlan* plan_ptr = nullptr;
    if (cfg.alpha != 1.0 && cfg.alpha != 2.0) {
        plan = build_spectral_plan(grid);
        plan_ptr = &*plan;
    }
    auto rep = [&grid, plan_ptr](long, NormalStream& rng) {
        thread_local FbmPath path;
        if (plan_ptr != nullptr) {
            sample_path(*plan_ptr, grid, rng, path);
        } else {
            sample_path(grid, rng, path);
        }
        return xi_truncated(path).xi;
    };
    StatSummary s =
        parallel_reps(cfg.reps, cfg.seed, cfg.threads, rep, samples, cfg.first_rep);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;
    return {cfg.alpha, cfg.delta, cfg.T,   cfg.reps, cfg.seed,        s.mean,
            s.variance, s.std_err, s.min, s.max,    elapsed.count()};
}

TailEstimate wilson_interval(double threshold, long count, long n) {
    constexpr double z = 1.96;
    double nn = static_cast<double>(n);
    double p = static_cast<double>(count) / nn;
    double z2n = z * z / nn;
    double denom = 1.0 + z2n;
    double center = (p + z2n / 2.0) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / nn + z2n / (4.0 * nn)) / denom;
    return {threshold, count, n, p, std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::vector<TailEstimate> estimate_tail(const CampaignConfig& cfg,
                                        std::span<const double> thresholds) {
    if (thresholds.empty()) {
        throw ConfigError("estimate_tail: need at least one threshold");
    }
    for (size_t i = 0; i < thresholds.size(); ++i) {
        if (!(thresholds[i] >= 1.0) || (i > 0 && !(thresholds[i] > thresholds[i - 1]))) {
            throw ConfigError("estimate_tail: thresholds must be >= 1 and increasing");
        }
    }
    std::vector<double> xs;
    run_campaign(cfg, &xs);
    std::vector<TailEstimate> result;
    result.reserve(thresholds.size());
    for (double u : thresholds) {
        long count = std::count_if(xs.begin(), xs.end(), [u](double x) { return x > u; });
        result.push_back(wilson_interval(u, count, cfg.reps));
    }
    return result;
}

} // namespace pickands
