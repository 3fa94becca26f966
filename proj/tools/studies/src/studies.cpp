#include "studies/studies.hpp"

#include "pickands/closed_form.hpp"
#include "pickands/errors.hpp"
#include "pickands/estimator.hpp"
#include "pickands/fbm.hpp"
#include "pickands/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <span>

namespace pickands::studies {

namespace {

constexpr double kCertifiedBound = 1e-12;

std::vector<double> sorted(std::vector<double> v, bool ascending) {
    std::sort(v.begin(), v.end());
    if (!ascending) {
        std::reverse(v.begin(), v.end());
    }
    return v;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[192];
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

// Least-squares slope of y against x.
double fit_slope(std::span<const double> x, std::span<const double> y) {
    const size_t n = x.size();
    double xbar = 0.0, ybar = 0.0;
    for (size_t i = 0; i < n; ++i) {
        xbar += x[i];
        ybar += y[i];
    }
    xbar /= static_cast<double>(n);
    ybar /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxy += (x[i] - xbar) * (y[i] - ybar);
        sxx += (x[i] - xbar) * (x[i] - xbar);
    }
    return sxy / sxx;
}

} // namespace

StudyReport study_closed_form(const StudyOptions& opt) {
    std::vector<double> deltas = opt.deltas;
    if (deltas.empty()) {
        for (int k = 1; k <= 60; ++k) {
            deltas.push_back(0.05 * k);
        }
    }
    deltas = sorted(std::move(deltas), true);

    StudyReport report{"closed-form", {}, {}};
    std::vector<double> h1s, h2s;
    double worst_bound = 0.0;
    for (double d : deltas) {
        const ClosedFormValue h1 = h1_delta(d);
        const ClosedFormValue h2 = h2_delta(d);
        report.rows.push_back(
            {"closed-form", 1.0, d, 0.0, 0, opt.seed, "h1_delta", h1.value, h1.truncation_bound});
        report.rows.push_back(
            {"closed-form", 2.0, d, 0.0, 0, opt.seed, "h2_delta", h2.value, h2.truncation_bound});
        h1s.push_back(h1.value);
        h2s.push_back(h2.value);
        worst_bound = std::max({worst_bound, h1.truncation_bound, h2.truncation_bound});
    }

    report.checks.push_back({"truncation_certified", worst_bound <= kCertifiedBound,
                             fmt("max certified bound %.3g (limit 1e-12)", worst_bound)});
    if (deltas.size() >= 2) {
        bool dec1 = true, dec2 = true;
        for (size_t i = 1; i < deltas.size(); ++i) {
            dec1 = dec1 && h1s[i] < h1s[i - 1];
            dec2 = dec2 && h2s[i] < h2s[i - 1];
        }
        report.checks.push_back({"h1_strictly_decreasing", dec1,
                                 fmt("%g points ascending in delta", double(deltas.size()))});
        report.checks.push_back({"h2_strictly_decreasing", dec2,
                                 fmt("%g points ascending in delta", double(deltas.size()))});
    }
    return report;
}

StudyReport study_estimate(const StudyOptions& opt) {
    const std::vector<double> deltas =
        opt.deltas.empty() ? std::vector<double>{0.5} : opt.deltas;
    const std::vector<double> horizons =
        opt.horizons.empty() ? std::vector<double>{4.0} : opt.horizons;

    StudyReport report{"estimate", {}, {}};
    for (double d : deltas) {
        for (double T : horizons) {
            const McSummary m =
                run_campaign({opt.alpha, d, T, opt.reps, opt.seed, opt.threads});
            const auto row = [&](const char* stat, double value, double se) {
                report.rows.push_back(
                    {"estimate", opt.alpha, d, T, opt.reps, opt.seed, stat, value, se});
            };
            row("xi_mean", m.mean, m.std_err);
            row("xi_variance", m.variance, 0.0);
            row("xi_min", m.min, 0.0);
            row("xi_max", m.max, 0.0);
            row("wall_time", m.wall_time, 0.0);

            if (opt.alpha == 1.0 || opt.alpha == 2.0) {
                const double closed =
                    opt.alpha == 1.0 ? h1_delta(d).value : h2_delta(d).value;
                const double dev = std::fabs(m.mean - closed);
                report.checks.push_back(
                    {fmt("mean_vs_closed_form(delta=%g,T=%g)", d, T),
                     dev <= 3.0 * m.std_err,
                     fmt("|mean - closed| = %.3g, 3 std_err = %.3g", dev, 3.0 * m.std_err)});
            }
        }
    }
    return report;
}

namespace {

// Exact arm of the discretization study for alpha in {1, 2}.
StudyReport discretization_closed_form(const StudyOptions& opt) {
    const bool a1 = opt.alpha == 1.0;
    std::vector<double> ladder = opt.deltas;
    if (ladder.empty()) {
        ladder = a1 ? std::vector<double>{1e-2, 1e-3, 1e-4}
                    : std::vector<double>{1e-1, 3e-2, 1e-2};
    }
    ladder = sorted(std::move(ladder), false); // descending toward the limit

    const double limit = a1 ? h1_limit() : h2_limit();
    const double rate = a1 ? rate_constant_alpha1() : rate_constant_alpha2();
    const double band = a1 ? 1e-3 : 1e-4;

    StudyReport report{"discretization", {}, {}};
    std::vector<double> logd, logerr, approach;
    for (double d : ladder) {
        const ClosedFormValue h = a1 ? h1_delta(d) : h2_delta(d);
        const double scale = a1 ? std::sqrt(d) : d * d;
        const double ratio = (limit - h.value) / scale;
        report.rows.push_back({"discretization", opt.alpha, d, 0.0, 0, opt.seed, "rate_ratio",
                               ratio, h.truncation_bound / scale});
        logd.push_back(std::log(d));
        logerr.push_back(std::log(limit - h.value));
        approach.push_back(std::fabs(ratio - rate));
    }
    const double slope = fit_slope(logd, logerr);
    report.rows.push_back(
        {"discretization", opt.alpha, 0.0, 0.0, 0, opt.seed, "rate_slope", slope, 0.0});

    report.checks.push_back(
        {"ratio_band_at_min_delta", approach.back() <= band,
         fmt("|ratio - limit constant| = %.3g at delta=%g (band %.0e)", approach.back(),
             ladder.back(), band)});
    if (ladder.size() >= 2) {
        bool mono = true;
        for (size_t i = 1; i < approach.size(); ++i) {
            mono = mono && approach[i] <= approach[i - 1];
        }
        report.checks.push_back({"ratio_monotone_approach", mono,
                                 fmt("deviation from constant over %g rungs descending in delta",
                                     double(ladder.size()))});
    }
    return report;
}

// Monte Carlo arm: paired campaigns at delta and delta/2 on shared paths.
StudyReport discretization_paired_mc(const StudyOptions& opt) {
    std::vector<double> ladder = opt.deltas;
    if (ladder.empty()) {
        ladder = {0.4, 0.2, 0.1, 0.05};
    }
    ladder = sorted(std::move(ladder), false);
    const double T = opt.horizons.empty() ? 8.0 : opt.horizons.front();

    StudyReport report{"discretization", {}, {}};
    std::vector<double> logd, logdiff;
    bool all_positive = true;
    for (double d : ladder) {
        const GridSpec fine = GridSpec::make(opt.alpha, d / 2.0, T);
        const int coarse_half = static_cast<int>(std::floor(T / d + 1e-9));
        std::optional<SpectralPlan> plan;
        if (opt.alpha != 1.0 && opt.alpha != 2.0) {
            plan = build_spectral_plan(fine);
        }
        const SpectralPlan* pp = plan ? &*plan : nullptr;
        auto fn = [&fine, pp, coarse_half](long, NormalStream& rng, std::span<double> out) {
            thread_local FbmPath path;
            if (pp != nullptr) {
                sample_path(*pp, fine, rng, path);
            } else {
                sample_path(fine, rng, path);
            }
            out[0] = xi_truncated(path).xi;
            out[1] = xi_restricted(path, coarse_half, 2).xi;
            out[2] = out[0] - out[1];
        };
        const std::vector<StatSummary> s =
            parallel_reps_multi(opt.reps, opt.seed, opt.threads, 3, fn);
        const auto row = [&](const char* stat, double delta_col, double value, double se) {
            report.rows.push_back(
                {"discretization", opt.alpha, delta_col, T, opt.reps, opt.seed, stat, value, se});
        };
        row("xi_mean_fine", d / 2.0, s[0].mean, s[0].std_err);
        row("xi_mean_coarse", d, s[1].mean, s[1].std_err);
        row("paired_diff", d, s[2].mean, s[2].std_err);
        logd.push_back(std::log(d));
        if (s[2].mean > 0.0) {
            logdiff.push_back(std::log(s[2].mean));
        } else {
            all_positive = false;
        }
    }

    if (all_positive && ladder.size() >= 2) {
        const double slope = fit_slope(logd, logdiff);
        report.rows.push_back(
            {"discretization", opt.alpha, 0.0, T, opt.reps, opt.seed, "rate_slope", slope, 0.0});
        const double lo = opt.alpha / 2.0 - 0.1;
        const double hi = opt.alpha / 2.0 + 0.1;
        report.checks.push_back(
            {"slope_in_band", slope >= lo && slope <= hi,
             fmt("fitted slope %.4g, band [%.3g, %.3g]", slope, lo, hi)});
    } else {
        report.checks.push_back({"slope_in_band", false,
                                 "paired difference not positive on every rung; no slope fit"});
    }
    return report;
}

} // namespace

StudyReport study_discretization(const StudyOptions& opt) {
    if (opt.alpha == 1.0 || opt.alpha == 2.0) {
        return discretization_closed_form(opt);
    }
    return discretization_paired_mc(opt);
}

StudyReport study_truncation(const StudyOptions& opt) {
    const double d = opt.deltas.empty() ? 0.25 : opt.deltas.front();
    std::vector<double> horizons = opt.horizons;
    if (horizons.empty()) {
        horizons = {2.0, 3.0, 4.0, 6.0, 8.0};
    }
    horizons = sorted(std::move(horizons), true);
    if (horizons.size() < 2) {
        throw ConfigError("truncation study needs at least two horizons");
    }
    const size_t nT = horizons.size();
    const double Tmax = horizons.back();

    const GridSpec grid = GridSpec::make(opt.alpha, d, Tmax);
    std::vector<int> half(nT);
    for (size_t i = 0; i < nT; ++i) {
        half[i] = static_cast<int>(std::floor(horizons[i] / d + 1e-9));
    }
    std::optional<SpectralPlan> plan;
    if (opt.alpha != 1.0 && opt.alpha != 2.0) {
        plan = build_spectral_plan(grid);
    }
    const SpectralPlan* pp = plan ? &*plan : nullptr;

    auto fn = [&grid, pp, &half](long, NormalStream& rng, std::span<double> out) {
        thread_local FbmPath path;
        if (pp != nullptr) {
            sample_path(*pp, grid, rng, path);
        } else {
            sample_path(grid, rng, path);
        }
        for (size_t i = 0; i < half.size(); ++i) {
            out[i] = xi_restricted(path, half[i], 1).xi;
        }
    };
    const std::vector<StatSummary> s = parallel_reps_multi(
        opt.reps, opt.seed, opt.threads, static_cast<int>(nT), fn);

    StudyReport report{"truncation", {}, {}};
    std::vector<double> diff(nT), comb(nT);
    for (size_t i = 0; i < nT; ++i) {
        report.rows.push_back({"truncation", opt.alpha, d, horizons[i], opt.reps, opt.seed,
                               "xi_mean", s[i].mean, s[i].std_err});
        diff[i] = std::fabs(s[i].mean - s[nT - 1].mean);
        comb[i] = std::sqrt(s[i].std_err * s[i].std_err +
                            s[nT - 1].std_err * s[nT - 1].std_err);
        report.rows.push_back({"truncation", opt.alpha, d, horizons[i], opt.reps, opt.seed,
                               "diff_to_Tmax", diff[i], comb[i]});
    }

    const size_t p = nT - 2; // largest horizon below Tmax
    report.checks.push_back(
        {fmt("diff_within_3se(T=%g vs T=%g)", horizons[p], Tmax),
         diff[p] <= 3.0 * comb[p],
         fmt("|mean diff| = %.4g, 3 combined std_err = %.4g", diff[p], 3.0 * comb[p])});
    if (nT >= 3) {
        bool mono = true;
        for (size_t i = 0; i + 2 < nT; ++i) {
            const double bar = 3.0 * std::sqrt(comb[i] * comb[i] + comb[i + 1] * comb[i + 1]);
            mono = mono && diff[i + 1] <= diff[i] + bar;
        }
        report.checks.push_back({"diffs_non_increasing", mono,
                                 "paired differences to T_max, consecutive horizons"});
    }
    return report;
}

StudyReport study_variance_blowup(const StudyOptions& opt) {
    const double d = opt.deltas.empty() ? 0.5 : opt.deltas.front();
    std::vector<double> ladder = opt.horizons;
    if (ladder.empty()) {
        ladder = {8.0, 16.0, 32.0, 64.0};
    }
    ladder = sorted(std::move(ladder), true);
    const size_t nS = ladder.size();
    if (nS < 2) {
        throw ConfigError("variance-blowup study needs at least two horizons");
    }

    // Definitional arm: every S evaluated on one shared one-sided path.
    const int n_inc = static_cast<int>(std::floor(ladder.back() / d + 1e-9));
    std::optional<SpectralPlan> plan;
    if (opt.alpha != 1.0 && opt.alpha != 2.0) {
        plan = build_spectral_plan_increments(opt.alpha, d, n_inc);
    }
    const SpectralPlan* pp = plan ? &*plan : nullptr;
    auto fn = [&](long, NormalStream& rng, std::span<double> out) {
        thread_local OnesidedPath path;
        sample_onesided(opt.alpha, d, n_inc, pp, rng, path);
        for (size_t i = 0; i < ladder.size(); ++i) {
            out[i] = definitional_estimator(path, ladder[i]);
        }
    };
    const std::vector<StatSummary> def = parallel_reps_multi(
        opt.reps, opt.seed, opt.threads, static_cast<int>(nS), fn);

    StudyReport report{"variance-blowup", {}, {}};
    for (size_t i = 0; i < nS; ++i) {
        report.rows.push_back({"variance-blowup", opt.alpha, d, ladder[i], opt.reps, opt.seed,
                               "def_mean", def[i].mean, def[i].std_err});
        report.rows.push_back({"variance-blowup", opt.alpha, d, ladder[i], opt.reps, opt.seed,
                               "def_variance", def[i].variance, 0.0});
    }

    // xi arm over the same horizons: variance should stay flat.
    std::vector<double> xi_var(nS);
    for (size_t i = 0; i < nS; ++i) {
        const McSummary m =
            run_campaign({opt.alpha, d, ladder[i], opt.reps, opt.seed, opt.threads});
        xi_var[i] = m.variance;
        report.rows.push_back({"variance-blowup", opt.alpha, d, ladder[i], opt.reps, opt.seed,
                               "xi_mean", m.mean, m.std_err});
        report.rows.push_back({"variance-blowup", opt.alpha, d, ladder[i], opt.reps, opt.seed,
                               "xi_variance", m.variance, 0.0});
    }

    report.checks.push_back(
        {fmt("def_variance_endpoint_increase(S=%g vs S=%g)", ladder.front(), ladder.back()),
         def[nS - 1].variance > def[0].variance,
         fmt("var(S_max) = %.4g, var(S_min) = %.4g", def[nS - 1].variance, def[0].variance)});
    const auto [lo, hi] = std::minmax_element(xi_var.begin(), xi_var.end());
    report.checks.push_back({"xi_variance_within_10x", *hi <= 10.0 * *lo,
                             fmt("max/min xi variance = %.4g", *hi / *lo)});
    return report;
}

StudyReport study_tail(const StudyOptions& opt) {
    const double d = opt.deltas.empty() ? 0.1 : opt.deltas.front();
    const double T = opt.horizons.empty() ? 10.0 : opt.horizons.front();
    const std::vector<double> thresholds = {2.0, 3.0, 4.0, 6.0, 12.0};

    const std::vector<TailEstimate> tails =
        estimate_tail({opt.alpha, d, T, opt.reps, opt.seed, opt.threads}, thresholds);

    StudyReport report{"tail", {}, {}};
    for (const TailEstimate& t : tails) {
        const double binom_se =
            std::sqrt(t.p_hat * (1.0 - t.p_hat) / static_cast<double>(t.reps));
        report.rows.push_back({"tail", opt.alpha, d, T, opt.reps, opt.seed,
                               fmt("p_hat@%g", t.threshold), t.p_hat, binom_se});
        report.rows.push_back({"tail", opt.alpha, d, T, opt.reps, opt.seed,
                               fmt("wilson_low@%g", t.threshold), t.wilson_low, 0.0});
        report.rows.push_back({"tail", opt.alpha, d, T, opt.reps, opt.seed,
                               fmt("wilson_high@%g", t.threshold), t.wilson_high, 0.0});
    }

    bool mono = true;
    for (size_t i = 1; i < tails.size(); ++i) {
        mono = mono && tails[i].exceed_count <= tails[i - 1].exceed_count;
    }
    report.checks.push_back({"p_hat_non_increasing", mono, "exceedance counts along thresholds"});

    const double hard = 1.0 / d;
    bool any_beyond = false, zero_beyond = true;
    for (const TailEstimate& t : tails) {
        if (t.threshold > hard) {
            any_beyond = true;
            zero_beyond = zero_beyond && t.exceed_count == 0;
        }
    }
    if (any_beyond) {
        report.checks.push_back({"zero_beyond_hard_bound", zero_beyond,
                                 fmt("xi <= 1/delta = %g exactly", hard)});
    }

    std::vector<double> log2x, logp;
    for (const TailEstimate& t : tails) {
        if (t.threshold <= hard && t.exceed_count > 0) {
            const double lx = std::log(t.threshold);
            log2x.push_back(lx * lx);
            logp.push_back(std::log(t.p_hat));
        }
    }
    if (log2x.size() >= 2) {
        const double slope = fit_slope(log2x, logp);
        report.rows.push_back(
            {"tail", opt.alpha, d, T, opt.reps, opt.seed, "log_tail_slope", slope, 0.0});
        report.checks.push_back({"log_p_slope_negative", slope < 0.0,
                                 fmt("slope of log p_hat against log^2 x = %.4g", slope)});
    } else {
        report.checks.push_back(
            {"log_p_slope_negative", false, "fewer than two thresholds with exceedances"});
    }
    return report;
}

} // namespace pickands::studies
