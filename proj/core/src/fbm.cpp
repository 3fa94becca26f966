#include "pickands/fbm.hpp"

#include "pickands/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <stdexcept>
#include <string>

namespace pickands {

namespace {

constexpr double kClampTol = 1e-8; // relative to the largest eigenvalue

// FFTW's planner is not thread-safe; executing a plan on fresh buffers is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// Per-thread synthesis scratch, grow-only, aligned like the planning buffers.
struct Scratch {
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    int size = 0;

    void ensure(int m) {
        if (size >= m) return;
        release();
        in = fftw_alloc_complex(static_cast<size_t>(m));
        out = fftw_alloc_complex(static_cast<size_t>(m));
        size = m;
    }
    void release() {
        if (in) fftw_free(in);
        if (out) fftw_free(out);
        in = out = nullptr;
        size = 0;
    }
    ~Scratch() { release(); }
};

thread_local Scratch tls_scratch;

void check_alpha_domain(double alpha) {
    if (!(alpha > 0.0) || !(alpha <= 2.0)) {
        throw std::domain_error("alpha must lie in (0, 2], got " + std::to_string(alpha));
    }
}

} // namespace

double fbm_covariance(double alpha, double t, double s) {
    check_alpha_domain(alpha);
    return 0.5 * (std::pow(std::fabs(t), alpha) + std::pow(std::fabs(s), alpha) -
                  std::pow(std::fabs(t - s), alpha));
}

double fgn_autocovariance(double alpha, double delta, int k) {
    check_alpha_domain(alpha);
    if (!(delta > 0.0)) throw std::domain_error("delta must be positive");
    if (k < 0) throw std::domain_error("lag must be nonnegative");
    const double a = alpha;
    return 0.5 * std::pow(delta, a) *
           (std::pow(k + 1.0, a) + std::pow(std::fabs(k - 1.0), a) - 2.0 * std::pow(double(k), a));
}

struct SpectralPlan::Impl {
    double alpha = 0;
    double delta = 0;
    int m = 0;
    int n_inc = 0;
    std::vector<double> gamma;  // lags 0..m/2
    std::vector<double> eig;    // clamped, size m
    std::vector<double> coef;   // per-index synthesis scale, size m/2 + 1
    fftw_plan plan = nullptr;
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;

    ~Impl() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (plan) fftw_destroy_plan(plan);
        if (in) fftw_free(in);
        if (out) fftw_free(out);
    }
};

SpectralPlan::SpectralPlan() = default;
SpectralPlan::~SpectralPlan() = default;
SpectralPlan::SpectralPlan(SpectralPlan&&) noexcept = default;
SpectralPlan& SpectralPlan::operator=(SpectralPlan&&) noexcept = default;

double SpectralPlan::alpha() const { return impl_->alpha; }
double SpectralPlan::delta() const { return impl_->delta; }
int SpectralPlan::embedding_size() const { return impl_->m; }
int SpectralPlan::increment_count() const { return impl_->n_inc; }
const std::vector<double>& SpectralPlan::eigenvalues() const { return impl_->eig; }
const std::vector<double>& SpectralPlan::gamma() const { return impl_->gamma; }

SpectralPlan build_spectral_plan_increments(double alpha, double delta, int n_inc) {
    if (!(alpha > 0.0) || !(alpha < 2.0)) {
        throw std::domain_error("spectral plan requires alpha in (0, 2), got " + std::to_string(alpha));
    }
    if (!(delta > 0.0)) throw std::domain_error("delta must be positive");
    if (n_inc < 1) throw std::domain_error("need at least one increment");

    SpectralPlan sp;
    sp.impl_ = std::make_unique<SpectralPlan::Impl>();
    auto& im = *sp.impl_;
    im.alpha = alpha;
    im.delta = delta;
    im.n_inc = n_inc;
    int m = 1;
    while (m < 2 * n_inc) m *= 2;
    im.m = m;
    const int half = m / 2;

    im.gamma.resize(half + 1);
    for (int k = 0; k <= half; ++k) im.gamma[k] = fgn_autocovariance(alpha, delta, k);

    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        im.in = fftw_alloc_complex(static_cast<size_t>(m));
        im.out = fftw_alloc_complex(static_cast<size_t>(m));
        im.plan = fftw_plan_dft_1d(m, im.in, im.out, FFTW_FORWARD, FFTW_ESTIMATE);
    }

    // Eigenvalues of the periodized covariance ring: DFT of
    // (gamma_0, ..., gamma_{m/2}, gamma_{m/2-1}, ..., gamma_1).
    for (int j = 0; j < m; ++j) {
        const int lag = j <= half ? j : m - j;
        im.in[j][0] = im.gamma[lag];
        im.in[j][1] = 0.0;
    }
    fftw_execute(im.plan);

    im.eig.resize(m);
    double max_eig = 0.0;
    for (int j = 0; j < m; ++j) max_eig = std::max(max_eig, im.out[j][0]);
    for (int j = 0; j < m; ++j) {
        const double lambda = im.out[j][0];
        if (lambda < -kClampTol * max_eig) {
            throw EmbeddingNotPSD("circulant eigenvalue " + std::to_string(lambda) +
                                  " at index " + std::to_string(j) + " below tolerance (alpha=" +
                                  std::to_string(alpha) + ", delta=" + std::to_string(delta) + ")");
        }
        im.eig[j] = lambda < 0.0 ? 0.0 : lambda;
    }

    im.coef.resize(half + 1);
    im.coef[0] = std::sqrt(im.eig[0] / m);
    im.coef[half] = std::sqrt(im.eig[half] / m);
    for (int j = 1; j < half; ++j) im.coef[j] = std::sqrt(im.eig[j] / (2.0 * m));
    return sp;
}

SpectralPlan build_spectral_plan(const GridSpec& grid) {
    return build_spectral_plan_increments(grid.alpha, grid.delta, grid.n_left + grid.n_right);
}

void SpectralPlan::synthesize(NormalStream& rng, double* out) const {
    const auto& im = *impl_;
    const int m = im.m;
    const int half = m / 2;
    tls_scratch.ensure(m);
    fftw_complex* a = tls_scratch.in;
    fftw_complex* x = tls_scratch.out;

    // Hermitian-symmetric spectral amplitudes: E|a_j|^2 = lambda_j / m, so
    // the DFT below has the periodized fGn covariance exactly.
    a[0][0] = im.coef[0] * rng.next();
    a[0][1] = 0.0;
    a[half][0] = im.coef[half] * rng.next();
    a[half][1] = 0.0;
    for (int j = 1; j < half; ++j) {
        const double u = rng.next();
        const double v = rng.next();
        a[j][0] = im.coef[j] * u;
        a[j][1] = im.coef[j] * v;
        a[m - j][0] = a[j][0];
        a[m - j][1] = -a[j][1];
    }

    fftw_execute_dft(im.plan, a, x);
    for (int i = 0; i < im.n_inc; ++i) out[i] = x[i][0];
}

namespace {

// Shared two-sided assembly: B(k delta) = W((k+K) delta) - W(K delta) from
// one-sided increments; stationary increments make the law exact.
void assemble_two_sided(const GridSpec& grid, const double* inc, FbmPath& out) {
    const int K = grid.n_left;
    const int n = grid.point_count();
    out.grid = grid;
    out.b.resize(n);
    out.z.resize(n);

    // W(i delta), i = 0..2K, then re-center at index K.
    double w = 0.0;
    out.b[0] = 0.0;
    std::vector<double>& b = out.b;
    for (int i = 1; i <= 2 * K; ++i) {
        w += inc[i - 1];
        b[i] = w;
    }
    const double wk = b[K];
    for (int i = 0; i <= 2 * K; ++i) b[i] -= wk;
    b[K] = 0.0; // exact zero at t = 0

    const double sqrt2 = std::sqrt(2.0);
    for (int i = 0; i < n; ++i) {
        const double t = grid.time_at(i);
        out.z[i] = sqrt2 * b[i] - std::pow(std::fabs(t), grid.alpha);
    }
    out.z[K] = 0.0;
}

} // namespace

void sample_path(const SpectralPlan& plan, const GridSpec& grid, NormalStream& rng, FbmPath& out) {
    const int n_inc = grid.n_left + grid.n_right;
    if (plan.increment_count() < n_inc || plan.alpha() != grid.alpha || plan.delta() != grid.delta) {
        throw std::invalid_argument("spectral plan does not cover this grid");
    }
    thread_local std::vector<double> inc;
    inc.resize(static_cast<size_t>(plan.increment_count()));
    plan.synthesize(rng, inc.data());
    assemble_two_sided(grid, inc.data(), out);
}

FbmPath sample_path(const SpectralPlan& plan, const GridSpec& grid, NormalStream& rng) {
    FbmPath p;
    sample_path(plan, grid, rng, p);
    return p;
}

void sample_path(const GridSpec& grid, NormalStream& rng, FbmPath& out) {
    const int K = grid.n_left;
    const int n = grid.point_count();
    if (grid.alpha == 2.0) {
        // Straight line with random slope: B(t) = t N.
        const double slope = rng.next();
        out.grid = grid;
        out.b.resize(n);
        out.z.resize(n);
        const double sqrt2 = std::sqrt(2.0);
        for (int i = 0; i < n; ++i) {
            const double t = grid.time_at(i);
            out.b[i] = t * slope;
            out.z[i] = sqrt2 * out.b[i] - t * t;
        }
        out.b[K] = 0.0;
        out.z[K] = 0.0;
        return;
    }
    if (grid.alpha == 1.0) {
        thread_local std::vector<double> inc;
        inc.resize(static_cast<size_t>(2 * K));
        const double sd = std::sqrt(grid.delta);
        for (int i = 0; i < 2 * K; ++i) inc[i] = sd * rng.next();
        assemble_two_sided(grid, inc.data(), out);
        return;
    }
    const SpectralPlan plan = build_spectral_plan(grid);
    sample_path(plan, grid, rng, out);
}

FbmPath sample_path(const GridSpec& grid, NormalStream& rng) {
    FbmPath p;
    sample_path(grid, rng, p);
    return p;
}

void sample_onesided(double alpha, double delta, int n_inc, const SpectralPlan* plan,
                     NormalStream& rng, OnesidedPath& out) {
    check_alpha_domain(alpha);
    if (!(delta > 0.0)) throw std::domain_error("delta must be positive");
    if (n_inc < 1) throw std::domain_error("need at least one increment");

    out.alpha = alpha;
    out.delta = delta;
    out.w.resize(static_cast<size_t>(n_inc) + 1);
    out.z.resize(static_cast<size_t>(n_inc) + 1);

    if (alpha == 2.0) {
        const double slope = rng.next();
        for (int i = 0; i <= n_inc; ++i) out.w[i] = i * delta * slope;
    } else if (alpha == 1.0) {
        const double sd = std::sqrt(delta);
        out.w[0] = 0.0;
        for (int i = 1; i <= n_inc; ++i) out.w[i] = out.w[i - 1] + sd * rng.next();
    } else {
        if (plan == nullptr) throw std::invalid_argument("spectral plan required for this alpha");
        if (plan->increment_count() < n_inc || plan->alpha() != alpha || plan->delta() != delta) {
            throw std::invalid_argument("spectral plan does not cover this horizon");
        }
        thread_local std::vector<double> inc;
        inc.resize(static_cast<size_t>(plan->increment_count()));
        plan->synthesize(rng, inc.data());
        out.w[0] = 0.0;
        for (int i = 1; i <= n_inc; ++i) out.w[i] = out.w[i - 1] + inc[i - 1];
    }

    const double sqrt2 = std::sqrt(2.0);
    out.z[0] = 0.0;
    for (int i = 1; i <= n_inc; ++i) {
        out.z[i] = sqrt2 * out.w[i] - std::pow(i * delta, alpha);
    }
}

OnesidedPath sample_onesided(double alpha, double delta, int n_inc, const SpectralPlan* plan,
                             NormalStream& rng) {
    OnesidedPath p;
    sample_onesided(alpha, delta, n_inc, plan, rng, p);
    return p;
}

} // namespace pickands
