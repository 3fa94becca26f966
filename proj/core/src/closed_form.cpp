#include "pickands/closed_form.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pickands {

namespace {

constexpr double kSeriesTailTarget = 1e-13;

// Tail of sum_{k>K} Phi(-sqrt(d k / 2))/k, from Phi(-x) <= e^{-x^2/2}/2 and
// the geometric sum: bound = e^{-d K / 4} / (K (1 - e^{-d/4})).
double phi_series_tail(double d, double k) {
    return std::exp(-d * k / 4.0) / (k * (-std::expm1(-d / 4.0)));
}

// Smallest power-of-two K with phi_series_tail(d, K) <= target.
long phi_series_length(double d) {
    double k = 64.0;
    while (phi_series_tail(d, k) > kSeriesTailTarget) {
        k *= 2.0;
        if (k > 1e12) {
            throw std::domain_error("series for h1/v does not certify at this delta");
        }
    }
    return static_cast<long>(k);
}

struct SeriesSum {
    double sum;
    double tail_bound;
    long terms;
};

// sum_{k=1..K} Phi(-sqrt(d k / 2))/k, Kahan-compensated, smallest term first.
// Phi(-sqrt(d k / 2)) = erfc(sqrt(d k) / 2) / 2.
SeriesSum phi_over_k_series(double d) {
    long K = phi_series_length(d);
    double sum = 0.0;
    double comp = 0.0;
    for (long k = K; k >= 1; --k) {
        double term = 0.5 * std::erfc(std::sqrt(d * static_cast<double>(k)) / 2.0) /
                      static_cast<double>(k);
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return {sum, phi_series_tail(d, static_cast<double>(K)), K};
}

void require_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::domain_error(what);
    }
}

} // namespace

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

ClosedFormValue h1_delta(double delta) {
    require_positive(delta, "h1_delta: delta must be positive");
    SeriesSum s = phi_over_k_series(delta);
    // Dropping the positive tail overstates h1 by at most a factor e^{2 tail}.
    double value = 1.0 / (delta * std::exp(2.0 * s.sum));
    double bound = std::expm1(2.0 * s.tail_bound) * value;
    return {value, bound, s.terms};
}

ClosedFormValue h2_delta(double delta) {
    require_positive(delta, "h2_delta: delta must be positive");
    // erf(delta/2)/delta; the equivalent (2/delta)(Phi(delta/sqrt 2) - 1/2)
    // cancels catastrophically for small delta.
    return {std::erf(delta / 2.0) / delta, 0.0, 0};
}

double zeta_half() {
    // Cohen-Rodriguez Villegas-Zagier acceleration of the alternating series
    // eta(1/2) = sum_{k>=0} (-1)^k / sqrt(k+1); zeta = eta / (1 - 2^{1/2}).
    constexpr int n = 48;
    double d = std::pow(3.0 + std::sqrt(8.0), n);
    d = (d + 1.0 / d) / 2.0;
    double b = -1.0;
    double c = -d;
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
        c = b - c;
        s += c / std::sqrt(static_cast<double>(k + 1));
        b *= (k + n) * (k - n) / ((k + 0.5) * (k + 1.0));
    }
    double eta = s / d;
    return eta / (1.0 - std::numbers::sqrt2);
}

double rate_constant_alpha1() {
    return -zeta_half() * std::numbers::inv_sqrtpi;
}

double rate_constant_alpha2() {
    return std::numbers::inv_sqrtpi / 12.0;
}

double h1_limit() {
    return 1.0;
}

double h2_limit() {
    return std::numbers::inv_sqrtpi;
}

ClosedFormValue v_eta(double eta) {
    require_positive(eta, "v_eta: eta must be positive");
    SeriesSum s = phi_over_k_series(eta);
    double value = eta * std::exp(2.0 * s.sum);
    double bound = std::expm1(2.0 * s.tail_bound) * value;
    return {value, bound, s.terms};
}

ClosedFormValue v_eta_prime(double eta) {
    require_positive(eta, "v_eta_prime: eta must be positive");
    SeriesSum s = phi_over_k_series(eta);

    // Second series sum_{k>=1} e^{-eta k/4}/sqrt(k), tail bounded by
    // e^{-eta K/4} / (sqrt(K) (1 - e^{-eta/4})).
    double geom = -std::expm1(-eta / 4.0);
    double k2 = 64.0;
    while (std::exp(-eta * k2 / 4.0) / (std::sqrt(k2) * geom) > kSeriesTailTarget) {
        k2 *= 2.0;
        if (k2 > 1e12) {
            throw std::domain_error("series for v' does not certify at this eta");
        }
    }
    long K2 = static_cast<long>(k2);
    double sum2 = 0.0;
    double comp2 = 0.0;
    for (long k = K2; k >= 1; --k) {
        double term = std::exp(-eta * static_cast<double>(k) / 4.0) /
                      std::sqrt(static_cast<double>(k));
        double y = term - comp2;
        double t = sum2 + y;
        comp2 = (t - sum2) - y;
        sum2 = t;
    }
    double tail2 = std::exp(-eta * k2 / 4.0) / (std::sqrt(k2) * geom);

    double outer = std::exp(2.0 * s.sum);
    double coef = 0.5 * std::sqrt(eta) * std::numbers::inv_sqrtpi;
    double value = outer * (1.0 - coef * sum2);
    double bound = outer * (std::expm1(2.0 * s.tail_bound) * std::abs(1.0 - coef * sum2) +
                            std::exp(2.0 * s.tail_bound) * coef * tail2);
    return {value, bound, s.terms + K2};
}

} // namespace pickands
