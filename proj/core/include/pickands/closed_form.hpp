#pragma once

namespace pickands {

// Series or special-function evaluation together with a certified bound on
// the truncation error of the reported value (0 for finite formulas).
struct ClosedFormValue {
    double value;
    double truncation_bound;
    long terms_used;
};

// Standard normal CDF through erfc; relative error a few ulp everywhere.
double normal_cdf(double x);

// Discrete Pickands constant for alpha = 1:
//   H_1^delta = (delta * exp(2 sum_{k>=1} Phi(-sqrt(delta k / 2)) / k))^{-1}.
// The series is truncated at K with certified tail
//   sum_{k>K} Phi(-sqrt(delta k/2))/k <= e^{-delta K/4} / (K (1 - e^{-delta/4})),
// K chosen so that bound <= 1e-13. Throws std::domain_error for delta <= 0.
ClosedFormValue h1_delta(double delta);

// Discrete Pickands constant for alpha = 2:
//   H_2^delta = (2/delta)(Phi(delta/sqrt 2) - 1/2) = erf(delta/2)/delta,
// the erf form avoiding the cancellation of Phi - 1/2 near zero.
ClosedFormValue h2_delta(double delta);

// zeta(1/2), computed from the accelerated alternating eta series,
// zeta(s) = eta(s)/(1 - 2^{1-s}); accurate to ~1e-14.
double zeta_half();

// Limits of the discretization-rate ratios:
//   (H_1 - H_1^delta)/sqrt(delta) -> -zeta(1/2)/sqrt(pi),
//   (H_2 - H_2^delta)/delta^2     -> 1/(12 sqrt(pi)).
double rate_constant_alpha1();
double rate_constant_alpha2();

// Continuous constants H_1 = 1 and H_2 = 1/sqrt(pi).
double h1_limit();
double h2_limit();

// v(eta) = eta * exp(2 sum_{k>=1} Psi(sqrt(eta k / 2))/k) with Psi = 1 - Phi;
// satisfies H_1^eta = 1/v(eta). Same certified series as h1_delta.
ClosedFormValue v_eta(double eta);

// Closed-form derivative
//   v'(eta) = exp(2 sum Psi(sqrt(eta k/2))/k)
//             * (1 - sqrt(eta)/(2 sqrt(pi)) * sum_{k>=1} e^{-eta k/4}/sqrt(k)),
// both series with certified tails. Positive for all eta > 0.
ClosedFormValue v_eta_prime(double eta);

} // namespace pickands
