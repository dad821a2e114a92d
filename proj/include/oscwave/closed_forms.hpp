#pragma once

#include "oscwave/ou.hpp"
#include "oscwave/params.hpp"

namespace oscwave {

// Catalog of closed-form solutions and coefficient formulas for both model
// problems, used as references against the samplers, marchers, and inverted
// fractions. The oscillator forms are small-parameter results taken in the
// undamped-kernel limit; mu_kernel does not enter them.

// Perturbative (one-iteration) oscillator mean response:
//   (nu/(2nu+sigma^2)) e^{-lambda t}
//     + ((nu+sigma^2)/(2nu+sigma^2)) cos(sqrt(2nu+sigma^2) t).
// The cosine term never decays; this form oscillates indefinitely.
double perturbative_green(const ModelParams& params, double t);

// Depth-3 renormalized oscillator mean response:
//   e^{-lambda t} [ (2nu+sigma^2)/(3nu+2sigma^2)
//                   + ((nu+sigma^2)/(3nu+2sigma^2)) cos(w t)
//                   + (lambda/w) sin(w t) ],   w = sqrt(3nu+2sigma^2).
// The overall e^{-lambda t} envelope makes this one decay.
double dia_third_green(const ModelParams& params, double t);

// The printed wave forms carry no 1/k amplitude although the noise-free
// field is sin(k xi)/k; `normalized` divides by k so the forms compare
// directly against simulated fields, `paper_literal` evaluates them as
// printed.
enum class Amplitude { normalized, paper_literal };

// Perturbative coherent wave:
//   e^{-sigma^2 lambda xi/(1+sigma^2)}
//     * sin( sqrt((1-sigma^2)/(1+sigma^2)) k xi ).
double perturbative_wave(const WaveParams& params, double xi,
                         Amplitude amplitude = Amplitude::normalized);

// Renormalized coherent wave:
//   e^{-sigma^2 (1+2sigma^2) lambda xi/(1-sigma^2+2sigma^4)}
//     * sin( sqrt((1-3sigma^2+2sigma^4)/(1-sigma^2+2sigma^4)) k xi ).
// Rejects 1-3sigma^2+2sigma^4 <= 0 (the frequency factor turns imaginary at
// sigma^2 = 1/2).
double dia_wave(const WaveParams& params, double xi,
                Amplitude amplitude = Amplitude::normalized);

// Attenuation rates (per unit lambda xi) and frequency factors (multiplying
// k) of the two wave forms above. The renormalized closure always attenuates
// faster: dia_rate/perturbative_rate = (1+3sigma^2+2sigma^4)/(1-sigma^2+2sigma^4).
struct AttenuationReport {
    double perturbative_rate;
    double dia_rate;
    double perturbative_freq_factor;
    double dia_freq_factor;
};

AttenuationReport attenuation_report(double sigma, double lambda);

// Difference of squared frequency factors, dia^2 - perturbative^2. The first
// form is algebraically exact: -4sigma^4(1-sigma^2)/(1+sigma^4+2sigma^6).
// The second is the compact small-sigma rearrangement
// -4sigma^4(1-sigma^2)/(1-2sigma^2(1-sigma^2)); the two differ at O(sigma^6).
double wavenumber_shift(double sigma);
double wavenumber_shift_small_sigma(double sigma);

// Phase-stripped oscillator amplitude <f(t)> after the Liouville
// transformation, at successive approximation orders (k = sqrt(nu)):
//   orders 1, 2 (algebraically identical):
//     (1/k) e^{-sigma^2 lambda^2 t^2/(32 k^2)}
//           sin( (1 - sigma^2 lambda^2/(16 k^4)) k t ),
//   order 3: the same envelope with shift factor (1 - 3 sigma^2 lambda^2/(32 k^4)).
double liouville_envelope(const ModelParams& params, double t, int order);

// Gaussian-envelope estimate of the full mean response, combining the
// envelope above with the small-lambda phase average:
//   e^{-(1+lambda^2/(4k^2))(sigma^2/8) t^2} cos( (1 - sigma^2 lambda^2/(16 k^4)) k t ).
double gaussian_green_estimate(const ModelParams& params, double t);

// Mean of exp(-(i/2) int_0^t b) over the stationary coefficient process.
// The exact branch evaluates exp(-(sigma^2/(4 lambda^2))(lambda t - 1 + e^{-lambda t}));
// the limit branches evaluate exp(-sigma^2 t^2/8) (valid for lambda t small)
// and exp(-sigma^2 t/(4 lambda)) (valid for lambda t large).
enum class PhaseBranch { exact, small_lambda, large_lambda };

double phase_average_closed(const OUParams& params, double t,
                            PhaseBranch branch = PhaseBranch::exact);

// Coefficients of the first-order-system reduction of the averaged
// oscillator:
//   c1 = sigma^2 lambda^2/(2 nu (lambda^2+4nu)),
//   c2 = sigma^2 lambda/(sqrt(nu)(lambda^2+4nu)),
//   alpha = (sqrt(nu)/4) c2,
//   beta  = sqrt( nu (1 - c2^2/16 - c1/2) ).
// When the radicand is negative the response is overdamped; beta then holds
// the real split rate sqrt(-radicand) and the flag is set. The *_limit
// fields evaluate the printed asymptotic forms alpha -> sigma^2 lambda/(16 nu)
// (small lambda), alpha -> sigma^2/(4 lambda) and beta -> sqrt(nu - sigma^2/4)
// (large lambda).
struct FirstOrderCoeffs {
    double c1;
    double c2;
    double alpha;
    double beta;
    bool overdamped;
    double alpha_small_lambda_limit;
    double alpha_large_lambda_limit;
    double beta_large_lambda_limit;
};

FirstOrderCoeffs first_order_system_coeffs(const ModelParams& params);

}  // namespace oscwave
