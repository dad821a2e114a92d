#include "oscwave/closed_forms.hpp"

#include <cmath>
#include <string>

#include "oscwave/errors.hpp"

namespace oscwave {

namespace {

double sigma2(const OUParams& ou) { return ou.sigma * ou.sigma; }

// Frequency factor of the renormalized wave form; the guard is shared by
// every caller that needs it.
double dia_freq_radicand(double s2) { return 1.0 - 3.0 * s2 + 2.0 * s2 * s2; }

void require_dia_wave_domain(double s2) {
    if (dia_freq_radicand(s2) <= 0.0)
        throw validation_error(
            "dia wave form: frequency factor is imaginary for sigma^2 = " +
            std::to_string(s2) + " (needs 1 - 3 sigma^2 + 2 sigma^4 > 0)");
}

}  // namespace

double perturbative_green(const ModelParams& params, double t) {
    const double s2 = sigma2(params.ou);
    const double total = 2.0 * params.nu + s2;
    return params.nu / total * std::exp(-params.ou.lambda * t) +
           (params.nu + s2) / total * std::cos(std::sqrt(total) * t);
}

double dia_third_green(const ModelParams& params, double t) {
    const double s2 = sigma2(params.ou);
    const double total = 3.0 * params.nu + 2.0 * s2;
    const double w = std::sqrt(total);
    return std::exp(-params.ou.lambda * t) *
           ((2.0 * params.nu + s2) / total +
            (params.nu + s2) / total * std::cos(w * t) +
            params.ou.lambda / w * std::sin(w * t));
}

double perturbative_wave(const WaveParams& params, double xi, Amplitude amplitude) {
    const double s2 = sigma2(params.ou);
    const double rate = s2 * params.ou.lambda / (1.0 + s2);
    const double freq = std::sqrt((1.0 - s2) / (1.0 + s2));
    const double value = std::exp(-rate * xi) * std::sin(freq * params.k * xi);
    return amplitude == Amplitude::normalized ? value / params.k : value;
}

double dia_wave(const WaveParams& params, double xi, Amplitude amplitude) {
    const double s2 = sigma2(params.ou);
    require_dia_wave_domain(s2);
    const double den = 1.0 - s2 + 2.0 * s2 * s2;
    const double rate = s2 * (1.0 + 2.0 * s2) * params.ou.lambda / den;
    const double freq = std::sqrt(dia_freq_radicand(s2) / den);
    const double value = std::exp(-rate * xi) * std::sin(freq * params.k * xi);
    return amplitude == Amplitude::normalized ? value / params.k : value;
}

AttenuationReport attenuation_report(double sigma, double lambda) {
    if (!std::isfinite(sigma) || sigma < 0.0)
        throw validation_error("attenuation_report: sigma must be finite and >= 0");
    if (!std::isfinite(lambda) || lambda <= 0.0)
        throw validation_error("attenuation_report: lambda must be finite and > 0");
    const double s2 = sigma * sigma;
    require_dia_wave_domain(s2);
    const double den = 1.0 - s2 + 2.0 * s2 * s2;
    return AttenuationReport{
        s2 * lambda / (1.0 + s2),
        s2 * (1.0 + 2.0 * s2) * lambda / den,
        std::sqrt((1.0 - s2) / (1.0 + s2)),
        std::sqrt(dia_freq_radicand(s2) / den),
    };
}

double wavenumber_shift(double sigma) {
    const double s2 = sigma * sigma;
    return -4.0 * s2 * s2 * (1.0 - s2) / (1.0 + s2 * s2 + 2.0 * s2 * s2 * s2);
}

double wavenumber_shift_small_sigma(double sigma) {
    const double s2 = sigma * sigma;
    return -4.0 * s2 * s2 * (1.0 - s2) / (1.0 - 2.0 * s2 * (1.0 - s2));
}

double liouville_envelope(const ModelParams& params, double t, int order) {
    if (order < 1 || order > 3)
        throw validation_error("liouville_envelope: order must be 1, 2, or 3");
    const double k2 = params.nu;
    const double k = std::sqrt(k2);
    const double sl2 = sigma2(params.ou) * params.ou.lambda * params.ou.lambda;
    const double envelope = std::exp(-sl2 * t * t / (32.0 * k2));
    const double shift = (order == 3) ? 1.0 - 3.0 * sl2 / (32.0 * k2 * k2)
                                      : 1.0 - sl2 / (16.0 * k2 * k2);
    return envelope * std::sin(shift * k * t) / k;
}

double gaussian_green_estimate(const ModelParams& params, double t) {
    const double k2 = params.nu;
    const double s2 = sigma2(params.ou);
    const double l2 = params.ou.lambda * params.ou.lambda;
    const double envelope = std::exp(-(1.0 + l2 / (4.0 * k2)) * s2 / 8.0 * t * t);
    const double shift = 1.0 - s2 * l2 / (16.0 * k2 * k2);
    return envelope * std::cos(shift * std::sqrt(k2) * t);
}

double phase_average_closed(const OUParams& params, double t, PhaseBranch branch) {
    const double s2 = sigma2(params);
    switch (branch) {
        case PhaseBranch::small_lambda:
            return std::exp(-s2 * t * t / 8.0);
        case PhaseBranch::large_lambda:
            return std::exp(-s2 * t / (4.0 * params.lambda));
        case PhaseBranch::exact:
            break;
    }
    const double lt = params.lambda * t;
    return std::exp(-s2 / (4.0 * params.lambda * params.lambda) *
                    (lt - 1.0 + std::exp(-lt)));
}

FirstOrderCoeffs first_order_system_coeffs(const ModelParams& params) {
    const double nu = params.nu;
    const double s2 = sigma2(params.ou);
    const double lambda = params.ou.lambda;
    const double den = lambda * lambda + 4.0 * nu;
    const double c1 = s2 * lambda * lambda / (2.0 * nu * den);
    const double c2 = s2 * lambda / (std::sqrt(nu) * den);
    const double alpha = std::sqrt(nu) / 4.0 * c2;
    const double radicand = nu * (1.0 - c2 * c2 / 16.0 - c1 / 2.0);
    return FirstOrderCoeffs{
        c1,
        c2,
        alpha,
        std::sqrt(std::fabs(radicand)),
        radicand < 0.0,
        s2 * lambda / (16.0 * nu),
        s2 / (4.0 * lambda),
        std::sqrt(std::fmax(nu - s2 / 4.0, 0.0)),
    };
}

}  // namespace oscwave
