#pragma once

#include "oscwave/grid.hpp"

namespace oscwave {

// Parameters of a damped oscillation A * exp(-rate*t) * sin(omega*t + phase)
// recovered from a sampled series, plus the root-mean-square misfit over the
// fitted range.
struct EnvelopeFit {
    double amplitude = 0.0;  // >= 0
    double rate = 0.0;       // >= 0; growth is never reported
    double omega = 0.0;      // > 0
    double phase = 0.0;      // folded into [0, 2pi)
    double rms_residual = 0.0;
};

// Least-squares fit of a damped sinusoid. The frequency guess comes from the
// mean zero-crossing spacing and the rate guess from a log-linear fit to the
// extrema magnitudes; both are then refined together with amplitude and phase
// by a Levenberg-Marquardt loop. Points earlier than a quarter period are
// excluded from the fit so an initial transient cannot bias the rate, and
// rms_residual (and the rejection threshold) are measured over the fitted
// range only.
//
// Throws validation_error when the series has fewer than 5 zero crossings,
// and numeric_error when the refinement fails to converge or the converged
// residual exceeds 20% of the series rms.
EnvelopeFit fit_damped_oscillation(const RealSeries& series);

}  // namespace oscwave
