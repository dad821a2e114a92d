#pragma once

#include "oscwave/grid.hpp"
#include "oscwave/params.hpp"

namespace oscwave {

// Deterministic solution of the closed mean-Green's-function equation for the
// oscillator,
//   G' + int_0^t Gamma(t-s) G(s) ds
//      + sigma^2 int_0^t e^{-lambda s} G(s) G(t-s) ds = 0,   G(0) = 1,
// by implicit trapezoid product-integration: both memory integrals use
// trapezoid weights, and the single G(t_{m+1}) appearing in the endpoint
// terms is solved for linearly at each step. Second-order accurate.
//
// An embedded coarse/fine comparison estimates the discretization error; if
// the Richardson estimate exceeds accuracy_tol the solver refuses the grid
// with a numeric_error instead of returning an inaccurate series.
RealSeries solve_dia_volterra_model(const ModelParams& params, const TimeGrid& grid,
                                    double accuracy_tol = 1e-3);

// Wave counterpart,
//   E'' + k^2 E - sigma^2 k^4 int_0^xi e^{-lambda s} E(s) E(xi-s) ds = 0,
//   E(0) = 0, E'(0) = 1,
// marched as a first-order system with the same product-integration rule.
// E(0) = 0 makes both endpoint terms of the convolution vanish, so each step
// reduces to a 2x2 linear solve.
RealSeries solve_dia_volterra_wave(const WaveParams& params, const TimeGrid& grid,
                                   double accuracy_tol = 1e-3);

}  // namespace oscwave
