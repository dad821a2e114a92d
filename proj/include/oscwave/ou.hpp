#pragma once

#include <cstddef>
#include <vector>

#include "oscwave/grid.hpp"
#include "oscwave/rng.hpp"

namespace oscwave {

// Stationary Uhlenbeck-Ornstein coefficient process: zero mean, variance
// sigma^2, autocorrelation sigma^2 * exp(-lambda*|tau|). The same process
// models the oscillator coefficient b(t) and the refractive-index
// fluctuation mu(xi), with t read as distance in the latter case.
struct OUParams {
    double sigma;
    double lambda;

    OUParams(double sigma, double lambda);
};

using OUPath = RealSeries;

// Draws b(0) from the stationary law and advances with the exact transition
//   b_{n+1} = b_n e^{-lambda dt} + sigma sqrt(1 - e^{-2 lambda dt}) z_n,
// so path statistics carry no step-size bias at any dt.
OUPath generate_ou_path(const OUParams& params, const TimeGrid& grid, RngSeed seed);

struct ValueWithError {
    double value = 0.0;
    double std_error = 0.0;
};

// Ensemble-and-time-averaged estimate of <b(t) b(t + lag_index*dt)>. Each
// path contributes its time average over all admissible offsets; the standard
// error is taken across paths.
ValueWithError estimate_autocorrelation(const std::vector<OUPath>& paths,
                                        std::size_t lag_index);

// Sample mean of exp(-(i/2) * int_0^t b) over n_samples independent paths,
// with the running integral taken by the trapezoid rule on the path grid.
// Sample i uses stream_id = seed.stream_id + i. n_threads = 0 picks the
// hardware concurrency; the result is bit-identical for every thread count.
EnsembleStats monte_carlo_phase_average(const OUParams& params, const TimeGrid& grid,
                                        std::size_t n_samples, RngSeed seed,
                                        unsigned n_threads = 0);

}  // namespace oscwave
