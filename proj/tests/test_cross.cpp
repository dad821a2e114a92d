#include <cmath>
#include <cstddef>

#include "doctest.h"
#include "oscwave/sample_solvers.hpp"
#include "oscwave/volterra.hpp"

using namespace oscwave;

// Monte Carlo averaging and the closure marcher approximate the same mean
// response from opposite directions: sampling error on one side, closure
// error on the other. In weak-coupling regimes the closure bias is small, so
// the two must agree within a few standard errors plus a modest bias floor.

TEST_SUITE("cross_checks") {

TEST_CASE("oscillator ensemble mean tracks the closure marcher") {
    const ModelParams params(0.04, 0.0, OUParams(0.05, 0.1));
    TimeGrid grid(10.0, 501);
    EnsembleStats mc = ensemble_green_function(params, grid, 10000, {4242u, 0u});
    RealSeries closure = solve_dia_volterra_model(params, grid);
    for (std::size_t j = 0; j < grid.n_steps(); ++j) {
        const double gap = std::abs(mc.mean[j].real() - closure.values[j]);
        const double allowed = std::max(3.0 * mc.std_error[j], 0.02);
        CHECK(gap <= allowed);
    }
}

TEST_CASE("wave ensemble mean tracks the closure marcher") {
    const WaveParams params(1.0, OUParams(0.05, 0.5));
    TimeGrid grid(10.0, 501);
    EnsembleStats mc = ensemble_wave_field(params, grid, 10000, {993u, 0u});
    RealSeries closure = solve_dia_volterra_wave(params, grid);
    for (std::size_t j = 0; j < grid.n_steps(); ++j) {
        const double gap = std::abs(mc.mean[j].real() - closure.values[j]);
        const double allowed = std::max(3.0 * mc.std_error[j], 0.03);
        CHECK(gap <= allowed);
    }
}

}  // TEST_SUITE
