#include <cmath>
#include <cstddef>
#include <vector>

#include "doctest.h"
#include "oscwave/errors.hpp"
#include "oscwave/volterra.hpp"

using namespace oscwave;

TEST_SUITE("volterra") {

TEST_CASE("noise-free oscillator closure reduces to cos(sqrt(nu) t)") {
    ModelParams params(0.04, 0.0, OUParams(0.0, 1.0));
    TimeGrid grid(20.0, 3001);
    RealSeries g = solve_dia_volterra_model(params, grid);
    double worst = 0.0;
    for (std::size_t j = 0; j < grid.n_steps(); ++j)
        worst = std::max(worst, std::abs(g.values[j] - std::cos(0.2 * grid.point(j))));
    CHECK(worst <= 1e-6);
}

TEST_CASE("decaying kernel without noise gives the damped oscillator") {
    // mu_kernel > 0, sigma = 0: differentiating the closure gives
    // G'' + mu G' + nu G = 0 with G(0)=1, G'(0)=0.
    const double nu = 1.0, mu = 1.0;
    ModelParams params(nu, mu, OUParams(0.0, 1.0));
    TimeGrid grid(10.0, 4001);
    RealSeries g = solve_dia_volterra_model(params, grid);
    const double wd = std::sqrt(nu - 0.25 * mu * mu);
    double worst = 0.0;
    for (std::size_t j = 0; j < grid.n_steps(); ++j) {
        const double t = grid.point(j);
        const double expected = std::exp(-0.5 * mu * t) *
                                (std::cos(wd * t) + 0.5 * mu / wd * std::sin(wd * t));
        worst = std::max(worst, std::abs(g.values[j] - expected));
    }
    CHECK(worst <= 1e-5);
}

TEST_CASE("initial value and initial slope") {
    ModelParams params(0.04, 0.0, OUParams(0.1, 0.1));
    TimeGrid grid(10.0, 2001);
    RealSeries g = solve_dia_volterra_model(params, grid);
    CHECK(g.values[0] == 1.0);
    // Both memory integrals vanish at t=0+, so the discrete initial slope is
    // O(dt), not O(1).
    const double slope = (g.values[1] - g.values[0]) / grid.dt();
    const double sig2 = 0.01;
    CHECK(std::abs(slope) <= 2.0 * (params.nu + sig2) * grid.dt());
}

TEST_CASE("oscillator marcher converges at second order") {
    ModelParams params(0.04, 0.0, OUParams(0.1, 0.1));
    TimeGrid ref_grid(10.0, 8001);
    RealSeries ref = solve_dia_volterra_model(params, ref_grid, 1.0);
    auto gap_at = [&](std::size_t n, std::size_t stride) {
        RealSeries g = solve_dia_volterra_model(params, TimeGrid(10.0, n), 1.0);
        double worst = 0.0;
        for (std::size_t i = 0; i < g.values.size(); ++i)
            worst = std::max(worst, std::abs(g.values[i] - ref.values[i * stride]));
        return worst;
    };
    const double ratio = gap_at(501, 16) / gap_at(1001, 8);
    CHECK(ratio > 3.2);
    CHECK(ratio < 4.8);
}

TEST_CASE("noise-free wave closure reduces to sin(k xi)/k") {
    WaveParams params(1.0, OUParams(0.0, 1.0));
    TimeGrid grid(10.0, 10001);
    RealSeries e = solve_dia_volterra_wave(params, grid);
    double worst = 0.0;
    for (std::size_t j = 0; j < grid.n_steps(); ++j)
        worst = std::max(worst, std::abs(e.values[j] - std::sin(grid.point(j))));
    CHECK(worst <= 1e-6);
}

TEST_CASE("wave initial conditions") {
    WaveParams params(2.0, OUParams(0.1, 0.05));
    TimeGrid grid(5.0, 2001);
    RealSeries e = solve_dia_volterra_wave(params, grid);
    CHECK(e.values[0] == 0.0);
    const double slope = (e.values[1] - e.values[0]) / grid.dt();
    CHECK(slope == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("wave marcher converges at second order") {
    WaveParams params(2.0, OUParams(0.1, 0.05));
    TimeGrid ref_grid(4.0, 8001);
    RealSeries ref = solve_dia_volterra_wave(params, ref_grid, 1.0);
    auto gap_at = [&](std::size_t n, std::size_t stride) {
        RealSeries e = solve_dia_volterra_wave(params, TimeGrid(4.0, n), 1.0);
        double worst = 0.0;
        for (std::size_t i = 0; i < e.values.size(); ++i)
            worst = std::max(worst, std::abs(e.values[i] - ref.values[i * stride]));
        return worst;
    };
    const double ratio = gap_at(501, 16) / gap_at(1001, 8);
    CHECK(ratio > 3.2);
    CHECK(ratio < 4.8);
}

TEST_CASE("a coarse grid is refused with an accuracy error") {
    ModelParams params(4.0, 0.0, OUParams(0.0, 1.0));
    TimeGrid coarse(20.0, 51);
    CHECK_THROWS_AS(solve_dia_volterra_model(params, coarse, 1e-3), numeric_error);
    // The same grid is accepted when the caller tolerates the error.
    CHECK_NOTHROW(solve_dia_volterra_model(params, coarse, 10.0));
    CHECK_THROWS_AS(solve_dia_volterra_model(params, coarse, 0.0), validation_error);
}

}  // TEST_SUITE
