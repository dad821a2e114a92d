#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "doctest.h"
#include "oscwave/errors.hpp"
#include "oscwave/sample_solvers.hpp"

using namespace oscwave;
using C = std::complex<double>;

TEST_SUITE("ensemble") {

TEST_CASE("noise-free ensemble collapses to the deterministic solution") {
    ModelParams params(0.04, 0.0, OUParams(0.0, 1.0));
    TimeGrid grid(10.0, 501);
    EnsembleStats stats = ensemble_green_function(params, grid, 5, RngSeed{1, 0});
    OUPath zero(grid.doubled(), std::vector<double>(grid.doubled().n_steps(), 0.0));
    ComplexSeries single = solve_model_sample(params, zero);
    for (std::size_t j = 0; j < grid.n_steps(); ++j) {
        CHECK(stats.mean[j] == single.values[j]);
        CHECK(stats.std_error[j] == 0.0);
    }
}

TEST_CASE("noise-free wave ensemble is the exact sine") {
    WaveParams params(2.0, OUParams(0.0, 1.0));
    TimeGrid grid(5.0, 501);
    EnsembleStats stats = ensemble_wave_field(params, grid, 4, RngSeed{1, 0});
    double worst = 0.0;
    for (std::size_t j = 0; j < grid.n_steps(); ++j) {
        worst = std::max(worst,
                         std::abs(stats.mean[j].real() -
                                  std::sin(2.0 * grid.point(j)) / 2.0));
        CHECK(stats.mean[j].imag() == 0.0);
        CHECK(stats.std_error[j] == 0.0);
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("quadrupling the sample count halves the standard error") {
    ModelParams params(1.0, 0.0, OUParams(0.3, 0.5));
    TimeGrid grid(6.0, 121);
    EnsembleStats small = ensemble_green_function(params, grid, 500, RngSeed{11, 0});
    EnsembleStats large = ensemble_green_function(params, grid, 2000, RngSeed{11, 0});
    // Compare at the point of largest spread to stay away from t=0 where the
    // spread vanishes.
    std::size_t peak = 0;
    for (std::size_t j = 1; j < grid.n_steps(); ++j)
        if (small.std_error[j] > small.std_error[peak]) peak = j;
    const double ratio = small.std_error[peak] / large.std_error[peak];
    CHECK(ratio > 2.0 * 0.8);
    CHECK(ratio < 2.0 * 1.2);
}

TEST_CASE("ensemble mean is real to within sampling error") {
    ModelParams params(1.0, 0.0, OUParams(0.3, 0.5));
    TimeGrid grid(6.0, 121);
    EnsembleStats stats = ensemble_green_function(params, grid, 2000, RngSeed{23, 0});
    for (std::size_t j = 1; j < grid.n_steps(); ++j)
        CHECK(std::abs(stats.mean[j].imag()) <= 4.0 * stats.std_error[j]);
}

TEST_CASE("ensembles are bit-identical across thread counts") {
    WaveParams params(2.0, OUParams(0.1, 0.5));
    TimeGrid grid(4.0, 81);
    EnsembleStats one = ensemble_wave_field(params, grid, 200, RngSeed{5, 0}, 1);
    EnsembleStats four = ensemble_wave_field(params, grid, 200, RngSeed{5, 0}, 4);
    for (std::size_t j = 0; j < grid.n_steps(); ++j) {
        CHECK(one.mean[j] == four.mean[j]);
        CHECK(one.std_error[j] == four.std_error[j]);
    }
}

TEST_CASE("fewer than two samples is rejected") {
    ModelParams params(1.0, 0.0, OUParams(0.1, 1.0));
    TimeGrid grid(1.0, 11);
    CHECK_THROWS_AS(ensemble_green_function(params, grid, 1, RngSeed{1, 0}),
                    validation_error);
}

TEST_CASE("sample failures carry the sample index") {
    // A step size far outside the stability region makes every sample blow up.
    ModelParams params(1e8, 0.0, OUParams(0.1, 1.0));
    TimeGrid grid(10.0, 6);
    try {
        ensemble_green_function(params, grid, 4, RngSeed{1, 0});
        FAIL("expected numeric_error");
    } catch (const numeric_error& e) {
        CHECK(std::string(e.what()).find("sample") != std::string::npos);
    }
}

}  // TEST_SUITE
