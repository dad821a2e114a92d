#include "oscwave/ou.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "oscwave/ensemble_engine.hpp"
#include "oscwave/errors.hpp"

namespace oscwave {

OUParams::OUParams(double sigma_in, double lambda_in) : sigma(sigma_in), lambda(lambda_in) {
    if (!std::isfinite(sigma) || sigma < 0.0)
        throw validation_error("OUParams: sigma must be finite and >= 0, got " +
                               std::to_string(sigma));
    if (!std::isfinite(lambda) || lambda <= 0.0)
        throw validation_error("OUParams: lambda must be finite and > 0, got " +
                               std::to_string(lambda));
}

OUPath generate_ou_path(const OUParams& params, const TimeGrid& grid, RngSeed seed) {
    const std::size_t n = grid.n_steps();
    std::vector<double> values(n, 0.0);
    if (params.sigma == 0.0) return OUPath{grid, std::move(values)};

    SubstreamRng rng(seed);
    const double decay = std::exp(-params.lambda * grid.dt());
    const double kick = params.sigma * std::sqrt(1.0 - decay * decay);
    values[0] = params.sigma * rng.standard_normal();
    for (std::size_t i = 1; i < n; ++i)
        values[i] = values[i - 1] * decay + kick * rng.standard_normal();
    return OUPath{grid, std::move(values)};
}

ValueWithError estimate_autocorrelation(const std::vector<OUPath>& paths,
                                        std::size_t lag_index) {
    if (paths.empty()) throw validation_error("estimate_autocorrelation: no paths given");
    const TimeGrid& grid = paths.front().grid;
    const std::size_t n = grid.n_steps();
    if (lag_index >= n)
        throw validation_error("estimate_autocorrelation: lag_index " +
                               std::to_string(lag_index) + " out of range for grid of " +
                               std::to_string(n) + " points");
    for (const auto& path : paths)
        if (!(path.grid == grid))
            throw validation_error("estimate_autocorrelation: paths use different grids");

    // One time-averaged product per path, then mean and SE across paths.
    const std::size_t n_offsets = n - lag_index;
    double sum = 0.0, sum2 = 0.0;
    for (const auto& path : paths) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n_offsets; ++j)
            acc += path.values[j] * path.values[j + lag_index];
        const double avg = acc / static_cast<double>(n_offsets);
        sum += avg;
        sum2 += avg * avg;
    }
    const double m = static_cast<double>(paths.size());
    ValueWithError out;
    out.value = sum / m;
    if (paths.size() >= 2) {
        const double var = std::max(0.0, sum2 - sum * sum / m) / (m - 1.0);
        out.std_error = std::sqrt(var / m);
    }
    return out;
}

EnsembleStats monte_carlo_phase_average(const OUParams& params, const TimeGrid& grid,
                                        std::size_t n_samples, RngSeed seed,
                                        unsigned n_threads) {
    if (n_samples < 1)
        throw validation_error("monte_carlo_phase_average: n_samples must be >= 1");

    const double dt = grid.dt();
    auto sample = [&](std::size_t i) {
        const OUPath path =
            generate_ou_path(params, grid, RngSeed{seed.seed, seed.stream_id + i});
        std::vector<std::complex<double>> phase(grid.n_steps());
        phase[0] = 1.0;
        double integral = 0.0;
        for (std::size_t j = 1; j < path.values.size(); ++j) {
            integral += 0.5 * dt * (path.values[j - 1] + path.values[j]);
            phase[j] = std::exp(std::complex<double>(0.0, -0.5 * integral));
        }
        return phase;
    };
    return detail::accumulate_complex_ensemble(grid, n_samples, n_threads, sample);
}

}  // namespace oscwave
