#include <complex>
#include <string>
#include <vector>

#include "oscwave/ensemble_engine.hpp"
#include "oscwave/errors.hpp"
#include "oscwave/sample_solvers.hpp"

namespace oscwave {

namespace {

template <typename SolveOne>
EnsembleStats run_ensemble(const TimeGrid& grid, std::size_t n_samples, RngSeed seed,
                           unsigned n_threads, const OUParams& ou, SolveOne&& solve_one) {
    if (n_samples < 2)
        throw validation_error("ensemble: n_samples must be >= 2, got " +
                               std::to_string(n_samples));
    const TimeGrid fine = grid.doubled();
    auto sample = [&](std::size_t i) {
        try {
            const OUPath path =
                generate_ou_path(ou, fine, RngSeed{seed.seed, seed.stream_id + i});
            return solve_one(path);
        } catch (const numeric_error& e) {
            throw numeric_error("sample " + std::to_string(i) + ": " + e.what());
        }
    };
    return detail::accumulate_complex_ensemble(grid, n_samples, n_threads, sample);
}

}  // namespace

EnsembleStats ensemble_green_function(const ModelParams& params, const TimeGrid& grid,
                                      std::size_t n_samples, RngSeed seed,
                                      unsigned n_threads) {
    return run_ensemble(grid, n_samples, seed, n_threads, params.ou,
                        [&](const OUPath& path) {
                            return solve_model_sample(params, path).values;
                        });
}

EnsembleStats ensemble_wave_field(const WaveParams& params, const TimeGrid& grid,
                                  std::size_t n_samples, RngSeed seed,
                                  unsigned n_threads) {
    return run_ensemble(grid, n_samples, seed, n_threads, params.ou,
                        [&](const OUPath& path) {
                            const RealSeries e = solve_wave_sample(params, path);
                            std::vector<std::complex<double>> values(e.values.size());
                            for (std::size_t j = 0; j < e.values.size(); ++j)
                                values[j] = e.values[j];
                            return values;
                        });
}

}  // namespace oscwave
