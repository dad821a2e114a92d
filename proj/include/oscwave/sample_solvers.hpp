#pragma once

#include "oscwave/grid.hpp"
#include "oscwave/ou.hpp"
#include "oscwave/params.hpp"

namespace oscwave {

// One oscillator realization. The path must live on the doubled() image of
// the output grid: it supplies the coefficient at every step endpoint and
// midpoint, which the classical 4th-order one-step scheme consumes. The
// returned series lives on path.grid.halved().
//
// The memory integral is carried as the auxiliary state
//   z(t) = int_0^t Gamma(t-s) g(s) ds,  z' = -mu_kernel z + nu g,  z(0) = 0,
// so the integro-differential equation becomes the ODE system
//   g' = -i b g - z,  z' = -mu_kernel z + nu g,  g(0) = 1.
ComplexSeries solve_model_sample(const ModelParams& params, const OUPath& path);

// One wave realization of e'' = -k^2 (1 + mu(xi)) e, e(0)=0, e'(0)=1, with
// the same doubled-grid path convention.
RealSeries solve_wave_sample(const WaveParams& params, const OUPath& path);

// Ensemble mean and standard error of the oscillator Green's function over
// n_samples independent coefficient paths (sample i uses stream_id =
// seed.stream_id + i). Bit-identical for every n_threads.
EnsembleStats ensemble_green_function(const ModelParams& params, const TimeGrid& grid,
                                      std::size_t n_samples, RngSeed seed,
                                      unsigned n_threads = 0);

// Same for the wave field; the means are real up to sampling noise.
EnsembleStats ensemble_wave_field(const WaveParams& params, const TimeGrid& grid,
                                  std::size_t n_samples, RngSeed seed,
                                  unsigned n_threads = 0);

}  // namespace oscwave
