#pragma once

#include "oscwave/ou.hpp"

namespace oscwave {

// Random oscillator with memory damping: the Green's function of
//   [d/dt + i b(t)] g(t) + int_0^t Gamma(t-s) g(s) ds = 0,  g(0+) = 1,
// where Gamma(t) = nu * exp(-mu_kernel * t) and b is the OU coefficient.
// mu_kernel = 0 keeps the full memory (undamped kernel).
struct ModelParams {
    double nu;         // damping strength, 1/time^2
    double mu_kernel;  // kernel decay rate, 1/time
    OUParams ou;

    ModelParams(double nu, double mu_kernel, OUParams ou);
};

// Time-harmonic wave in a weakly random medium: the Green's function of
//   [d^2/dxi^2 + k^2 (1 + mu(xi))] e(xi) = 0,  e(0) = 0, e'(0) = 1,
// with mu(xi) the OU refractive-index fluctuation (lambda per unit distance).
struct WaveParams {
    double k;  // wavenumber, 1/length
    OUParams ou;

    WaveParams(double k, OUParams ou);
};

}  // namespace oscwave
