#include "oscwave/params.hpp"

#include <cmath>
#include <string>

#include "oscwave/errors.hpp"

namespace oscwave {

ModelParams::ModelParams(double nu_in, double mu_kernel_in, OUParams ou_in)
    : nu(nu_in), mu_kernel(mu_kernel_in), ou(ou_in) {
    if (!std::isfinite(nu) || nu <= 0.0)
        throw validation_error("ModelParams: nu must be finite and > 0, got " +
                               std::to_string(nu));
    if (!std::isfinite(mu_kernel) || mu_kernel < 0.0)
        throw validation_error("ModelParams: mu_kernel must be finite and >= 0, got " +
                               std::to_string(mu_kernel));
}

WaveParams::WaveParams(double k_in, OUParams ou_in) : k(k_in), ou(ou_in) {
    if (!std::isfinite(k) || k <= 0.0)
        throw validation_error("WaveParams: k must be finite and > 0, got " +
                               std::to_string(k));
}

}  // namespace oscwave
