#include "oscwave/sample_solvers.hpp"

#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "oscwave/errors.hpp"

namespace oscwave {

namespace {

constexpr double kDivergenceBound = 1e12;

[[noreturn]] void throw_divergence(const char* what, std::size_t step, double t) {
    throw numeric_error(std::string(what) + ": state diverged at step " +
                        std::to_string(step) + " (t = " + std::to_string(t) + ")");
}

const OUPath& require_doubled(const OUPath& path, const char* what) {
    if (!path.grid.is_doubled())
        throw validation_error(std::string(what) +
                               ": path must be sampled on the doubled grid "
                               "(endpoints plus midpoints)");
    return path;
}

}  // namespace

ComplexSeries solve_model_sample(const ModelParams& params, const OUPath& path) {
    require_doubled(path, "solve_model_sample");
    const TimeGrid out_grid = path.grid.halved();
    const std::size_t n = out_grid.n_steps();
    const double dt = out_grid.dt();
    const double nu = params.nu;
    const double mu = params.mu_kernel;

    using C = std::complex<double>;
    const C i_unit(0.0, 1.0);
    auto deriv = [&](C g, C z, double b) {
        return std::pair<C, C>{-i_unit * b * g - z, -mu * z + nu * g};
    };

    std::vector<C> values(n);
    C g = 1.0, z = 0.0;
    values[0] = g;
    for (std::size_t m = 0; m + 1 < n; ++m) {
        const double b0 = path.values[2 * m];
        const double bh = path.values[2 * m + 1];
        const double b1 = path.values[2 * m + 2];
        const auto [g1, z1] = deriv(g, z, b0);
        const auto [g2, z2] = deriv(g + 0.5 * dt * g1, z + 0.5 * dt * z1, bh);
        const auto [g3, z3] = deriv(g + 0.5 * dt * g2, z + 0.5 * dt * z2, bh);
        const auto [g4, z4] = deriv(g + dt * g3, z + dt * z3, b1);
        g += dt / 6.0 * (g1 + 2.0 * g2 + 2.0 * g3 + g4);
        z += dt / 6.0 * (z1 + 2.0 * z2 + 2.0 * z3 + z4);
        if (!std::isfinite(g.real()) || !std::isfinite(g.imag()) ||
            !std::isfinite(z.real()) || !std::isfinite(z.imag()) ||
            std::abs(g) > kDivergenceBound || std::abs(z) > kDivergenceBound)
            throw_divergence("solve_model_sample", m + 1, out_grid.point(m + 1));
        values[m + 1] = g;
    }
    return ComplexSeries{out_grid, std::move(values)};
}

RealSeries solve_wave_sample(const WaveParams& params, const OUPath& path) {
    require_doubled(path, "solve_wave_sample");
    const TimeGrid out_grid = path.grid.halved();
    const std::size_t n = out_grid.n_steps();
    const double dx = out_grid.dt();
    const double k2 = params.k * params.k;

    auto deriv = [&](double e, double d, double mu_val) {
        return std::pair<double, double>{d, -k2 * (1.0 + mu_val) * e};
    };

    std::vector<double> values(n);
    double e = 0.0, d = 1.0;
    values[0] = e;
    for (std::size_t m = 0; m + 1 < n; ++m) {
        const double u0 = path.values[2 * m];
        const double uh = path.values[2 * m + 1];
        const double u1 = path.values[2 * m + 2];
        const auto [e1, d1] = deriv(e, d, u0);
        const auto [e2, d2] = deriv(e + 0.5 * dx * e1, d + 0.5 * dx * d1, uh);
        const auto [e3, d3] = deriv(e + 0.5 * dx * e2, d + 0.5 * dx * d2, uh);
        const auto [e4, d4] = deriv(e + dx * e3, d + dx * d3, u1);
        e += dx / 6.0 * (e1 + 2.0 * e2 + 2.0 * e3 + e4);
        d += dx / 6.0 * (d1 + 2.0 * d2 + 2.0 * d3 + d4);
        if (!std::isfinite(e) || !std::isfinite(d) || std::abs(e) > kDivergenceBound ||
            std::abs(d) > kDivergenceBound)
            throw_divergence("solve_wave_sample", m + 1, out_grid.point(m + 1));
        values[m + 1] = e;
    }
    return RealSeries{out_grid, std::move(values)};
}

}  // namespace oscwave
