#include "oscwave/volterra.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "oscwave/errors.hpp"

namespace oscwave {

namespace {

std::vector<double> decay_table(double rate, const TimeGrid& grid) {
    std::vector<double> table(grid.n_steps());
    for (std::size_t j = 0; j < table.size(); ++j)
        table[j] = std::exp(-rate * grid.point(j));
    return table;
}

std::vector<double> march_model(const ModelParams& params, const TimeGrid& grid) {
    const std::size_t n = grid.n_steps();
    const double dt = grid.dt();
    const double nu = params.nu;
    const double sig2 = params.ou.sigma * params.ou.sigma;
    // Gamma(lag) = nu * kernel[lag index]; indexing by lag avoids growing
    // exponentials for large mu_kernel.
    const std::vector<double> kernel = decay_table(params.mu_kernel, grid);
    const std::vector<double> fading = decay_table(params.ou.lambda, grid);

    std::vector<double> g(n), f(n);  // f = value of both integrals combined
    g[0] = 1.0;
    f[0] = 0.0;
    for (std::size_t m = 0; m + 1 < n; ++m) {
        // Known part of f at t_{m+1}: all quadrature terms not involving g[m+1].
        double mem = 0.5 * kernel[m + 1] * g[0];
        for (std::size_t j = 1; j <= m; ++j) mem += kernel[m + 1 - j] * g[j];
        double conv = 0.0;
        for (std::size_t j = 1; j <= m; ++j) conv += fading[j] * g[j] * g[m + 1 - j];
        const double f_known = dt * nu * mem + sig2 * dt * conv;
        // Coefficient of g[m+1] inside f(t_{m+1}): the trapezoid endpoints of
        // both integrals.
        const double slope = dt * 0.5 * nu + sig2 * dt * 0.5 * (1.0 + fading[m + 1]);
        g[m + 1] = (g[m] - 0.5 * dt * (f[m] + f_known)) / (1.0 + 0.5 * dt * slope);
        f[m + 1] = f_known + slope * g[m + 1];
    }
    return g;
}

std::vector<double> march_wave(const WaveParams& params, const TimeGrid& grid) {
    const std::size_t n = grid.n_steps();
    const double dx = grid.dt();
    const double k2 = params.k * params.k;
    const double coupling = params.ou.sigma * params.ou.sigma * k2 * k2;
    const std::vector<double> fading = decay_table(params.ou.lambda, grid);

    std::vector<double> e(n);
    std::vector<double> acc(n);  // e'' at each accepted point
    double d = 1.0;
    e[0] = 0.0;
    acc[0] = 0.0;
    const double det = 1.0 + 0.25 * dx * dx * k2;
    for (std::size_t m = 0; m + 1 < n; ++m) {
        // e(0) = 0 kills both trapezoid endpoints, so the convolution at
        // xi_{m+1} is fully known before the step.
        double conv = 0.0;
        for (std::size_t j = 1; j <= m; ++j) conv += fading[j] * e[j] * e[m + 1 - j];
        conv *= dx;
        const double b1 = e[m] + 0.5 * dx * d;
        const double b2 = d + 0.5 * dx * acc[m] + 0.5 * dx * coupling * conv;
        e[m + 1] = (b1 + 0.5 * dx * b2) / det;
        d = (b2 - 0.5 * dx * k2 * b1) / det;
        acc[m + 1] = -k2 * e[m + 1] + coupling * conv;
    }
    return e;
}

// Richardson error estimate for a second-order marcher: compare against a
// grid with half or double the spacing at shared points.
template <typename March>
RealSeries check_and_wrap(const TimeGrid& grid, double accuracy_tol, const char* what,
                          March&& march) {
    if (!std::isfinite(accuracy_tol) || accuracy_tol <= 0.0)
        throw validation_error(std::string(what) + ": accuracy_tol must be > 0");
    std::vector<double> fine = march(grid);

    double estimate = 0.0;
    if (grid.is_doubled()) {
        // Solve on the coarser grid: gap = 3 * (fine error).
        const TimeGrid coarse_grid = grid.halved();
        const std::vector<double> coarse = march(coarse_grid);
        for (std::size_t i = 0; i < coarse.size(); ++i)
            estimate = std::max(estimate, std::abs(coarse[i] - fine[2 * i]));
        estimate /= 3.0;
    } else {
        // Grid cannot be halved; solve on the doubled grid instead:
        // gap = 3/4 * (fine error).
        const std::vector<double> finer = march(grid.doubled());
        for (std::size_t i = 0; i < fine.size(); ++i)
            estimate = std::max(estimate, std::abs(fine[i] - finer[2 * i]));
        estimate *= 4.0 / 3.0;
    }
    if (estimate > accuracy_tol)
        throw numeric_error(std::string(what) + ": step size too coarse, estimated " +
                            "discretization error " + std::to_string(estimate) +
                            " exceeds tolerance " + std::to_string(accuracy_tol));

    for (double v : fine)
        if (!std::isfinite(v))
            throw numeric_error(std::string(what) + ": solution is not finite");
    return RealSeries{grid, std::move(fine)};
}

}  // namespace

RealSeries solve_dia_volterra_model(const ModelParams& params, const TimeGrid& grid,
                                    double accuracy_tol) {
    return check_and_wrap(grid, accuracy_tol, "solve_dia_volterra_model",
                          [&](const TimeGrid& g) { return march_model(params, g); });
}

RealSeries solve_dia_volterra_wave(const WaveParams& params, const TimeGrid& grid,
                                   double accuracy_tol) {
    return check_and_wrap(grid, accuracy_tol, "solve_dia_volterra_wave",
                          [&](const TimeGrid& g) { return march_wave(params, g); });
}

}  // namespace oscwave
