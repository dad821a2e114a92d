#pragma once

#include <cstddef>
#include <optional>

#include "oscwave/approximants.hpp"
#include "oscwave/grid.hpp"

namespace oscwave {

// Accelerated Fourier-series inversion of a Laplace transform on a shifted
// Bromwich line. The grid is split into factor-2 time windows; each window is
// inverted with a quotient-difference continued fraction built from 2M+1
// Fourier coefficients (M = series_length). A per-window convergence estimate
// compares the last two continued-fraction convergents; windows where the
// fraction stagnates, or where the coefficient peak sits so deep in the
// series that the stagnation check itself cannot be trusted, fall back to
// per-point Euler summation with binomial averaging of order accel_order.
// Inversion at t = 0 uses the initial-value limit p*f(p) evaluated far out
// on the real axis.
struct InversionConfig {
    // Bromwich line position; must exceed f.abscissa. Defaults to
    // f.abscissa + 1/t_max.
    std::optional<double> contour_shift;
    std::size_t series_length = 64;  // M >= 16
    std::size_t accel_order = 30;    // binomial order of the fallback, >= 8
    double tolerance = 1e-8;
};

struct InversionReport {
    double error_estimate = 0.0;  // worst accepted per-window estimate
    // Bound on |Im| of the two-sided reconstruction, accumulated from the
    // transform's conjugate-symmetry defect F(conj p) - conj F(p). Zero (up
    // to rounding) whenever the original is real-valued.
    double max_imag = 0.0;
    bool used_fallback = false;
};

// Returns Re of the reconstruction on the grid. The method assumes a
// real-valued original, i.e. a conjugate-symmetric transform; when the
// symmetry defect implies a reconstruction imaginary part above
// cfg.tolerance, the values are not trustworthy and a warning goes to
// stderr (the bound is also reported). Throws numeric_error when neither
// the continued fraction nor the fallback reaches the requested tolerance,
// carrying the achieved estimate.
RealSeries invert_laplace(const LaplaceFunction& f, const TimeGrid& grid,
                          const InversionConfig& cfg = {},
                          InversionReport* report = nullptr);

}  // namespace oscwave
