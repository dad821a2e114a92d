#pragma once

#include "oscwave/grid.hpp"

namespace oscwave {

// Pointwise discrepancy between two series sharing a grid.
struct ErrorMetrics {
    double max_abs = 0.0;
    double rms = 0.0;
    // rms divided by the reference series' own rms. Infinite when the
    // reference is identically zero but the other series is not.
    double rel_rms = 0.0;
};

// max_abs and rms are symmetric in the arguments; rel_rms treats b as the
// reference. Throws validation_error when the grids differ.
ErrorMetrics compare_series(const RealSeries& a, const RealSeries& b);

}  // namespace oscwave
