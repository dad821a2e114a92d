#include "oscwave/metrics.hpp"

#include <cmath>
#include <limits>

#include "oscwave/errors.hpp"

namespace oscwave {

ErrorMetrics compare_series(const RealSeries& a, const RealSeries& b) {
    if (!(a.grid == b.grid))
        throw validation_error("compare_series: series are on different grids");

    ErrorMetrics m;
    double sum_sq = 0.0;
    double ref_sq = 0.0;
    const std::size_t n = a.values.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a.values[i] - b.values[i];
        m.max_abs = std::max(m.max_abs, std::abs(d));
        sum_sq += d * d;
        ref_sq += b.values[i] * b.values[i];
    }
    m.rms = std::sqrt(sum_sq / static_cast<double>(n));
    const double ref_rms = std::sqrt(ref_sq / static_cast<double>(n));
    if (ref_rms > 0.0)
        m.rel_rms = m.rms / ref_rms;
    else
        m.rel_rms = m.rms > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return m;
}

}  // namespace oscwave
