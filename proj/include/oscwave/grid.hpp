#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "oscwave/errors.hpp"

namespace oscwave {

// Uniform grid over [0, t_max]. Point 0 is exactly 0 and point n_steps-1 is
// exactly t_max. "Time" doubles as propagation distance for the wave model.
class TimeGrid {
public:
    TimeGrid(double t_max, std::size_t n_steps);

    double t_max() const { return t_max_; }
    std::size_t n_steps() const { return n_steps_; }
    double dt() const { return t_max_ / static_cast<double>(n_steps_ - 1); }
    double point(std::size_t i) const {
        return t_max_ * static_cast<double>(i) / static_cast<double>(n_steps_ - 1);
    }
    std::vector<double> points() const;

    // Grid with 2*n-1 points over the same span: every original point plus
    // midpoints. Used to feed half-step coefficient values to the one-step
    // integrators.
    TimeGrid doubled() const;
    // True if this grid is the doubled() image of some coarser grid.
    bool is_doubled() const { return n_steps_ % 2 == 1 && n_steps_ >= 3; }
    TimeGrid halved() const;

    friend bool operator==(const TimeGrid& a, const TimeGrid& b) {
        return a.t_max_ == b.t_max_ && a.n_steps_ == b.n_steps_;
    }

private:
    double t_max_;
    std::size_t n_steps_;
};

struct RealSeries {
    TimeGrid grid;
    std::vector<double> values;

    RealSeries(TimeGrid g, std::vector<double> v);
};

struct ComplexSeries {
    TimeGrid grid;
    std::vector<std::complex<double>> values;

    ComplexSeries(TimeGrid g, std::vector<std::complex<double>> v);
};

// Per-grid-point sample mean and standard error of an ensemble.
// std_error combines both components: sqrt((Var Re + Var Im)/n).
struct EnsembleStats {
    TimeGrid grid;
    std::vector<std::complex<double>> mean;
    std::vector<double> std_error;
    std::size_t n_samples;
};

}  // namespace oscwave
