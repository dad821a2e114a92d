#include "oscwave/grid.hpp"

#include <cmath>

namespace oscwave {

namespace {

template <typename T>
void require_finite(const std::vector<T>& v, const char* what) {
    for (const auto& x : v) {
        bool ok;
        if constexpr (std::is_same_v<T, double>) {
            ok = std::isfinite(x);
        } else {
            ok = std::isfinite(x.real()) && std::isfinite(x.imag());
        }
        if (!ok) throw validation_error(std::string(what) + ": non-finite value");
    }
}

}  // namespace

TimeGrid::TimeGrid(double t_max, std::size_t n_steps) : t_max_(t_max), n_steps_(n_steps) {
    if (!std::isfinite(t_max) || t_max <= 0.0)
        throw validation_error("TimeGrid: t_max must be positive and finite");
    if (n_steps < 2) throw validation_error("TimeGrid: n_steps must be at least 2");
}

std::vector<double> TimeGrid::points() const {
    std::vector<double> p(n_steps_);
    for (std::size_t i = 0; i < n_steps_; ++i) p[i] = point(i);
    return p;
}

TimeGrid TimeGrid::doubled() const { return TimeGrid(t_max_, 2 * n_steps_ - 1); }

TimeGrid TimeGrid::halved() const {
    if (!is_doubled())
        throw validation_error("TimeGrid: halved() requires an odd point count >= 3");
    return TimeGrid(t_max_, (n_steps_ + 1) / 2);
}

RealSeries::RealSeries(TimeGrid g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.n_steps())
        throw validation_error("RealSeries: value count does not match grid");
    require_finite(values, "RealSeries");
}

ComplexSeries::ComplexSeries(TimeGrid g, std::vector<std::complex<double>> v)
    : grid(g), values(std::move(v)) {
    if (values.size() != grid.n_steps())
        throw validation_error("ComplexSeries: value count does not match grid");
    require_finite(values, "ComplexSeries");
}

}  // namespace oscwave
