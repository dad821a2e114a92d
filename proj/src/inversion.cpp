#include "oscwave/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "oscwave/errors.hpp"

namespace oscwave {

namespace {

using C = std::complex<double>;
using CLD = std::complex<long double>;
constexpr long double kPiL = std::numbers::pi_v<long double>;

// Quotient-difference table: continued-fraction coefficients d such that the
// Fourier series sum a_k z^k equals d0/(1 + d1 z/(1 + d2 z/(...))). Built in
// extended precision; the recurrences cancel catastrophically in plain
// double.
std::vector<CLD> qd_coefficients(std::vector<CLD> a) {
    const std::size_t n = a.size();
    a[0] *= 0.5L;
    std::vector<CLD> d(n), q(n - 1), e(n, CLD(0.0L));
    for (std::size_t i = 0; i + 1 < n; ++i) q[i] = a[i + 1] / a[i];
    d[0] = a[0];
    d[1] = -q[0];
    const std::size_t m = (n - 1) / 2;
    for (std::size_t r = 1; r <= m; ++r) {
        const std::size_t le = n - 2 * r;
        for (std::size_t i = 0; i < le; ++i) e[i] = q[i + 1] - q[i] + e[i + 1];
        d[2 * r] = -e[0];
        if (r < m) {
            const std::size_t lq = n - 2 * r - 1;
            for (std::size_t i = 0; i < lq; ++i) q[i] = q[i + 1] * e[i + 1] / e[i];
            d[2 * r + 1] = -q[0];
        }
    }
    return d;
}

struct CfValue {
    CLD full;       // all levels plus the analytic remainder term
    CLD truncated;  // two levels fewer, no remainder: convergence probe
};

CfValue evaluate_cf(const std::vector<CLD>& d, long double t, long double period) {
    const std::size_t n = d.size();
    const CLD z = std::exp(CLD(0.0L, kPiL * t / period));
    CLD a_prev(0.0L), a_cur = d[0], b_prev(1.0L), b_cur(1.0L);
    CfValue out;
    for (std::size_t k = 1; k < n; ++k) {
        if (k == n - 2) out.truncated = a_cur / b_cur;
        const CLD a_new = a_cur + d[k] * z * a_prev;
        const CLD b_new = b_cur + d[k] * z * b_prev;
        a_prev = a_cur;
        a_cur = a_new;
        b_prev = b_cur;
        b_cur = b_new;
    }
    const CLD h = 0.5L * (CLD(1.0L) + z * (d[n - 2] - d[n - 1]));
    const CLD rem = -h * (CLD(1.0L) - std::sqrt(CLD(1.0L) + z * d[n - 1] / (h * h)));
    out.full = (a_cur + rem * a_prev) / (b_cur + rem * b_prev);
    return out;
}

bool finite(CLD v) {
    return std::isfinite(static_cast<double>(v.real())) &&
           std::isfinite(static_cast<double>(v.imag()));
}

// Per-point Euler summation: alternating Bromwich series on the contour
// Re(p) = A/(2t) with binomial averaging of the last accel+1 partial sums.
// The trapezoid aliasing bias is about e^{-A} times the function scale and
// is invisible to the order-difference check, so the reported estimate is
// floored at that bias (assuming a non-growing original; the contour
// position likewise assumes no singularity with positive real part).
struct EulerValue {
    double value;
    double estimate;  // order-difference check, floored at the aliasing bias
};

EulerValue euler_point(const LaplaceFunction& f, double t, std::size_t accel) {
    constexpr double kContourArea = 23.0;
    const std::size_t base = 2 * accel;
    const std::size_t n_terms = base + accel + 1;
    std::vector<long double> partial(n_terms);
    long double run = 0.0L;
    for (std::size_t k = 0; k < n_terms; ++k) {
        const C p(kContourArea / (2.0 * t), static_cast<double>(k) * std::numbers::pi / t);
        long double term = static_cast<long double>(f.eval(p).real());
        if (k == 0) term *= 0.5L;
        if (k % 2 == 1) term = -term;
        run += term;
        partial[k] = run;
    }
    const long double scale = std::exp(static_cast<long double>(kContourArea) / 2.0L) / t;
    auto averaged = [&](std::size_t order) {
        long double binom = 1.0L, weight_sum = 0.0L, acc = 0.0L;
        for (std::size_t j = 0; j <= order; ++j) {
            acc += binom * partial[base + j];
            weight_sum += binom;
            binom = binom * static_cast<long double>(order - j) /
                    static_cast<long double>(j + 1);
        }
        return scale * acc / weight_sum;
    };
    const long double full = averaged(accel);
    const long double lower = averaged(accel - 4);
    const double bias_floor =
        std::exp(-kContourArea) * std::max(1.0, std::fabs(static_cast<double>(full)));
    return EulerValue{static_cast<double>(full),
                      std::max(static_cast<double>(std::fabs(full - lower)),
                               bias_floor)};
}

}  // namespace

RealSeries invert_laplace(const LaplaceFunction& f, const TimeGrid& grid,
                          const InversionConfig& cfg, InversionReport* report) {
    if (cfg.series_length < 16)
        throw validation_error("invert_laplace: series_length must be >= 16");
    if (cfg.accel_order < 8)
        throw validation_error("invert_laplace: accel_order must be >= 8");
    if (!std::isfinite(cfg.tolerance) || cfg.tolerance <= 0.0)
        throw validation_error("invert_laplace: tolerance must be finite and > 0");
    const double contour =
        cfg.contour_shift.value_or(f.abscissa + 1.0 / grid.t_max());
    if (!std::isfinite(contour) || contour <= f.abscissa)
        throw validation_error(
            "invert_laplace: contour_shift must exceed the transform's abscissa " +
            std::to_string(f.abscissa));

    const std::size_t n = grid.n_steps();
    std::vector<double> values(n, 0.0);
    InversionReport rep;

    // t = 0: initial-value limit of p*f(p) far out on the real axis.
    values[0] = (1e6 * f.eval(C(1e6, 0.0))).real();

    // Factor-2 windows over the positive grid points.
    std::vector<double> edges{grid.t_max()};
    const double t_min = grid.point(1);
    while (edges.back() > t_min * 1.001) edges.push_back(edges.back() / 2.0);
    std::reverse(edges.begin(), edges.end());

    const std::size_t n_coeff = 2 * cfg.series_length + 1;
    double lo = 0.0;
    for (const double hi : edges) {
        std::vector<std::size_t> idx;
        for (std::size_t j = 1; j < n; ++j) {
            const double t = grid.point(j);
            if (t > lo && t <= hi * (1.0 + 1e-9)) idx.push_back(j);
        }
        lo = hi;
        if (idx.empty()) continue;

        const long double period = 1.6L * static_cast<long double>(hi);
        const double gamma =
            contour - std::log(cfg.tolerance) / (2.0 * static_cast<double>(period));
        std::vector<CLD> coeff(n_coeff);
        std::size_t peak = 0;
        double peak_mag = -1.0, defect_sum = 0.0;
        for (std::size_t k = 0; k < n_coeff; ++k) {
            const double y =
                static_cast<double>(kPiL * static_cast<long double>(k) / period);
            const C v = f.eval(C(gamma, y));
            coeff[k] = CLD(v.real(), v.imag());
            if (std::abs(v) > peak_mag) {
                peak_mag = std::abs(v);
                peak = k;
            }
            // Conjugate-symmetry defect of the transform: a real original has
            // F(conj p) = conj F(p), which makes the two-sided reconstruction
            // real. The accumulated defect bounds its imaginary part.
            defect_sum += (k == 0) ? std::abs(v.imag())
                                   : std::abs(f.eval(C(gamma, -y)) - std::conj(v));
        }
        const double imag_bound = static_cast<double>(
            std::exp(static_cast<long double>(gamma) * static_cast<long double>(hi)) /
            (2.0L * period) * static_cast<long double>(defect_sum));
        rep.max_imag = std::max(rep.max_imag, imag_bound);

        // The fraction's convergent-difference estimate is only trustworthy
        // while the coefficient peak sits well inside the series; past a
        // quarter of the available terms the convergents stall together and
        // the difference collapses even though the values are wrong.
        bool accepted = false;
        if (8 * peak <= n_coeff - 1) {
            const std::vector<CLD> d = qd_coefficients(std::move(coeff));
            bool ok = true;
            std::vector<double> window_vals(idx.size());
            double window_est = 0.0;
            for (std::size_t u = 0; u < idx.size() && ok; ++u) {
                const long double t = static_cast<long double>(grid.point(idx[u]));
                const CfValue cf = evaluate_cf(d, t, period);
                if (!finite(cf.full) || !finite(cf.truncated)) {
                    ok = false;
                    break;
                }
                const long double scale =
                    std::exp(static_cast<long double>(gamma) * t) / period;
                window_vals[u] = static_cast<double>(scale * cf.full.real());
                window_est = std::max(window_est, static_cast<double>(
                                                      scale *
                                                      std::abs(cf.full - cf.truncated)));
            }
            if (ok && window_est <= cfg.tolerance) {
                for (std::size_t u = 0; u < idx.size(); ++u)
                    values[idx[u]] = window_vals[u];
                rep.error_estimate = std::max(rep.error_estimate, window_est);
                accepted = true;
            }
        }
        if (accepted) continue;

        // The fraction stagnated (or was never trustworthy) on this window:
        // per-point fallback.
        rep.used_fallback = true;
        double fb_est = 0.0;
        for (const std::size_t j : idx) {
            const EulerValue ev = euler_point(f, grid.point(j), cfg.accel_order);
            values[j] = ev.value;
            fb_est = std::max(fb_est, ev.estimate);
        }
        if (fb_est > cfg.tolerance)
            throw numeric_error(
                "invert_laplace: acceleration stagnated; achieved error estimate " +
                std::to_string(fb_est) + " exceeds tolerance " +
                std::to_string(cfg.tolerance) + " on window ending at t = " +
                std::to_string(hi));
        rep.error_estimate = std::max(rep.error_estimate, fb_est);
    }

    if (rep.max_imag > cfg.tolerance)
        std::cerr << "invert_laplace: reconstruction has imaginary part "
                  << rep.max_imag << " above tolerance " << cfg.tolerance << "\n";
    if (report != nullptr) *report = rep;
    return RealSeries{grid, std::move(values)};
}

}  // namespace oscwave
