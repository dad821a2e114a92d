#include "oscwave/approximants.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "oscwave/errors.hpp"

namespace oscwave {

namespace {

using C = std::complex<double>;

constexpr double kPoleThreshold = 1e-14;

[[noreturn]] void throw_pole(const char* what, std::size_t level, C p) {
    throw numeric_error(std::string(what) + ": denominator vanished at level " +
                        std::to_string(level) + " for p = (" + std::to_string(p.real()) +
                        ", " + std::to_string(p.imag()) + ")");
}

C require_nonzero(C den, const char* what, std::size_t level, C p) {
    if (std::abs(den) < kPoleThreshold) throw_pole(what, level, p);
    return den;
}

// Tail fixed points: the root of the deepest level's self-consistency
// quadratic closest to the zero-noise value 1/a.
C fixed_point_tail_model(double sigma2, C a, const char* what, std::size_t level, C p) {
    if (sigma2 == 0.0) return 0.0;
    require_nonzero(a, what, level, p);
    const C disc = std::sqrt(a * a + 4.0 * sigma2);
    const C r1 = (-a + disc) / (2.0 * sigma2);
    const C r2 = (-a - disc) / (2.0 * sigma2);
    const C ref = 1.0 / a;
    return std::abs(r1 - ref) <= std::abs(r2 - ref) ? r1 : r2;
}

C fixed_point_tail_wave(double coupling, C b, const char* what, std::size_t level, C p) {
    if (coupling == 0.0) return 0.0;
    require_nonzero(b, what, level, p);
    const C disc = std::sqrt(b * b - 4.0 * coupling);
    const C r1 = (b + disc) / (2.0 * coupling);
    const C r2 = (b - disc) / (2.0 * coupling);
    const C ref = 1.0 / b;
    return std::abs(r1 - ref) <= std::abs(r2 - ref) ? r1 : r2;
}

C evaluate_model(const ModelParams& params, std::size_t depth, TailMode tail_mode, C p) {
    const char* what = "dia_approximant(oscillator)";
    const double nu = params.nu;
    const double mu = params.mu_kernel;
    const double lam = params.ou.lambda;
    const double sigma2 = params.ou.sigma * params.ou.sigma;

    auto level_base = [&](std::size_t j) {
        const C q = p + C(static_cast<double>(j) * lam);
        return q + nu / require_nonzero(q + mu, what, j, p);
    };

    C tail = 0.0;
    if (tail_mode == TailMode::fixed_point)
        tail = fixed_point_tail_model(sigma2, level_base(depth), what, depth, p);
    for (std::size_t j = depth; j-- > 0;) {
        const C den = require_nonzero(level_base(j) + sigma2 * tail, what, j, p);
        tail = 1.0 / den;
    }
    return tail;
}

C evaluate_wave(const WaveParams& params, std::size_t depth, TailMode tail_mode, C p) {
    const char* what = "dia_approximant(wave)";
    const double k2 = params.k * params.k;
    const double lam = params.ou.lambda;
    const double coupling = params.ou.sigma * params.ou.sigma * k2 * k2;

    auto level_base = [&](std::size_t j) {
        const C q = p + C(static_cast<double>(j) * lam);
        return q * q + k2;
    };

    C tail = 0.0;
    if (tail_mode == TailMode::fixed_point)
        tail = fixed_point_tail_wave(coupling, level_base(depth), what, depth, p);
    for (std::size_t j = depth; j-- > 0;) {
        const C den = require_nonzero(level_base(j) - coupling * tail, what, j, p);
        tail = 1.0 / den;
    }
    return tail;
}

}  // namespace

ApproximantSpec::ApproximantSpec(ModelParams p, std::size_t depth_in, TailMode tail_in)
    : params(std::move(p)), depth(depth_in), tail(tail_in) {
    if (depth < 1) throw validation_error("ApproximantSpec: depth must be >= 1");
}

ApproximantSpec::ApproximantSpec(WaveParams p, std::size_t depth_in, TailMode tail_in)
    : params(std::move(p)), depth(depth_in), tail(tail_in) {
    if (depth < 1) throw validation_error("ApproximantSpec: depth must be >= 1");
}

C dia_approximant(const ApproximantSpec& spec, C p) {
    return std::visit(
        [&](const auto& params) {
            using T = std::decay_t<decltype(params)>;
            if constexpr (std::is_same_v<T, ModelParams>)
                return evaluate_model(params, spec.depth, spec.tail, p);
            else
                return evaluate_wave(params, spec.depth, spec.tail, p);
        },
        spec.params);
}

C perturbative_transform(const ModelParams& params, C p) {
    const char* what = "perturbative_transform(oscillator)";
    const double nu = params.nu;
    const double mu = params.mu_kernel;
    const double lam = params.ou.lambda;
    const double sigma2 = params.ou.sigma * params.ou.sigma;
    const C shifted = p + lam;
    const C inner =
        shifted + nu / require_nonzero(shifted + mu, what, 1, p);
    const C den = require_nonzero(
        p + nu / require_nonzero(p + mu, what, 0, p) +
            sigma2 / require_nonzero(inner, what, 1, p),
        what, 0, p);
    return 1.0 / den;
}

C perturbative_transform(const WaveParams& params, C p) {
    const char* what = "perturbative_transform(wave)";
    const double k2 = params.k * params.k;
    const double lam = params.ou.lambda;
    const double coupling = params.ou.sigma * params.ou.sigma * k2 * k2;
    const C shifted = p + lam;
    const C den = require_nonzero(
        p * p + k2 - coupling / require_nonzero(shifted * shifted + k2, what, 1, p),
        what, 0, p);
    return 1.0 / den;
}

C functional_residual(const ApproximantSpec& spec, C p) {
    return std::visit(
        [&](const auto& params) -> C {
            using T = std::decay_t<decltype(params)>;
            const C at_p = dia_approximant(spec, p);
            const C at_shift = dia_approximant(spec, p + params.ou.lambda);
            if constexpr (std::is_same_v<T, ModelParams>) {
                const C bare = p + params.nu /
                                       require_nonzero(p + params.mu_kernel,
                                                       "functional_residual", 0, p);
                const double sigma2 = params.ou.sigma * params.ou.sigma;
                return at_p * (bare + sigma2 * at_shift) - 1.0;
            } else {
                const double k2 = params.k * params.k;
                const double coupling = params.ou.sigma * params.ou.sigma * k2 * k2;
                return at_p * (p * p + k2 - coupling * at_shift) - 1.0;
            }
        },
        spec.params);
}

double estimate_abscissa(const std::function<C(C)>& eval, double im_max) {
    if (!std::isfinite(im_max) || im_max <= 0.0)
        throw validation_error("estimate_abscissa: im_max must be finite and > 0");

    constexpr double kBlowUp = 1e8;
    auto line_is_safe = [&](double c) {
        const int n = 801;
        for (int i = 0; i < n; ++i) {
            const double y = -im_max + 2.0 * im_max * i / (n - 1);
            try {
                if (std::abs(eval(C(c, y))) > kBlowUp) return false;
            } catch (const numeric_error&) {
                return false;
            }
        }
        return true;
    };

    // Walk left from Re(p) = 0.5; the first unsafe line brackets the
    // rightmost pole, which bisection then localizes from the right.
    double safe = 0.5;
    if (!line_is_safe(safe))
        throw numeric_error("estimate_abscissa: transform blows up right of Re(p)=0.5");
    double unsafe = -1.0;
    for (double c : {0.4, 0.3, 0.2, 0.1, 0.05, 0.02, 0.01, 0.0}) {
        if (line_is_safe(c)) {
            safe = c;
        } else {
            unsafe = c;
            break;
        }
    }
    if (unsafe < 0.0) return safe;  // everything down to the axis looked safe
    for (int iter = 0; iter < 24; ++iter) {
        const double mid = 0.5 * (unsafe + safe);
        if (line_is_safe(mid))
            safe = mid;
        else
            unsafe = mid;
    }
    return safe;
}

namespace {

double default_im_range(const ApproximantSpec& spec) {
    return std::visit(
        [&](const auto& params) {
            using T = std::decay_t<decltype(params)>;
            const double reach =
                static_cast<double>(spec.depth) * params.ou.lambda + 5.0;
            if constexpr (std::is_same_v<T, ModelParams>)
                return 2.0 * std::sqrt(params.nu) + reach;
            else
                return 2.0 * params.k + reach;
        },
        spec.params);
}

}  // namespace

LaplaceFunction make_dia_laplace(const ApproximantSpec& spec) {
    LaplaceFunction f;
    f.eval = [spec](C p) { return dia_approximant(spec, p); };
    f.abscissa = estimate_abscissa(f.eval, default_im_range(spec));
    return f;
}

LaplaceFunction make_perturbative_laplace(const ModelParams& params) {
    LaplaceFunction f;
    f.eval = [params](C p) { return perturbative_transform(params, p); };
    f.abscissa =
        estimate_abscissa(f.eval, 2.0 * std::sqrt(params.nu) + params.ou.lambda + 5.0);
    return f;
}

LaplaceFunction make_perturbative_laplace(const WaveParams& params) {
    LaplaceFunction f;
    f.eval = [params](C p) { return perturbative_transform(params, p); };
    f.abscissa = estimate_abscissa(f.eval, 2.0 * params.k + params.ou.lambda + 5.0);
    return f;
}

}  // namespace oscwave
