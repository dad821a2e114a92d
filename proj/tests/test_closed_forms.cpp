#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "doctest.h"
#include "oscwave/closed_forms.hpp"
#include "oscwave/errors.hpp"
#include "oscwave/rng.hpp"
#include "oscwave/sample_solvers.hpp"

using namespace oscwave;

namespace {

// First zero of f past t_guess, located by bisection on a sign change.
double zero_near(const std::function<double(double)>& f, double lo, double hi) {
    REQUIRE(f(lo) * f(hi) < 0.0);
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(lo) * f(mid) <= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE("closed_forms") {

TEST_CASE("oscillator forms are normalized at t = 0") {
    const ModelParams cases[] = {
        ModelParams(0.04, 0.0, OUParams(0.1, 0.1)),
        ModelParams(1.0, 0.0, OUParams(0.5, 2.0)),
        ModelParams(0.3, 0.0, OUParams(0.9, 0.05)),
    };
    for (const auto& p : cases) {
        CHECK(std::abs(perturbative_green(p, 0.0) - 1.0) <= 1e-14);
        CHECK(std::abs(dia_third_green(p, 0.0) - 1.0) <= 1e-14);
        const double s2 = p.ou.sigma * p.ou.sigma;
        CHECK(std::abs(p.nu / (2.0 * p.nu + s2) +
                       (p.nu + s2) / (2.0 * p.nu + s2) - 1.0) <= 1e-14);
        CHECK(std::abs((2.0 * p.nu + s2) / (3.0 * p.nu + 2.0 * s2) +
                       (p.nu + s2) / (3.0 * p.nu + 2.0 * s2) - 1.0) <= 1e-14);
    }
}

TEST_CASE("perturbative form oscillates forever, renormalized form decays") {
    const ModelParams p(0.04, 0.0, OUParams(0.1, 0.1));
    const double s2 = 0.01;
    const double cos_amplitude = (p.nu + s2) / (2.0 * p.nu + s2);
    double late_peak = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double t = 150.0 + 100.0 * i / 2000.0;
        late_peak = std::max(late_peak, std::abs(perturbative_green(p, t)));
    }
    CHECK(late_peak >= 0.9 * cos_amplitude);

    const double w = std::sqrt(3.0 * p.nu + 2.0 * s2);
    const double envelope = 1.0 + p.ou.lambda / w;
    for (int i = 0; i <= 2000; ++i) {
        const double t = 250.0 * i / 2000.0;
        CHECK(std::abs(dia_third_green(p, t)) <=
              envelope * std::exp(-p.ou.lambda * t) + 1e-14);
    }
    CHECK(std::abs(dia_third_green(p, 200.0)) <= 1e-8);
}

TEST_CASE("wave forms reduce to the noise-free field and start at zero") {
    const WaveParams quiet(2.0, OUParams(0.0, 0.5));
    for (const double xi : {0.3, 1.7, 4.0}) {
        CHECK(std::abs(perturbative_wave(quiet, xi) - std::sin(2.0 * xi) / 2.0) <=
              1e-15);
        CHECK(std::abs(dia_wave(quiet, xi) - std::sin(2.0 * xi) / 2.0) <= 1e-15);
        CHECK(std::abs(perturbative_wave(quiet, xi, Amplitude::paper_literal) -
                       std::sin(2.0 * xi)) <= 1e-15);
    }

    const WaveParams noisy(2.0, OUParams(0.3, 0.5));
    CHECK(perturbative_wave(noisy, 0.0) == 0.0);
    CHECK(dia_wave(noisy, 0.0) == 0.0);
    const AttenuationReport rep = attenuation_report(0.3, 0.5);
    const double h = 1e-5;
    CHECK(std::abs(perturbative_wave(noisy, h) / h - rep.perturbative_freq_factor) <=
          1e-4);
    CHECK(std::abs(dia_wave(noisy, h) / h - rep.dia_freq_factor) <= 1e-4);
}

TEST_CASE("renormalized attenuation is always the stronger one") {
    const AttenuationReport rep = attenuation_report(0.1, 0.7);
    const double s2 = 0.01;
    const double ratio_identity =
        (1.0 + 3.0 * s2 + 2.0 * s2 * s2) / (1.0 - s2 + 2.0 * s2 * s2);
    CHECK(std::abs(rep.dia_rate / rep.perturbative_rate - ratio_identity) <= 1e-12);
    for (int i = 1; i <= 100; ++i) {
        const double sigma = 0.5 * i / 100.0;
        const AttenuationReport r = attenuation_report(sigma, 1.0);
        CHECK(r.dia_rate > r.perturbative_rate);
        CHECK(r.dia_freq_factor < r.perturbative_freq_factor);
    }
}

TEST_CASE("wavenumber shift identities") {
    SubstreamRng rng({88u, 1u});
    for (int i = 0; i < 200; ++i) {
        const double sigma = 0.5 * rng.uniform01();
        if (sigma == 0.0) continue;
        const AttenuationReport r = attenuation_report(sigma, 1.0);
        const double direct = r.dia_freq_factor * r.dia_freq_factor -
                              r.perturbative_freq_factor * r.perturbative_freq_factor;
        CHECK(std::abs(direct - wavenumber_shift(sigma)) <= 1e-12);
        const double s6 = std::pow(sigma, 6.0);
        CHECK(std::abs(wavenumber_shift_small_sigma(sigma) - direct) <=
              10.0 * s6 + 1e-14);
    }
    CHECK(wavenumber_shift(0.1) == doctest::Approx(-3.9596e-4).epsilon(1e-3));
    CHECK(wavenumber_shift_small_sigma(0.1) ==
          doctest::Approx(-4.0400e-4).epsilon(1e-3));
}

TEST_CASE("renormalized wave domain guard") {
    const WaveParams strong(1.0, OUParams(0.8, 0.5));
    CHECK_THROWS_AS(dia_wave(strong, 1.0), validation_error);
    CHECK(std::isfinite(perturbative_wave(strong, 1.0)));
    CHECK_THROWS_AS(attenuation_report(0.75, 1.0), validation_error);
    CHECK_THROWS_AS(attenuation_report(-0.1, 1.0), validation_error);
    CHECK_THROWS_AS(attenuation_report(0.1, 0.0), validation_error);
}

TEST_CASE("envelope approximation orders") {
    const ModelParams p(0.04, 0.0, OUParams(0.2, 0.1));
    for (const double t : {0.5, 3.0, 12.0}) {
        CHECK(liouville_envelope(p, t, 1) == liouville_envelope(p, t, 2));
        CHECK(liouville_envelope(p, t, 3) != liouville_envelope(p, t, 1));
    }
    CHECK_THROWS_AS(liouville_envelope(p, 1.0, 0), validation_error);
    CHECK_THROWS_AS(liouville_envelope(p, 1.0, 4), validation_error);

    // Vanishing correlation rate removes envelope and shift entirely.
    const ModelParams frozen(0.25, 0.0, OUParams(0.3, 1e-30));
    for (const double t : {1.0, 4.0})
        CHECK(std::abs(liouville_envelope(frozen, t, 1) -
                       std::sin(0.5 * t) / 0.5) <= 1e-14);

    // The order-3 form shifts the frequency a little further down; measure
    // both frequencies from the first zero crossing rather than trusting the
    // coefficients.
    const double k = 0.2;
    const double sl2 = 0.2 * 0.2 * 0.1 * 0.1;
    const double shift1 = 1.0 - sl2 / (16.0 * 0.04 * 0.04);
    const double shift3 = 1.0 - 3.0 * sl2 / (32.0 * 0.04 * 0.04);
    const double z1 = zero_near([&](double t) { return liouville_envelope(p, t, 1); },
                                std::acos(-1.0) / k - 2.0, std::acos(-1.0) / k + 2.0);
    const double z3 = zero_near([&](double t) { return liouville_envelope(p, t, 3); },
                                std::acos(-1.0) / k - 2.0, std::acos(-1.0) / k + 2.0);
    CHECK(std::abs(z1 / z3 - shift3 / shift1) <= 1e-12);
}

TEST_CASE("gaussian estimate matches the sampled mean at short times") {
    const ModelParams p(1.0, 0.0, OUParams(0.1, 0.05));
    CHECK(gaussian_green_estimate(p, 0.0) == 1.0);

    const ModelParams frozen(1.0, 0.0, OUParams(0.1, 1e-30));
    for (const double t : {0.7, 2.1})
        CHECK(std::abs(gaussian_green_estimate(frozen, t) -
                       std::exp(-0.01 * t * t / 8.0) * std::cos(t)) <= 1e-14);

    TimeGrid grid(3.0, 151);
    EnsembleStats mc = ensemble_green_function(p, grid, 4000, {11u, 0u});
    for (std::size_t j = 0; j < grid.n_steps(); ++j) {
        const double gap =
            std::abs(mc.mean[j].real() - gaussian_green_estimate(p, grid.point(j)));
        CHECK(gap <= std::max(3.0 * mc.std_error[j], 0.05));
    }
}

TEST_CASE("phase average branches") {
    const OUParams slow(0.3, 0.01);
    CHECK(phase_average_closed(slow, 0.0, PhaseBranch::exact) == 1.0);
    CHECK(phase_average_closed(slow, 0.0, PhaseBranch::small_lambda) == 1.0);
    CHECK(phase_average_closed(slow, 0.0, PhaseBranch::large_lambda) == 1.0);

    // lambda t << 1: the exact exponent's leading Taylor term is the
    // small-lambda branch, approached from above.
    const double exact_slow = phase_average_closed(slow, 1.0, PhaseBranch::exact);
    const double small = phase_average_closed(slow, 1.0, PhaseBranch::small_lambda);
    CHECK(exact_slow >= small);
    CHECK(std::abs(exact_slow - small) <= 1e-4);

    const OUParams fast(0.3, 50.0);
    const double exact_fast = phase_average_closed(fast, 2.0, PhaseBranch::exact);
    const double large = phase_average_closed(fast, 2.0, PhaseBranch::large_lambda);
    CHECK(exact_fast >= large);
    CHECK(std::abs(exact_fast - large) <= 1e-4);

    const OUParams mc_params(0.2, 0.1);
    TimeGrid grid(5.0, 51);
    EnsembleStats mc = monte_carlo_phase_average(mc_params, grid, 20000, {5150u, 0u});
    const double closed = phase_average_closed(mc_params, 5.0, PhaseBranch::exact);
    CHECK(std::abs(mc.mean[50].real() - closed) <= 3.0 * mc.std_error[50]);
}

TEST_CASE("first-order system coefficients") {
    const FirstOrderCoeffs c = first_order_system_coeffs(
        ModelParams(1.0, 0.0, OUParams(0.2, 0.1)));
    CHECK(c.c1 == doctest::Approx(4.98753e-5).epsilon(1e-4));
    CHECK(c.c2 == doctest::Approx(9.97506e-4).epsilon(1e-4));
    CHECK(c.alpha == doctest::Approx(0.25 * c.c2).epsilon(1e-12));
    CHECK(c.beta ==
          doctest::Approx(std::sqrt(1.0 - c.c2 * c.c2 / 16.0 - c.c1 / 2.0))
              .epsilon(1e-12));
    CHECK_FALSE(c.overdamped);

    const FirstOrderCoeffs quiet = first_order_system_coeffs(
        ModelParams(0.7, 0.0, OUParams(0.0, 0.4)));
    CHECK(quiet.c1 == 0.0);
    CHECK(quiet.c2 == 0.0);
    CHECK(quiet.alpha == 0.0);
    CHECK(quiet.beta == std::sqrt(0.7));

    const FirstOrderCoeffs wide = first_order_system_coeffs(
        ModelParams(1.0, 0.0, OUParams(0.2, 1000.0)));
    CHECK(std::abs(wide.alpha - wide.alpha_large_lambda_limit) <=
          0.01 * wide.alpha_large_lambda_limit);
    CHECK(std::abs(wide.beta - wide.beta_large_lambda_limit) <=
          0.01 * wide.beta_large_lambda_limit);

    const FirstOrderCoeffs narrow = first_order_system_coeffs(
        ModelParams(1.0, 0.0, OUParams(0.2, 0.001)));
    CHECK(std::abs(narrow.alpha - narrow.alpha_small_lambda_limit) <=
          0.01 * narrow.alpha_small_lambda_limit);

    const FirstOrderCoeffs heavy = first_order_system_coeffs(
        ModelParams(1.0, 0.0, OUParams(3.0, 100.0)));
    CHECK(heavy.overdamped);
    CHECK(std::isfinite(heavy.beta));
    CHECK(heavy.beta > 0.0);
}

}  // TEST_SUITE
