#include <cmath>
#include <complex>
#include <cstddef>
#include <string>

#include "doctest.h"
#include "oscwave/approximants.hpp"
#include "oscwave/errors.hpp"
#include "oscwave/rng.hpp"

using namespace oscwave;
using C = std::complex<double>;

namespace {

ModelParams osc(double nu, double mu, double sigma, double lambda) {
    return ModelParams(nu, mu, OUParams(sigma, lambda));
}

WaveParams wave(double k, double sigma, double lambda) {
    return WaveParams(k, OUParams(sigma, lambda));
}

double rel_gap(C a, C b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("approximants") {

TEST_CASE("zero noise collapses every depth to the bare transform") {
    const ModelParams params = osc(0.04, 0.0, 0.0, 1.0);
    const C p(1.0, 0.0);
    const C bare = 1.0 / (p + 0.04 / p);
    for (std::size_t depth : {1u, 2u, 5u, 30u}) {
        const C g = dia_approximant(ApproximantSpec(params, depth), p);
        CHECK(rel_gap(g, bare) <= 1e-15);
        CHECK(std::abs(g.real() - 1.0 / 1.04) <= 1e-15);
    }
    // Same collapse for the wave fraction, at a complex argument.
    const WaveParams wp = wave(1.3, 0.0, 0.7);
    const C q(0.8, 1.1);
    const C bare_wave = 1.0 / (q * q + 1.3 * 1.3);
    for (std::size_t depth : {1u, 4u, 12u})
        CHECK(rel_gap(dia_approximant(ApproximantSpec(wp, depth), q), bare_wave) <=
              1e-15);
}

TEST_CASE("depth one ignores the noise entirely") {
    // The first level never sees sigma; only deeper levels do.
    const C e = dia_approximant(ApproximantSpec(wave(1.0, 0.3, 0.5), 1), C(2.0, 0.0));
    CHECK(e.real() == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(std::abs(e.imag()) <= 1e-16);
}

TEST_CASE("depth two equals the perturbative closure everywhere") {
    const ModelParams mp = osc(0.04, 0.3, 0.1, 0.25);
    const ApproximantSpec spec2(mp, 2);
    SubstreamRng rng({20260821u, 0u});
    double worst = 0.0;
    for (std::size_t i = 0; i < 1000000; ++i) {
        const C p(1.0 + 10.0 * rng.uniform01(), -10.0 + 20.0 * rng.uniform01());
        worst = std::max(worst,
                         rel_gap(dia_approximant(spec2, p), perturbative_transform(mp, p)));
    }
    CHECK(worst <= 1e-12);

    const WaveParams wp = wave(1.3, 0.15, 0.4);
    const ApproximantSpec wspec2(wp, 2);
    worst = 0.0;
    for (std::size_t i = 0; i < 1000; ++i) {
        const C p(0.5 + 9.5 * rng.uniform01(), -10.0 + 20.0 * rng.uniform01());
        worst = std::max(worst,
                         rel_gap(dia_approximant(wspec2, p), perturbative_transform(wp, p)));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("perturbative wave value in the short-memory limit") {
    // lambda ~ 0 leaves the shifted level at the same argument, so the value
    // reduces to 1 / (p^2 + k^2 - sigma^2 k^4 / (p^2 + k^2)).
    const C e = perturbative_transform(wave(1.0, 0.1, 1e-30), C(1.0, 0.0));
    CHECK(e.real() == doctest::Approx(1.0 / (2.0 - 0.005)).epsilon(1e-12));
    CHECK(std::abs(e.imag()) <= 1e-15);
}

TEST_CASE("conjugate symmetry of both fractions") {
    const ApproximantSpec specs[] = {
        ApproximantSpec(osc(0.04, 0.2, 0.1, 0.1), 6),
        ApproximantSpec(wave(2.0, 0.2, 0.3), 6),
    };
    SubstreamRng rng({7u, 3u});
    for (const auto& spec : specs) {
        for (int i = 0; i < 50; ++i) {
            const C p(0.5 + 5.0 * rng.uniform01(), -8.0 + 16.0 * rng.uniform01());
            const C direct = dia_approximant(spec, std::conj(p));
            const C mirrored = std::conj(dia_approximant(spec, p));
            CHECK(std::abs(direct - mirrored) <= 1e-15 * (1.0 + std::abs(direct)));
        }
    }
}

TEST_CASE("large-argument limits recover the initial values") {
    const C p(1e6, 0.0);
    const C g = dia_approximant(ApproximantSpec(osc(0.04, 0.3, 0.1, 0.1), 30), p);
    CHECK(std::abs(p * g - 1.0) <= 1e-4);
    const C e = dia_approximant(ApproximantSpec(wave(1.0, 0.1, 0.05), 30), p);
    CHECK(std::abs(p * p * e - 1.0) <= 1e-4);
}

TEST_CASE("peeling one level shifts the argument by lambda") {
    const double nu = 0.04, mu = 0.3, sigma = 0.1, lambda = 0.25;
    const ModelParams mp = osc(nu, mu, sigma, lambda);
    for (const C p : {C(0.7, 0.0), C(2.0, 0.0), C(1.1, -0.9)}) {
        const C inner = dia_approximant(ApproximantSpec(mp, 6), p + lambda);
        const C peeled = 1.0 / (p + nu / (p + mu) + sigma * sigma * inner);
        CHECK(rel_gap(dia_approximant(ApproximantSpec(mp, 7), p), peeled) <= 1e-14);
    }
    const double k = 1.5;
    const WaveParams wp = wave(k, sigma, lambda);
    const C p(0.4, 1.2);
    const C inner = dia_approximant(ApproximantSpec(wp, 6), p + lambda);
    const C peeled =
        1.0 / (p * p + k * k - sigma * sigma * k * k * k * k * inner);
    CHECK(rel_gap(dia_approximant(ApproximantSpec(wp, 7), p), peeled) <= 1e-14);
}

TEST_CASE("finite differences satisfy the Cauchy-Riemann relations") {
    const ApproximantSpec specs[] = {
        ApproximantSpec(osc(0.04, 0.0, 0.1, 0.1), 7),
        ApproximantSpec(wave(1.0, 0.2, 0.3), 7),
    };
    const double h = 1e-5;
    for (const auto& spec : specs) {
        for (const C p : {C(1.0, 0.5), C(0.6, -1.5), C(2.5, 3.0)}) {
            const C horiz =
                (dia_approximant(spec, p + h) - dia_approximant(spec, p - h)) /
                (2.0 * h);
            const C vert =
                (dia_approximant(spec, p + C(0.0, h)) -
                 dia_approximant(spec, p - C(0.0, h))) /
                C(0.0, 2.0 * h);
            CHECK(std::abs(horiz - vert) <= 1e-6 * (1.0 + std::abs(horiz)));
        }
    }
}

TEST_CASE("functional residual vanishes without noise and shrinks with depth") {
    for (std::size_t depth : {1u, 3u, 9u})
        CHECK(std::abs(functional_residual(
                  ApproximantSpec(osc(0.04, 0.0, 0.0, 1.0), depth), C(0.7, 0.3))) <=
              1e-14);

    const ModelParams mp = osc(0.04, 0.0, 0.1, 0.1);
    const C p(2.0, 0.0);
    const double shallow = std::abs(functional_residual(ApproximantSpec(mp, 3), p));
    const double deep = std::abs(functional_residual(ApproximantSpec(mp, 8), p));
    CHECK(deep < shallow);

    CHECK(std::abs(functional_residual(ApproximantSpec(wave(1.0, 0.1, 0.1), 30),
                                       C(2.0, 0.0))) <= 1e-8);
}

TEST_CASE("a vanishing denominator is reported with its level") {
    // Without noise the first level alone has poles at p = +-i sqrt(nu);
    // p + nu/p cancels exactly there.
    const ApproximantSpec spec(osc(0.04, 0.0, 0.0, 1.0), 3);
    CHECK_THROWS_AS(dia_approximant(spec, C(0.0, 0.2)), numeric_error);
    try {
        dia_approximant(spec, C(0.0, 0.2));
    } catch (const numeric_error& e) {
        CHECK(std::string(e.what()).find("level") != std::string::npos);
    }
}

TEST_CASE("fixed-point tail agrees with deep zero-tail truncation") {
    const ModelParams mp = osc(0.04, 0.0, 0.1, 0.1);
    const C p(0.5, 0.0);
    const C shallow_zero = dia_approximant(ApproximantSpec(mp, 1), p);
    const C shallow_fp =
        dia_approximant(ApproximantSpec(mp, 1, TailMode::fixed_point), p);
    CHECK(std::abs(shallow_zero - shallow_fp) > 1e-6);  // the tail matters at depth 1

    const C deep_zero = dia_approximant(ApproximantSpec(mp, 30), p);
    const C deep_fp =
        dia_approximant(ApproximantSpec(mp, 30, TailMode::fixed_point), p);
    CHECK(std::abs(deep_zero - deep_fp) <= 1e-12);

    const WaveParams wp = wave(1.0, 0.1, 0.1);
    const C ew = dia_approximant(ApproximantSpec(wp, 25, TailMode::fixed_point),
                                 C(1.0, 0.4));
    CHECK(std::isfinite(ew.real()));
    CHECK(std::isfinite(ew.imag()));
}

TEST_CASE("abscissa estimation brackets the rightmost pole") {
    const double shifted = estimate_abscissa(
        [](C p) { return 1.0 / (p - 0.2); }, 5.0);
    CHECK(shifted >= 0.2);
    CHECK(shifted <= 0.21);

    // Poles on the imaginary axis: the estimate stays at (essentially) zero.
    const ModelParams mp = osc(0.04, 0.0, 0.0, 1.0);
    const double axis = estimate_abscissa(
        [&](C p) { return dia_approximant(ApproximantSpec(mp, 1), p); }, 5.0);
    CHECK(axis >= 0.0);
    CHECK(axis <= 0.01);

    CHECK_THROWS_AS(estimate_abscissa([](C p) { return 1.0 / (p - 0.5); }, 5.0),
                    numeric_error);
    CHECK_THROWS_AS(estimate_abscissa([](C p) { return p; }, 0.0), validation_error);
}

TEST_CASE("bundled transforms carry a usable abscissa") {
    const ApproximantSpec spec(osc(0.04, 0.0, 0.1, 0.1), 30);
    const LaplaceFunction f = make_dia_laplace(spec);
    CHECK(f.abscissa >= 0.0);
    CHECK(f.abscissa <= 0.01);
    const C p(1.5, 0.5);
    CHECK(f.eval(p) == dia_approximant(spec, p));

    const ModelParams mp = osc(0.04, 0.3, 0.1, 0.25);
    const LaplaceFunction fp = make_perturbative_laplace(mp);
    CHECK(fp.eval(p) == perturbative_transform(mp, p));
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(ApproximantSpec(osc(0.04, 0.0, 0.1, 0.1), 0), validation_error);
    CHECK_THROWS_AS(ApproximantSpec(wave(1.0, 0.1, 0.1), 0), validation_error);
}

}  // TEST_SUITE
