#include "commands.hpp"

#include <cmath>
#include <complex>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "oscwave/approximants.hpp"
#include "oscwave/closed_forms.hpp"
#include "oscwave/csv.hpp"
#include "oscwave/errors.hpp"
#include "oscwave/fitting.hpp"
#include "oscwave/inversion.hpp"
#include "oscwave/metrics.hpp"
#include "oscwave/ou.hpp"
#include "oscwave/sample_solvers.hpp"
#include "oscwave/volterra.hpp"

namespace oscwave {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
// A fitted envelope rate below this is reported as "oscillates".
constexpr double kDecayThreshold = 1e-3;

void emit(const RunConfig& cfg, const std::string& name, const std::string& bytes) {
    write_text_file(cfg.out_dir / name, bytes);
    if (!cfg.quiet) std::cout << "wrote " << (cfg.out_dir / name).string() << "\n";
}

void prepare(const RunConfig& cfg) {
    cfg.validate();
    std::filesystem::create_directories(cfg.out_dir);
    emit(cfg, "effective_config.txt", cfg.serialize());
}

OUParams ou_params(const RunConfig& cfg) { return OUParams(cfg.sigma, cfg.lambda); }

ModelParams model_params(const RunConfig& cfg) {
    return ModelParams(cfg.nu, cfg.mu, ou_params(cfg));
}

WaveParams wave_params(const RunConfig& cfg) {
    return WaveParams(cfg.k, ou_params(cfg));
}

InversionConfig inversion_config(const RunConfig& cfg) {
    InversionConfig inv;
    inv.contour_shift = cfg.contour_shift;
    inv.series_length = cfg.series_length;
    inv.accel_order = cfg.accel_order;
    inv.tolerance = cfg.tolerance;
    return inv;
}

// Routes carry a family tag so the metrics table only compares like with
// like: the sin-like envelope forms solve the unit-slope problem and sit a
// factor 1/k away from the cos-like mean Green routes.
struct Route {
    std::string name;
    RealSeries series;
    int family = 0;
};

using NamedSeries = std::vector<Route>;

struct FitOutcome {
    std::string status;
    EnvelopeFit fit;
};

FitOutcome try_fit(const RealSeries& s) {
    try {
        return {"ok", fit_damped_oscillation(s)};
    } catch (const validation_error&) {
        return {"too_few_oscillations", {}};
    } catch (const numeric_error& e) {
        const bool rejected =
            std::string(e.what()).find("rejected") != std::string::npos;
        return {rejected ? "rejected" : "no_convergence", {}};
    }
}

std::vector<std::string> fit_row(const std::string& route, const FitOutcome& out) {
    if (out.status != "ok")
        return {route, out.status, number_cell(kNan), number_cell(kNan),
                number_cell(kNan), number_cell(kNan), number_cell(kNan)};
    return {route,
            out.status,
            number_cell(out.fit.amplitude),
            number_cell(out.fit.rate),
            number_cell(out.fit.omega),
            number_cell(out.fit.phase),
            number_cell(out.fit.rms_residual)};
}

// The sampled-mean route gets its standard-error column right next to it.
std::string series_table(const TimeGrid& grid, const NamedSeries& routes,
                         const EnsembleStats& mc) {
    std::vector<std::string> cols{"t"};
    for (const auto& route : routes) {
        cols.push_back(route.name);
        if (route.name == "mc") cols.push_back("mc_std_error");
    }
    std::vector<std::vector<double>> rows(grid.n_steps());
    for (std::size_t i = 0; i < grid.n_steps(); ++i) {
        rows[i].push_back(grid.point(i));
        for (const auto& route : routes) {
            rows[i].push_back(route.series.values[i]);
            if (route.name == "mc") rows[i].push_back(mc.std_error[i]);
        }
    }
    return emit_table(cols, rows);
}

std::string metrics_table(const RunConfig& cfg, const NamedSeries& routes) {
    const std::vector<std::string> cols{"route", "reference", "max_abs", "rms",
                                        "rel_rms"};
    std::vector<std::vector<std::string>> rows;
    auto add = [&](std::size_t a, std::size_t b) {
        const ErrorMetrics m = compare_series(routes[a].series, routes[b].series);
        rows.push_back({routes[a].name, routes[b].name, number_cell(m.max_abs),
                        number_cell(m.rms), number_cell(m.rel_rms)});
    };
    if (cfg.comparisons == "all") {
        for (std::size_t b = 0; b < routes.size(); ++b)
            for (std::size_t a = 0; a < b; ++a)
                if (routes[a].family == routes[b].family) add(a, b);
    } else {
        // reference mode: everything against the first route of its family.
        for (std::size_t a = 1; a < routes.size(); ++a) {
            for (std::size_t b = 0; b < a; ++b) {
                if (routes[b].family == routes[a].family) {
                    add(a, b);
                    break;
                }
            }
        }
    }
    return emit_table(cols, rows);
}

std::string fits_table(const std::vector<std::pair<std::string, FitOutcome>>& fits) {
    const std::vector<std::string> cols{"route",  "status", "amplitude", "rate",
                                        "omega",  "phase",  "rms_residual"};
    std::vector<std::vector<std::string>> rows;
    for (const auto& [name, outcome] : fits) rows.push_back(fit_row(name, outcome));
    return emit_table(cols, rows);
}

void append_verdicts(std::ostringstream& text,
                     const std::vector<std::pair<std::string, FitOutcome>>& fits) {
    text << "envelope verdicts (decays when fitted rate >= "
         << number_cell(kDecayThreshold) << "):\n";
    for (const auto& [name, outcome] : fits) {
        if (outcome.status != "ok") {
            text << "  " << name << ": unclassified (" << outcome.status << ")\n";
        } else if (outcome.fit.rate >= kDecayThreshold) {
            text << "  " << name << ": decays (rate " << number_cell(outcome.fit.rate)
                 << ")\n";
        } else {
            text << "  " << name << ": oscillates (rate "
                 << number_cell(outcome.fit.rate) << ")\n";
        }
    }
}

}  // namespace

void run_ou(const RunConfig& cfg) {
    prepare(cfg);
    const OUParams params = ou_params(cfg);
    TimeGrid grid(cfg.t_max, cfg.n_steps);

    std::vector<OUPath> paths;
    paths.reserve(cfg.samples);
    for (std::size_t i = 0; i < cfg.samples; ++i)
        paths.push_back(
            generate_ou_path(params, grid, RngSeed{cfg.seed, cfg.stream + i}));

    const std::size_t shown = std::min<std::size_t>(cfg.samples, 8);
    {
        std::vector<std::string> cols{"t"};
        for (std::size_t j = 0; j < shown; ++j)
            cols.push_back("path_" + std::to_string(j));
        std::vector<std::vector<double>> rows(grid.n_steps());
        for (std::size_t i = 0; i < grid.n_steps(); ++i) {
            rows[i].push_back(grid.point(i));
            for (std::size_t j = 0; j < shown; ++j)
                rows[i].push_back(paths[j].values[i]);
        }
        emit(cfg, "paths.csv", emit_table(cols, rows));
    }

    const std::size_t max_lag = std::min<std::size_t>(grid.n_steps() - 1, 50);
    double worst_sigmas = 0.0;
    {
        std::vector<std::vector<double>> rows;
        for (std::size_t lag = 0; lag <= max_lag; ++lag) {
            const ValueWithError est = estimate_autocorrelation(paths, lag);
            const double tau = static_cast<double>(lag) * grid.dt();
            const double predicted =
                cfg.sigma * cfg.sigma * std::exp(-cfg.lambda * tau);
            rows.push_back({tau, est.value, est.std_error, predicted,
                            std::abs(est.value - predicted)});
            if (est.std_error > 0.0)
                worst_sigmas = std::max(
                    worst_sigmas, std::abs(est.value - predicted) / est.std_error);
        }
        emit(cfg, "autocorrelation.csv",
             emit_table({"lag_time", "estimate", "std_error", "predicted",
                         "abs_gap"},
                        rows));
    }

    std::ostringstream text;
    text << "driving process: sigma = " << number_cell(cfg.sigma)
         << ", lambda = " << number_cell(cfg.lambda) << "\n";
    text << "paths sampled: " << cfg.samples << " (" << shown
         << " written to paths.csv)\n";
    text << "autocorrelation lags tabulated: 0.." << max_lag << "\n";
    text << "worst |estimate - predicted| in standard errors: "
         << number_cell(worst_sigmas) << "\n";
    emit(cfg, "summary.txt", text.str());
}

void run_green(const RunConfig& cfg) {
    prepare(cfg);
    const ModelParams params = model_params(cfg);
    TimeGrid grid(cfg.t_max, cfg.n_steps);
    const InversionConfig inv = inversion_config(cfg);

    const EnsembleStats mc = ensemble_green_function(
        params, grid, cfg.samples, RngSeed{cfg.seed, cfg.stream},
        static_cast<unsigned>(cfg.threads));
    std::vector<double> mc_real(grid.n_steps());
    for (std::size_t i = 0; i < grid.n_steps(); ++i) mc_real[i] = mc.mean[i].real();

    NamedSeries routes;
    routes.push_back({"volterra", solve_dia_volterra_model(params, grid), 0});
    routes.push_back({"mc", RealSeries(grid, std::move(mc_real)), 0});
    for (const std::size_t depth : cfg.depths) {
        const ApproximantSpec spec(params, depth);
        routes.push_back({"depth_" + std::to_string(depth),
                          invert_laplace(make_dia_laplace(spec), grid, inv), 0});
    }
    auto sample_form = [&](auto&& f) {
        std::vector<double> v(grid.n_steps());
        for (std::size_t i = 0; i < grid.n_steps(); ++i) v[i] = f(grid.point(i));
        return RealSeries(grid, std::move(v));
    };
    routes.push_back({"perturbative_closed",
                      sample_form([&](double t) {
                          return perturbative_green(params, t);
                      }),
                      0});
    routes.push_back({"dia_closed", sample_form([&](double t) {
                          return dia_third_green(params, t);
                      }),
                      0});
    for (int order = 1; order <= 3; ++order)
        routes.push_back({"envelope_" + std::to_string(order),
                          sample_form([&](double t) {
                              return liouville_envelope(params, t, order);
                          }),
                          1});
    routes.push_back({"gaussian_estimate",
                      sample_form([&](double t) {
                          return gaussian_green_estimate(params, t);
                      }),
                      0});

    emit(cfg, "series.csv", series_table(grid, routes, mc));
    emit(cfg, "metrics.csv", metrics_table(cfg, routes));

    std::vector<std::pair<std::string, FitOutcome>> fits;
    for (const auto& route : routes)
        fits.emplace_back(route.name, try_fit(route.series));
    emit(cfg, "fits.csv", fits_table(fits));

    std::ostringstream text;
    text << "oscillator run: nu = " << number_cell(cfg.nu)
         << ", mu = " << number_cell(cfg.mu)
         << ", sigma = " << number_cell(cfg.sigma)
         << ", lambda = " << number_cell(cfg.lambda) << "\n";
    text << "routes: " << routes.size() << " (plus sampled mean std errors)\n";
    append_verdicts(text, fits);
    double worst_vs_ref = 0.0;
    for (std::size_t a = 1; a < routes.size(); ++a)
        if (routes[a].family == routes[0].family)
            worst_vs_ref = std::max(
                worst_vs_ref,
                compare_series(routes[a].series, routes[0].series).max_abs);
    text << "largest max_abs against the kernel marcher: "
         << number_cell(worst_vs_ref) << "\n";
    emit(cfg, "summary.txt", text.str());
}

void run_wave(const RunConfig& cfg) {
    prepare(cfg);
    const WaveParams params = wave_params(cfg);
    TimeGrid grid(cfg.t_max, cfg.n_steps);
    const InversionConfig inv = inversion_config(cfg);

    const EnsembleStats mc = ensemble_wave_field(
        params, grid, cfg.samples, RngSeed{cfg.seed, cfg.stream},
        static_cast<unsigned>(cfg.threads));
    std::vector<double> mc_real(grid.n_steps());
    for (std::size_t i = 0; i < grid.n_steps(); ++i) mc_real[i] = mc.mean[i].real();

    NamedSeries routes;
    routes.push_back({"volterra", solve_dia_volterra_wave(params, grid), 0});
    routes.push_back({"mc", RealSeries(grid, std::move(mc_real)), 0});
    for (const std::size_t depth : cfg.depths) {
        const ApproximantSpec spec(params, depth);
        routes.push_back({"depth_" + std::to_string(depth),
                          invert_laplace(make_dia_laplace(spec), grid, inv), 0});
    }
    auto sample_form = [&](auto&& f) {
        std::vector<double> v(grid.n_steps());
        for (std::size_t i = 0; i < grid.n_steps(); ++i) v[i] = f(grid.point(i));
        return RealSeries(grid, std::move(v));
    };
    routes.push_back({"perturbative_closed",
                      sample_form([&](double xi) {
                          return perturbative_wave(params, xi);
                      }),
                      0});
    std::optional<std::string> skipped_dia;
    try {
        RealSeries dia = sample_form([&](double xi) { return dia_wave(params, xi); });
        routes.push_back({"dia_closed", std::move(dia), 0});
    } catch (const validation_error& e) {
        skipped_dia = e.what();
    }

    emit(cfg, "series.csv", series_table(grid, routes, mc));
    emit(cfg, "metrics.csv", metrics_table(cfg, routes));

    std::vector<std::pair<std::string, FitOutcome>> fits;
    for (const auto& route : routes)
        fits.emplace_back(route.name, try_fit(route.series));
    emit(cfg, "fits.csv", fits_table(fits));

    std::optional<AttenuationReport> formulas;
    try {
        formulas = attenuation_report(cfg.sigma, cfg.lambda);
    } catch (const validation_error&) {
    }
    {
        std::vector<std::vector<std::string>> rows;
        for (const auto& [name, outcome] : fits) {
            rows.push_back(
                {name, outcome.status,
                 number_cell(outcome.status == "ok" ? outcome.fit.rate : kNan),
                 number_cell(outcome.status == "ok" ? outcome.fit.omega : kNan),
                 number_cell(formulas ? formulas->perturbative_rate : kNan),
                 number_cell(formulas ? formulas->dia_rate : kNan),
                 number_cell(formulas ? cfg.k * formulas->perturbative_freq_factor
                                      : kNan),
                 number_cell(formulas ? cfg.k * formulas->dia_freq_factor : kNan)});
        }
        emit(cfg, "attenuation.csv",
             emit_table({"route", "status", "fitted_rate", "fitted_omega",
                         "formula_perturbative_rate", "formula_dia_rate",
                         "formula_perturbative_omega", "formula_dia_omega"},
                        rows));
    }
    {
        std::vector<std::vector<double>> rows;
        for (int i = 1; i <= 50; ++i) {
            const double sigma = 0.01 * i;
            const AttenuationReport r = attenuation_report(sigma, cfg.lambda);
            rows.push_back({sigma, r.perturbative_rate, r.dia_rate,
                            r.dia_rate - r.perturbative_rate,
                            r.perturbative_freq_factor, r.dia_freq_factor,
                            wavenumber_shift(sigma),
                            wavenumber_shift_small_sigma(sigma)});
        }
        emit(cfg, "sigma_scan.csv",
             emit_table({"sigma", "perturbative_rate", "dia_rate", "rate_gap",
                         "perturbative_freq_factor", "dia_freq_factor",
                         "shift_exact", "shift_small_sigma"},
                        rows));
    }

    std::ostringstream text;
    text << "wave run: k = " << number_cell(cfg.k)
         << ", sigma = " << number_cell(cfg.sigma)
         << ", lambda = " << number_cell(cfg.lambda) << "\n";
    if (skipped_dia)
        text << "dia_closed route skipped: " << *skipped_dia << "\n";
    if (!formulas)
        text << "attenuation formulas unavailable at this sigma\n";
    append_verdicts(text, fits);
    double worst_vs_ref = 0.0;
    for (std::size_t a = 1; a < routes.size(); ++a)
        worst_vs_ref = std::max(
            worst_vs_ref,
            compare_series(routes[a].series, routes[0].series).max_abs);
    text << "largest max_abs against the kernel marcher: "
         << number_cell(worst_vs_ref) << "\n";
    emit(cfg, "summary.txt", text.str());
}

void run_residual(const RunConfig& cfg) {
    prepare(cfg);
    const ModelParams osc = model_params(cfg);
    const WaveParams wave = wave_params(cfg);
    const std::complex<double> probe(0.8, 0.6);

    const std::size_t max_depth = cfg.depths.back();
    std::vector<double> osc_res(max_depth + 1, 0.0);
    std::vector<double> wave_res(max_depth + 1, 0.0);
    {
        std::vector<std::vector<double>> rows;
        for (std::size_t d = 1; d <= max_depth; ++d) {
            osc_res[d] = std::abs(functional_residual(ApproximantSpec(osc, d), probe));
            wave_res[d] =
                std::abs(functional_residual(ApproximantSpec(wave, d), probe));
            rows.push_back({static_cast<double>(d), osc_res[d], wave_res[d]});
        }
        emit(cfg, "residual.csv",
             emit_table({"depth", "oscillator_residual", "wave_residual"}, rows));
    }

    auto monotone = [&](const std::vector<double>& r) {
        for (std::size_t d = 2; d <= max_depth; ++d)
            if (r[d] > r[d - 1]) return false;
        return true;
    };
    const ApproximantSpec deep_osc(osc, max_depth);
    const ApproximantSpec deep_wave(wave, max_depth);
    const double sym_osc = std::abs(functional_residual(deep_osc, std::conj(probe)) -
                                    std::conj(functional_residual(deep_osc, probe)));
    const double sym_wave =
        std::abs(functional_residual(deep_wave, std::conj(probe)) -
                 std::conj(functional_residual(deep_wave, probe)));

    std::ostringstream text;
    text << "functional-equation residual at p = (" << number_cell(probe.real())
         << ", " << number_cell(probe.imag()) << "), depths 1.." << max_depth
         << "\n";
    text << "oscillator residual decreases monotonically: "
         << (monotone(osc_res) ? "yes" : "no") << "\n";
    text << "wave residual decreases monotonically: "
         << (monotone(wave_res) ? "yes" : "no") << "\n";
    text << "conjugate-symmetry defect at depth " << max_depth
         << ": oscillator " << number_cell(sym_osc) << ", wave "
         << number_cell(sym_wave) << "\n";
    emit(cfg, "summary.txt", text.str());
}

}  // namespace oscwave
