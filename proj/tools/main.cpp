#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "oscwave/errors.hpp"
#include "run_config.hpp"

int main(int argc, char** argv) {
    CLI::App app{"stochastic oscillator and random-medium wave laboratory"};

    std::optional<std::string> config_path;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::optional<std::string> depths;
    bool quiet = false;
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "base RNG seed");
    app.add_option("--samples", samples, "ensemble size");
    app.add_option("--depths", depths, "approximant depths, e.g. 2,3,30");
    app.add_flag("--quiet", quiet, "suppress progress lines");

    auto* cmd_ou = app.add_subcommand(
        "ou", "sample the driving process and check its autocorrelation");
    auto* cmd_green = app.add_subcommand(
        "green", "oscillator mean Green's function by every route");
    auto* cmd_wave =
        app.add_subcommand("wave", "mean wave field by every route");
    auto* cmd_residual = app.add_subcommand(
        "residual", "functional-equation residual against depth");
    for (auto* sub : {cmd_ou, cmd_green, cmd_wave, cmd_residual})
        sub->fallthrough();
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        oscwave::RunConfig cfg;
        if (config_path) cfg = oscwave::parse_config_file(*config_path);
        if (out_dir) cfg.out_dir = *out_dir;
        if (seed) cfg.seed = *seed;
        if (samples) cfg.samples = *samples;
        if (depths) cfg.depths = oscwave::parse_depth_list(*depths);
        if (quiet) cfg.quiet = true;

        if (cmd_ou->parsed()) oscwave::run_ou(cfg);
        if (cmd_green->parsed()) oscwave::run_green(cfg);
        if (cmd_wave->parsed()) oscwave::run_wave(cfg);
        if (cmd_residual->parsed()) oscwave::run_residual(cfg);
    } catch (const oscwave::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
