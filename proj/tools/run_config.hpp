#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace oscwave {

// Effective run description: file keys merged with flag overrides. Every
// result-determining value lives here; threads and quiet are execution
// details that cannot change any emitted byte and are therefore not part of
// the serialized form.
struct RunConfig {
    std::string model = "oscillator";  // oscillator | wave
    double nu = 1.0;
    double mu = 0.0;
    double k = 1.0;
    double sigma = 0.2;
    double lambda = 0.5;
    double t_max = 40.0;
    std::size_t n_steps = 2001;
    std::size_t samples = 2000;
    std::uint64_t seed = 1;
    std::uint64_t stream = 0;
    std::vector<std::size_t> depths{2, 3};
    double tolerance = 1e-8;
    std::size_t series_length = 64;
    std::size_t accel_order = 30;
    std::optional<double> contour_shift;
    std::string comparisons = "all";  // all | reference
    std::filesystem::path out_dir = "out";
    std::size_t threads = 0;
    bool quiet = false;

    // Throws validation_error naming the offending field.
    void validate() const;

    // Deterministic key = value text, reparseable by parse_config_file.
    std::string serialize() const;
};

// Reads key = value lines ('#' comments, blank lines allowed) on top of the
// defaults. Unknown keys and malformed values are validation errors naming
// the line.
RunConfig parse_config_file(const std::filesystem::path& path);

// "2,3,30" -> {2, 3, 30}; used for both the config key and the flag.
std::vector<std::size_t> parse_depth_list(const std::string& text);

}  // namespace oscwave
