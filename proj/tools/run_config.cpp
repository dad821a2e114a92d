#include "run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "oscwave/csv.hpp"
#include "oscwave/errors.hpp"

namespace oscwave {

namespace {

std::string trimmed(const std::string& s) {
    const auto from = s.find_first_not_of(" \t\r");
    if (from == std::string::npos) return "";
    const auto to = s.find_last_not_of(" \t\r");
    return s.substr(from, to - from + 1);
}

double parse_real(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != value.size())
        throw validation_error("config: " + key + " expects a number, got \"" +
                               value + "\"");
    return x;
}

std::uint64_t parse_count(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    unsigned long long x = 0;
    try {
        x = std::stoull(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != value.size() || value.find('-') != std::string::npos)
        throw validation_error("config: " + key +
                               " expects a nonnegative integer, got \"" + value +
                               "\"");
    return x;
}

bool parse_flag(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw validation_error("config: " + key + " expects true or false, got \"" +
                           value + "\"");
}

}  // namespace

std::vector<std::size_t> parse_depth_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trimmed(item);
        if (item.empty())
            throw validation_error("config: depths contains an empty entry");
        out.push_back(static_cast<std::size_t>(parse_count("depths", item)));
    }
    return out;
}

void RunConfig::validate() const {
    if (model != "oscillator" && model != "wave")
        throw validation_error("config: model must be oscillator or wave, got \"" +
                               model + "\"");
    if (!(nu > 0.0) || !std::isfinite(nu))
        throw validation_error("config: nu must be positive and finite");
    if (!(mu >= 0.0) || !std::isfinite(mu))
        throw validation_error("config: mu must be nonnegative and finite");
    if (!(k > 0.0) || !std::isfinite(k))
        throw validation_error("config: k must be positive and finite");
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw validation_error("config: sigma must be nonnegative and finite");
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw validation_error("config: lambda must be positive and finite");
    if (!(t_max > 0.0) || !std::isfinite(t_max))
        throw validation_error("config: t_max must be positive and finite");
    if (n_steps < 2)
        throw validation_error("config: n_steps must be at least 2");
    if (samples < 1)
        throw validation_error("config: samples must be at least 1");
    if (depths.empty())
        throw validation_error("config: depths must be non-empty");
    for (std::size_t i = 0; i < depths.size(); ++i) {
        if (depths[i] < 1)
            throw validation_error("config: depths entries must be at least 1");
        if (i > 0 && depths[i] <= depths[i - 1])
            throw validation_error(
                "config: depths must be sorted ascending without repeats");
    }
    if (!(tolerance > 0.0) || !std::isfinite(tolerance))
        throw validation_error("config: tolerance must be positive and finite");
    if (series_length < 16)
        throw validation_error("config: series_length must be at least 16");
    if (accel_order < 8)
        throw validation_error("config: accel_order must be at least 8");
    if (contour_shift && !std::isfinite(*contour_shift))
        throw validation_error("config: contour_shift must be finite");
    if (comparisons != "all" && comparisons != "reference")
        throw validation_error(
            "config: comparisons must be all or reference, got \"" + comparisons +
            "\"");
    if (out_dir.empty())
        throw validation_error("config: out_dir must not be empty");
}

std::string RunConfig::serialize() const {
    std::ostringstream out;
    out << "model = " << model << "\n";
    out << "nu = " << number_cell(nu) << "\n";
    out << "mu = " << number_cell(mu) << "\n";
    out << "k = " << number_cell(k) << "\n";
    out << "sigma = " << number_cell(sigma) << "\n";
    out << "lambda = " << number_cell(lambda) << "\n";
    out << "t_max = " << number_cell(t_max) << "\n";
    out << "n_steps = " << n_steps << "\n";
    out << "samples = " << samples << "\n";
    out << "seed = " << seed << "\n";
    out << "stream = " << stream << "\n";
    out << "depths = ";
    for (std::size_t i = 0; i < depths.size(); ++i)
        out << (i ? "," : "") << depths[i];
    out << "\n";
    out << "tolerance = " << number_cell(tolerance) << "\n";
    out << "series_length = " << series_length << "\n";
    out << "accel_order = " << accel_order << "\n";
    if (contour_shift)
        out << "contour_shift = " << number_cell(*contour_shift) << "\n";
    out << "comparisons = " << comparisons << "\n";
    out << "out_dir = " << out_dir.string() << "\n";
    return out.str();
}

RunConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw validation_error("config: cannot read " + path.string());
    RunConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trimmed(line);
        if (text.empty() || text[0] == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw validation_error("config: line " + std::to_string(line_no) +
                                   " of " + path.string() +
                                   " is not a key = value pair");
        const std::string key = trimmed(text.substr(0, eq));
        const std::string value = trimmed(text.substr(eq + 1));
        if (key == "model") cfg.model = value;
        else if (key == "nu") cfg.nu = parse_real(key, value);
        else if (key == "mu") cfg.mu = parse_real(key, value);
        else if (key == "k") cfg.k = parse_real(key, value);
        else if (key == "sigma") cfg.sigma = parse_real(key, value);
        else if (key == "lambda") cfg.lambda = parse_real(key, value);
        else if (key == "t_max") cfg.t_max = parse_real(key, value);
        else if (key == "n_steps") cfg.n_steps = parse_count(key, value);
        else if (key == "samples") cfg.samples = parse_count(key, value);
        else if (key == "seed") cfg.seed = parse_count(key, value);
        else if (key == "stream") cfg.stream = parse_count(key, value);
        else if (key == "depths") cfg.depths = parse_depth_list(value);
        else if (key == "tolerance") cfg.tolerance = parse_real(key, value);
        else if (key == "series_length") cfg.series_length = parse_count(key, value);
        else if (key == "accel_order") cfg.accel_order = parse_count(key, value);
        else if (key == "contour_shift") cfg.contour_shift = parse_real(key, value);
        else if (key == "comparisons") cfg.comparisons = value;
        else if (key == "out_dir") cfg.out_dir = value;
        else if (key == "threads") cfg.threads = parse_count(key, value);
        else if (key == "quiet") cfg.quiet = parse_flag(key, value);
        else
            throw validation_error("config: unknown key \"" + key + "\" on line " +
                                   std::to_string(line_no) + " of " +
                                   path.string());
    }
    return cfg;
}

}  // namespace oscwave
