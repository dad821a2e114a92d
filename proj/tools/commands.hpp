#pragma once

#include "run_config.hpp"

namespace oscwave {

// Each command validates the config, creates out_dir, and writes its CSV
// tables plus effective_config.txt and summary.txt. All output bytes are a
// pure function of the serialized config.
void run_ou(const RunConfig& cfg);
void run_green(const RunConfig& cfg);
void run_wave(const RunConfig& cfg);
void run_residual(const RunConfig& cfg);

}  // namespace oscwave
