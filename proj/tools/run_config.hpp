#pragma once

#include <string>

#include "alphacoh/coherence.hpp"
#include "alphacoh/husimi.hpp"
#include "alphacoh/pdist.hpp"

namespace alphacoh::cli {

/// Aggregated run parameters. Precedence: command-line flags over JSON config
/// file (--config) over built-in defaults. Fully deterministic by design;
/// there is no seed anywhere.
struct RunConfig {
    int n_max = kDefaultNmax;
    bool strict_truncation = true;
    SearchConfig search;
    ConvergenceSchedule schedule;
    Quadrature quadrature;

    void validate() const;
};

/// Overlays values found in a JSON config file onto `cfg`. Unknown keys are
/// rejected, missing keys keep their current value.
void apply_config_file(RunConfig& cfg, const std::string& path);

}  // namespace alphacoh::cli
