#pragma once

#include <string>

#include "run_config.hpp"

namespace alphacoh::cli {

/// Runs one named invariant suite (fock, husimi, gs-oracle, measures,
/// p-monotone, or all), printing one PASS/FAIL line per check with the
/// measured deviation. Returns the number of failed checks.
int run_verify_suite(const std::string& suite, const RunConfig& cfg);

}  // namespace alphacoh::cli
