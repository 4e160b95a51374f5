#pragma once

#include <string>

#include "json.hpp"
#include "run_config.hpp"

namespace alphacoh::cli {

/// Usage-level error: bad spec, missing file, unsupported density. Exit 2.
struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rounds to 12 significant digits, the library-wide output precision.
double sig12(double x);
std::string fmt12(double x);

/// State specs: coherent:re,im  cat-even:a  cat-odd:a  fock:n
/// squeezed:r,theta  file:path (JSON as written by --dump-state).
FockVector parse_state_spec(const std::string& spec, const RunConfig& cfg);

/// Density specs: thermal:nbar  displaced-thermal:nbar,re,im  pat:nbar
/// grid:path. Families with singular P distributions are rejected.
PDensity parse_density_spec(const std::string& spec, const Quadrature& quad);

nlohmann::ordered_json state_to_json(const FockVector& state);
FockVector state_from_json(const nlohmann::json& j);

nlohmann::ordered_json report_to_json(const CoherenceReport& report);
nlohmann::ordered_json decomposition_to_json(const GreedyDecomposition& decomp);

std::string family_name(StateFamily family);
StateFamily parse_family(const std::string& name);
std::string status_name(ReportStatus status);

}  // namespace alphacoh::cli
