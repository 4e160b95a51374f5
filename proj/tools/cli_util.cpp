#include "cli_util.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <vector>

namespace alphacoh::cli {

using nlohmann::json;
using nlohmann::ordered_json;

double sig12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::strtod(buf, nullptr);
}

std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

namespace {

std::vector<double> parse_numbers(const std::string& args, size_t expect, const std::string& spec) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos <= args.size()) {
        const size_t comma = args.find(',', pos);
        const std::string tok =
            args.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw SpecError("cannot parse number '" + tok + "' in spec '" + spec + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.size() != expect) {
        throw SpecError("spec '" + spec + "' needs " + std::to_string(expect) + " parameter(s)");
    }
    return out;
}

std::pair<std::string, std::string> split_spec(const std::string& spec) {
    const size_t colon = spec.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= spec.size()) {
        throw SpecError("malformed spec '" + spec + "', expected kind:args");
    }
    return {spec.substr(0, colon), spec.substr(colon + 1)};
}

}  // namespace

FockVector parse_state_spec(const std::string& spec, const RunConfig& cfg) {
    const auto [kind, args] = split_spec(spec);
    const int n_max = cfg.n_max;
    const bool strict = cfg.strict_truncation;
    if (kind == "coherent") {
        const auto v = parse_numbers(args, 2, spec);
        return coherent_vector(CoherentLabel{v[0], v[1]}, n_max, strict);
    }
    if (kind == "cat-even" || kind == "cat-odd") {
        const auto v = parse_numbers(args, 1, spec);
        return cat_state(CoherentLabel{v[0], 0.0},
                         kind == "cat-even" ? Parity::even : Parity::odd, n_max);
    }
    if (kind == "fock") {
        const auto v = parse_numbers(args, 1, spec);
        const int n = static_cast<int>(v[0]);
        if (n != v[0]) throw SpecError("fock spec needs an integer photon number");
        return fock_state(n, n_max);
    }
    if (kind == "squeezed") {
        const auto v = parse_numbers(args, 2, spec);
        return squeezed_vacuum(v[0], v[1], n_max, strict);
    }
    if (kind == "file") {
        std::ifstream is(args);
        if (!is) throw SpecError("cannot open state file: " + args);
        json j;
        try {
            is >> j;
        } catch (const json::parse_error& e) {
            throw SpecError("invalid JSON in state file " + args + ": " + e.what());
        }
        return state_from_json(j);
    }
    throw SpecError("unknown state spec kind '" + kind + "'");
}

PDensity parse_density_spec(const std::string& spec, const Quadrature& quad) {
    const auto [kind, args] = split_spec(spec);
    if (kind == "thermal") {
        const auto v = parse_numbers(args, 1, spec);
        return PDensity::thermal(v[0], quad);
    }
    if (kind == "displaced-thermal") {
        const auto v = parse_numbers(args, 3, spec);
        return PDensity::displaced_thermal(v[0], Complex{v[1], v[2]}, quad);
    }
    if (kind == "pat") {
        const auto v = parse_numbers(args, 1, spec);
        return PDensity::photon_added_thermal(v[0], quad);
    }
    if (kind == "grid") {
        return read_grid_csv_file(args).resampled(quad);
    }
    if (kind == "fock" || kind == "squeezed" || kind == "cat-even" || kind == "cat-odd" ||
        kind == "coherent") {
        throw SpecError("state family '" + kind +
                        "' has a singular P distribution; only regular P densities "
                        "(thermal, displaced-thermal, pat, grid) are supported here");
    }
    throw SpecError("unknown density spec kind '" + kind + "'");
}

ordered_json state_to_json(const FockVector& state) {
    ordered_json j;
    j["n_max"] = state.n_max();
    ordered_json amps = ordered_json::array();
    for (int n = 0; n <= state.n_max(); ++n) {
        amps.push_back({sig12(state.amplitude(n).real()), sig12(state.amplitude(n).imag())});
    }
    j["amplitudes"] = std::move(amps);
    return j;
}

FockVector state_from_json(const json& j) {
    if (!j.contains("n_max") || !j.contains("amplitudes")) {
        throw SpecError("state JSON needs n_max and amplitudes");
    }
    const int n_max = j.at("n_max").get<int>();
    const auto& amps = j.at("amplitudes");
    if (!amps.is_array() || static_cast<int>(amps.size()) != n_max + 1) {
        throw SpecError("state JSON: amplitudes must be an array of n_max + 1 [re, im] pairs");
    }
    CVector v(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        const auto& pair = amps.at(n);
        if (!pair.is_array() || pair.size() != 2) {
            throw SpecError("state JSON: each amplitude must be a [re, im] pair");
        }
        v(n) = Complex{pair.at(0).get<double>(), pair.at(1).get<double>()};
    }
    return FockVector(v);
}

ordered_json report_to_json(const CoherenceReport& report) {
    ordered_json j;
    j["measure"] = report.measure == Measure::rel_entropy ? "rel_entropy" : "l1";
    j["value"] = sig12(report.value);
    j["status"] = status_name(report.status);
    j["N_used"] = report.N_used;
    j["residual_tail"] = sig12(report.residual_tail);
    j["upper_bound"] = report.upper_bound;
    j["branch_count"] = report.branch_values.size();
    ordered_json branches = ordered_json::array();
    for (const BranchValue& b : report.branch_values) {
        branches.push_back({{"branch_id", b.branch_id}, {"value", sig12(b.value)}});
    }
    j["branch_values"] = std::move(branches);
    ordered_json probs = ordered_json::array();
    for (double p : report.probabilities) probs.push_back(sig12(p));
    j["probabilities"] = std::move(probs);
    return j;
}

ordered_json decomposition_to_json(const GreedyDecomposition& decomp) {
    ordered_json j;
    j["branch_id"] = decomp.branch_id;
    ordered_json terms = ordered_json::array();
    for (const GreedyTerm& t : decomp.terms) {
        terms.push_back({sig12(t.label.alpha.real()), sig12(t.label.alpha.imag()),
                         sig12(t.coeff.real()), sig12(t.coeff.imag())});
    }
    j["terms"] = std::move(terms);
    j["residual_norm_sq"] = sig12(decomp.residual_norm_sq);
    j["captured_weight"] = sig12(decomp.captured_weight);
    j["orbit_sampled"] = decomp.orbit_sampled;
    j["budget_limited"] = decomp.budget_limited;
    return j;
}

std::string family_name(StateFamily family) {
    switch (family) {
        case StateFamily::cat_even: return "cat-even";
        case StateFamily::cat_odd: return "cat-odd";
        case StateFamily::fock: return "fock";
        case StateFamily::squeezed: return "squeezed";
    }
    return "?";
}

StateFamily parse_family(const std::string& name) {
    if (name == "cat-even") return StateFamily::cat_even;
    if (name == "cat-odd") return StateFamily::cat_odd;
    if (name == "fock") return StateFamily::fock;
    if (name == "squeezed") return StateFamily::squeezed;
    throw SpecError("unknown family '" + name + "' (cat-even, cat-odd, fock, squeezed)");
}

std::string status_name(ReportStatus status) {
    return status == ReportStatus::converged ? "CONVERGED" : "NOT_CONVERGED";
}

}  // namespace alphacoh::cli
