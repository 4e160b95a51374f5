#include "run_config.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace alphacoh::cli {

using nlohmann::json;

void RunConfig::validate() const {
    if (n_max < 8) throw std::invalid_argument("config: n_max must be >= 8");
    search.validate();
    schedule.validate();
    quadrature.validate();
}

namespace {

template <typename T>
void take(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : allowed) {
            if (item.key() == k) {
                ok = true;
                break;
            }
        }
        if (!ok) throw std::invalid_argument("config: unknown key '" + item.key() + "' in " + where);
    }
}

}  // namespace

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("config: cannot open " + path);
    json j;
    try {
        is >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config: invalid JSON in " + path + ": " + e.what());
    }
    check_keys(j, {"n_max", "strict_truncation", "search", "schedule", "quadrature"}, "top level");
    take(j, "n_max", cfg.n_max);
    take(j, "strict_truncation", cfg.strict_truncation);
    if (j.contains("search")) {
        const json& s = j.at("search");
        check_keys(s,
                   {"grid_points", "margin", "refine_iters", "refine_tol", "tol_deg", "tol_cluster",
                    "k_orbit"},
                   "search");
        take(s, "grid_points", cfg.search.grid_points);
        take(s, "margin", cfg.search.margin);
        take(s, "refine_iters", cfg.search.refine_iters);
        take(s, "refine_tol", cfg.search.refine_tol);
        take(s, "tol_deg", cfg.search.tol_deg);
        take(s, "tol_cluster", cfg.search.tol_cluster);
        take(s, "k_orbit", cfg.search.k_orbit);
    }
    if (j.contains("schedule")) {
        const json& s = j.at("schedule");
        check_keys(s, {"n_schedule", "tol_tail", "tol_conv", "branch_budget"}, "schedule");
        take(s, "n_schedule", cfg.schedule.n_schedule);
        take(s, "tol_tail", cfg.schedule.tol_tail);
        take(s, "tol_conv", cfg.schedule.tol_conv);
        take(s, "branch_budget", cfg.schedule.branch_budget);
    }
    if (j.contains("quadrature")) {
        const json& q = j.at("quadrature");
        check_keys(q, {"L", "h"}, "quadrature");
        take(q, "L", cfg.quadrature.L);
        take(q, "h", cfg.quadrature.h);
    }
}

}  // namespace alphacoh::cli
