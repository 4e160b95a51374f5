#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli_util.hpp"
#include "run_config.hpp"
#include "verify_suites.hpp"

namespace {

using namespace alphacoh;
using namespace alphacoh::cli;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;   // property or convergence failure
constexpr int kExitUsage = 2;     // parse / usage errors

struct CommonOpts {
    std::string config_path;
    int n_max = 0;
    int grid_points = 0;
    double margin = 0;
    int refine_iters = 0;
    double tol_deg = 0, tol_cluster = 0;
    int k_orbit = 0;
    std::string n_schedule;
    double tol_tail = 0, tol_conv = 0;
    int branch_budget = 0;
    bool no_strict = false;
};

void add_common_options(CLI::App* app, CommonOpts& o) {
    app->add_option("--config", o.config_path, "JSON config file (flags take precedence)");
    app->add_option("--n-max", o.n_max, "Fock truncation order");
    app->add_option("--grid-points", o.grid_points, "coarse search grid points per axis");
    app->add_option("--margin", o.margin, "search radius margin beyond sqrt(<n>)");
    app->add_option("--refine-iters", o.refine_iters, "simplex refinement iteration cap");
    app->add_option("--tol-deg", o.tol_deg, "relative degeneracy tolerance");
    app->add_option("--tol-cluster", o.tol_cluster, "maximizer cluster radius");
    app->add_option("--k-orbit", o.k_orbit, "cluster count that flags an orbit");
    app->add_option("--n-schedule", o.n_schedule, "comma-separated depth schedule, e.g. 2,4,8,16,32");
    app->add_option("--tol-tail", o.tol_tail, "residual tail tolerance");
    app->add_option("--tol-conv", o.tol_conv, "value convergence tolerance");
    app->add_option("--branch-budget", o.branch_budget, "degenerate branch budget");
    app->add_flag("--no-strict", o.no_strict, "disable strict truncation checks");
}

RunConfig finalize_config(const CLI::App* app, const CommonOpts& o) {
    RunConfig cfg;
    if (!o.config_path.empty()) apply_config_file(cfg, o.config_path);
    if (app->count("--n-max")) cfg.n_max = o.n_max;
    if (app->count("--grid-points")) cfg.search.grid_points = o.grid_points;
    if (app->count("--margin")) cfg.search.margin = o.margin;
    if (app->count("--refine-iters")) cfg.search.refine_iters = o.refine_iters;
    if (app->count("--tol-deg")) cfg.search.tol_deg = o.tol_deg;
    if (app->count("--tol-cluster")) cfg.search.tol_cluster = o.tol_cluster;
    if (app->count("--k-orbit")) cfg.search.k_orbit = o.k_orbit;
    if (app->count("--tol-tail")) cfg.schedule.tol_tail = o.tol_tail;
    if (app->count("--tol-conv")) cfg.schedule.tol_conv = o.tol_conv;
    if (app->count("--branch-budget")) cfg.schedule.branch_budget = o.branch_budget;
    if (app->count("--no-strict")) cfg.strict_truncation = false;
    if (app->count("--n-schedule")) {
        std::vector<int> schedule;
        std::stringstream ss(o.n_schedule);
        std::string tok;
        while (std::getline(ss, tok, ',')) schedule.push_back(std::stoi(tok));
        cfg.schedule.n_schedule = schedule;
    }
    cfg.validate();
    return cfg;
}

Measure parse_measure(const std::string& name) {
    if (name == "rel_entropy" || name == "rel") return Measure::rel_entropy;
    if (name == "l1") return Measure::l1;
    throw SpecError("unknown measure '" + name + "' (rel_entropy, l1)");
}

void write_text(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + out_path);
    os << text;
}

int cmd_curve(const RunConfig& cfg, const std::string& family_name_, double min, double max,
              int steps, Measure measure, const std::string& out_path, bool strict_rows,
              const std::string& gnuplot_path) {
    const StateFamily family = parse_family(family_name_);
    if (!gnuplot_path.empty() && out_path.empty()) {
        throw SpecError("--gnuplot needs --out so the script has a CSV file to plot");
    }
    std::string csv = "family,param,mean_photon,N_used,residual_tail,branch_count,upper_bound,"
                      "C_rel,C_l1,status\n";
    bool all_converged = true;
    for (int i = 0; i < steps; ++i) {
        const double param = (steps == 1) ? min : min + (max - min) * i / (steps - 1);
        const FockVector state = make_family_state(family, param, cfg.n_max);
        const DualReport dual = alpha_coherence_dual(state, cfg.schedule, cfg.search, measure);
        const CoherenceReport& primary = (measure == Measure::l1) ? dual.l1 : dual.rel;
        std::ostringstream row;
        row << family_name(family) << ',' << fmt12(param) << ',' << fmt12(mean_photon(state))
            << ',' << primary.N_used << ',' << fmt12(primary.residual_tail) << ','
            << primary.branch_values.size() << ',' << (primary.upper_bound ? 1 : 0) << ','
            << fmt12(dual.rel.value) << ',' << fmt12(dual.l1.value) << ','
            << status_name(primary.status) << '\n';
        csv += row.str();
        if (primary.status != ReportStatus::converged) {
            all_converged = false;
            if (strict_rows) break;  // partial CSV, nonzero exit
        }
    }
    write_text(out_path, csv);
    if (!gnuplot_path.empty()) {
        std::ostringstream gp;
        gp << "set datafile separator ','\n"
           << "set xlabel 'parameter'\n"
           << "set ylabel 'coherence (nats)'\n"
           << "set key top right\n"
           << "plot '" << out_path << "' using 2:8 with lines title 'C_rel', \\\n"
           << "     '" << out_path << "' using 2:9 with lines title 'C_l1'\n";
        write_text(gnuplot_path, gp.str());
    }
    return all_converged ? kExitOk : kExitFailure;
}

int cmd_state(const RunConfig& cfg, const std::string& spec, Measure measure,
              const std::string& out_path, bool dump_decomposition,
              const std::string& dump_state_path) {
    const FockVector state = parse_state_spec(spec, cfg);
    if (!dump_state_path.empty()) {
        std::ofstream os(dump_state_path);
        if (!os) throw std::runtime_error("cannot open for writing: " + dump_state_path);
        os << state_to_json(state).dump(2) << '\n';
    }
    const CoherenceReport report = alpha_coherence(state, measure, cfg.schedule, cfg.search);
    nlohmann::ordered_json j;
    j["spec"] = spec;
    j["mean_photon"] = sig12(mean_photon(state));
    j["truncation_deficit"] = sig12(state.truncation_deficit());
    j.update(report_to_json(report));
    if (dump_decomposition) j["decomposition"] = decomposition_to_json(report.winning_branch);
    write_text(out_path, j.dump(2) + "\n");
    return report.status == ReportStatus::converged ? kExitOk : kExitFailure;
}

int cmd_negativity(const RunConfig& cfg, const std::string& spec, bool refine,
                   const std::string& out_path, const std::string& dump_grid_path) {
    const PDensity density = parse_density_spec(spec, cfg.quadrature);
    const NegativityReport report = negativity(density);
    nlohmann::ordered_json j;
    j["spec"] = spec;
    j["value"] = sig12(report.value);
    j["negative_region_area"] = sig12(report.negative_region_area);
    j["quadrature"] = {{"L", report.quadrature.L}, {"h", report.quadrature.h}};
    j["classical"] = (report.value == 0.0);
    j["normalization_deficit"] = sig12(density.normalization_deficit());
    if (refine) {
        const Quadrature fine{cfg.quadrature.L, cfg.quadrature.h / 2};
        const NegativityReport refined = negativity(density.resampled(fine));
        j["refined"] = {{"value", sig12(refined.value)},
                        {"quadrature", {{"L", fine.L}, {"h", fine.h}}}};
        j["refinement_change"] =
            sig12(report.value == 0.0 ? std::abs(refined.value)
                                      : std::abs(refined.value - report.value) / report.value);
    }
    if (!dump_grid_path.empty()) write_grid_csv_file(density, dump_grid_path);
    write_text(out_path, j.dump(2) + "\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"alpha-coherence and P-distribution nonclassicality toolkit"};
    app.require_subcommand(1);

    CommonOpts curve_opts, state_opts, neg_opts, verify_opts;

    auto* curve = app.add_subcommand("curve", "coherence curve over a state family, CSV output");
    std::string curve_family;
    double curve_min = 0.1, curve_max = 3.0;
    int curve_steps = 30;
    std::string curve_measure = "rel_entropy", curve_out, curve_gnuplot;
    bool curve_strict = false;
    curve->add_option("--family", curve_family, "cat-even | cat-odd | fock | squeezed")->required();
    curve->add_option("--min", curve_min, "first parameter value")->required();
    curve->add_option("--max", curve_max, "last parameter value")->required();
    curve->add_option("--steps", curve_steps, "number of grid points")->required();
    curve->add_option("--measure", curve_measure, "primary measure: rel_entropy | l1");
    curve->add_option("--out", curve_out, "CSV output path (default stdout)");
    curve->add_option("--gnuplot", curve_gnuplot, "also write a gnuplot script plotting the CSV");
    curve->add_flag("--strict", curve_strict, "stop at the first NOT_CONVERGED row");
    add_common_options(curve, curve_opts);

    auto* state = app.add_subcommand("state", "alpha-coherence report for one state, JSON output");
    std::string state_spec, state_measure = "rel_entropy", state_out, dump_state;
    bool dump_decomp = false;
    state->add_option("spec", state_spec,
                      "coherent:re,im | cat-even:a | cat-odd:a | fock:n | squeezed:r,theta | file:path")
        ->required();
    state->add_option("--measure", state_measure, "rel_entropy | l1");
    state->add_option("--out", state_out, "JSON output path (default stdout)");
    state->add_flag("--dump-decomposition", dump_decomp, "include the winning decomposition");
    state->add_option("--dump-state", dump_state, "write the state vector JSON to this path");
    add_common_options(state, state_opts);

    auto* neg = app.add_subcommand("negativity", "P-distribution negativity, JSON output");
    neg->set_help_flag("--help", "print help");  // frees -h / --h for the spacing flag
    std::string neg_spec, neg_out, dump_grid;
    bool neg_refine = false;
    double opt_L = 0, opt_h = 0;
    neg->add_option("spec", neg_spec, "thermal:nbar | displaced-thermal:nbar,re,im | pat:nbar | grid:path")
        ->required();
    neg->add_option("--L", opt_L, "quadrature window half-width");
    neg->add_option("--h", opt_h, "quadrature spacing");
    neg->add_flag("--refine", neg_refine, "also evaluate at h/2 and report the change");
    neg->add_option("--out", neg_out, "JSON output path (default stdout)");
    neg->add_option("--dump-grid", dump_grid, "write the sampled density grid CSV to this path");
    add_common_options(neg, neg_opts);

    auto* verify = app.add_subcommand("verify", "run invariant suites");
    std::string suite = "all";
    verify->add_option("suite", suite, "fock | husimi | gs-oracle | measures | p-monotone | all");
    add_common_options(verify, verify_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (curve->parsed()) {
            return cmd_curve(finalize_config(curve, curve_opts), curve_family, curve_min, curve_max,
                             curve_steps, parse_measure(curve_measure), curve_out, curve_strict,
                             curve_gnuplot);
        }
        if (state->parsed()) {
            return cmd_state(finalize_config(state, state_opts), state_spec,
                             parse_measure(state_measure), state_out, dump_decomp, dump_state);
        }
        if (neg->parsed()) {
            RunConfig cfg = finalize_config(neg, neg_opts);
            if (neg->count("--L")) cfg.quadrature.L = opt_L;
            if (neg->count("--h")) cfg.quadrature.h = opt_h;
            cfg.quadrature.validate();
            return cmd_negativity(cfg, neg_spec, neg_refine, neg_out, dump_grid);
        }
        if (verify->parsed()) {
            const int failures = run_verify_suite(suite, finalize_config(verify, verify_opts));
            return failures == 0 ? kExitOk : kExitFailure;
        }
    } catch (const SpecError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFailure;
    }
    return kExitUsage;
}
