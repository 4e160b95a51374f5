#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;

fs::path tmp_dir() {
    const fs::path dir = fs::temp_directory_path() / "alphacoh_cli_tests";
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(ALPHACOH_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    REQUIRE(is.good());
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("state command reports a vanishing coherent value") {
    const fs::path out = tmp_dir() / "coh.json";
    CHECK(run_cli("state coherent:1.3,0 --out " + out.string()) == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j.at("value").get<double>() <= 1e-6);
    CHECK(j.at("status") == "CONVERGED");
    CHECK(j.at("measure") == "rel_entropy");
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("state file:definitely_missing_state.json") == 2);
    CHECK(run_cli("state nonsense") == 2);
    CHECK(run_cli("state fock:1.5") == 2);
    CHECK(run_cli("negativity fock:1") == 2);      // singular P rejected
    CHECK(run_cli("negativity coherent:1,0") == 2);
    CHECK(run_cli("negativity thermal:bad") == 2);
    CHECK(run_cli("definitely-not-a-command") == 2);
    CHECK(run_cli("curve --family nope --min 1 --max 2 --steps 2") == 2);
}

TEST_CASE("negativity command") {
    const fs::path out = tmp_dir() / "neg.json";
    CHECK(run_cli("negativity thermal:1.0 --out " + out.string()) == 0);
    auto j = nlohmann::json::parse(slurp(out));
    CHECK(j.at("value").get<double>() == 0.0);
    CHECK(j.at("classical").get<bool>());

    CHECK(run_cli("negativity pat:0.5 --refine --out " + out.string()) == 0);
    j = nlohmann::json::parse(slurp(out));
    CHECK(j.at("value").get<double>() > 0.0);
    CHECK(j.at("refinement_change").get<double>() < 0.02);
}

TEST_CASE("grid dump round-trips through the grid spec") {
    const fs::path grid = tmp_dir() / "pat.grid.csv";
    const fs::path out1 = tmp_dir() / "neg1.json";
    const fs::path out2 = tmp_dir() / "neg2.json";
    CHECK(run_cli("negativity pat:0.5 --dump-grid " + grid.string() + " --out " + out1.string()) == 0);
    CHECK(run_cli("negativity grid:" + grid.string() + " --out " + out2.string()) == 0);
    const auto j1 = nlohmann::json::parse(slurp(out1));
    const auto j2 = nlohmann::json::parse(slurp(out2));
    CHECK(j2.at("value").get<double>() ==
          doctest::Approx(j1.at("value").get<double>()).epsilon(1e-9));
}

TEST_CASE("curve command emits the CSV schema and monotone Fock values") {
    const fs::path out = tmp_dir() / "fock.csv";
    CHECK(run_cli("curve --family fock --min 1 --max 3 --steps 3 --out " + out.string()) == 0);
    std::istringstream is(slurp(out));
    std::string header;
    std::getline(is, header);
    CHECK(header ==
          "family,param,mean_photon,N_used,residual_tail,branch_count,upper_bound,C_rel,C_l1,status");
    double prev = -1.0;
    int rows = 0;
    for (std::string line; std::getline(is, line);) {
        ++rows;
        std::stringstream ss(line);
        std::string field;
        for (int i = 0; i < 8; ++i) std::getline(ss, field, ',');
        const double c_rel = std::stod(field);
        CHECK(c_rel > prev);
        prev = c_rel;
        std::getline(ss, field, ',');  // C_l1
        std::getline(ss, field, ',');
        CHECK(field == "CONVERGED");
    }
    CHECK(rows == 3);
}

TEST_CASE("state file round trip via --dump-state") {
    const fs::path state_json = tmp_dir() / "cat.json";
    const fs::path out1 = tmp_dir() / "rep1.json";
    const fs::path out2 = tmp_dir() / "rep2.json";
    CHECK(run_cli("state cat-even:2 --dump-state " + state_json.string() + " --out " +
                  out1.string()) == 0);
    CHECK(run_cli("state file:" + state_json.string() + " --out " + out2.string()) == 0);
    const auto j1 = nlohmann::json::parse(slurp(out1));
    const auto j2 = nlohmann::json::parse(slurp(out2));
    CHECK(j2.at("value").get<double>() ==
          doctest::Approx(j1.at("value").get<double>()).epsilon(1e-9));
    const auto state = nlohmann::json::parse(slurp(state_json));
    CHECK(state.at("amplitudes").size() == state.at("n_max").get<size_t>() + 1);
}

TEST_CASE("decomposition dump carries terms and residual") {
    const fs::path out = tmp_dir() / "decomp.json";
    CHECK(run_cli("state cat-even:3 --dump-decomposition --out " + out.string()) == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    const auto& d = j.at("decomposition");
    CHECK(d.at("terms").size() >= 2);
    CHECK(d.at("terms").at(0).size() == 4);
    CHECK(d.at("residual_norm_sq").get<double>() < 0.01);
    CHECK(d.at("branch_id").is_string());
}

TEST_CASE("config file is applied with flag precedence") {
    const fs::path cfg = tmp_dir() / "cfg.json";
    {
        std::ofstream os(cfg);
        os << R"({"n_max": 40, "schedule": {"tol_tail": 1e-4}})";
    }
    const fs::path dumped = tmp_dir() / "dumped.json";
    CHECK(run_cli("state coherent:1,0 --config " + cfg.string() + " --dump-state " +
                  dumped.string() + " --out /dev/null") == 0);
    CHECK(nlohmann::json::parse(slurp(dumped)).at("n_max").get<int>() == 40);

    CHECK(run_cli("state coherent:1,0 --config " + cfg.string() + " --n-max 50 --dump-state " +
                  dumped.string() + " --out /dev/null") == 0);
    CHECK(nlohmann::json::parse(slurp(dumped)).at("n_max").get<int>() == 50);

    const fs::path bad = tmp_dir() / "bad.json";
    {
        std::ofstream os(bad);
        os << R"({"unknown_key": 1})";
    }
    CHECK(run_cli("state coherent:1,0 --config " + bad.string()) == 2);
}

TEST_CASE("verify subcommand smoke test") {
    CHECK(run_cli("verify fock") == 0);
}

}  // TEST_SUITE
