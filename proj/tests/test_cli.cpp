#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "kerrsim/runner.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kCli = KERRSIM_CLI_PATH;

int run(const std::string& args) {
    const std::string cmd = "\"" + kCli.string() + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "kerrsim_cli_test") {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("selftest subcommand") { CHECK(run("selftest") == 0); }

TEST_CASE("simulate with flags only") {
    TempDir dir;
    const fs::path out = dir.path / "flags.csv";
    REQUIRE(run("simulate --n-atoms 1 --n-cutoff 3 --kappa 0.5 --t-max 1 --dt 0.25 --observables qfi,purity --out " +
                out.string()) == 0);
    const auto t = kerrsim::read_csv(out);
    CHECK(t.rows.size() == 5);
    CHECK(t.columns == std::vector<std::string>{"t", "qfi", "purity"});
    CHECK(t.meta("n_atoms") == "1");
    CHECK(t.meta("n_cutoff") == "3");
    CHECK(std::stod(*t.meta("kappa")) == 0.5);
}

TEST_CASE("flags override the config file") {
    TempDir dir;
    kerrsim::ScenarioConfig cfg = kerrsim::preset("fig4", 0);
    cfg.t_max = 0.5;
    cfg.dt = 0.1;
    cfg.label = "from_file";
    std::ofstream(dir.path / "cfg.json") << kerrsim::scenario_to_json(cfg).dump(2);

    REQUIRE(run("simulate --config " + (dir.path / "cfg.json").string() + " --chi 2 --seed 5 --qfi-theta 0.2 --out " +
                (dir.path / "a.csv").string()) == 0);
    const auto t = kerrsim::read_csv(dir.path / "a.csv");
    CHECK(t.meta("label") == "from_file");
    CHECK(std::stod(*t.meta("chi")) == 2.0);
    CHECK(std::stod(*t.meta("kappa")) == 0.3);
    CHECK(std::stod(*t.meta("qfi_theta_point")) == 0.2);
    CHECK(t.meta("seed") == "5");
    CHECK(t.rows.size() == 6);

    // the library run with the same merged configuration gives identical bytes
    cfg.system.chi = 2.0;
    cfg.seed = 5;
    cfg.qfi_theta_point = 0.2;
    kerrsim::write_csv(kerrsim::run_scenario(cfg), cfg, dir.path / "b.csv");
    CHECK(slurp(dir.path / "a.csv") == slurp(dir.path / "b.csv"));
}

TEST_CASE("error exit codes") {
    TempDir dir;
    const std::string out = " --out " + (dir.path / "x.csv").string();
    CHECK(run("simulate --n-atoms 7" + out) == 2);
    CHECK(run("simulate --dt -1" + out) == 2);
    CHECK(run("simulate --observables gqd,spin" + out) == 2);
    std::ofstream(dir.path / "bad.json") << R"({"system": {"n_atom": 2}})";
    CHECK(run("simulate --config " + (dir.path / "bad.json").string() + out) == 2);
    CHECK(run("simulate --t-max 0.1 --dt 0.1 --out " + (dir.path / "missing" / "x.csv").string()) == 1);
    CHECK(run("reproduce --figure fig7 --outdir " + dir.path.string()) != 0);
    CHECK(run("") != 0);
    CHECK_FALSE(fs::exists(dir.path / "x.csv"));
}

TEST_CASE("reproduce writes one file per variant") {
    TempDir dir;
    REQUIRE(run("reproduce --figure fig3 --t-max 0.1 --dt 0.05 --outdir " + (dir.path / "r").string()) == 0);
    CHECK(fs::exists(dir.path / "r" / "fig3_0.csv"));
    CHECK(fs::exists(dir.path / "r" / "fig3_1.csv"));
    CHECK(kerrsim::read_csv(dir.path / "r" / "fig3_1.csv").meta("n_atoms") == "4");
}
