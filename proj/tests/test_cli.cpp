#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "rl1lae/cli.hpp"
#include "rl1lae/config.hpp"
#include "rl1lae/results.hpp"

using namespace rl1lae;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("rl1lae_cli_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("list-presets") {
    const auto r = cli({"list-presets"});
    CHECK(r.code == kExitOk);
    for (const char* name : {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6"}) {
        CHECK(r.out.find(name) != std::string::npos);
    }
}

TEST_CASE("usage and config errors exit with 1") {
    CHECK(cli({}).code == kExitConfig);
    CHECK(cli({"frobnicate"}).code == kExitConfig);
    CHECK(cli({"preset", "fig9", "--out", "/tmp"}).code == kExitConfig);
    CHECK(cli({"preset", "fig1", "--set", "phi=2", "--out", "/tmp"}).code == kExitConfig);
    CHECK(cli({"preset", "fig1", "--runs", "0", "--out", "/tmp"}).code == kExitConfig);
    CHECK(cli({"--help"}).code == kExitOk);

    TempDir tmp("cfgerr");
    std::ofstream(tmp.path / "bad.cfg") << "phi = 1.5\n";
    const auto r = cli({"run", (tmp.path / "bad.cfg").string(), "--out", tmp.path.string()});
    CHECK(r.code == kExitConfig);
    CHECK(r.err.find("phi") != std::string::npos);
}

TEST_CASE("missing config file and unwritable output exit with 3") {
    TempDir tmp("io");
    CHECK(cli({"run", (tmp.path / "nope.cfg").string()}).code == kExitIo);
    std::ofstream(tmp.path / "blocker") << "x";
    const auto r = cli({"preset", "fig1", "--runs", "1", "--iterations", "5", "--out",
                        (tmp.path / "blocker" / "sub").string()});
    CHECK(r.code == kExitIo);
}

TEST_CASE("run writes the CSV and a manifest that reproduces it") {
    TempDir tmp("run");
    std::ofstream(tmp.path / "scen.cfg") << "sparsity = 4\nphi = 0.1\nsigma2_sq = 20\niterations = 50\nruns = 3\n";
    auto r = cli({"run", (tmp.path / "scen.cfg").string(), "--out", (tmp.path / "a").string(), "--plot-data",
                  "--seed", "7"});
    REQUIRE(r.code == kExitOk);
    const std::string csv = slurp(tmp.path / "a" / "scen.csv");
    CHECK(csv.rfind("iteration,algorithm,mse_linear,mse_db\n", 0) == 0);
    CHECK(fs::exists(tmp.path / "a" / "scen.plot.dat"));

    const fs::path manifest = tmp.path / "a" / "scen.manifest.json";
    const auto cfg = config_from_manifest(slurp(manifest));
    CHECK(cfg.master_seed == 7);
    CHECK(cfg.channel.sparsity_k == 4);
    CHECK(cfg.num_runs == 3);

    r = cli({"run", manifest.string(), "--out", (tmp.path / "b").string(), "--threads", "3"});
    REQUIRE(r.code == kExitOk);
    CHECK(slurp(tmp.path / "b" / "scen.csv") == csv);
}

TEST_CASE("flags override config keys") {
    TempDir tmp("override");
    std::ofstream(tmp.path / "s.cfg") << "iterations = 10\nruns = 2\nphi = 0.3\n";
    const auto r = cli({"run", (tmp.path / "s.cfg").string(), "--iterations", "4", "--runs", "1", "--set",
                        "phi=0.05", "--set", "algorithms=LAE", "--out", tmp.path.string()});
    REQUIRE(r.code == kExitOk);
    const auto cfg = config_from_manifest(slurp(tmp.path / "s.manifest.json"));
    CHECK(cfg.iterations == 4);
    CHECK(cfg.num_runs == 1);
    CHECK(cfg.noise.phi == 0.05);
    CHECK(cfg.algorithms == std::vector<Algorithm>{Algorithm::LAE});
    // 4 rows + header
    const std::string csv = slurp(tmp.path / "s.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("preset runs are byte-identical across repeats and thread counts") {
    TempDir tmp("det");
    const std::vector<std::string> base{"preset", "fig2", "--runs", "5", "--iterations", "80", "--seed", "11"};
    auto with = [&](const std::string& dir, const std::string& threads) {
        auto a = base;
        a.insert(a.end(), {"--out", (tmp.path / dir).string(), "--threads", threads});
        return cli(a).code;
    };
    REQUIRE(with("t1", "1") == kExitOk);
    REQUIRE(with("t1b", "1") == kExitOk);
    REQUIRE(with("t4", "4") == kExitOk);
    const std::string ref = slurp(tmp.path / "t1" / "fig2.csv");
    CHECK(!ref.empty());
    CHECK(slurp(tmp.path / "t1b" / "fig2.csv") == ref);
    CHECK(slurp(tmp.path / "t4" / "fig2.csv") == ref);
}

TEST_CASE("fig6 preset writes one CSV per phi and a summary") {
    TempDir tmp("fig6");
    const auto r = cli({"preset", "fig6", "--runs", "2", "--iterations", "30", "--out", tmp.path.string()});
    REQUIRE(r.code == kExitOk);
    for (const char* v : {"0", "0.1", "0.2", "0.4"}) {
        CHECK(fs::exists(tmp.path / ("fig6_phi_" + std::string(v) + ".csv")));
        CHECK(fs::exists(tmp.path / ("fig6_phi_" + std::string(v) + ".manifest.json")));
    }
    const std::string summary = slurp(tmp.path / "fig6_phi_summary.csv");
    CHECK(summary.rfind("phi,algorithm,steady_state_mse_db\n", 0) == 0);
    CHECK(std::count(summary.begin(), summary.end(), '\n') == 1 + 4 * 4);
    CHECK(config_from_manifest(slurp(tmp.path / "fig6_phi_0.4.manifest.json")).noise.phi == 0.4);
}

TEST_CASE("sweep verb over an arbitrary key") {
    TempDir tmp("sweep");
    const auto r = cli({"sweep", "--param", "sigma2_sq", "--values", "20, 80", "--preset", "fig3", "--runs", "1",
                        "--iterations", "20", "--out", tmp.path.string()});
    REQUIRE(r.code == kExitOk);
    CHECK(fs::exists(tmp.path / "fig3_sigma2_sq_20.csv"));
    CHECK(fs::exists(tmp.path / "fig3_sigma2_sq_80.csv"));
    CHECK(fs::exists(tmp.path / "fig3_sigma2_sq_summary.csv"));
    CHECK(cli({"sweep", "--param", "nonsense", "--values", "1", "--out", tmp.path.string()}).code == kExitConfig);
}

TEST_CASE("all-diverged run exits with 2") {
    TempDir tmp("div");
    const auto r = cli({"preset", "fig5", "--runs", "2", "--iterations", "3000", "--set", "algorithms=LMS",
                        "--set", "lms.mu=5", "--out", tmp.path.string()});
    CHECK(r.code == kExitDiverged);
}

TEST_CASE("output directory falls back to the environment variable") {
    TempDir tmp("env");
    ::setenv(kOutDirEnv, tmp.path.string().c_str(), 1);
    const auto r = cli({"preset", "fig1", "--runs", "1", "--iterations", "3"});
    ::unsetenv(kOutDirEnv);
    REQUIRE(r.code == kExitOk);
    CHECK(fs::exists(tmp.path / "fig1.csv"));
}
