#include "rmdspin/experiments.hpp"

#include "rmdspin/csv.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <doctest.h>

using namespace rmdspin;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CliResult run_cli(const std::string& args, const fs::path& scratch) {
    fs::create_directories(scratch);
    const fs::path out = scratch / "stdout.txt";
    const fs::path err = scratch / "stderr.txt";
    const std::string cmd = std::string(RMDSPIN_CLI_PATH) + " " + args + " > " +
                            out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    CliResult res;
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    res.out = read_file(out);
    res.err = read_file(err);
    return res;
}

// Fast sweep configuration: tiny lattice, two frequencies, short runs.
ExperimentConfig tiny_sweep_config() {
    ExperimentConfig cfg;
    cfg.size = 8;
    cfg.drives = {"rmd0"};
    cfg.realizations = {3};
    cfg.inv_t_grid = {3.0, 4.0};
    cfg.step_cap = 200000;
    cfg.seed = 2024;
    return cfg;
}

struct TempDir {
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path path;
};

} // namespace

TEST_CASE("run seeds are deterministic and component sensitive") {
    const DriveSpec rmd1 = parse_drive("rmd1");
    const DriveSpec rmd2 = parse_drive("rmd2");
    const std::uint64_t base = run_seed(1, SeedPurpose::Init, rmd1, 4.0, 0);
    CHECK(base == run_seed(1, SeedPurpose::Init, rmd1, 4.0, 0));
    CHECK(base != run_seed(2, SeedPurpose::Init, rmd1, 4.0, 0));
    CHECK(base != run_seed(1, SeedPurpose::Perturb, rmd1, 4.0, 0));
    CHECK(base != run_seed(1, SeedPurpose::Init, rmd2, 4.0, 0));
    CHECK(base != run_seed(1, SeedPurpose::Init, rmd1, 5.0, 0));
    CHECK(base != run_seed(1, SeedPurpose::Init, rmd1, 4.0, 1));
    CHECK(base != run_seed(1, SeedPurpose::Init, rmd1, 4.0, 0, 9));
}

TEST_CASE("parallel_runs visits every index exactly once") {
    std::vector<std::atomic<int>> hits(257);
    parallel_runs(hits.size(), 4, [&](std::size_t k) { hits[k].fetch_add(1); });
    for (const auto& h : hits) {
        CHECK(h.load() == 1);
    }
    parallel_runs(0, 4, [&](std::size_t) { FAIL("task called for empty range"); });
}

TEST_CASE("parallel_runs propagates task exceptions") {
    CHECK_THROWS_AS(parallel_runs(16, 4,
                                  [](std::size_t k) {
                                      if (k == 7) {
                                          throw std::runtime_error("boom");
                                      }
                                  }),
                    std::runtime_error);
}

TEST_CASE("run_twin_tau measures, censors at the cap, and handles a zero cap") {
    const DriveSpec spec{DriveKind::Rmd, 0, 33};
    const StepParams params{0.9045, 0.809, 1.0 / 4.0};
    const auto thresholds = default_thresholds();

    const TauOutcome ok = run_twin_tau(spec, params, 8, ConfigKind::Neel, 0.01, 0.01,
                                       thresholds, 200000, 1, 111, 222);
    CHECK_FALSE(ok.censored);
    CHECK(ok.tau > 0.0);
    CHECK(ok.steps_run <= 200000);

    const TauOutcome capped = run_twin_tau(spec, params, 8, ConfigKind::Neel, 0.01, 0.01,
                                           thresholds, 4, 1, 111, 222);
    CHECK(capped.censored);
    CHECK(std::isnan(capped.tau));
    CHECK(capped.steps_run == 4);

    const TauOutcome empty = run_twin_tau(spec, params, 8, ConfigKind::Neel, 0.01, 0.01,
                                          thresholds, 0, 1, 111, 222);
    CHECK(empty.censored);
    CHECK(empty.steps_run == 0);
}

TEST_CASE("sweep results do not depend on the thread count") {
    ExperimentConfig cfg = tiny_sweep_config();
    cfg.threads = 1;
    const SweepOutput serial = sweep_collect(cfg, cfg.drives, cfg.size, ConfigKind::Neel,
                                             cfg.width);
    cfg.threads = 3;
    const SweepOutput threaded = sweep_collect(cfg, cfg.drives, cfg.size, ConfigKind::Neel,
                                               cfg.width);
    REQUIRE(serial.drives.size() == threaded.drives.size());
    for (std::size_t d = 0; d < serial.drives.size(); ++d) {
        const auto& a = serial.drives[d];
        const auto& b = threaded.drives[d];
        REQUIRE(a.freqs.size() == b.freqs.size());
        for (std::size_t f = 0; f < a.freqs.size(); ++f) {
            REQUIRE(a.freqs[f].runs.size() == b.freqs[f].runs.size());
            for (std::size_t r = 0; r < a.freqs[f].runs.size(); ++r) {
                CHECK(a.freqs[f].runs[r].tau == b.freqs[f].runs[r].tau);
                CHECK(a.freqs[f].runs[r].censored == b.freqs[f].runs[r].censored);
            }
        }
    }
}

TEST_CASE("fully capped sweeps are flagged and warned") {
    ExperimentConfig cfg = tiny_sweep_config();
    cfg.step_cap = 2;
    const SweepOutput out = sweep_collect(cfg, cfg.drives, cfg.size, ConfigKind::Neel,
                                          cfg.width);
    CHECK(out.all_censored);
    CHECK_FALSE(out.warnings.empty());
    CHECK_FALSE(out.drives[0].power_law.has_value());
}

TEST_CASE("cli: config errors exit with code 2") {
    TempDir tmp("rmdspin_cli_cfgerr");
    {
        std::ofstream bad(tmp.path / "bad.json");
        bad << "{\"sizee\": 5}";
    }
    const CliResult res =
        run_cli("sweep --config " + (tmp.path / "bad.json").string(), tmp.path / "scratch");
    CHECK(res.exit_code == kExitConfigError);
    CHECK(res.err.find("unknown key") != std::string::npos);
}

TEST_CASE("cli: label dump prints the drive sequence") {
    TempDir tmp("rmdspin_cli_dump");
    {
        std::ofstream cfg(tmp.path / "cfg.json");
        cfg << "{\"drives\": [\"thue_morse\"]}";
    }
    const CliResult res = run_cli("simulate --config " + (tmp.path / "cfg.json").string() +
                                      " --dump-labels 8",
                                  tmp.path / "scratch");
    CHECK(res.exit_code == kExitOk);
    CHECK(res.out == "ZXXZXZZX\n");
}

TEST_CASE("cli: sweep writes the documented files and exit codes") {
    TempDir tmp("rmdspin_cli_sweep");
    nlohmann::json j = config_to_json(tiny_sweep_config());
    {
        std::ofstream cfg(tmp.path / "cfg.json");
        cfg << j.dump();
    }
    const fs::path out_dir = tmp.path / "out";
    const CliResult res = run_cli("sweep --config " + (tmp.path / "cfg.json").string() +
                                      " --out " + out_dir.string() + " --threads 1",
                                  tmp.path / "scratch");
    CHECK(res.exit_code == kExitOk);
    CHECK(fs::exists(out_dir / "taus.csv"));
    CHECK(fs::exists(out_dir / "points.csv"));
    CHECK(fs::exists(out_dir / "fits.json"));
    CHECK(fs::exists(out_dir / "manifest.json"));

    const std::string taus = read_file(out_dir / "taus.csv");
    CHECK(taus.rfind("drive,inv_T,realization,tau_steps,censored,steps_run\n", 0) == 0);
    const std::string points = read_file(out_dir / "points.csv");
    CHECK(points.rfind("drive,inv_T,n_total,n_used,tau_mean,tau_stderr\n", 0) == 0);

    // A hard cap of 2 steps censors everything: exit code 3, data rows absent
    // from points.csv but present (flagged) in taus.csv.
    const fs::path capped_dir = tmp.path / "capped";
    const CliResult capped = run_cli("sweep --config " + (tmp.path / "cfg.json").string() +
                                         " --out " + capped_dir.string() +
                                         " --threads 1 --step-cap 2",
                                     tmp.path / "scratch");
    CHECK(capped.exit_code == kExitAllCensored);
    const std::string capped_points = read_file(capped_dir / "points.csv");
    CHECK(capped_points == "drive,inv_T,n_total,n_used,tau_mean,tau_stderr\n");
    const std::string capped_taus = read_file(capped_dir / "taus.csv");
    CHECK(capped_taus.find("true") != std::string::npos);
}

TEST_CASE("cli: rerunning from the manifest reproduces the CSVs bitwise") {
    TempDir tmp("rmdspin_cli_rerun");
    nlohmann::json j = config_to_json(tiny_sweep_config());
    {
        std::ofstream cfg(tmp.path / "cfg.json");
        cfg << j.dump();
    }
    const fs::path first = tmp.path / "first";
    const fs::path second = tmp.path / "second";
    const CliResult a = run_cli("sweep --config " + (tmp.path / "cfg.json").string() +
                                    " --out " + first.string() + " --threads 2",
                                tmp.path / "scratch");
    REQUIRE(a.exit_code == kExitOk);
    const CliResult b = run_cli("sweep --config " + (first / "manifest.json").string() +
                                    " --out " + second.string() + " --threads 1",
                                tmp.path / "scratch");
    REQUIRE(b.exit_code == kExitOk);
    CHECK(read_file(first / "taus.csv") == read_file(second / "taus.csv"));
    CHECK(read_file(first / "points.csv") == read_file(second / "points.csv"));
    CHECK(read_file(first / "fits.json") == read_file(second / "fits.json"));
}

TEST_CASE("cli: simulate streams a trajectory") {
    TempDir tmp("rmdspin_cli_sim");
    {
        std::ofstream cfg(tmp.path / "cfg.json");
        cfg << "{\"size\": 8, \"drives\": [\"rmd1\"], \"inv_T_grid\": [5],"
               " \"step_cap\": 64}";
    }
    const fs::path out_dir = tmp.path / "out";
    const CliResult res = run_cli("simulate --config " + (tmp.path / "cfg.json").string() +
                                      " --out " + out_dir.string(),
                                  tmp.path / "scratch");
    CHECK(res.exit_code == kExitOk);
    const std::string traj = read_file(out_dir / "trajectory.csv");
    CHECK(traj.rfind("step,energy_ave_density,staggered_m,magnetization_z,decorrelator\n",
                     0) == 0);
    // 64 steps recorded every 2 (one rmd1 block) = 32 data rows + header.
    int newlines = 0;
    for (char c : traj) {
        newlines += (c == '\n');
    }
    CHECK(newlines == 33);
}

TEST_CASE("rondeau collection distinguishes stable and decaying couplings") {
    ExperimentConfig cfg;
    cfg.size = 8;
    cfg.drives = {"thue_morse"};
    cfg.inv_t_grid = {6.0};
    cfg.g_tc = 0.25;
    cfg.g_tc_grid = {0.25, 0.40};
    cfg.rondeau_steps = 2000;
    cfg.rondeau_t_long = 1000;
    cfg.width = 0.0;
    cfg.seed = 31;
    cfg.threads = 1;
    const RondeauOutput out = rondeau_collect(cfg);
    REQUIRE(out.main_runs.size() == 1);
    CHECK(out.main_runs[0].series.size() == 500); // every 4 steps
    CHECK(out.main_runs[0].series.front().first == 4);
    CHECK(out.main_runs[0].long_time_valid);
    REQUIRE(out.grid.size() == 2);
    // Far off the resonance the order decays long before the stable point.
    CHECK(out.grid[1].lifetime.lifetime < out.grid[0].lifetime.lifetime);
}
