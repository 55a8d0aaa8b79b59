#ifndef RMDSPIN_EXPERIMENTS_HPP
#define RMDSPIN_EXPERIMENTS_HPP

#include "rmdspin/analysis.hpp"
#include "rmdspin/config.hpp"
#include "rmdspin/dynamics.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace rmdspin {

// Process exit codes of the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitAllCensored = 3;

// Runs task(0..count-1) on a pool; every task must be independent and fully
// seeded, so the result set does not depend on the thread count.
void parallel_runs(std::size_t count, int threads,
                   const std::function<void(std::size_t)>& task);

// Seed-derivation purposes; combined with (master, drive, frequency bits,
// realization, context) so extending a grid never reseeds existing runs.
enum class SeedPurpose : std::uint64_t { Init = 1, Perturb = 2, Drive = 3, Calib = 4 };

std::uint64_t run_seed(std::uint64_t master, SeedPurpose purpose, const DriveSpec& drive,
                       double inv_t, int realization, std::uint64_t context = 0);

// One twin-trajectory thermalization-time measurement.
struct TauOutcome {
    double tau = 0.0;                // steps; NaN when censored
    bool censored = false;
    std::uint64_t steps_run = 0;     // lower bound on tau when censored
    std::uint64_t seed_init = 0;
    std::uint64_t seed_pert = 0;
    std::uint64_t seed_drive = 0;
    double wall_s = 0.0;
};

TauOutcome run_twin_tau(const DriveSpec& drive, const StepParams& params, int n_linear,
                        ConfigKind state, double width, double delta,
                        const std::vector<double>& thresholds, std::uint64_t step_cap,
                        std::uint64_t record_every, std::uint64_t seed_init,
                        std::uint64_t seed_pert);

// Collected sweep results, kept in memory so tests and callers can assert on
// them without re-parsing CSV output.
struct FreqStats {
    double inv_t = 0.0;
    int total = 0;
    int used = 0; // uncensored
    double tau_mean = 0.0;
    double tau_stderr = 0.0;
    std::vector<TauOutcome> runs; // per realization, canonical order
};

struct DriveSweep {
    std::string drive;
    DriveSpec spec;
    std::vector<FreqStats> freqs;
    std::optional<FitResult> power_law;
    std::optional<FitResult> exponential;
    std::optional<FitResult> log_squared; // Thue-Morse only
};

struct SweepOutput {
    std::vector<DriveSweep> drives;
    std::vector<std::string> warnings;
    bool all_censored = false;
};

// The computation behind the sweep command. `state` resolves "auto" to Neel.
// context tags the derived seeds (phase-diagram and finite-size reuse this).
SweepOutput sweep_collect(const ExperimentConfig& cfg, const std::vector<std::string>& drives,
                          int n_linear, ConfigKind state, double width,
                          std::uint64_t context = 0);

// Rondeau protocol results.
struct RondeauSeries {
    std::string drive;
    std::vector<std::pair<std::uint64_t, double>> series; // (step, <Sz>) at 4mT
    RondeauLifetime lifetime;                              // from |<Sz>|
    double long_time_sz = 0.0;                             // <Sz> at rondeau_t_long
    bool long_time_valid = false;
};

struct RondeauPoint {
    std::string drive;
    double g_tc = 0.0;
    RondeauLifetime lifetime;
    double long_time_sz = 0.0;
    bool long_time_valid = false;
};

struct RondeauOutput {
    std::vector<RondeauSeries> main_runs; // at cfg.g_tc, with full series
    std::vector<RondeauPoint> grid;       // over cfg.g_tc_grid
};

RondeauOutput rondeau_collect(const ExperimentConfig& cfg);

// CLI entry points; each validates the config, writes CSVs plus manifest.json
// under cfg.out_dir and returns a process exit code.
int run_simulate(const ExperimentConfig& cfg);
int run_sweep(const ExperimentConfig& cfg);
int run_phase_diagram(const ExperimentConfig& cfg);
int run_rondeau(const ExperimentConfig& cfg);
int run_finite_size(const ExperimentConfig& cfg);
int run_calibrate(const ExperimentConfig& cfg);

nlohmann::json fit_to_json(const FitResult& fit);

} // namespace rmdspin

#endif
