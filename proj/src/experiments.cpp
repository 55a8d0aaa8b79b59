#include "rmdspin/experiments.hpp"

#include "rmdspin/csv.hpp"
#include "rmdspin/rng.hpp"
#include "rmdspin/version.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>
#include <tuple>

namespace rmdspin {

namespace fs = std::filesystem;

void parallel_runs(std::size_t count, int threads,
                   const std::function<void(std::size_t)>& task) {
    int pool_size = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    pool_size = std::max(1, pool_size);
    pool_size = std::min<int>(pool_size, static_cast<int>(count));
    if (pool_size <= 1) {
        for (std::size_t k = 0; k < count; ++k) {
            task(k);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(pool_size);
    for (int t = 0; t < pool_size; ++t) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t k = next.fetch_add(1);
                if (k >= count) {
                    return;
                }
                try {
                    task(k);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) {
                        first_error = std::current_exception();
                    }
                }
            }
        });
    }
    for (std::thread& t : pool) {
        t.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

namespace {

std::uint64_t drive_code(const DriveSpec& spec) {
    switch (spec.kind) {
    case DriveKind::Rmd: return 0x100u + static_cast<std::uint64_t>(spec.order);
    case DriveKind::ThueMorse: return 0x200u;
    case DriveKind::Floquet: return 0x300u;
    }
    return 0;
}

ConfigKind resolve_state(const std::string& state, ConfigKind fallback) {
    if (state == "neel") {
        return ConfigKind::Neel;
    }
    if (state == "polarized") {
        return ConfigKind::Polarized;
    }
    return fallback;
}

const char* kind_name(ConfigKind kind) {
    return kind == ConfigKind::Neel ? "neel" : "polarized";
}

// Collects manifest content; every command writes one manifest.json.
class Manifest {
public:
    Manifest(std::string command, const ExperimentConfig& cfg) {
        j_["rmdspin_version"] = kVersion;
        j_["csv_schema"] = kCsvSchemaVersion;
        j_["command"] = std::move(command);
        j_["config"] = config_to_json(cfg);
        j_["runs"] = nlohmann::json::array();
        j_["warnings"] = nlohmann::json::array();
    }

    void add_run(nlohmann::json run) { j_["runs"].push_back(std::move(run)); }

    void warn(const std::string& message) {
        std::cerr << "warning: " << message << "\n";
        j_["warnings"].push_back(message);
    }

    void set(const std::string& key, nlohmann::json value) { j_[key] = std::move(value); }

    void write(const fs::path& dir) const {
        std::ofstream out(dir / "manifest.json", std::ios::binary);
        out << j_.dump(2) << "\n";
    }

private:
    nlohmann::json j_;
};

nlohmann::json tau_run_json(const std::string& drive, double inv_t, int realization,
                            const TauOutcome& out) {
    nlohmann::json j;
    j["drive"] = drive;
    j["inv_T"] = inv_t;
    j["realization"] = realization;
    j["seed_init"] = out.seed_init;
    j["seed_pert"] = out.seed_pert;
    j["seed_drive"] = out.seed_drive;
    j["censored"] = out.censored;
    j["tau"] = out.tau;
    j["steps_run"] = out.steps_run;
    j["wall_s"] = out.wall_s;
    return j;
}

fs::path prepare_out_dir(const ExperimentConfig& cfg) {
    fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

std::uint64_t run_seed(std::uint64_t master, SeedPurpose purpose, const DriveSpec& drive,
                       double inv_t, int realization, std::uint64_t context) {
    return derive_seed({master, static_cast<std::uint64_t>(purpose), drive_code(drive),
                        std::bit_cast<std::uint64_t>(inv_t),
                        static_cast<std::uint64_t>(realization), context});
}

TauOutcome run_twin_tau(const DriveSpec& drive, const StepParams& params, int n_linear,
                        ConfigKind state, double width, double delta,
                        const std::vector<double>& thresholds, std::uint64_t step_cap,
                        std::uint64_t record_every, std::uint64_t seed_init,
                        std::uint64_t seed_pert) {
    const auto t0 = std::chrono::steady_clock::now();
    SpinLattice reference = (state == ConfigKind::Neel)
                                ? init_neel(n_linear, width, seed_init)
                                : init_polarized(n_linear, width, seed_init);
    SpinLattice perturbed = perturb_copy(reference, delta, seed_pert);
    DriveGenerator gen(drive);
    CrossingTracker tracker(kDInfinity, thresholds);

    const std::uint64_t chunk = std::max<std::uint64_t>(record_every, 8192);
    std::uint64_t done = 0;
    bool fed = false;
    while (done < step_cap && !tracker.complete()) {
        const std::uint64_t todo = std::min(chunk, step_cap - done);
        const auto records = evolve_twin(reference, perturbed, gen, params, todo, record_every);
        for (const EvolutionRecord& rec : records) {
            tracker.feed(rec.step, *rec.obs.decorrelator);
            fed = true;
        }
        done += todo;
    }

    TauOutcome out;
    out.seed_init = seed_init;
    out.seed_pert = seed_pert;
    out.seed_drive = drive.seed;
    out.steps_run = done;
    if (!fed) {
        out.censored = true;
        out.tau = std::numeric_limits<double>::quiet_NaN();
    } else {
        const ThermalizationResult res = tracker.result();
        out.censored = res.censored;
        out.tau = res.tau_th;
    }
    out.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

SweepOutput sweep_collect(const ExperimentConfig& cfg, const std::vector<std::string>& drives,
                          int n_linear, ConfigKind state, double width,
                          std::uint64_t context) {
    struct Key {
        std::size_t drive_index;
        std::size_t freq_index;
        int realization;
    };
    std::vector<Key> keys;
    for (std::size_t di = 0; di < drives.size(); ++di) {
        const int reps = cfg.realizations_for(di);
        for (std::size_t fi = 0; fi < cfg.inv_t_grid.size(); ++fi) {
            for (int r = 0; r < reps; ++r) {
                keys.push_back({di, fi, r});
            }
        }
    }

    std::vector<TauOutcome> outcomes(keys.size());
    parallel_runs(keys.size(), cfg.threads, [&](std::size_t k) {
        const Key& key = keys[k];
        DriveSpec spec = parse_drive(drives[key.drive_index]);
        const double inv_t = cfg.inv_t_grid[key.freq_index];
        spec.seed = run_seed(cfg.seed, SeedPurpose::Drive, spec, inv_t, key.realization, context);
        const std::uint64_t seed_init =
            run_seed(cfg.seed, SeedPurpose::Init, spec, inv_t, key.realization, context);
        const std::uint64_t seed_pert =
            run_seed(cfg.seed, SeedPurpose::Perturb, spec, inv_t, key.realization, context);
        const StepParams params{cfg.effective_g(), cfg.effective_h(), 1.0 / inv_t};
        outcomes[k] = run_twin_tau(spec, params, n_linear, state, width, cfg.delta,
                                   cfg.thresholds, cfg.step_cap,
                                   cfg.record_interval_for(spec), seed_init, seed_pert);
    });

    SweepOutput output;
    output.all_censored = true;
    std::size_t cursor = 0;
    for (std::size_t di = 0; di < drives.size(); ++di) {
        DriveSweep sweep;
        sweep.drive = drives[di];
        sweep.spec = parse_drive(drives[di]);
        const int reps = cfg.realizations_for(di);
        for (std::size_t fi = 0; fi < cfg.inv_t_grid.size(); ++fi) {
            FreqStats stats;
            stats.inv_t = cfg.inv_t_grid[fi];
            stats.total = reps;
            std::vector<double> taus;
            for (int r = 0; r < reps; ++r) {
                const TauOutcome& out = outcomes[cursor++];
                stats.runs.push_back(out);
                if (!out.censored) {
                    taus.push_back(out.tau);
                    output.all_censored = false;
                }
            }
            stats.used = static_cast<int>(taus.size());
            if (!taus.empty()) {
                const auto [mean, se] = mean_stderr(taus);
                stats.tau_mean = mean;
                stats.tau_stderr = se;
            } else {
                stats.tau_mean = std::numeric_limits<double>::quiet_NaN();
                stats.tau_stderr = std::numeric_limits<double>::quiet_NaN();
                output.warnings.push_back("sweep: " + sweep.drive + " at 1/T=" +
                                          format_double(stats.inv_t) +
                                          ": all realizations censored; row dropped from fits");
            }
            sweep.freqs.push_back(std::move(stats));
        }

        FitPoints points;
        for (const FreqStats& stats : sweep.freqs) {
            if (stats.used > 0) {
                points.emplace_back(stats.inv_t, stats.tau_mean);
            }
        }
        if (points.size() >= 3) {
            try {
                sweep.power_law = fit_power_law(points);
                sweep.exponential = fit_exponential(points);
                if (sweep.spec.kind == DriveKind::ThueMorse) {
                    sweep.log_squared = fit_log_squared(points, cfg.effective_g());
                }
            } catch (const std::invalid_argument& e) {
                output.warnings.push_back("sweep: fit skipped for " + sweep.drive + ": " +
                                          e.what());
            }
        } else {
            output.warnings.push_back("sweep: fewer than 3 uncensored frequencies for " +
                                      sweep.drive + "; fits skipped");
        }
        output.drives.push_back(std::move(sweep));
    }
    return output;
}

nlohmann::json fit_to_json(const FitResult& fit) {
    nlohmann::json j;
    switch (fit.model) {
    case FitModel::PowerLaw: j["model"] = "power_law"; break;
    case FitModel::Exponential: j["model"] = "exponential"; break;
    case FitModel::LogSquared: j["model"] = "log_squared"; break;
    }
    j["exponent"] = fit.exponent;
    j["prefactor"] = fit.prefactor;
    j["exponent_stderr"] = fit.exponent_stderr;
    j["r_squared"] = fit.r_squared;
    j["residual_sum"] = fit.residual_sum;
    return j;
}

namespace {

void write_sweep_outputs(const ExperimentConfig& cfg, const SweepOutput& output,
                         Manifest& manifest, const fs::path& dir) {
    CsvWriter taus(dir / "taus.csv");
    taus.header({"drive", "inv_T", "realization", "tau_steps", "censored", "steps_run"});
    for (const DriveSweep& sweep : output.drives) {
        for (const FreqStats& stats : sweep.freqs) {
            for (std::size_t r = 0; r < stats.runs.size(); ++r) {
                const TauOutcome& out = stats.runs[r];
                taus.field(sweep.drive)
                    .field(stats.inv_t)
                    .field(static_cast<std::int64_t>(r))
                    .field(out.tau)
                    .field(out.censored)
                    .field(out.steps_run);
                taus.end_row();
                manifest.add_run(tau_run_json(sweep.drive, stats.inv_t, static_cast<int>(r), out));
            }
        }
    }

    CsvWriter points(dir / "points.csv");
    points.header({"drive", "inv_T", "n_total", "n_used", "tau_mean", "tau_stderr"});
    for (const DriveSweep& sweep : output.drives) {
        for (const FreqStats& stats : sweep.freqs) {
            if (stats.used == 0) {
                continue; // dropped; warning already recorded
            }
            points.field(sweep.drive)
                .field(stats.inv_t)
                .field(static_cast<std::int64_t>(stats.total))
                .field(static_cast<std::int64_t>(stats.used))
                .field(stats.tau_mean)
                .field(stats.tau_stderr);
            points.end_row();
        }
    }

    nlohmann::json fits;
    fits["rmdspin_version"] = kVersion;
    fits["drives"] = nlohmann::json::object();
    for (const DriveSweep& sweep : output.drives) {
        nlohmann::json entry;
        double best_residual = std::numeric_limits<double>::infinity();
        std::string best_model;
        const auto consider = [&](const std::optional<FitResult>& fit, const char* key) {
            if (!fit) {
                return;
            }
            entry[key] = fit_to_json(*fit);
            if (fit->residual_sum < best_residual) {
                best_residual = fit->residual_sum;
                best_model = key;
            }
        };
        consider(sweep.power_law, "power_law");
        consider(sweep.exponential, "exponential");
        consider(sweep.log_squared, "log_squared");
        if (!best_model.empty()) {
            entry["preferred_model"] = best_model;
        }
        if (cfg.effective_h() == 0.0 && sweep.spec.kind == DriveKind::Rmd) {
            // Informational only: the spin-1/2 counterpart scales differently
            // without a longitudinal field.
            entry["h_zero_note"] =
                "quantum spin-1/2 counterpart at h=0 scales with exponent 2n-3 = " +
                std::to_string(2 * sweep.spec.order - 3);
        }
        fits["drives"][sweep.drive] = std::move(entry);
    }
    std::ofstream fit_file(dir / "fits.json", std::ios::binary);
    fit_file << fits.dump(2) << "\n";

    for (const std::string& w : output.warnings) {
        manifest.warn(w);
    }
}

} // namespace

int run_simulate(const ExperimentConfig& cfg) {
    cfg.validate();
    const fs::path dir = prepare_out_dir(cfg);
    Manifest manifest("simulate", cfg);

    DriveSpec spec = parse_drive(cfg.drives.front());
    const double inv_t = cfg.inv_t_grid.front();
    spec.seed = run_seed(cfg.seed, SeedPurpose::Drive, spec, inv_t, 0);
    const std::uint64_t seed_init = run_seed(cfg.seed, SeedPurpose::Init, spec, inv_t, 0);
    const std::uint64_t seed_pert = run_seed(cfg.seed, SeedPurpose::Perturb, spec, inv_t, 0);
    const ConfigKind state = resolve_state(cfg.state, ConfigKind::Neel);
    const StepParams params{cfg.effective_g(), cfg.effective_h(), 1.0 / inv_t};
    const std::uint64_t record_every = cfg.record_interval_for(spec);

    SpinLattice reference = (state == ConfigKind::Neel)
                                ? init_neel(cfg.size, cfg.width, seed_init)
                                : init_polarized(cfg.size, cfg.width, seed_init);
    SpinLattice perturbed = perturb_copy(reference, cfg.delta, seed_pert);
    DriveGenerator gen(spec);

    CsvWriter csv((dir / "trajectory.csv").string());
    csv.header({"step", "energy_ave_density", "staggered_m", "magnetization_z", "decorrelator"});

    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t chunk = std::max<std::uint64_t>(record_every, 8192);
    std::uint64_t done = 0;
    while (done < cfg.step_cap) {
        const std::uint64_t todo = std::min(chunk, cfg.step_cap - done);
        const auto records = evolve_twin(reference, perturbed, gen, params, todo, record_every);
        for (const EvolutionRecord& rec : records) {
            csv.field(rec.step)
                .field(rec.obs.energy_ave_density)
                .field(rec.obs.staggered_m)
                .field(rec.obs.magnetization_z)
                .field(*rec.obs.decorrelator);
            csv.end_row();
        }
        done += todo;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    nlohmann::json run;
    run["drive"] = cfg.drives.front();
    run["inv_T"] = inv_t;
    run["state"] = kind_name(state);
    run["seed_init"] = seed_init;
    run["seed_pert"] = seed_pert;
    run["seed_drive"] = spec.seed;
    run["steps"] = done;
    run["wall_s"] = wall;
    manifest.add_run(std::move(run));
    manifest.write(dir);
    return kExitOk;
}

int run_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const fs::path dir = prepare_out_dir(cfg);
    Manifest manifest("sweep", cfg);

    const ConfigKind state = resolve_state(cfg.state, ConfigKind::Neel);
    const SweepOutput output = sweep_collect(cfg, cfg.drives, cfg.size, state, cfg.width);
    write_sweep_outputs(cfg, output, manifest, dir);
    manifest.write(dir);
    return output.all_censored ? kExitAllCensored : kExitOk;
}

int run_phase_diagram(const ExperimentConfig& cfg) {
    cfg.validate();
    const fs::path dir = prepare_out_dir(cfg);
    Manifest manifest("phase-diagram", cfg);

    const std::vector<double> w_grid = cfg.effective_w_grid();
    const EnergyCalibration neel = calibrate_energy(
        ConfigKind::Neel, w_grid, cfg.size, cfg.calib_realizations,
        derive_seed({cfg.seed, static_cast<std::uint64_t>(SeedPurpose::Calib), 0}),
        cfg.effective_g(), cfg.effective_h());
    const EnergyCalibration polarized = calibrate_energy(
        ConfigKind::Polarized, w_grid, cfg.size, cfg.calib_realizations,
        derive_seed({cfg.seed, static_cast<std::uint64_t>(SeedPurpose::Calib), 1}),
        cfg.effective_g(), cfg.effective_h());

    CsvWriter calib(dir / "calibration.csv");
    calib.header({"kind", "W", "mean_energy_density", "std_energy_density", "realizations"});
    for (const EnergyCalibration* cal : {&neel, &polarized}) {
        for (const EnergyCalibration::Row& row : cal->table) {
            calib.field(kind_name(cal->kind))
                .field(row.width)
                .field(row.mean_energy)
                .field(row.std_energy)
                .field(static_cast<std::int64_t>(cal->realizations));
            calib.end_row();
        }
    }

    CsvWriter alpha_csv(dir / "phase_alpha.csv");
    alpha_csv.header({"epsilon", "drive", "order", "state", "W", "alpha", "alpha_stderr",
                      "r_squared", "n_freqs"});
    CsvWriter tau_csv(dir / "phase_tau.csv");
    tau_csv.header({"epsilon", "drive", "state", "W", "inv_T", "n_total", "n_used",
                    "tau_mean", "tau_stderr"});

    bool any_uncensored = false;
    bool any_run = false;
    for (double epsilon : cfg.epsilon_grid) {
        ConfigKind kind;
        double width;
        try {
            std::tie(kind, width) = target_energy(neel, polarized, epsilon);
        } catch (const UnreachableEnergy& e) {
            manifest.warn("phase-diagram: epsilon=" + format_double(epsilon) + " skipped: " +
                          e.what());
            continue;
        }
        const std::uint64_t context = std::bit_cast<std::uint64_t>(epsilon);
        const SweepOutput output =
            sweep_collect(cfg, cfg.drives, cfg.size, kind, width, context);
        any_run = true;
        if (!output.all_censored) {
            any_uncensored = true;
        }
        for (const std::string& w : output.warnings) {
            manifest.warn("epsilon=" + format_double(epsilon) + ": " + w);
        }
        for (const DriveSweep& sweep : output.drives) {
            for (const FreqStats& stats : sweep.freqs) {
                for (std::size_t r = 0; r < stats.runs.size(); ++r) {
                    manifest.add_run(tau_run_json(sweep.drive + "@eps=" + format_double(epsilon),
                                                  stats.inv_t, static_cast<int>(r),
                                                  stats.runs[r]));
                }
            }
            if (sweep.spec.kind == DriveKind::Rmd) {
                if (sweep.power_law) {
                    int used_freqs = 0;
                    for (const FreqStats& stats : sweep.freqs) {
                        if (stats.used > 0) {
                            ++used_freqs;
                        }
                    }
                    alpha_csv.field(epsilon)
                        .field(sweep.drive)
                        .field(static_cast<std::int64_t>(sweep.spec.order))
                        .field(kind_name(kind))
                        .field(width)
                        .field(sweep.power_law->exponent)
                        .field(sweep.power_law->exponent_stderr)
                        .field(sweep.power_law->r_squared)
                        .field(static_cast<std::int64_t>(used_freqs));
                    alpha_csv.end_row();
                }
            } else {
                for (const FreqStats& stats : sweep.freqs) {
                    if (stats.used == 0) {
                        continue;
                    }
                    tau_csv.field(epsilon)
                        .field(sweep.drive)
                        .field(kind_name(kind))
                        .field(width)
                        .field(stats.inv_t)
                        .field(static_cast<std::int64_t>(stats.total))
                        .field(static_cast<std::int64_t>(stats.used))
                        .field(stats.tau_mean)
                        .field(stats.tau_stderr);
                    tau_csv.end_row();
                }
            }
        }
    }
    manifest.write(dir);
    if (any_run && !any_uncensored) {
        return kExitAllCensored;
    }
    return kExitOk;
}

namespace {

// One rondeau trajectory: polarized-by-default state, g = g_tc * 2*pi/T,
// <Sz> sampled at t = 4mT. The lifetime is extracted from |<Sz>| because the
// subharmonic response alternates sign between consecutive 4T samples.
RondeauSeries rondeau_run(const ExperimentConfig& cfg, const std::string& drive_name,
                          double g_tc, bool keep_series) {
    DriveSpec spec = parse_drive(drive_name);
    const double inv_t = cfg.inv_t_grid.front();
    const std::uint64_t context = std::bit_cast<std::uint64_t>(g_tc);
    spec.seed = run_seed(cfg.seed, SeedPurpose::Drive, spec, inv_t, 0, context);
    const std::uint64_t seed_init =
        run_seed(cfg.seed, SeedPurpose::Init, spec, inv_t, 0, context);

    const double omega = 2.0 * std::numbers::pi * inv_t;
    const StepParams params{g_tc * omega, cfg.effective_h(), 1.0 / inv_t};
    const ConfigKind state = resolve_state(cfg.state, ConfigKind::Polarized);

    SpinLattice lattice = (state == ConfigKind::Neel)
                              ? init_neel(cfg.size, cfg.width, seed_init)
                              : init_polarized(cfg.size, cfg.width, seed_init);
    DriveGenerator gen(spec);

    RondeauSeries result;
    result.drive = drive_name;
    std::vector<std::pair<std::uint64_t, double>> magnitude_series;

    const std::uint64_t record_every = 4; // t = 4mT sampling
    const std::uint64_t chunk = 8192;
    std::uint64_t done = 0;
    while (done < cfg.rondeau_steps) {
        const std::uint64_t todo = std::min(chunk, cfg.rondeau_steps - done);
        const auto records = evolve(lattice, gen, params, todo, record_every);
        for (const EvolutionRecord& rec : records) {
            const double sz = rec.obs.magnetization_z;
            if (keep_series) {
                result.series.emplace_back(rec.step, sz);
            }
            magnitude_series.emplace_back(rec.step, std::abs(sz));
            if (!result.long_time_valid && rec.step >= cfg.rondeau_t_long) {
                result.long_time_sz = sz;
                result.long_time_valid = true;
            }
        }
        done += todo;
    }
    if (!magnitude_series.empty()) {
        result.lifetime = rondeau_lifetime(magnitude_series, cfg.s_cr);
    } else {
        result.lifetime.censored = true;
    }
    return result;
}

} // namespace

RondeauOutput rondeau_collect(const ExperimentConfig& cfg) {
    RondeauOutput output;
    output.main_runs.resize(cfg.drives.size());
    parallel_runs(cfg.drives.size(), cfg.threads, [&](std::size_t di) {
        output.main_runs[di] = rondeau_run(cfg, cfg.drives[di], cfg.g_tc, true);
    });

    struct GridKey {
        std::size_t drive_index;
        std::size_t point_index;
    };
    std::vector<GridKey> keys;
    for (std::size_t di = 0; di < cfg.drives.size(); ++di) {
        for (std::size_t pi = 0; pi < cfg.g_tc_grid.size(); ++pi) {
            keys.push_back({di, pi});
        }
    }
    output.grid.resize(keys.size());
    parallel_runs(keys.size(), cfg.threads, [&](std::size_t k) {
        const GridKey& key = keys[k];
        const double g_tc = cfg.g_tc_grid[key.point_index];
        const RondeauSeries run = rondeau_run(cfg, cfg.drives[key.drive_index], g_tc, false);
        RondeauPoint point;
        point.drive = run.drive;
        point.g_tc = g_tc;
        point.lifetime = run.lifetime;
        point.long_time_sz = run.long_time_sz;
        point.long_time_valid = run.long_time_valid;
        output.grid[k] = point;
    });
    return output;
}

int run_rondeau(const ExperimentConfig& cfg) {
    cfg.validate();
    const fs::path dir = prepare_out_dir(cfg);
    Manifest manifest("rondeau", cfg);

    const RondeauOutput output = rondeau_collect(cfg);

    CsvWriter mag(dir / "magnetization.csv");
    mag.header({"drive", "g_tc", "step", "magnetization_z"});
    for (const RondeauSeries& run : output.main_runs) {
        for (const auto& [step, sz] : run.series) {
            mag.field(run.drive).field(cfg.g_tc).field(step).field(sz);
            mag.end_row();
        }
    }

    CsvWriter lifetimes(dir / "lifetimes.csv");
    lifetimes.header({"drive", "g_tc", "lifetime_periods", "censored", "last_step"});
    CsvWriter longtime(dir / "longtime.csv");
    longtime.header({"drive", "g_tc", "step", "magnetization_z"});

    const auto emit_point = [&](const std::string& drive, double g_tc,
                                const RondeauLifetime& lifetime, double long_sz,
                                bool long_valid) {
        lifetimes.field(drive)
            .field(g_tc)
            .field(lifetime.lifetime)
            .field(lifetime.censored)
            .field(lifetime.last_step);
        lifetimes.end_row();
        if (long_valid) {
            longtime.field(drive).field(g_tc).field(cfg.rondeau_t_long).field(long_sz);
            longtime.end_row();
        }
        nlohmann::json run;
        run["drive"] = drive;
        run["g_tc"] = g_tc;
        run["lifetime_periods"] = lifetime.lifetime;
        run["censored"] = lifetime.censored;
        manifest.add_run(std::move(run));
    };

    for (const RondeauSeries& run : output.main_runs) {
        emit_point(run.drive, cfg.g_tc, run.lifetime, run.long_time_sz, run.long_time_valid);
    }
    for (const RondeauPoint& point : output.grid) {
        if (point.g_tc == cfg.g_tc) {
            continue; // already emitted from the main run
        }
        emit_point(point.drive, point.g_tc, point.lifetime, point.long_time_sz,
                   point.long_time_valid);
    }
    manifest.write(dir);
    return kExitOk;
}

int run_finite_size(const ExperimentConfig& cfg) {
    cfg.validate();
    const fs::path dir = prepare_out_dir(cfg);
    Manifest manifest("finite-size", cfg);

    CsvWriter csv(dir / "finite_size.csv");
    csv.header({"n_linear", "drive", "inv_T", "n_total", "n_used", "tau_mean", "tau_stderr"});

    const ConfigKind state = resolve_state(cfg.state, ConfigKind::Neel);
    bool any_uncensored = false;
    for (int n_linear : cfg.sizes) {
        if (n_linear <= 2) {
            manifest.warn("finite-size: N=" + std::to_string(n_linear) +
                          " is below the minimum meaningful size (each site wraps onto "
                          "its own neighbourhood)");
        }
        const SweepOutput output =
            sweep_collect(cfg, cfg.drives, n_linear, state, cfg.width,
                          static_cast<std::uint64_t>(n_linear));
        if (!output.all_censored) {
            any_uncensored = true;
        }
        for (const std::string& w : output.warnings) {
            manifest.warn("N=" + std::to_string(n_linear) + ": " + w);
        }
        for (const DriveSweep& sweep : output.drives) {
            for (const FreqStats& stats : sweep.freqs) {
                for (std::size_t r = 0; r < stats.runs.size(); ++r) {
                    manifest.add_run(tau_run_json(sweep.drive + "@N=" + std::to_string(n_linear),
                                                  stats.inv_t, static_cast<int>(r),
                                                  stats.runs[r]));
                }
                if (stats.used == 0) {
                    continue;
                }
                csv.field(static_cast<std::int64_t>(n_linear))
                    .field(sweep.drive)
                    .field(stats.inv_t)
                    .field(static_cast<std::int64_t>(stats.total))
                    .field(static_cast<std::int64_t>(stats.used))
                    .field(stats.tau_mean)
                    .field(stats.tau_stderr);
                csv.end_row();
            }
        }
    }
    manifest.write(dir);
    return any_uncensored ? kExitOk : kExitAllCensored;
}

int run_calibrate(const ExperimentConfig& cfg) {
    cfg.validate();
    const fs::path dir = prepare_out_dir(cfg);
    Manifest manifest("calibrate", cfg);

    const std::vector<double> w_grid = cfg.effective_w_grid();
    CsvWriter csv(dir / "calibration.csv");
    csv.header({"kind", "W", "mean_energy_density", "std_energy_density", "realizations"});
    for (ConfigKind kind : {ConfigKind::Neel, ConfigKind::Polarized}) {
        const EnergyCalibration cal = calibrate_energy(
            kind, w_grid, cfg.size, cfg.calib_realizations,
            derive_seed({cfg.seed, static_cast<std::uint64_t>(SeedPurpose::Calib),
                         static_cast<std::uint64_t>(kind)}),
            cfg.effective_g(), cfg.effective_h());
        if (cal.monotone_prefix() < cal.table.size()) {
            manifest.warn(std::string("calibrate: ") + kind_name(kind) +
                          " table is non-monotone beyond W=" +
                          format_double(cal.table[cal.monotone_prefix() - 1].width) +
                          "; interpolation is restricted to the monotone prefix");
        }
        for (const EnergyCalibration::Row& row : cal.table) {
            csv.field(kind_name(kind))
                .field(row.width)
                .field(row.mean_energy)
                .field(row.std_energy)
                .field(static_cast<std::int64_t>(cal.realizations));
            csv.end_row();
        }
    }
    manifest.write(dir);
    return kExitOk;
}

} // namespace rmdspin
