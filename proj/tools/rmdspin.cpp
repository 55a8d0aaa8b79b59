#include "rmdspin/experiments.hpp"

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

namespace {

// Flags shared by every subcommand; CLI values override the config file.
struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    int threads = 0;
    std::uint64_t step_cap = 0;
    CLI::Option* out_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* threads_opt = nullptr;
    CLI::Option* cap_opt = nullptr;
};

void add_common(CLI::App* sub, CommonFlags& flags) {
    sub->add_option("--config", flags.config_path,
                    "JSON config file; a manifest.json from a previous run works too");
    flags.out_opt = sub->add_option("--out", flags.out_dir, "output directory");
    flags.seed_opt = sub->add_option("--seed", flags.seed, "master seed");
    flags.threads_opt =
        sub->add_option("--threads", flags.threads, "worker threads (0 = all cores)");
    flags.cap_opt = sub->add_option("--step-cap", flags.step_cap,
                                    "hard per-run step cap; capped runs are censored");
}

rmdspin::ExperimentConfig make_config(const CommonFlags& flags) {
    rmdspin::ExperimentConfig cfg;
    if (!flags.config_path.empty()) {
        cfg = rmdspin::load_config(flags.config_path, cfg);
    }
    if (flags.out_opt->count() > 0) {
        cfg.out_dir = flags.out_dir;
    }
    if (flags.seed_opt->count() > 0) {
        cfg.seed = flags.seed;
    }
    if (flags.threads_opt->count() > 0) {
        cfg.threads = flags.threads;
    }
    if (flags.cap_opt->count() > 0) {
        cfg.step_cap = flags.step_cap;
    }
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rmdspin: prethermalization of classical spin lattices under "
                 "randomized multipolar drives"};
    app.require_subcommand(1);

    CommonFlags sim_flags, sweep_flags, phase_flags, rondeau_flags, fss_flags, calib_flags;

    CLI::App* simulate = app.add_subcommand(
        "simulate", "one twin-trajectory run, streamed to trajectory.csv");
    add_common(simulate, sim_flags);
    std::uint64_t dump_count = 0;
    CLI::Option* dump_opt = simulate->add_option(
        "--dump-labels", dump_count, "print the first K drive labels (Z/X) and exit");

    CLI::App* sweep = app.add_subcommand(
        "sweep", "thermalization times over the frequency grid, with scaling fits");
    add_common(sweep, sweep_flags);

    CLI::App* phase = app.add_subcommand(
        "phase-diagram", "scaling exponents over the initial energy density grid");
    add_common(phase, phase_flags);

    CLI::App* rondeau = app.add_subcommand(
        "rondeau", "time-rondeau-crystal protocol: subharmonic magnetization and lifetimes");
    add_common(rondeau, rondeau_flags);

    CLI::App* fss = app.add_subcommand(
        "finite-size", "thermalization times across lattice sizes");
    add_common(fss, fss_flags);

    CLI::App* calibrate = app.add_subcommand(
        "calibrate", "initial-state width W vs energy density tables");
    add_common(calibrate, calib_flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            const rmdspin::ExperimentConfig cfg = make_config(sim_flags);
            if (dump_opt->count() > 0) {
                cfg.validate();
                rmdspin::DriveSpec spec = rmdspin::parse_drive(cfg.drives.front());
                spec.seed = rmdspin::run_seed(cfg.seed, rmdspin::SeedPurpose::Drive, spec,
                                              cfg.inv_t_grid.front(), 0);
                rmdspin::DriveGenerator gen(spec);
                std::cout << gen.take_string(dump_count) << "\n";
                return rmdspin::kExitOk;
            }
            return rmdspin::run_simulate(cfg);
        }
        if (sweep->parsed()) {
            return rmdspin::run_sweep(make_config(sweep_flags));
        }
        if (phase->parsed()) {
            return rmdspin::run_phase_diagram(make_config(phase_flags));
        }
        if (rondeau->parsed()) {
            return rmdspin::run_rondeau(make_config(rondeau_flags));
        }
        if (fss->parsed()) {
            return rmdspin::run_finite_size(make_config(fss_flags));
        }
        if (calibrate->parsed()) {
            return rmdspin::run_calibrate(make_config(calib_flags));
        }
    } catch (const rmdspin::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return rmdspin::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rmdspin::kExitOk;
}
