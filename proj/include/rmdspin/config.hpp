#ifndef RMDSPIN_CONFIG_HPP
#define RMDSPIN_CONFIG_HPP

#include "rmdspin/drive.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace rmdspin {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Flat experiment configuration. JSON file keys map 1:1 onto the fields;
// unknown keys are rejected. CLI flags override file values.
struct ExperimentConfig {
    int size = 50;                          // lattice linear size N
    std::vector<int> sizes = {10, 20, 30, 40, 50}; // finite-size command

    double g = 0.9045;
    double h = 0.809;
    double field_scale = 1.0;               // scales (g, h) jointly at fixed ratio

    double g_tc = 0.255;                     // rondeau: g = g_tc * 2*pi/T
    std::vector<double> g_tc_grid = {0.238, 0.244, 0.250, 0.256, 0.262, 0.300};

    std::vector<double> inv_t_grid = {4, 5, 6, 7, 8, 9, 10, 11, 12};

    double width = 0.01;                     // W
    std::string state = "auto";              // neel | polarized | auto (per command)
    double delta = 0.01;                     // twin perturbation scale
    std::vector<double> thresholds = {0.90, 0.89, 0.88};

    std::vector<std::string> drives = {"rmd0", "rmd1", "rmd2", "rmd4", "thue_morse"};
    std::vector<int> realizations;           // parallel to drives; empty = defaults

    std::vector<double> epsilon_grid = {-1.0, -0.7, -0.5, -0.3, -0.05,
                                        0.3, 0.5, 0.7, 1.0, 1.2};
    std::vector<double> w_grid;              // empty = 0.00 .. 0.50 step 0.02
    int calib_realizations = 50;

    std::uint64_t step_cap = 100000000;      // hard cap; runs hitting it are censored
    std::uint64_t record_interval = 0;       // 0 = auto (2^n for RMD, 4 otherwise)
    std::uint64_t rondeau_steps = 100000;    // cap for rondeau trajectories
    std::uint64_t rondeau_t_long = 10000;    // long-time magnetization sample, in periods
    double s_cr = 0.25;                      // rondeau lifetime threshold

    std::uint64_t seed = 12345;
    std::string out_dir = "out";
    int threads = 0;                         // 0 = hardware concurrency

    // Resolved values ------------------------------------------------------

    double effective_g() const { return g * field_scale; }
    double effective_h() const { return h * field_scale; }

    std::vector<double> effective_w_grid() const;

    // Realization count for drives[index], applying the per-order defaults
    // (20, 10, 5, 1 for RMD n = 0, 1, 2, >=3; 5 for deterministic drives).
    int realizations_for(std::size_t drive_index) const;

    // Auto record interval: one block length for RMD(n), 4 otherwise.
    std::uint64_t record_interval_for(const DriveSpec& spec) const;

    void validate() const; // throws ConfigError
};

// Parses "rmdN", "thue_morse" or "floquet"; throws ConfigError otherwise.
DriveSpec parse_drive(const std::string& name);

// Loads JSON from `path` and overlays it on `base`. A manifest file (object
// with a "config" key and an "rmdspin_version" key) is accepted too, so any
// run can be repeated from its own manifest. Unknown keys throw ConfigError.
ExperimentConfig load_config(const std::string& path, const ExperimentConfig& base);

nlohmann::json config_to_json(const ExperimentConfig& cfg);

} // namespace rmdspin

#endif
