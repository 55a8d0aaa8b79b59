#include "rmdspin/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

namespace rmdspin {

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "size", "sizes", "g", "h", "field_scale", "g_tc", "g_tc_grid",
        "inv_T_grid", "W", "state", "delta", "thresholds", "drives",
        "realizations", "epsilon_grid", "w_grid", "calib_realizations",
        "step_cap", "record_interval", "rondeau_steps", "rondeau_t_long",
        "s_cr", "seed", "out_dir", "threads"};
    return keys;
}

template <typename T>
void read_if(const nlohmann::json& j, const char* key, T& out) {
    if (auto it = j.find(key); it != j.end()) {
        try {
            out = it->get<T>();
        } catch (const nlohmann::json::exception&) {
            throw ConfigError(std::string("config: bad value type for key '") + key + "'");
        }
    }
}

} // namespace

DriveSpec parse_drive(const std::string& name) {
    if (name == "thue_morse") {
        return DriveSpec{DriveKind::ThueMorse, 0, 0};
    }
    if (name == "floquet") {
        return DriveSpec{DriveKind::Floquet, 0, 0};
    }
    if (name.rfind("rmd", 0) == 0 && name.size() > 3 &&
        std::all_of(name.begin() + 3, name.end(),
                    [](unsigned char c) { return std::isdigit(c); })) {
        int order = 0;
        try {
            order = std::stoi(name.substr(3));
        } catch (const std::exception&) {
            throw ConfigError("config: RMD order out of range in '" + name + "'");
        }
        if (order > 30) {
            throw ConfigError("config: RMD order above 30 is not supported "
                              "(block length 2^n exceeds the buffer limit)");
        }
        DriveSpec spec;
        spec.kind = DriveKind::Rmd;
        spec.order = order;
        return spec;
    }
    throw ConfigError("config: unknown drive '" + name +
                      "' (expected rmdN, thue_morse or floquet)");
}

std::vector<double> ExperimentConfig::effective_w_grid() const {
    if (!w_grid.empty()) {
        return w_grid;
    }
    std::vector<double> grid;
    for (int k = 0; k <= 25; ++k) {
        grid.push_back(0.02 * k);
    }
    return grid;
}

int ExperimentConfig::realizations_for(std::size_t drive_index) const {
    if (!realizations.empty()) {
        return realizations[drive_index];
    }
    const DriveSpec spec = parse_drive(drives[drive_index]);
    if (spec.kind == DriveKind::Rmd) {
        switch (spec.order) {
        case 0: return 20;
        case 1: return 10;
        case 2: return 5;
        default: return 1;
        }
    }
    // Deterministic drives: realizations vary only the initial state and
    // perturbation seeds.
    return 5;
}

std::uint64_t ExperimentConfig::record_interval_for(const DriveSpec& spec) const {
    if (record_interval != 0) {
        return record_interval;
    }
    if (spec.kind == DriveKind::Rmd) {
        return std::uint64_t{1} << spec.order;
    }
    return 4;
}

void ExperimentConfig::validate() const {
    if (size < 2) {
        throw ConfigError("config: size must be at least 2");
    }
    if (sizes.empty() || std::any_of(sizes.begin(), sizes.end(), [](int n) { return n < 2; })) {
        throw ConfigError("config: sizes must be non-empty with every entry >= 2");
    }
    if (width < 0.0) {
        throw ConfigError("config: W must be non-negative");
    }
    if (delta < 0.0) {
        throw ConfigError("config: delta must be non-negative");
    }
    if (field_scale <= 0.0) {
        throw ConfigError("config: field_scale must be positive");
    }
    if (state != "auto" && state != "neel" && state != "polarized") {
        throw ConfigError("config: state must be neel, polarized or auto");
    }
    if (inv_t_grid.empty() ||
        std::any_of(inv_t_grid.begin(), inv_t_grid.end(), [](double f) { return f <= 0.0; })) {
        throw ConfigError("config: inv_T_grid must be non-empty and positive");
    }
    if (thresholds.empty() ||
        std::any_of(thresholds.begin(), thresholds.end(),
                    [](double t) { return t <= 0.0 || t >= 1.0; })) {
        throw ConfigError("config: thresholds must lie in (0, 1)");
    }
    if (drives.empty()) {
        throw ConfigError("config: drives must be non-empty");
    }
    for (const std::string& d : drives) {
        parse_drive(d); // throws on bad name
    }
    if (!realizations.empty() && realizations.size() != drives.size()) {
        throw ConfigError("config: realizations must match drives in length");
    }
    if (std::any_of(realizations.begin(), realizations.end(), [](int r) { return r < 1; })) {
        throw ConfigError("config: realizations must be positive");
    }
    if (calib_realizations < 1) {
        throw ConfigError("config: calib_realizations must be positive");
    }
    if (g_tc <= 0.0 ||
        std::any_of(g_tc_grid.begin(), g_tc_grid.end(), [](double v) { return v <= 0.0; })) {
        throw ConfigError("config: g_tc values must be positive");
    }
    if (s_cr <= 0.0 || s_cr >= 1.0) {
        throw ConfigError("config: s_cr must lie in (0, 1)");
    }
    if (threads < 0) {
        throw ConfigError("config: threads must be non-negative");
    }
    const auto wg = effective_w_grid();
    if (wg.size() < 2) {
        throw ConfigError("config: w_grid needs at least two points");
    }
}

ExperimentConfig load_config(const std::string& path, const ExperimentConfig& base) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config: invalid JSON in " + path + ": " + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError("config: top level must be a JSON object");
    }
    // A manifest embeds the resolved config; accept it directly so reruns
    // need no separate file.
    if (j.contains("config") && j.contains("rmdspin_version")) {
        j = j["config"];
        if (!j.is_object()) {
            throw ConfigError("config: manifest 'config' entry must be an object");
        }
    }
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (known_keys().find(key) == known_keys().end()) {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    ExperimentConfig cfg = base;
    read_if(j, "size", cfg.size);
    read_if(j, "sizes", cfg.sizes);
    read_if(j, "g", cfg.g);
    read_if(j, "h", cfg.h);
    read_if(j, "field_scale", cfg.field_scale);
    read_if(j, "g_tc", cfg.g_tc);
    read_if(j, "g_tc_grid", cfg.g_tc_grid);
    read_if(j, "inv_T_grid", cfg.inv_t_grid);
    read_if(j, "W", cfg.width);
    read_if(j, "state", cfg.state);
    read_if(j, "delta", cfg.delta);
    read_if(j, "thresholds", cfg.thresholds);
    read_if(j, "drives", cfg.drives);
    read_if(j, "realizations", cfg.realizations);
    read_if(j, "epsilon_grid", cfg.epsilon_grid);
    read_if(j, "w_grid", cfg.w_grid);
    read_if(j, "calib_realizations", cfg.calib_realizations);
    read_if(j, "step_cap", cfg.step_cap);
    read_if(j, "record_interval", cfg.record_interval);
    read_if(j, "rondeau_steps", cfg.rondeau_steps);
    read_if(j, "rondeau_t_long", cfg.rondeau_t_long);
    read_if(j, "s_cr", cfg.s_cr);
    read_if(j, "seed", cfg.seed);
    read_if(j, "out_dir", cfg.out_dir);
    read_if(j, "threads", cfg.threads);
    return cfg;
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["size"] = cfg.size;
    j["sizes"] = cfg.sizes;
    j["g"] = cfg.g;
    j["h"] = cfg.h;
    j["field_scale"] = cfg.field_scale;
    j["g_tc"] = cfg.g_tc;
    j["g_tc_grid"] = cfg.g_tc_grid;
    j["inv_T_grid"] = cfg.inv_t_grid;
    j["W"] = cfg.width;
    j["state"] = cfg.state;
    j["delta"] = cfg.delta;
    j["thresholds"] = cfg.thresholds;
    j["drives"] = cfg.drives;
    j["realizations"] = cfg.realizations;
    j["epsilon_grid"] = cfg.epsilon_grid;
    j["w_grid"] = cfg.w_grid;
    j["calib_realizations"] = cfg.calib_realizations;
    j["step_cap"] = cfg.step_cap;
    j["record_interval"] = cfg.record_interval;
    j["rondeau_steps"] = cfg.rondeau_steps;
    j["rondeau_t_long"] = cfg.rondeau_t_long;
    j["s_cr"] = cfg.s_cr;
    j["seed"] = cfg.seed;
    j["out_dir"] = cfg.out_dir;
    j["threads"] = cfg.threads;
    return j;
}

} // namespace rmdspin
