#include "rmdspin/analysis.hpp"

#include "rmdspin/observables.hpp"
#include "rmdspin/rng.hpp"
#include "rmdspin/spin_lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rmdspin {

CrossingTracker::CrossingTracker(double d_inf, std::vector<double> thresholds)
    : d_inf_(d_inf), thresholds_(std::move(thresholds)) {
    if (thresholds_.empty()) {
        throw std::invalid_argument("CrossingTracker: no thresholds");
    }
    for (double t : thresholds_) {
        if (t <= 0.0 || t >= 1.0) {
            throw std::invalid_argument("CrossingTracker: thresholds must lie in (0, 1)");
        }
    }
    crossings_.assign(thresholds_.size(), 0);
    crossed_.assign(thresholds_.size(), false);
    remaining_ = thresholds_.size();
}

void CrossingTracker::feed(std::uint64_t step, double d_value) {
    fed_ = true;
    last_step_ = step;
    if (remaining_ == 0) {
        return;
    }
    const double ratio = d_value / d_inf_;
    for (std::size_t k = 0; k < thresholds_.size(); ++k) {
        if (!crossed_[k] && ratio >= thresholds_[k]) {
            crossed_[k] = true;
            crossings_[k] = step;
            --remaining_;
        }
    }
}

ThermalizationResult CrossingTracker::result() const {
    if (!fed_) {
        throw std::invalid_argument("CrossingTracker: empty series");
    }
    ThermalizationResult res;
    res.last_step = last_step_;
    res.censored = remaining_ != 0;
    double sum = 0.0;
    for (std::size_t k = 0; k < thresholds_.size(); ++k) {
        if (crossed_[k]) {
            res.crossing_times[thresholds_[k]] = crossings_[k];
        }
        sum += static_cast<double>(crossings_[k]);
    }
    if (!res.censored) {
        res.tau_th = sum / static_cast<double>(thresholds_.size());
    } else {
        res.tau_th = std::numeric_limits<double>::quiet_NaN();
    }
    return res;
}

ThermalizationResult extract_tau(const std::vector<std::pair<std::uint64_t, double>>& d_series,
                                 double d_inf, const std::vector<double>& thresholds) {
    if (d_series.empty()) {
        throw std::invalid_argument("extract_tau: empty series");
    }
    CrossingTracker tracker(d_inf, thresholds);
    for (const auto& [step, d] : d_series) {
        tracker.feed(step, d);
    }
    return tracker.result();
}

namespace {

// y = intercept + slope * x, plus the slope's standard error and log-space
// residual statistics.
FitResult linear_fit(const std::vector<double>& xs, const std::vector<double>& ys,
                     FitModel model) {
    const std::size_t m = xs.size();
    const double x_mean = std::accumulate(xs.begin(), xs.end(), 0.0) / m;
    const double y_mean = std::accumulate(ys.begin(), ys.end(), 0.0) / m;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double dx = xs[k] - x_mean;
        const double dy = ys[k] - y_mean;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("fit: degenerate abscissa (all x equal)");
    }
    FitResult fit;
    fit.model = model;
    fit.exponent = sxy / sxx;
    const double intercept = y_mean - fit.exponent * x_mean;
    fit.prefactor = std::exp(intercept);
    double ss_res = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double r = ys[k] - (intercept + fit.exponent * xs[k]);
        ss_res += r * r;
    }
    fit.residual_sum = ss_res;
    fit.r_squared = (syy == 0.0) ? 1.0 : 1.0 - ss_res / syy;
    fit.exponent_stderr = (m > 2) ? std::sqrt(ss_res / static_cast<double>(m - 2) / sxx) : 0.0;
    return fit;
}

void check_points(const FitPoints& points, bool require_positive_x) {
    if (points.size() < 3) {
        throw std::invalid_argument("fit: need at least 3 points");
    }
    for (const auto& [inv_t, tau] : points) {
        if (tau <= 0.0) {
            throw std::invalid_argument("fit: thermalization times must be positive");
        }
        if (require_positive_x && inv_t <= 0.0) {
            throw std::invalid_argument("fit: frequencies must be positive");
        }
    }
}

} // namespace

FitResult fit_power_law(const FitPoints& points) {
    check_points(points, true);
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& [inv_t, tau] : points) {
        xs.push_back(std::log(inv_t));
        ys.push_back(std::log(tau));
    }
    return linear_fit(xs, ys, FitModel::PowerLaw);
}

FitResult fit_exponential(const FitPoints& points) {
    check_points(points, false);
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& [inv_t, tau] : points) {
        xs.push_back(inv_t);
        ys.push_back(std::log(tau));
    }
    return linear_fit(xs, ys, FitModel::Exponential);
}

FitResult fit_log_squared(const FitPoints& points, double g) {
    check_points(points, true);
    if (g <= 0.0) {
        throw std::invalid_argument("fit_log_squared: g must be positive");
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& [inv_t, tau] : points) {
        const double l = std::log(inv_t / g);
        xs.push_back(l * l);
        ys.push_back(std::log(tau));
    }
    return linear_fit(xs, ys, FitModel::LogSquared);
}

EnergyCalibration calibrate_energy(ConfigKind kind, const std::vector<double>& w_grid,
                                   int n_linear, int realizations, std::uint64_t seed,
                                   double g, double h) {
    if (realizations < 1) {
        throw std::invalid_argument("calibrate_energy: need at least one realization");
    }
    EnergyCalibration cal;
    cal.kind = kind;
    cal.realizations = realizations;
    const double sites = static_cast<double>(n_linear) * n_linear;
    for (std::size_t wi = 0; wi < w_grid.size(); ++wi) {
        const double width = w_grid[wi];
        std::vector<double> energies;
        energies.reserve(realizations);
        for (int r = 0; r < realizations; ++r) {
            const std::uint64_t s =
                derive_seed({seed, static_cast<std::uint64_t>(kind), wi,
                             static_cast<std::uint64_t>(r)});
            const SpinLattice lat = (kind == ConfigKind::Neel)
                                        ? init_neel(n_linear, width, s)
                                        : init_polarized(n_linear, width, s);
            energies.push_back(0.5 * (energy_z(lat, h) + energy_x(lat, g)) / sites);
        }
        const double mean =
            std::accumulate(energies.begin(), energies.end(), 0.0) / realizations;
        double variance = 0.0;
        for (double e : energies) {
            variance += (e - mean) * (e - mean);
        }
        const double stddev =
            (realizations > 1) ? std::sqrt(variance / (realizations - 1)) : 0.0;
        cal.table.push_back({width, mean, stddev});
    }
    return cal;
}

std::size_t EnergyCalibration::monotone_prefix() const {
    if (table.size() < 2) {
        return table.size();
    }
    const bool increasing = table[1].mean_energy > table[0].mean_energy;
    std::size_t len = 1;
    while (len < table.size()) {
        const double prev = table[len - 1].mean_energy;
        const double cur = table[len].mean_energy;
        const bool ok = increasing ? (cur > prev) : (cur < prev);
        if (!ok) {
            break;
        }
        ++len;
    }
    return len;
}

double target_width(const EnergyCalibration& calibration, double epsilon) {
    const std::size_t len = calibration.monotone_prefix();
    if (len < 2) {
        throw UnreachableEnergy("target_width: calibration table too short");
    }
    const auto& t = calibration.table;
    const double lo = std::min(t[0].mean_energy, t[len - 1].mean_energy);
    const double hi = std::max(t[0].mean_energy, t[len - 1].mean_energy);
    if (epsilon < lo || epsilon > hi) {
        throw UnreachableEnergy("target_width: energy density outside calibrated range");
    }
    for (std::size_t k = 1; k < len; ++k) {
        const double e0 = t[k - 1].mean_energy;
        const double e1 = t[k].mean_energy;
        const bool inside = (e0 <= e1) ? (epsilon >= e0 && epsilon <= e1)
                                       : (epsilon <= e0 && epsilon >= e1);
        if (inside) {
            const double frac = (e1 == e0) ? 0.0 : (epsilon - e0) / (e1 - e0);
            return t[k - 1].width + frac * (t[k].width - t[k - 1].width);
        }
    }
    throw UnreachableEnergy("target_width: energy density outside calibrated range");
}

std::pair<ConfigKind, double> target_energy(const EnergyCalibration& neel,
                                            const EnergyCalibration& polarized,
                                            double epsilon) {
    if (epsilon <= 0.0) {
        return {ConfigKind::Neel, target_width(neel, epsilon)};
    }
    return {ConfigKind::Polarized, target_width(polarized, epsilon)};
}

RondeauLifetime rondeau_lifetime(const std::vector<std::pair<std::uint64_t, double>>& series,
                                 double s_cr) {
    if (series.empty()) {
        throw std::invalid_argument("rondeau_lifetime: empty series");
    }
    RondeauLifetime out;
    out.last_step = series.back().first;
    for (const auto& [step, value] : series) {
        if (value < s_cr) {
            out.lifetime = step;
            return out;
        }
    }
    out.censored = true;
    out.lifetime = out.last_step;
    return out;
}

std::pair<double, double> mean_stderr(const std::vector<double>& values) {
    if (values.empty()) {
        return {0.0, 0.0};
    }
    const double mean =
        std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    if (values.size() < 2) {
        return {mean, 0.0};
    }
    double variance = 0.0;
    for (double v : values) {
        variance += (v - mean) * (v - mean);
    }
    variance /= static_cast<double>(values.size() - 1);
    return {mean, std::sqrt(variance / static_cast<double>(values.size()))};
}

} // namespace rmdspin
