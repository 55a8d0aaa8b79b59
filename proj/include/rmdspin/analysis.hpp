#ifndef RMDSPIN_ANALYSIS_HPP
#define RMDSPIN_ANALYSIS_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rmdspin {

// Target energy density outside the calibrated table.
class UnreachableEnergy : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// First-crossing times of d/d_inf for a set of thresholds; tau_th is their
// mean. Censored results carry only the lower bound last_step.
struct ThermalizationResult {
    std::map<double, std::uint64_t> crossing_times; // threshold -> step
    double tau_th = 0.0;       // valid only when !censored
    bool censored = false;
    std::uint64_t last_step = 0;
};

inline const std::vector<double>& default_thresholds() {
    static const std::vector<double> t{0.90, 0.89, 0.88};
    return t;
}

// Streaming first-crossing tracker, so multi-gigastep runs never have to
// hold a full decorrelator series in memory. extract_tau is the batch wrapper.
class CrossingTracker {
public:
    CrossingTracker(double d_inf, std::vector<double> thresholds);

    void feed(std::uint64_t step, double d_value);
    bool complete() const { return remaining_ == 0; }
    ThermalizationResult result() const;

private:
    double d_inf_;
    std::vector<double> thresholds_;
    std::vector<std::uint64_t> crossings_;
    std::vector<bool> crossed_;
    std::size_t remaining_;
    std::uint64_t last_step_ = 0;
    bool fed_ = false;
};

// crossing(x) = first step with d/d_inf >= x; tau_th = mean over thresholds.
// Throws std::invalid_argument on an empty series.
ThermalizationResult extract_tau(const std::vector<std::pair<std::uint64_t, double>>& d_series,
                                 double d_inf, const std::vector<double>& thresholds);

enum class FitModel { PowerLaw, Exponential, LogSquared };

// Unweighted least squares on log(tau):
//   PowerLaw:    log tau = log(prefactor) + exponent * log(1/T)
//   Exponential: log tau = log(prefactor) + exponent * (1/T)
//   LogSquared:  log tau = log(prefactor) + exponent * (ln((1/T)/g))^2
// residual_sum is the log-space sum of squared residuals, the quantity used
// for model comparison on identical point sets.
struct FitResult {
    FitModel model = FitModel::PowerLaw;
    double exponent = 0.0;  // alpha, beta, or C
    double prefactor = 1.0;
    double exponent_stderr = 0.0;
    double r_squared = 1.0;
    double residual_sum = 0.0;
};

using FitPoints = std::vector<std::pair<double, double>>; // (1/T, tau)

FitResult fit_power_law(const FitPoints& points);
FitResult fit_exponential(const FitPoints& points);
FitResult fit_log_squared(const FitPoints& points, double g);

enum class ConfigKind { Neel, Polarized };

// W -> mean energy density table for one initial-state family.
struct EnergyCalibration {
    struct Row {
        double width = 0.0;
        double mean_energy = 0.0;
        double std_energy = 0.0;
    };
    ConfigKind kind = ConfigKind::Neel;
    std::vector<Row> table; // ordered by width
    int realizations = 0;

    // Longest strictly monotone (in mean energy) prefix of the table;
    // interpolation is restricted to it.
    std::size_t monotone_prefix() const;
};

EnergyCalibration calibrate_energy(ConfigKind kind, const std::vector<double>& w_grid,
                                   int n_linear, int realizations, std::uint64_t seed,
                                   double g, double h);

// Piecewise-linear inversion of one table. Throws UnreachableEnergy when
// epsilon lies outside the monotone calibrated range.
double target_width(const EnergyCalibration& calibration, double epsilon);

// Sign rule from the calibration design: epsilon <= 0 resolves on the Neel
// branch, epsilon > 0 on the polarized branch.
std::pair<ConfigKind, double> target_energy(const EnergyCalibration& neel,
                                            const EnergyCalibration& polarized,
                                            double epsilon);

struct RondeauLifetime {
    std::uint64_t lifetime = 0; // periods: the step 4l at the first drop
    bool censored = false;
    std::uint64_t last_step = 0;
};

// First sampled step at which the series value drops below s_cr.
// Throws std::invalid_argument on an empty series.
RondeauLifetime rondeau_lifetime(const std::vector<std::pair<std::uint64_t, double>>& series,
                                 double s_cr);

// Mean and standard error of the mean; stderr is 0 for fewer than 2 samples.
std::pair<double, double> mean_stderr(const std::vector<double>& values);

} // namespace rmdspin

#endif
