#include "rmdspin/analysis.hpp"

#include "rmdspin/observables.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include <doctest.h>

using namespace rmdspin;

namespace {

std::vector<std::pair<std::uint64_t, double>> linear_ramp(std::uint64_t steps, double d_inf) {
    std::vector<std::pair<std::uint64_t, double>> series;
    for (std::uint64_t k = 1; k <= steps; ++k) {
        series.emplace_back(k, d_inf * static_cast<double>(k) / static_cast<double>(steps));
    }
    return series;
}

} // namespace

TEST_CASE("first crossings of a linear ramp") {
    const auto series = linear_ramp(1000, kDInfinity);
    const ThermalizationResult res = extract_tau(series, kDInfinity, default_thresholds());
    CHECK_FALSE(res.censored);
    CHECK(res.crossing_times.at(0.88) == 880);
    CHECK(res.crossing_times.at(0.89) == 890);
    CHECK(res.crossing_times.at(0.90) == 900);
    CHECK(res.tau_th == doctest::Approx(890.0).epsilon(1e-12));
    // First-crossing times are monotone in the threshold by construction.
    CHECK(res.crossing_times.at(0.88) <= res.crossing_times.at(0.89));
    CHECK(res.crossing_times.at(0.89) <= res.crossing_times.at(0.90));
}

TEST_CASE("series that never reach the thresholds are censored") {
    std::vector<std::pair<std::uint64_t, double>> series;
    for (std::uint64_t k = 1; k <= 100; ++k) {
        series.emplace_back(k, 0.5 * kDInfinity);
    }
    const ThermalizationResult res = extract_tau(series, kDInfinity, default_thresholds());
    CHECK(res.censored);
    CHECK(std::isnan(res.tau_th));
    CHECK(res.last_step == 100);
    CHECK(res.crossing_times.empty());

    // A partially crossed series is still censored but keeps the crossings
    // it saw.
    series.emplace_back(101, 0.885 * kDInfinity);
    const ThermalizationResult part = extract_tau(series, kDInfinity, default_thresholds());
    CHECK(part.censored);
    CHECK(part.crossing_times.at(0.88) == 101);
    CHECK(part.crossing_times.count(0.90) == 0);
}

TEST_CASE("streaming tracker agrees with the batch extractor") {
    const auto series = linear_ramp(500, kDInfinity);
    CrossingTracker tracker(kDInfinity, default_thresholds());
    std::size_t fed = 0;
    for (const auto& [step, d] : series) {
        tracker.feed(step, d);
        ++fed;
        if (tracker.complete()) {
            break; // early exit is the whole point of the streaming form
        }
    }
    CHECK(fed == 450); // 0.90 * 500
    const ThermalizationResult stream = tracker.result();
    const ThermalizationResult batch = extract_tau(series, kDInfinity, default_thresholds());
    CHECK(stream.tau_th == batch.tau_th);
    CHECK(stream.crossing_times == batch.crossing_times);
}

TEST_CASE("tracker rejects bad inputs") {
    CHECK_THROWS_AS(CrossingTracker(kDInfinity, {}), std::invalid_argument);
    CHECK_THROWS_AS(CrossingTracker(kDInfinity, {0.9, 1.5}), std::invalid_argument);
    CrossingTracker never_fed(kDInfinity, default_thresholds());
    CHECK_THROWS_AS(never_fed.result(), std::invalid_argument);
    CHECK_THROWS_AS(extract_tau({}, kDInfinity, default_thresholds()),
                    std::invalid_argument);
}

TEST_CASE("fitters recover exact synthetic parameters") {
    const double g = 0.9045;
    FitPoints power, expo, logsq;
    for (double x : {3.0, 4.0, 5.0, 6.0, 7.0, 8.0}) {
        power.emplace_back(x, 3.7 * std::pow(x, 4.2));
        expo.emplace_back(x, 2.1 * std::exp(1.3 * x));
        const double l = std::log(x / g);
        logsq.emplace_back(x, 5.0 * std::exp(0.8 * l * l));
    }

    const FitResult p = fit_power_law(power);
    CHECK(p.model == FitModel::PowerLaw);
    CHECK(p.exponent == doctest::Approx(4.2).epsilon(1e-10));
    CHECK(p.prefactor == doctest::Approx(3.7).epsilon(1e-10));
    CHECK(p.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.residual_sum < 1e-20);

    const FitResult e = fit_exponential(expo);
    CHECK(e.exponent == doctest::Approx(1.3).epsilon(1e-10));
    CHECK(e.prefactor == doctest::Approx(2.1).epsilon(1e-10));

    const FitResult l = fit_log_squared(logsq, g);
    CHECK(l.exponent == doctest::Approx(0.8).epsilon(1e-10));
    CHECK(l.prefactor == doctest::Approx(5.0).epsilon(1e-10));
}

TEST_CASE("model comparison prefers the generating model") {
    FitPoints expo;
    for (double x : {3.0, 4.0, 5.0, 6.0, 7.0, 8.0}) {
        expo.emplace_back(x, 2.0 * std::exp(0.9 * x));
    }
    const double exp_res = fit_exponential(expo).residual_sum;
    CHECK(exp_res < fit_power_law(expo).residual_sum);
    CHECK(exp_res < fit_log_squared(expo, 0.9045).residual_sum);
}

TEST_CASE("fitters reject degenerate input") {
    CHECK_THROWS_AS(fit_power_law({{3.0, 10.0}, {4.0, 20.0}}), std::invalid_argument);
    CHECK_THROWS_AS(fit_power_law({{3.0, 10.0}, {4.0, -2.0}, {5.0, 30.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(fit_exponential({{3.0, 10.0}, {3.0, 20.0}, {3.0, 30.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(fit_log_squared({{3.0, 10.0}, {4.0, 20.0}, {5.0, 30.0}}, 0.0),
                    std::invalid_argument);
}

TEST_CASE("mean and standard error") {
    const auto [mean, se] = mean_stderr({1.0, 2.0, 3.0});
    CHECK(mean == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(se == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(mean_stderr({5.0}).second == 0.0);
    CHECK(mean_stderr({}).first == 0.0);
}

TEST_CASE("calibration endpoints reproduce the exact noiseless energies") {
    const double g = 0.9045;
    const double h = 0.809;
    const EnergyCalibration neel =
        calibrate_energy(ConfigKind::Neel, {0.0, 0.1, 0.3}, 16, 8, 42, g, h);
    REQUIRE(neel.table.size() == 3);
    CHECK(neel.table[0].mean_energy == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(neel.table[0].std_energy == 0.0);
    CHECK(neel.table[1].mean_energy > neel.table[0].mean_energy);

    const EnergyCalibration pol =
        calibrate_energy(ConfigKind::Polarized, {0.0, 0.1}, 16, 8, 42, g, h);
    CHECK(pol.table[0].mean_energy == doctest::Approx((2.0 + h) / 2.0).epsilon(1e-12));
    CHECK(pol.table[1].mean_energy < pol.table[0].mean_energy);
}

TEST_CASE("monotone prefix detection") {
    EnergyCalibration cal;
    cal.table = {{0.0, -1.0, 0.0}, {0.1, -0.8, 0.0}, {0.2, -0.5, 0.0},
                 {0.3, -0.6, 0.0}, {0.4, -0.4, 0.0}};
    CHECK(cal.monotone_prefix() == 3);
    cal.table.resize(3);
    CHECK(cal.monotone_prefix() == 3);
}

TEST_CASE("width inversion is piecewise linear and bounded") {
    EnergyCalibration cal;
    cal.kind = ConfigKind::Neel;
    cal.table = {{0.0, -1.0, 0.0}, {0.2, -0.6, 0.0}, {0.5, 0.0, 0.0}};
    CHECK(target_width(cal, -1.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(target_width(cal, -0.8) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(target_width(cal, -0.3) == doctest::Approx(0.35).epsilon(1e-12));
    CHECK(target_width(cal, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(target_width(cal, 0.1), UnreachableEnergy);
    CHECK_THROWS_AS(target_width(cal, -1.1), UnreachableEnergy);

    // A non-monotone tail is excluded: inversion still uses only the prefix.
    cal.table.push_back({0.6, -0.2, 0.0});
    CHECK(cal.monotone_prefix() == 3);
    CHECK(target_width(cal, -0.3) == doctest::Approx(0.35).epsilon(1e-12));
    CHECK_THROWS_AS(target_width(cal, 0.1), UnreachableEnergy);
}

TEST_CASE("branch selection by the sign of the target energy") {
    EnergyCalibration neel;
    neel.kind = ConfigKind::Neel;
    neel.table = {{0.0, -1.0, 0.0}, {0.5, 0.0, 0.0}};
    EnergyCalibration pol;
    pol.kind = ConfigKind::Polarized;
    pol.table = {{0.0, 1.4045, 0.0}, {0.5, 0.0, 0.0}};

    const auto [neg_kind, neg_w] = target_energy(neel, pol, -0.5);
    CHECK(neg_kind == ConfigKind::Neel);
    CHECK(neg_w == doctest::Approx(0.25).epsilon(1e-12));

    const auto [zero_kind, zero_w] = target_energy(neel, pol, 0.0);
    CHECK(zero_kind == ConfigKind::Neel);
    CHECK(zero_w == doctest::Approx(0.5).epsilon(1e-12));

    const auto [pos_kind, pos_w] = target_energy(neel, pol, 0.7);
    CHECK(pos_kind == ConfigKind::Polarized);
    CHECK(pos_w == doctest::Approx(0.5 * (1.0 - 0.7 / 1.4045)).epsilon(1e-12));
}

TEST_CASE("calibration round trip") {
    // Measure the mean energy at one W, then invert the table back to it.
    const double g = 0.9045;
    const double h = 0.809;
    const EnergyCalibration cal = calibrate_energy(
        ConfigKind::Neel, {0.0, 0.05, 0.1, 0.15, 0.2}, 20, 16, 7, g, h);
    const double target = cal.table[2].mean_energy;
    CHECK(target_width(cal, target) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("rondeau lifetime finds the first drop below the threshold") {
    const std::vector<std::pair<std::uint64_t, double>> series{
        {4, 0.9}, {8, 0.5}, {12, 0.2}, {16, 0.1}};
    const RondeauLifetime life = rondeau_lifetime(series, 0.25);
    CHECK_FALSE(life.censored);
    CHECK(life.lifetime == 12);
    CHECK(life.last_step == 16);

    const RondeauLifetime cens = rondeau_lifetime({{4, 0.9}, {8, 0.8}}, 0.25);
    CHECK(cens.censored);
    CHECK(cens.lifetime == 8);

    CHECK_THROWS_AS(rondeau_lifetime({}, 0.25), std::invalid_argument);
}
