#include "rmdspin/spin_lattice.hpp"

#include "rmdspin/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rmdspin {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Spin3 spin_from_angles(const AngleParams& a) {
    const double st = std::sin(a.theta);
    return Spin3{st * std::cos(a.phi), st * std::sin(a.phi), std::cos(a.theta)};
}

AngleParams angles_from_spin(const Spin3& s) {
    AngleParams a;
    a.theta = std::acos(std::clamp(s.z, -1.0, 1.0));
    a.phi = (std::sin(a.theta) < 1e-14) ? 0.0 : std::atan2(s.y, s.x);
    return a;
}

SpinLattice::SpinLattice(int n_linear) : n_(n_linear) {
    if (n_linear < 2) {
        throw std::invalid_argument("SpinLattice: linear size must be at least 2");
    }
    spins_.assign(static_cast<std::size_t>(n_linear) * n_linear, Spin3{});
}

double SpinLattice::max_norm_deviation() const {
    double worst = 0.0;
    for (const Spin3& s : spins_) {
        const double norm = std::sqrt(s.x * s.x + s.y * s.y + s.z * s.z);
        worst = std::max(worst, std::abs(norm - 1.0));
    }
    return worst;
}

SpinLattice from_angles(const std::vector<double>& theta_grid,
                        const std::vector<double>& phi_grid) {
    if (theta_grid.size() != phi_grid.size()) {
        throw std::invalid_argument("from_angles: grid shapes differ");
    }
    const std::size_t total = theta_grid.size();
    const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(total))));
    if (total == 0 || static_cast<std::size_t>(n) * n != total) {
        throw std::invalid_argument("from_angles: grids are not square");
    }
    SpinLattice lat(n);
    for (std::size_t k = 0; k < total; ++k) {
        lat.spins()[k] = spin_from_angles({theta_grid[k], phi_grid[k]});
    }
    return lat;
}

namespace {

enum class Sublattice { uniform, staggered };

SpinLattice noisy_state(int n_linear, double width, std::uint64_t seed, Sublattice mode) {
    if (n_linear < 2) {
        throw std::invalid_argument("init state: linear size must be at least 2");
    }
    if (width < 0.0) {
        throw std::invalid_argument("init state: width must be non-negative");
    }
    SpinLattice lat(n_linear);
    std::normal_distribution<double> gauss(0.0, kTwoPi * width);
    std::uniform_real_distribution<double> uniform(0.0, kTwoPi);
    for (int i = 0; i < n_linear; ++i) {
        for (int j = 0; j < n_linear; ++j) {
            const std::uint64_t site = static_cast<std::uint64_t>(i) * n_linear + j;
            auto eng = site_engine(seed, site);
            double theta = (width == 0.0) ? 0.0 : gauss(eng);
            const double phi = uniform(eng);
            if (mode == Sublattice::staggered && ((i + j) & 1) != 0) {
                theta = std::numbers::pi - theta;
            }
            lat.at(i, j) = spin_from_angles({theta, phi});
        }
    }
    return lat;
}

} // namespace

SpinLattice init_neel(int n_linear, double width, std::uint64_t seed) {
    return noisy_state(n_linear, width, seed, Sublattice::staggered);
}

SpinLattice init_polarized(int n_linear, double width, std::uint64_t seed) {
    return noisy_state(n_linear, width, seed, Sublattice::uniform);
}

SpinLattice perturb_copy(const SpinLattice& source, double delta_scale, std::uint64_t seed) {
    SpinLattice out(source.n());
    if (delta_scale == 0.0) {
        // Bit-exact copy; the angle round trip would cost a few ulps.
        out.spins() = source.spins();
        return out;
    }
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t total = source.spins().size();
    for (std::size_t k = 0; k < total; ++k) {
        AngleParams a = angles_from_spin(source.spins()[k]);
        auto eng = site_engine(seed, k);
        const double shift = kTwoPi * delta_scale * gauss(eng);
        a.theta += shift;
        a.phi += shift;
        out.spins()[k] = spin_from_angles(a);
    }
    return out;
}

} // namespace rmdspin
