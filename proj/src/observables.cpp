#include "rmdspin/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace rmdspin {

double energy_z(const SpinLattice& lattice, double h) {
    const int n = lattice.n();
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const int down = (i + 1 == n) ? 0 : i + 1;
        for (int j = 0; j < n; ++j) {
            const int right = (j + 1 == n) ? 0 : j + 1;
            const double sz = lattice.at(i, j).z;
            total += sz * lattice.at(down, j).z + sz * lattice.at(i, right).z + h * sz;
        }
    }
    return total;
}

double energy_x(const SpinLattice& lattice, double g) {
    double sum = 0.0;
    for (const Spin3& s : lattice.spins()) {
        sum += s.x;
    }
    return g * sum;
}

double staggered_magnetization(const SpinLattice& lattice) {
    const int n = lattice.n();
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double sign = ((i + j) & 1) ? -1.0 : 1.0;
            sum += sign * lattice.at(i, j).z;
        }
    }
    return sum / lattice.sites();
}

double magnetization_z(const SpinLattice& lattice) {
    double sum = 0.0;
    for (const Spin3& s : lattice.spins()) {
        sum += s.z;
    }
    return sum / lattice.sites();
}

double decorrelator(const SpinLattice& a, const SpinLattice& b) {
    if (a.n() != b.n()) {
        throw std::invalid_argument("decorrelator: lattice sizes differ");
    }
    const std::size_t total = a.spins().size();
    double sum = 0.0;
    for (std::size_t k = 0; k < total; ++k) {
        const Spin3& p = a.spins()[k];
        const Spin3& q = b.spins()[k];
        const double dx = p.x - q.x;
        const double dy = p.y - q.y;
        const double dz = p.z - q.z;
        sum += dx * dx + dy * dy + dz * dz;
    }
    return std::sqrt(sum / static_cast<double>(total));
}

ObservableSet measure(const SpinLattice& lattice, double g, double h) {
    ObservableSet obs;
    const double sites = static_cast<double>(lattice.sites());
    obs.energy_z_density = energy_z(lattice, h) / sites;
    obs.energy_x_density = energy_x(lattice, g) / sites;
    obs.energy_ave_density = 0.5 * (obs.energy_z_density + obs.energy_x_density);
    obs.staggered_m = staggered_magnetization(lattice);
    obs.magnetization_z = magnetization_z(lattice);
    return obs;
}

ObservableSet measure_twin(const SpinLattice& reference, const SpinLattice& perturbed,
                           double g, double h) {
    ObservableSet obs = measure(reference, g, h);
    obs.decorrelator = decorrelator(reference, perturbed);
    return obs;
}

} // namespace rmdspin
