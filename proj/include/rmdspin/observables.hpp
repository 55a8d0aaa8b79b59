#ifndef RMDSPIN_OBSERVABLES_HPP
#define RMDSPIN_OBSERVABLES_HPP

#include "rmdspin/spin_lattice.hpp"

#include <optional>

namespace rmdspin {

// Decorrelator saturation value at infinite temperature.
inline constexpr double kDInfinity = 1.4142135623730951; // sqrt(2)

struct ObservableSet {
    double energy_z_density = 0.0;
    double energy_x_density = 0.0;
    double energy_ave_density = 0.0; // (Hz + Hx) / 2 per site
    double staggered_m = 0.0;
    double magnetization_z = 0.0;
    std::optional<double> decorrelator; // twin runs only
};

// Total H_z = sum_ij ( Sz_ij Sz_i+1,j + Sz_ij Sz_i,j+1 + h Sz_ij ), periodic.
double energy_z(const SpinLattice& lattice, double h);

// Total H_x = g * sum_ij Sx_ij.
double energy_x(const SpinLattice& lattice, double g);

// (1/N^2) sum_ij (-1)^(i+j) Sz_ij.
double staggered_magnetization(const SpinLattice& lattice);

// (1/N^2) sum_ij Sz_ij.
double magnetization_z(const SpinLattice& lattice);

// d = sqrt( (1/N^2) sum_ij |S_ij - S'_ij|^2 ). Per-spin normalization, so two
// independent uniformly random lattices give sqrt(2) and antipodal pairs give 2.
double decorrelator(const SpinLattice& a, const SpinLattice& b);

ObservableSet measure(const SpinLattice& lattice, double g, double h);
ObservableSet measure_twin(const SpinLattice& reference, const SpinLattice& perturbed,
                           double g, double h);

} // namespace rmdspin

#endif
