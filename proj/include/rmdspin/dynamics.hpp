#ifndef RMDSPIN_DYNAMICS_HPP
#define RMDSPIN_DYNAMICS_HPP

#include "rmdspin/drive.hpp"
#include "rmdspin/observables.hpp"
#include "rmdspin/spin_lattice.hpp"

#include <cstdint>
#include <vector>

namespace rmdspin {

struct StepParams {
    double g = 0.9045; // transverse field
    double h = 0.809;  // longitudinal field
    double period = 1.0 / 6.0; // T; rotation angles are g*T and kappa*T
};

// Stroboscopic snapshot at t = step * T.
struct EvolutionRecord {
    std::uint64_t step = 0;
    ObservableSet obs;
};

// Effective z-field at (i, j): sum of the four neighbours' Sz plus h,
// with periodic wrapping. The exact summation order here is the one the
// z-step uses, so independent evaluations agree bitwise.
inline double kappa(const SpinLattice& lat, int i, int j, double h) {
    const int n = lat.n();
    const int ip = (i + 1 == n) ? 0 : i + 1;
    const int im = (i == 0) ? n - 1 : i - 1;
    const int jp = (j + 1 == n) ? 0 : j + 1;
    const int jm = (j == 0) ? n - 1 : j - 1;
    return lat.at(ip, j).z + lat.at(im, j).z + lat.at(i, jp).z + lat.at(i, jm).z + h;
}

// One H_x period: every spin rotated about x by angle g*T. Sx is never
// written, so H_x is conserved bitwise.
void apply_x_step(SpinLattice& lattice, const StepParams& params);

// One H_z period: site (i, j) rotated about z by kappa_ij * T. kappa reads
// only Sz, which the rotation leaves untouched, so the in-place update is
// independent of site order and H_z is conserved bitwise.
void apply_z_step(SpinLattice& lattice, const StepParams& params);

// Applies n_steps labels from the generator to the lattice (in place) and
// returns snapshots at every step where cursor % record_every == 0.
std::vector<EvolutionRecord> evolve(SpinLattice& lattice, DriveGenerator& gen,
                                    const StepParams& params, std::uint64_t n_steps,
                                    std::uint64_t record_every);

// Same, driving both lattices with the identical label sequence; records
// include the decorrelator. Throws std::invalid_argument on size mismatch.
std::vector<EvolutionRecord> evolve_twin(SpinLattice& reference, SpinLattice& perturbed,
                                         DriveGenerator& gen, const StepParams& params,
                                         std::uint64_t n_steps, std::uint64_t record_every);

} // namespace rmdspin

#endif
