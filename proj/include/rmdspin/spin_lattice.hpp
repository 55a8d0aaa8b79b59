#ifndef RMDSPIN_SPIN_LATTICE_HPP
#define RMDSPIN_SPIN_LATTICE_HPP

#include <cstdint>
#include <vector>

namespace rmdspin {

// Classical spin: unit vector on S^2, stored in Cartesian components.
struct Spin3 {
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;
};

// Polar/azimuthal parametrization of a unit vector.
struct AngleParams {
    double theta = 0.0; // polar, measured from +z
    double phi = 0.0;   // azimuthal
};

Spin3 spin_from_angles(const AngleParams& a);

// Inverse of spin_from_angles. phi is undefined at the poles; we pin it to 0
// whenever sin(theta) < 1e-14.
AngleParams angles_from_spin(const Spin3& s);

// N x N grid of unit spins, row-major, periodic in both directions.
// Site (i, j) lives at index i*N + j.
class SpinLattice {
public:
    explicit SpinLattice(int n_linear);

    int n() const { return n_; }
    int sites() const { return n_ * n_; }

    Spin3& at(int i, int j) { return spins_[static_cast<std::size_t>(i) * n_ + j]; }
    const Spin3& at(int i, int j) const { return spins_[static_cast<std::size_t>(i) * n_ + j]; }

    std::vector<Spin3>& spins() { return spins_; }
    const std::vector<Spin3>& spins() const { return spins_; }

    // Largest |  ||S|| - 1 | over all sites.
    double max_norm_deviation() const;

private:
    int n_;
    std::vector<Spin3> spins_;
};

// Builds a lattice from per-site angle grids. Both grids must be the same
// perfect-square length; throws std::invalid_argument otherwise.
SpinLattice from_angles(const std::vector<double>& theta_grid,
                        const std::vector<double>& phi_grid);

// Neel state with angular noise: theta ~ Normal(0, 2*pi*W), phi ~ U[0, 2pi).
// On the (i+j)-odd sublattice the polar angle is flipped, theta' = pi - theta,
// so both sublattices carry identical noise statistics.
SpinLattice init_neel(int n_linear, double width, std::uint64_t seed);

// Same draw as init_neel without the sublattice flip: spins scattered
// around +z everywhere.
SpinLattice init_polarized(int n_linear, double width, std::uint64_t seed);

// Twin-trajectory perturbation: per site one standard normal delta is added,
// scaled by 2*pi*delta_scale, to both recovered angles. The source lattice is
// left untouched.
SpinLattice perturb_copy(const SpinLattice& source, double delta_scale, std::uint64_t seed);

} // namespace rmdspin

#endif
