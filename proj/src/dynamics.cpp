#include "rmdspin/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace rmdspin {

void apply_x_step(SpinLattice& lattice, const StepParams& params) {
    const double angle = params.g * params.period;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    for (Spin3& sp : lattice.spins()) {
        const double y = sp.y;
        const double z = sp.z;
        sp.y = c * y - s * z;
        sp.z = s * y + c * z;
    }
}

void apply_z_step(SpinLattice& lattice, const StepParams& params) {
    const int n = lattice.n();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double angle = kappa(lattice, i, j, params.h) * params.period;
            const double c = std::cos(angle);
            const double s = std::sin(angle);
            Spin3& sp = lattice.at(i, j);
            const double x = sp.x;
            const double y = sp.y;
            sp.x = c * x - s * y;
            sp.y = s * x + c * y;
        }
    }
}

std::vector<EvolutionRecord> evolve(SpinLattice& lattice, DriveGenerator& gen,
                                    const StepParams& params, std::uint64_t n_steps,
                                    std::uint64_t record_every) {
    if (record_every == 0) {
        throw std::invalid_argument("evolve: record_every must be positive");
    }
    std::vector<EvolutionRecord> records;
    for (std::uint64_t k = 0; k < n_steps; ++k) {
        if (gen.next_label() == HamLabel::Z) {
            apply_z_step(lattice, params);
        } else {
            apply_x_step(lattice, params);
        }
        if (gen.cursor() % record_every == 0) {
            records.push_back({gen.cursor(), measure(lattice, params.g, params.h)});
        }
    }
    return records;
}

std::vector<EvolutionRecord> evolve_twin(SpinLattice& reference, SpinLattice& perturbed,
                                         DriveGenerator& gen, const StepParams& params,
                                         std::uint64_t n_steps, std::uint64_t record_every) {
    if (reference.n() != perturbed.n()) {
        throw std::invalid_argument("evolve_twin: lattice sizes differ");
    }
    if (record_every == 0) {
        throw std::invalid_argument("evolve_twin: record_every must be positive");
    }
    std::vector<EvolutionRecord> records;
    for (std::uint64_t k = 0; k < n_steps; ++k) {
        if (gen.next_label() == HamLabel::Z) {
            apply_z_step(reference, params);
            apply_z_step(perturbed, params);
        } else {
            apply_x_step(reference, params);
            apply_x_step(perturbed, params);
        }
        if (gen.cursor() % record_every == 0) {
            records.push_back({gen.cursor(), measure_twin(reference, perturbed,
                                                          params.g, params.h)});
        }
    }
    return records;
}

} // namespace rmdspin
