#ifndef RMDSPIN_RNG_HPP
#define RMDSPIN_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace rmdspin {

// splitmix64 step; used for seed scrambling only, never as the main stream.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Deterministic seed derivation: absorbing the same components always yields
// the same stream seed, independent of platform and thread schedule.
inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x8f1bbcdcbfa53e0bull;
    for (std::uint64_t p : parts) {
        h = splitmix64(h ^ splitmix64(p));
    }
    return h;
}

inline std::mt19937_64 make_engine(std::uint64_t derived_seed) {
    return std::mt19937_64(splitmix64(derived_seed));
}

// Engine for a per-site draw; (seed, site) fully determines the stream, so
// lattice construction does not depend on iteration order.
inline std::mt19937_64 site_engine(std::uint64_t seed, std::uint64_t site_index) {
    return make_engine(derive_seed({seed, site_index}));
}

} // namespace rmdspin

#endif
