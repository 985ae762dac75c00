#pragma once

#include <cstdint>
#include <random>

#include "shiftlab/core_types.hpp"

namespace shiftlab {

/// Independent stream seed for item `index` of a run seeded with `seed` (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Deterministic random source. Uniforms are built from raw 64-bit draws so results do not
/// depend on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform();                        // [0, 1)
    double uniform(double lo, double hi);
    std::size_t index(std::size_t n);        // {0, ..., n-1}
    Complex in_disc(double radius);          // uniform in the closed disc
    Complex on_circle(double radius);
    double normal();

private:
    std::mt19937_64 engine_;
};

/// i-th element of the van der Corput sequence in the given base (the Halton coordinate).
double halton(std::uint64_t i, unsigned base);
/// First n primes, for Halton bases.
std::vector<unsigned> first_primes(std::size_t n);

}  // namespace shiftlab
