#include "shiftlab/rng.hpp"

#include <cmath>
#include <numbers>

namespace shiftlab {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::size_t Rng::index(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

Complex Rng::in_disc(double radius) {
    const double r = radius * std::sqrt(uniform());
    return std::polar(r, 2.0 * std::numbers::pi * uniform());
}

Complex Rng::on_circle(double radius) { return std::polar(radius, 2.0 * std::numbers::pi * uniform()); }

double Rng::normal() {
    // Box-Muller; 1 - u keeps the log argument positive.
    const double u = 1.0 - uniform();
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

double halton(std::uint64_t i, unsigned base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= base;
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

std::vector<unsigned> first_primes(std::size_t n) {
    std::vector<unsigned> primes;
    for (unsigned c = 2; primes.size() < n; ++c) {
        bool prime = true;
        for (unsigned q : primes) {
            if (q * q > c) break;
            if (c % q == 0) { prime = false; break; }
        }
        if (prime) primes.push_back(c);
    }
    return primes;
}

}  // namespace shiftlab
