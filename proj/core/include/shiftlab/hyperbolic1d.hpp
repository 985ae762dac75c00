#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "shiftlab/core_types.hpp"
#include "shiftlab/measures.hpp"

namespace shiftlab {

struct AttractingCycle {
    int period = 0;
    Complex representative;
    Complex multiplier;
    std::vector<Complex> orbit;  // orbit[i + 1] = p(orbit[i]), cyclically
};

struct CriticalFate {
    enum class Kind { ConvergedToCycle, Escaped, Undetermined };
    Complex critical_point;
    Kind kind = Kind::Undetermined;
    int cycle = -1;       // index into attracting_cycles
    int steps = 0;        // iterations used
};

const char* to_string(CriticalFate::Kind kind);

struct HyperbolicityVerdict1D {
    bool is_hyperbolic = false;
    bool connected_julia = false;
    std::vector<AttractingCycle> attracting_cycles;
    std::vector<CriticalFate> critical_orbit_fates;
};

/// Follows every critical orbit for `horizon` steps, detects attracting cycles by near-return within tol.
HyperbolicityVerdict1D classify_hyperbolic(const Polynomial& p, int horizon = 2000, double tol = 1e-10);

/// Equilibrium samples of J_p (Brolin chains), same contract as sample_mu_p.
MeasureCloud julia_cloud_1d(const Polynomial& p, std::size_t count, std::uint64_t seed, int burn_in = 60);

/// Roughly uniform cover of J_p by the modified inverse iteration: the preimage tree is explored
/// breadth first and a branch is cut once its cell of side `cell` has been hit `max_hits` times.
MeasureCloud inverse_tree_cloud(const Polynomial& p, double cell, int max_hits = 2, std::size_t max_points = 400000,
                                std::uint64_t seed = 1);

struct DivergenceWitness {
    Complex z0;
    int sequence = -1;   // index of the perturbation sequence, -1 for the adversarial one
    double max_modulus = 0.0;
};

struct EtaDivergenceResult {
    bool passed = true;
    double target = 0.0;            // 10 R_p
    int worst_steps = 0;            // slowest escape among passing orbits
    std::optional<DivergenceWitness> witness;
};

/// R_p = 2 + sum_{i<d} |c_i|.
double divergence_radius(const Polynomial& p);

/// For every z0 and every draw of {w_n} in D(0; eta), z_n = p(z_{n-1}) + w_n must pass 10 R_p within
/// the horizon. Besides `draws` random sequences one adversarial sequence pulls toward the origin.
EtaDivergenceResult eta_divergence_test(const Polynomial& p, double eta, const std::vector<Complex>& z0s,
                                        std::size_t draws, int horizon, std::uint64_t seed = 1);

/// Bisection for the largest eta passing eta_divergence_test on [0, hi].
double eta_threshold(const Polynomial& p, const std::vector<Complex>& z0s, std::size_t draws, int horizon,
                     double hi = 1.0, int iterations = 30, std::uint64_t seed = 1);

}  // namespace shiftlab
