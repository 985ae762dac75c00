#pragma once

#include <cstdint>

#include "shiftlab/core_types.hpp"

namespace shiftlab {

/// Which piece of the filtration C^k = V_R u V_R^+ u V_R^- a point lies in.
/// `index` is the 1-based dominating coordinate (0 for Inner).
struct RegionLabel {
    enum class Kind { Inner, PlusCone, MinusCone };
    Kind kind = Kind::Inner;
    int index = 0;
    friend bool operator==(const RegionLabel&, const RegionLabel&) = default;
};

const char* to_string(RegionLabel::Kind kind);

struct OrbitVerdict {
    enum class Kind { Bounded, Escaping, Undetermined };
    Kind kind = Kind::Undetermined;
    int entry_step = -1;  // first step in V_R^+ when Escaping
    int horizon = 0;
};

const char* to_string(OrbitVerdict::Kind kind);

/// Inner if every |z_i| <= R, else the cone of argmax |z_i| (ties go to the smallest index).
RegionLabel classify_point(const ShiftSpec& s, double R, const Point& z);

struct FiltrationCheck {
    bool growth_ok = false;
    bool invariance_ok = false;
    std::size_t samples = 0;
    std::size_t failures = 0;
    [[nodiscard]] bool ok() const noexcept { return growth_ok && invariance_ok; }
};

/// Sampled certificate at a fixed R: |p(w)| >= (1 + amax)|w| + margin on rings |w| >= R, and
/// S_a(V_R^+) lands in V_R^+ for `samples` points of the boundary shells, |a| <= amax.
FiltrationCheck check_filtration(const ShiftSpec& s, double amax, double R, std::size_t samples = 10000,
                                 std::uint64_t seed = 1);

/// Smallest R in the doubling sequence 0.25, 0.5, ... passing check_filtration.
/// Throws NumericalError past 1e8.
double find_filtration_radius(const ShiftSpec& s, double amax, std::size_t samples = 10000);

/// Escaping(n0) once the forward orbit enters V_R^+; Bounded when it stays out of V_R^+ for
/// horizon >= 1 steps and ends Inner; Undetermined otherwise.
OrbitVerdict orbit_verdict(const ShiftSpec& s, double R, const Point& z, int horizon);

/// True when no backward iterate through `horizon` steps enters V_R^- or escapes.
bool backward_bounded(const ShiftSpec& s, double R, const Point& z, int horizon);

/// Fraction of uniform samples of V_R that are backward bounded together with all 3^k - 1
/// neighbours at spacing R/100 (offsets of -delta, 0, +delta on the real part of each coordinate).
double k_minus_interior_fraction(const ShiftSpec& s, double R, std::size_t samples, int horizon,
                                 std::uint64_t seed = 1);

struct KMinusContainment {
    std::size_t bounded = 0;        // backward-bounded samples found
    std::size_t in_union = 0;       // of those, inside V_R u V_R^+
    std::size_t in_intersection = 0;  // of those, inside V_R n V_R^+
};

/// Checks both readings of where K_a^- sits. Samples are S_a^horizon(y), y uniform in V_R, kept when
/// their backward orbit stays bounded for `horizon` steps.
KMinusContainment k_minus_containment(const ShiftSpec& s, double R, std::size_t samples, int horizon,
                                      std::uint64_t seed = 1);

}  // namespace shiftlab
