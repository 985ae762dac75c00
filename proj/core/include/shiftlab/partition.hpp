#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "shiftlab/core_types.hpp"
#include "shiftlab/hyperbolic1d.hpp"
#include "shiftlab/measures.hpp"
#include "shiftlab/plane_cover.hpp"
#include "shiftlab/splitting.hpp"

namespace shiftlab {

/// Labels with no infinity symbol and at least one 0, in lexicographic order of (0, c) strings.
std::vector<PartitionLabel> admissible_labels(int nu);

struct JuliaCandidate {
    ShadowResult orbit;
    PartitionLabel pattern;  // symbols used to build the a = 0 pseudo-orbit
};

struct CandidateConfig {
    std::size_t per_label = 200;
    int burn_in = 100;
    int future = 60;
    int past = 24;
    double eps = 1e-3;   // G+ threshold
    int level = 20;
    std::uint64_t seed = 1;
};

/// Orbits near J_a, per admissible label: slots with symbol 0 follow equilibrium chains of p,
/// slots with symbol c follow a randomly chosen attracting cycle at a random phase. The a = 0
/// pseudo-orbit is shadowed and kept when G+ passes the threshold and the whole solved window,
/// past and future, stays inside the escape radius with a small recurrence defect.
std::vector<JuliaCandidate> julia_candidates(const ShiftSpec& s, const HyperbolicityVerdict1D& hv,
                                             const CandidateConfig& cfg);

struct LabeledPoint {
    Point z;
    PartitionLabel label;
    bool violation = false;   // some infinity symbol, or every symbol c
    int group = -1;           // m: fewest zeros along the forward nu-block orbit
    PartitionLabel home;      // first label on that orbit attaining m
    bool invariant = false;   // image under the nu-block lands in the same group
    std::string limit;        // labels seen over the second half of the orbit, joined by '|'
};

struct PartitionReport {
    std::vector<LabeledPoint> points;
    std::size_t samples = 0;
    std::size_t violations = 0;
    double violation_fraction = 0.0;
    bool violations_ok = true;                   // violation fraction <= 1%
    std::map<int, std::size_t> group_sizes;      // m -> count
    std::map<std::string, std::size_t> label_counts;
    std::map<std::string, std::size_t> limit_counts;
    double invariance = 0.0;                     // fraction with an invariant group
    int blocks = 8;
    double a = 0.0;
};

/// For k = 3 the three sets carry names: (0,c) -> J1, (c,0) -> J2, (0,0) -> J3. Empty otherwise.
std::string set_name(int k, const PartitionLabel& label);

/// Labels each candidate by the cover symbols of its last nu coordinates, then groups by the visit
/// logic along `blocks` forward nu-blocks of its orbit.
PartitionReport partition_julia(const ShiftSpec& s, const PlaneCover& cover,
                                const std::vector<JuliaCandidate>& candidates, int blocks = 8);

/// Same, for bare points; the nu-block orbit is computed by forward iteration.
PartitionReport partition_julia(const ShiftSpec& s, const PlaneCover& cover, const MeasureCloud& candidates,
                                int blocks = 8);

}  // namespace shiftlab
