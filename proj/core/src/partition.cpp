#include "shiftlab/partition.hpp"

#include <algorithm>
#include <cmath>

#include "shiftlab/dynamics.hpp"
#include "shiftlab/parallel.hpp"
#include "shiftlab/potential.hpp"
#include "shiftlab/rng.hpp"

namespace shiftlab {

std::vector<PartitionLabel> admissible_labels(int nu) {
    if (nu < 1) throw ValidationError("nu out of range");
    std::vector<PartitionLabel> out;
    for (unsigned mask = 0; mask < (1u << nu); ++mask) {
        PartitionLabel l(static_cast<std::size_t>(nu));
        bool any_zero = false;
        for (int i = 0; i < nu; ++i) {
            // bit set -> c; mask 0 is (0,...,0)
            const bool c = (mask >> (nu - 1 - i)) & 1u;
            l[static_cast<std::size_t>(i)] = c ? Symbol::C : Symbol::Zero;
            any_zero = any_zero || !c;
        }
        if (any_zero) out.push_back(std::move(l));
    }
    return out;
}

std::vector<JuliaCandidate> julia_candidates(const ShiftSpec& s, const HyperbolicityVerdict1D& hv,
                                             const CandidateConfig& cfg) {
    validate_shift(s);
    if (cfg.burn_in < cfg.future) throw ValidationError("burn_in must cover the future window");
    const auto labels = admissible_labels(s.nu);
    const bool needs_cycle = labels.size() > 1;
    if (needs_cycle && hv.attracting_cycles.empty())
        throw ValidationError("labels with symbol c need an attracting cycle of p");
    const double radius = green_escape_radius(s.p);
    const std::size_t total = labels.size() * cfg.per_label;
    std::vector<JuliaCandidate> cand(total);
    std::vector<char> keep(total, 0);
    parallel_for(total, [&](std::size_t idx) {
        const auto& label = labels[idx / cfg.per_label];
        Rng rng(derive_seed(cfg.seed, 2 * idx + 1));
        std::vector<ResidueChain> chains(static_cast<std::size_t>(s.nu));
        for (int t = 0; t < s.nu; ++t) {
            const int r = (s.k - s.nu + t) % s.nu;
            ResidueChain c;
            if (label[static_cast<std::size_t>(t)] == Symbol::Zero) {
                c = expanding_chain(s.p, cfg.burn_in, cfg.past, derive_seed(cfg.seed, 2 * idx * 64 + 2 + static_cast<std::uint64_t>(t)));
                c.values.resize(static_cast<std::size_t>(c.past + cfg.future + 1));
            } else {
                const auto& cyc = hv.attracting_cycles[rng.index(hv.attracting_cycles.size())].orbit;
                c = cycle_chain(cyc, static_cast<int>(rng.index(cyc.size())), cfg.past, cfg.future);
            }
            chains[static_cast<std::size_t>(r)] = std::move(c);
        }
        ShadowResult sh = shadow_point(s, chains);
        if (!sh.point.all_finite()) return;
        // Backward iteration loses about log10(1/|a|) digits per step, so G- at these points is
        // dominated by roundoff; the solved two-sided window stands in for backward boundedness.
        bool bounded = sh.residual <= 1e-10;
        for (const Complex u : sh.sequence) bounded = bounded && std::abs(u) <= radius;
        if (bounded && green_plus(s, sh.point, cfg.level).value < cfg.eps) {
            cand[idx] = {std::move(sh), label};
            keep[idx] = 1;
        }
    });
    std::vector<JuliaCandidate> out;
    for (std::size_t i = 0; i < total; ++i)
        if (keep[i]) out.push_back(std::move(cand[i]));
    return out;
}

std::string set_name(int k, const PartitionLabel& label) {
    if (k != 3 || label.size() != 2) return "";
    const Symbol a = label[0], b = label[1];
    if (a == Symbol::Zero && b == Symbol::C) return "J1";
    if (a == Symbol::C && b == Symbol::Zero) return "J2";
    if (a == Symbol::Zero && b == Symbol::Zero) return "J3";
    return "";
}

namespace {

bool is_violation(const PartitionLabel& l) {
    bool all_c = true;
    for (Symbol x : l) {
        if (x == Symbol::Inf) return true;
        all_c = all_c && x == Symbol::C;
    }
    return all_c;
}

int zeros(const PartitionLabel& l) {
    return static_cast<int>(std::count(l.begin(), l.end(), Symbol::Zero));
}

// orbit[j] is the state after j nu-blocks, j = 0..blocks + 1.
LabeledPoint label_orbit(const ShiftSpec& s, const PlaneCover& cover, const std::vector<Point>& orbit, int blocks) {
    LabeledPoint lp;
    lp.z = orbit.front();
    lp.label = label_of(s, cover, lp.z);
    lp.violation = is_violation(lp.label);
    auto group_from = [&](std::size_t first, PartitionLabel* home) {
        int m = s.nu + 1;
        for (std::size_t j = first; j < first + static_cast<std::size_t>(blocks) && j < orbit.size(); ++j) {
            const PartitionLabel l = label_of(s, cover, orbit[j]);
            if (is_violation(l)) continue;
            if (zeros(l) < m) {
                m = zeros(l);
                if (home) *home = l;
            }
        }
        return m > s.nu ? -1 : m;
    };
    lp.group = group_from(0, &lp.home);
    lp.invariant = lp.group >= 0 && group_from(1, nullptr) == lp.group;
    std::vector<std::string> seen;
    for (std::size_t j = static_cast<std::size_t>(blocks) / 2; j <= static_cast<std::size_t>(blocks) && j < orbit.size(); ++j) {
        const std::string l = label_string(label_of(s, cover, orbit[j]));
        if (std::find(seen.begin(), seen.end(), l) == seen.end()) seen.push_back(l);
    }
    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 0; i < seen.size(); ++i) lp.limit += (i ? "|" : "") + seen[i];
    return lp;
}

PartitionReport summarize(const ShiftSpec& s, std::vector<LabeledPoint> pts, int blocks) {
    PartitionReport rep;
    rep.blocks = blocks;
    rep.a = std::abs(s.a);
    rep.samples = pts.size();
    std::size_t inv = 0;
    for (const auto& p : pts) {
        if (p.violation) ++rep.violations;
        if (p.invariant) ++inv;
        ++rep.group_sizes[p.group];
        ++rep.label_counts[label_string(p.label)];
        ++rep.limit_counts[p.limit];
    }
    if (!pts.empty()) {
        rep.violation_fraction = static_cast<double>(rep.violations) / static_cast<double>(pts.size());
        rep.invariance = static_cast<double>(inv) / static_cast<double>(pts.size());
    }
    rep.violations_ok = rep.violation_fraction <= 0.01;
    rep.points = std::move(pts);
    return rep;
}

}  // namespace

PartitionReport partition_julia(const ShiftSpec& s, const PlaneCover& cover,
                                const std::vector<JuliaCandidate>& candidates, int blocks) {
    if (blocks < 1) throw ValidationError("partition needs at least one block");
    std::vector<LabeledPoint> pts(candidates.size());
    parallel_for(candidates.size(), [&](std::size_t i) {
        const ShadowResult& sh = candidates[i].orbit;
        std::vector<Point> orbit{sh.state(0, s.k)};
        for (int j = 1; j <= blocks + 1; ++j) {
            const int n = j * s.nu;
            orbit.push_back(n <= sh.orbit_max ? sh.state(n, s.k) : forward_block(s, orbit.back()));
        }
        pts[i] = label_orbit(s, cover, orbit, blocks);
    });
    return summarize(s, std::move(pts), blocks);
}

PartitionReport partition_julia(const ShiftSpec& s, const PlaneCover& cover, const MeasureCloud& candidates,
                                int blocks) {
    if (blocks < 1) throw ValidationError("partition needs at least one block");
    std::vector<LabeledPoint> pts(candidates.size());
    parallel_for(candidates.size(), [&](std::size_t i) {
        require_dimension(s, candidates.points[i]);
        std::vector<Point> orbit{candidates.points[i]};
        for (int j = 1; j <= blocks + 1; ++j) {
            Point next = forward_block(s, orbit.back());
            if (!next.all_finite() || next.sup_norm() > kEscapeMagnitude) break;
            orbit.push_back(std::move(next));
        }
        pts[i] = label_orbit(s, cover, orbit, blocks);
    });
    return summarize(s, std::move(pts), blocks);
}

}  // namespace shiftlab
