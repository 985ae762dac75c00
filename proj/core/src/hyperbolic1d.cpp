#include "shiftlab/hyperbolic1d.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

#include "shiftlab/parallel.hpp"
#include "shiftlab/potential.hpp"
#include "shiftlab/rng.hpp"
#include "shiftlab/roots.hpp"

namespace shiftlab {

const char* to_string(CriticalFate::Kind kind) {
    switch (kind) {
        case CriticalFate::Kind::ConvergedToCycle: return "ConvergedToCycle";
        case CriticalFate::Kind::Escaped: return "Escaped";
        case CriticalFate::Kind::Undetermined: return "Undetermined";
    }
    return "?";
}

namespace {

constexpr int kMaxPeriod = 64;

int find_cycle(const std::vector<AttractingCycle>& cycles, Complex z, double tol) {
    for (std::size_t c = 0; c < cycles.size(); ++c)
        for (const auto& w : cycles[c].orbit)
            if (std::abs(w - z) <= tol) return static_cast<int>(c);
    return -1;
}

}  // namespace

HyperbolicityVerdict1D classify_hyperbolic(const Polynomial& p, int horizon, double tol) {
    if (p.degree() < 2) throw ValidationError("degree too small: need d >= 2");
    HyperbolicityVerdict1D v;
    const double resc = green_escape_radius(p);
    for (const Complex c : critical_points(p)) {
        CriticalFate fate{c, CriticalFate::Kind::Undetermined, -1, 0};
        Complex z = c;
        std::vector<Complex> tail;
        for (int n = 1; n <= horizon; ++n) {
            z = p.eval(z);
            fate.steps = n;
            if (std::abs(z) > resc) {
                fate.kind = CriticalFate::Kind::Escaped;
                break;
            }
            tail.push_back(z);
            if (static_cast<int>(tail.size()) > kMaxPeriod + 1) tail.erase(tail.begin());
            // Near-return: the smallest q with |z_n - z_{n-q}| <= tol.
            int period = 0;
            for (int q = 1; q < static_cast<int>(tail.size()); ++q) {
                if (std::abs(tail.back() - tail[tail.size() - 1 - static_cast<std::size_t>(q)]) <= tol) {
                    period = q;
                    break;
                }
            }
            if (period == 0) continue;
            AttractingCycle cyc;
            cyc.period = period;
            cyc.representative = z;
            cyc.multiplier = 1.0;
            Complex w = z;
            for (int i = 0; i < period; ++i) {
                cyc.orbit.push_back(w);
                cyc.multiplier *= p.eval_deriv(w);
                w = p.eval(w);
            }
            if (std::abs(cyc.multiplier) >= 1.0) break;  // indifferent or repelling: Undetermined
            int idx = find_cycle(v.attracting_cycles, z, std::max(tol, 1e-8) * 10.0);
            if (idx < 0) {
                v.attracting_cycles.push_back(cyc);
                idx = static_cast<int>(v.attracting_cycles.size()) - 1;
            }
            fate.kind = CriticalFate::Kind::ConvergedToCycle;
            fate.cycle = idx;
            break;
        }
        v.critical_orbit_fates.push_back(fate);
    }
    v.is_hyperbolic = std::all_of(v.critical_orbit_fates.begin(), v.critical_orbit_fates.end(),
                                  [](const CriticalFate& f) { return f.kind != CriticalFate::Kind::Undetermined; });
    v.connected_julia = std::none_of(v.critical_orbit_fates.begin(), v.critical_orbit_fates.end(),
                                     [](const CriticalFate& f) { return f.kind == CriticalFate::Kind::Escaped; });
    return v;
}

MeasureCloud julia_cloud_1d(const Polynomial& p, std::size_t count, std::uint64_t seed, int burn_in) {
    return sample_mu_p(p, count, burn_in, seed);
}

MeasureCloud inverse_tree_cloud(const Polynomial& p, double cell, int max_hits, std::size_t max_points,
                                std::uint64_t seed) {
    if (!(cell > 0.0)) throw ValidationError("cell size must be positive");
    MeasureCloud cloud;
    cloud.provenance = Provenance::InverseTree;
    const Complex root = brolin_chain(p, 60, derive_seed(seed, 0)).back();
    std::unordered_map<std::uint64_t, int> hits;
    auto key = [&](Complex z) {
        const auto ix = static_cast<std::int64_t>(std::floor(z.real() / cell));
        const auto iy = static_cast<std::int64_t>(std::floor(z.imag() / cell));
        return (static_cast<std::uint64_t>(ix) << 32) ^ static_cast<std::uint64_t>(iy & 0xffffffff);
    };
    std::deque<Complex> queue{root};
    while (!queue.empty() && cloud.points.size() < max_points) {
        const Complex z = queue.front();
        queue.pop_front();
        int& h = hits[key(z)];
        if (h >= max_hits) continue;
        ++h;
        cloud.points.push_back(Point{z});
        for (const Complex w : preimages(p, z)) queue.push_back(w);
    }
    cloud.set_uniform_weights();
    return cloud;
}

double divergence_radius(const Polynomial& p) {
    double r = 2.0;
    for (int i = 0; i < p.degree(); ++i) r += std::abs(p.coeffs()[static_cast<std::size_t>(i)]);
    return r;
}

namespace {

// Returns the step at which |z| passed the target, or -1 with the largest modulus seen.
int run_perturbed(const Polynomial& p, Complex z, double eta, double target, int horizon, Rng* rng, double& max_mod) {
    max_mod = std::abs(z);
    for (int n = 1; n <= horizon; ++n) {
        const Complex pz = p.eval(z);
        Complex w;
        if (rng) {
            w = rng->in_disc(eta);
        } else {
            // Adversarial: the full budget pointed back at the origin.
            w = std::abs(pz) > 0.0 ? -eta * pz / std::abs(pz) : Complex{0.0, 0.0};
        }
        z = pz + w;
        max_mod = std::max(max_mod, std::abs(z));
        if (std::abs(z) > target) return n;
    }
    return -1;
}

}  // namespace

EtaDivergenceResult eta_divergence_test(const Polynomial& p, double eta, const std::vector<Complex>& z0s,
                                        std::size_t draws, int horizon, std::uint64_t seed) {
    EtaDivergenceResult res;
    res.target = 10.0 * divergence_radius(p);
    const std::size_t per = draws + 1;
    std::vector<int> steps(z0s.size() * per, 0);
    std::vector<double> maxmod(steps.size(), 0.0);
    parallel_for(steps.size(), [&](std::size_t t) {
        const std::size_t i = t / per, j = t % per;
        if (j == draws) {
            steps[t] = run_perturbed(p, z0s[i], eta, res.target, horizon, nullptr, maxmod[t]);
        } else {
            Rng rng(derive_seed(derive_seed(seed, i), j));
            steps[t] = run_perturbed(p, z0s[i], eta, res.target, horizon, &rng, maxmod[t]);
        }
    });
    for (std::size_t t = 0; t < steps.size(); ++t) {
        if (steps[t] < 0) {
            if (res.passed) {
                const std::size_t j = t % per;
                res.witness = DivergenceWitness{z0s[t / per], j == draws ? -1 : static_cast<int>(j), maxmod[t]};
            }
            res.passed = false;
        } else {
            res.worst_steps = std::max(res.worst_steps, steps[t]);
        }
    }
    return res;
}

double eta_threshold(const Polynomial& p, const std::vector<Complex>& z0s, std::size_t draws, int horizon, double hi,
                     int iterations, std::uint64_t seed) {
    double lo = 0.0;
    if (eta_divergence_test(p, hi, z0s, draws, horizon, seed).passed) return hi;
    for (int it = 0; it < iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (eta_divergence_test(p, mid, z0s, draws, horizon, seed).passed) lo = mid;
        else hi = mid;
    }
    return lo;
}

}  // namespace shiftlab
