#include "shiftlab/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "shiftlab/dynamics.hpp"
#include "shiftlab/parallel.hpp"
#include "shiftlab/rng.hpp"

namespace shiftlab {

const char* to_string(RegionLabel::Kind kind) {
    switch (kind) {
        case RegionLabel::Kind::Inner: return "Inner";
        case RegionLabel::Kind::PlusCone: return "PlusCone";
        case RegionLabel::Kind::MinusCone: return "MinusCone";
    }
    return "?";
}

const char* to_string(OrbitVerdict::Kind kind) {
    switch (kind) {
        case OrbitVerdict::Kind::Bounded: return "Bounded";
        case OrbitVerdict::Kind::Escaping: return "Escaping";
        case OrbitVerdict::Kind::Undetermined: return "Undetermined";
    }
    return "?";
}

RegionLabel classify_point(const ShiftSpec& s, double R, const Point& z) {
    require_dimension(s, z);
    if (!(R > 0.0)) throw ValidationError("filtration radius must be positive");
    std::size_t best = 0;
    double best_abs = -1.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double m = std::abs(z[i]);
        if (m > best_abs || std::isnan(m)) {
            best = i;
            best_abs = std::isnan(m) ? INFINITY : m;
        }
    }
    if (best_abs <= R) return {RegionLabel::Kind::Inner, 0};
    const int index = static_cast<int>(best) + 1;
    return {index > s.k - s.nu ? RegionLabel::Kind::PlusCone : RegionLabel::Kind::MinusCone, index};
}

FiltrationCheck check_filtration(const ShiftSpec& s, double amax, double R, std::size_t samples, std::uint64_t seed) {
    FiltrationCheck out;
    const double margin_rel = 0.01;
    out.growth_ok = true;
    for (int ring = 0; ring < 64 && out.growth_ok; ++ring) {
        const double r = R * std::pow(2.0, ring / 8.0);
        for (int j = 0; j < 64; ++j) {
            const Complex w = std::polar(r, 2.0 * std::numbers::pi * j / 64.0);
            if (std::abs(s.p.eval(w)) < (1.0 + amax) * r + margin_rel * r) {
                out.growth_ok = false;
                break;
            }
        }
    }

    std::vector<char> fail(samples, 0);
    const int k = s.k, nu = s.nu;
    parallel_for(samples, [&](std::size_t n) {
        Rng rng(derive_seed(seed, n));
        ShiftSpec sa = s;
        // Half the samples sit at the worst modulus |a| = amax, the rest spread over the disc.
        const double mod = (n % 2 == 0) ? amax : amax * std::sqrt(rng.uniform());
        sa.a = std::polar(mod, 2.0 * std::numbers::pi * rng.uniform());
        const int dom = k - nu + static_cast<int>(rng.index(static_cast<std::size_t>(nu)));
        // Shell radii concentrate near R, where the certificate is tightest.
        const double r = R * (1.0 + 3.0 * rng.uniform() * rng.uniform());
        Point z(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) {
            const double ri = (rng.uniform() < 0.3) ? r : r * std::sqrt(rng.uniform());
            z[static_cast<std::size_t>(i)] = std::polar(ri, 2.0 * std::numbers::pi * rng.uniform());
        }
        z[static_cast<std::size_t>(dom)] = std::polar(r, 2.0 * std::numbers::pi * rng.uniform());
        if (classify_point(sa, R, z).kind != RegionLabel::Kind::PlusCone) return;
        if (classify_point(sa, R, apply_shift(sa, z)).kind != RegionLabel::Kind::PlusCone) fail[n] = 1;
    });
    out.samples = samples;
    out.failures = static_cast<std::size_t>(std::count(fail.begin(), fail.end(), 1));
    out.invariance_ok = out.failures == 0;
    return out;
}

double find_filtration_radius(const ShiftSpec& s, double amax, std::size_t samples) {
    validate_shift(s);
    if (!(amax > 0.0 && amax < 1.0)) throw ValidationError("|a|max must lie in (0, 1)");
    for (double R = 0.25; R <= 1e8; R *= 2.0) {
        if (check_filtration(s, amax, R, samples).ok()) return R;
    }
    std::ostringstream msg;
    msg << "no filtration radius up to 1e8 for |a|max = " << amax;
    throw NumericalError(msg.str());
}

OrbitVerdict orbit_verdict(const ShiftSpec& s, double R, const Point& z, int horizon) {
    OrbitVerdict v{OrbitVerdict::Kind::Undetermined, -1, horizon};
    Point x = z;
    RegionLabel label = classify_point(s, R, x);
    for (int n = 0;; ++n) {
        if (label.kind == RegionLabel::Kind::PlusCone || is_escaped(x)) {
            v.kind = OrbitVerdict::Kind::Escaping;
            v.entry_step = n;
            return v;
        }
        if (n == horizon) break;
        x = apply_shift(s, x);
        label = classify_point(s, R, x);
    }
    if (horizon >= 1 && label.kind == RegionLabel::Kind::Inner) v.kind = OrbitVerdict::Kind::Bounded;
    return v;
}

bool backward_bounded(const ShiftSpec& s, double R, const Point& z, int horizon) {
    Point x = z;
    for (int n = 0; n <= horizon; ++n) {
        if (is_escaped(x) || classify_point(s, R, x).kind == RegionLabel::Kind::MinusCone) return false;
        if (n < horizon) x = apply_shift_inverse(s, x);
    }
    return true;
}

namespace {

Point uniform_in_polydisc(Rng& rng, int k, double R) {
    Point z(static_cast<std::size_t>(k));
    for (auto& c : z) c = rng.in_disc(R);
    return z;
}

}  // namespace

double k_minus_interior_fraction(const ShiftSpec& s, double R, std::size_t samples, int horizon, std::uint64_t seed) {
    validate_shift(s);
    if (!(std::abs(s.a) > 0.0 && std::abs(s.a) < 1.0)) throw ValidationError("need 0 < |a| < 1");
    if (samples == 0) return 0.0;
    const double delta = R / 100.0;
    const int k = s.k;
    int neighbours = 1;
    for (int i = 0; i < k; ++i) neighbours *= 3;
    std::vector<char> hit(samples, 0);
    parallel_for(samples, [&](std::size_t n) {
        Rng rng(derive_seed(seed, n));
        const Point z = uniform_in_polydisc(rng, k, R);
        if (!backward_bounded(s, R, z, horizon)) return;
        for (int code = 0; code < neighbours; ++code) {
            Point y = z;
            int c = code;
            for (int i = 0; i < k; ++i, c /= 3) y[static_cast<std::size_t>(i)] += delta * static_cast<double>(c % 3 - 1);
            if (!backward_bounded(s, R, y, horizon)) return;
        }
        hit[n] = 1;
    });
    return static_cast<double>(std::count(hit.begin(), hit.end(), 1)) / static_cast<double>(samples);
}

KMinusContainment k_minus_containment(const ShiftSpec& s, double R, std::size_t samples, int horizon, std::uint64_t seed) {
    KMinusContainment out;
    for (std::size_t n = 0; n < samples; ++n) {
        Rng rng(derive_seed(seed, n));
        // K^- has measure zero, so sample it at this horizon: S^h(y) for y in V_R has a backward
        // orbit that returns to y in h steps.
        const IterateResult fw = iterate(s, uniform_in_polydisc(rng, s.k, R), horizon);
        if (fw.escaped()) continue;
        const Point& z = fw.point;
        if (!backward_bounded(s, R, z, horizon)) continue;
        ++out.bounded;
        const auto label = classify_point(s, R, z);
        if (label.kind == RegionLabel::Kind::Inner || label.kind == RegionLabel::Kind::PlusCone) ++out.in_union;
        // V_R n V_R^+ needs max |z_i| = R attained on a tail coordinate.
        if (label.kind == RegionLabel::Kind::Inner) {
            double m = 0.0;
            for (int i = s.k - s.nu; i < s.k; ++i) m = std::max(m, std::abs(z[static_cast<std::size_t>(i)]));
            if (m >= R && m >= z.sup_norm()) ++out.in_intersection;
        }
    }
    return out;
}

}  // namespace shiftlab
