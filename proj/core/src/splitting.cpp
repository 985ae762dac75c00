#include "shiftlab/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "shiftlab/dynamics.hpp"
#include "shiftlab/parallel.hpp"

namespace shiftlab {

std::string label_string(const PartitionLabel& label) {
    std::string s = "(";
    for (std::size_t i = 0; i < label.size(); ++i) {
        if (i) s += ',';
        s += symbol_char(label[i]);
    }
    return s + ")";
}

PartitionLabel label_of(const ShiftSpec& s, const PlaneCover& cover, const Point& z) {
    PartitionLabel l;
    for (int i = s.k - s.nu; i < s.k; ++i) l.push_back(cover.symbol_at(z[static_cast<std::size_t>(i)]));
    return l;
}

namespace {

// Eigenvector for tail slot i (1-based) from the closed form; entries are 1-based positions.
ComplexVector closed_form_vector(const Polynomial& p, int k, int nu, const Point& z, int i) {
    const int m = k / nu, r = k % nu;
    const Complex w = z[static_cast<std::size_t>(k - nu + i - 1)];
    ComplexVector v = ComplexVector::Zero(k);
    for (int j = 0; j <= m; ++j) {
        int pos, e;
        if (i > nu - r) {
            pos = i - nu + r + j * nu;
            e = k - nu - m + j;
        } else {
            pos = j * nu + i + r;
            e = k - nu - m + 1 + j;
        }
        if (pos < 1 || pos > k) continue;
        v(pos - 1) = p.iterate_deriv(w, e);
    }
    return v;
}

}  // namespace

Splitting eigen_split(const ShiftSpec& s, const Point& z) {
    require_dimension(s, z);
    if (s.a != Complex{0.0, 0.0}) throw ValidationError("eigen_split needs a = 0");
    Splitting sp;
    sp.z = z;
    sp.k = s.k;
    sp.nu = s.nu;
    for (int j = 0; j < s.k - s.nu; ++j) {
        ComplexVector e = ComplexVector::Zero(s.k);
        e(j) = 1.0;
        sp.e0.push_back(e);
    }
    for (int i = 1; i <= s.nu; ++i) {
        SplitFactor f;
        f.tail = i;
        f.eigenvalue = s.p.iterate_deriv(z[static_cast<std::size_t>(s.k - s.nu + i - 1)], s.k - s.nu);
        f.vector = closed_form_vector(s.p, s.k, s.nu, z, i);
        sp.factors.push_back(std::move(f));
    }
    return sp;
}

double eigen_residual(const ShiftSpec& s, const Splitting& sp) {
    ShiftSpec s0 = s;
    s0.a = 0.0;
    const ComplexMatrix DF = jacobian(s0, sp.z, s.eta());
    double worst = 0.0;
    for (const auto& f : sp.factors) worst = std::max(worst, (DF * f.vector - f.eigenvalue * f.vector).norm());
    for (const auto& e : sp.e0) worst = std::max(worst, (DF * e).norm());
    return worst;
}

double AdaptedFrame::unstable_norm(const ComplexVector& v) const {
    double u = 0.0;
    for (int i = 0; i < nu; ++i)
        if (label[static_cast<std::size_t>(i)] == Symbol::Zero) u += std::abs(v(k - nu + i));
    return u;
}

double AdaptedFrame::stable_norm(const ComplexVector& v) const {
    ComplexVector h = v.head(k - nu);
    double c = 0.0;
    for (int i = 0; i < nu; ++i) {
        const Complex t = v(k - nu + i);
        if (label[static_cast<std::size_t>(i)] == Symbol::Zero) h -= t * basis[static_cast<std::size_t>(i)].head(k - nu);
        else c += weight[static_cast<std::size_t>(i)] * std::abs(t);
    }
    return head_weight * h.norm() + c;
}

bool AdaptedFrame::in_unstable_cone(const ComplexVector& v, double rho) const {
    return stable_norm(v) < rho * unstable_norm(v);
}

bool AdaptedFrame::in_stable_cone(const ComplexVector& v, double rho) const {
    return unstable_norm(v) < rho * stable_norm(v);
}

AdaptedFrame adapted_frame(const ShiftSpec& s, const PlaneCover& cover, const Point& z, double head_weight) {
    require_dimension(s, z);
    AdaptedFrame f;
    f.k = s.k;
    f.nu = s.nu;
    f.head_weight = head_weight;
    f.label = label_of(s, cover, z);
    for (int i = 1; i <= s.nu; ++i) {
        const Complex w = z[static_cast<std::size_t>(s.k - s.nu + i - 1)];
        if (!cover.in_box(w)) throw ValidationError("point outside the cover box");
        ComplexVector b = ComplexVector::Zero(s.k);
        double weight = 1.0;
        if (f.label[static_cast<std::size_t>(i - 1)] == Symbol::Zero) {
            const ComplexVector v = closed_form_vector(s.p, s.k, s.nu, z, i);
            const Complex lead = v(s.k - s.nu + i - 1);
            if (std::abs(lead) > 0.0) b = v / lead;
            else b(s.k - s.nu + i - 1) = 1.0;
        } else {
            b(s.k - s.nu + i - 1) = 1.0;
            weight = 1.0 / std::max(cover.boundary_distance(w), 0.5 * cover.cell());
        }
        f.basis.push_back(std::move(b));
        f.weight.push_back(weight);
    }
    return f;
}

double adapted_norm(const ShiftSpec& s, const PlaneCover& cover, const Point& z, const ComplexVector& v,
                    double head_weight) {
    return adapted_frame(s, cover, z, head_weight).norm(v);
}

namespace {

struct SampleOutcome {
    bool boundary = false;
    bool pass_u = false;
    bool pass_s = false;
    bool at_collar_boundary = false;
    double min_expansion = std::numeric_limits<double>::infinity();
    double max_contraction = 0.0;
    std::string label;
    Point z;
};

bool tail_near_boundary(const ShiftSpec& s, const PlaneCover& cover, const Point& z) {
    for (int i = s.k - s.nu; i < s.k; ++i)
        if (cover.near_boundary(z[static_cast<std::size_t>(i)])) return true;
    return false;
}

bool tail_in_box(const ShiftSpec& s, const PlaneCover& cover, const Point& z) {
    for (int i = s.k - s.nu; i < s.k; ++i)
        if (!cover.in_box(z[static_cast<std::size_t>(i)])) return false;
    return true;
}

// Stable directions of a frame, each normalised to ||b||_s = 1, ||b||_u = 0.
std::vector<ComplexVector> stable_directions(const AdaptedFrame& f) {
    std::vector<ComplexVector> out;
    for (int j = 0; j < f.k - f.nu; ++j) {
        ComplexVector e = ComplexVector::Zero(f.k);
        e(j) = 1.0 / f.head_weight;
        out.push_back(std::move(e));
    }
    for (int i = 0; i < f.nu; ++i)
        if (f.label[static_cast<std::size_t>(i)] != Symbol::Zero)
            out.push_back(f.basis[static_cast<std::size_t>(i)] / f.weight[static_cast<std::size_t>(i)]);
    return out;
}

std::vector<ComplexVector> unstable_directions(const AdaptedFrame& f) {
    std::vector<ComplexVector> out;
    for (int i = 0; i < f.nu; ++i)
        if (f.label[static_cast<std::size_t>(i)] == Symbol::Zero) out.push_back(f.basis[static_cast<std::size_t>(i)]);
    return out;
}

SampleOutcome check_sample(const ShiftSpec& s, const PlaneCover& cover, const ShadowResult& orb, double rho, int N,
                           const ConeConfig& cfg) {
    SampleOutcome o;
    const int k = s.k, steps = N * s.eta();
    o.z = orb.state(0, k);
    o.label = label_string(label_of(s, cover, o.z));
    o.at_collar_boundary = tail_near_boundary(s, cover, o.z);
    if (!tail_in_box(s, cover, o.z) || orb.orbit_max < steps || orb.orbit_min > -steps) {
        o.boundary = true;
        return o;
    }
    const AdaptedFrame f0 = adapted_frame(s, cover, o.z, cfg.head_weight);
    const double lam_n = std::pow(cfg.lambda_target, N);
    const auto unstable = unstable_directions(f0);
    const auto stable = stable_directions(f0);

    auto fan = [&](const ComplexVector& axis, const ComplexVector& other, auto&& visit) {
        visit(axis);
        for (int t = 0; t < cfg.phases; ++t) {
            const Complex ph = std::polar(rho, 2.0 * std::numbers::pi * t / cfg.phases);
            visit(axis + ph * other);
        }
    };

    // Unstable: forward along the orbit.
    ComplexMatrix M = ComplexMatrix::Identity(k, k);
    for (int n = 0; n < steps; ++n) M = step_jacobian(s, orb.state(n, k)) * M;
    const Point zf = orb.state(steps, k);
    if (!tail_in_box(s, cover, zf) || label_of(s, cover, zf) != f0.label) {
        o.boundary = true;
        o.at_collar_boundary = o.at_collar_boundary || tail_near_boundary(s, cover, zf);
        return o;
    }
    const AdaptedFrame ff = adapted_frame(s, cover, zf, cfg.head_weight);
    o.pass_u = true;
    for (const auto& u : unstable) {
        auto visit = [&](const ComplexVector& v) {
            const ComplexVector w = M * v;
            const double ratio = ff.norm(w) / f0.norm(v);
            if (!ff.in_unstable_cone(w, rho) || !(ratio >= lam_n)) o.pass_u = false;
            o.min_expansion = std::min(o.min_expansion, std::pow(ratio, 1.0 / N));
        };
        if (stable.empty()) visit(u);
        for (const auto& b : stable) fan(u, b, visit);
    }
    if (unstable.empty()) o.pass_u = false;

    // Stable: backward along the orbit, or forward contraction of E^s at a = 0.
    o.pass_s = true;
    if (s.a == Complex{0.0, 0.0}) {
        for (const auto& b : stable) {
            const ComplexVector w = M * b;
            const double c = std::pow(ff.norm(w) / f0.norm(b), 1.0 / N);
            if (!(c <= 1.0 / cfg.lambda_target)) o.pass_s = false;
            o.max_contraction = std::max(o.max_contraction, c);
        }
    } else {
        ComplexMatrix B = ComplexMatrix::Identity(k, k);
        for (int n = 0; n < steps; ++n) B = inverse_step_jacobian(s, orb.state(-n, k)) * B;
        const Point zb = orb.state(-steps, k);
        if (!tail_in_box(s, cover, zb) || label_of(s, cover, zb) != f0.label) {
            o.boundary = true;
            o.at_collar_boundary = o.at_collar_boundary || tail_near_boundary(s, cover, zb);
            return o;
        }
        const AdaptedFrame fb = adapted_frame(s, cover, zb, cfg.head_weight);
        for (const auto& b : stable) {
            auto visit = [&](const ComplexVector& v) {
                const ComplexVector w = B * v;
                const double ratio = fb.norm(w) / f0.norm(v);
                if (!fb.in_stable_cone(w, rho) || !(ratio >= lam_n)) o.pass_s = false;
                o.max_contraction = std::max(o.max_contraction, std::pow(1.0 / ratio, 1.0 / N));
            };
            if (unstable.empty()) visit(b);
            for (const auto& u : unstable) fan(b, u, visit);
        }
    }
    if (stable.empty()) o.max_contraction = 0.0;
    return o;
}

}  // namespace

ConeCheckReport certify_cones_fixed(const ShiftSpec& s, const PlaneCover& cover,
                                    const std::vector<ShadowResult>& orbits, double rho1, int N, const ConeConfig& cfg) {
    ConeCheckReport rep;
    rep.samples = orbits.size();
    rep.rho1 = rho1;
    rep.N = N;
    rep.a = std::abs(s.a);
    rep.lambda_target = cfg.lambda_target;
    if (orbits.empty()) return rep;
    std::vector<SampleOutcome> out(orbits.size());
    parallel_for(orbits.size(), [&](std::size_t i) { out[i] = check_sample(s, cover, orbits[i], rho1, N, cfg); });
    std::size_t nu = 0, ns = 0, nb = 0;
    rep.min_expansion = std::numeric_limits<double>::infinity();
    for (const auto& o : out) {
        if (o.pass_u) ++nu;
        if (o.pass_s) ++ns;
        if (o.pass_u && o.pass_s) {
            ++nb;
            rep.min_expansion = std::min(rep.min_expansion, o.min_expansion);
            rep.max_contraction = std::max(rep.max_contraction, o.max_contraction);
            continue;
        }
        if (o.boundary) ++rep.boundary_failures;
        else {
            ++rep.cone_failures;
            if (o.at_collar_boundary) ++rep.cone_failures_at_collar_boundary;
        }
        if (rep.failure_examples.size() < 20)
            rep.failure_examples.push_back({o.z, o.label, o.boundary ? "boundary" : (o.pass_u ? "stable" : "unstable"),
                                            o.at_collar_boundary});
    }
    if (nb == 0) rep.min_expansion = 0.0;
    const double n = static_cast<double>(orbits.size());
    rep.pass_u = static_cast<double>(nu) / n;
    rep.pass_s = static_cast<double>(ns) / n;
    rep.pass_both = static_cast<double>(nb) / n;
    return rep;
}

ConeCheckReport certify_cones(const ShiftSpec& s, const PlaneCover& cover, const std::vector<ShadowResult>& orbits,
                              const ConeConfig& cfg) {
    std::vector<std::string> log;
    ConeCheckReport best;
    bool have = false;
    for (double rho = cfg.rho1; rho >= cfg.rho1 / 4.0 - 1e-15; rho /= 2.0) {
        for (int N = cfg.N; N <= (cfg.search ? cfg.max_N : cfg.N); ++N) {
            ConeCheckReport r = certify_cones_fixed(s, cover, orbits, rho, N, cfg);
            std::ostringstream line;
            line << "rho1=" << rho << " N=" << N << " pass=" << r.pass_both;
            log.push_back(line.str());
            const std::size_t stray = r.cone_failures - r.cone_failures_at_collar_boundary;
            if (!have || r.pass_both > best.pass_both ||
                (r.pass_both == best.pass_both && stray < best.cone_failures - best.cone_failures_at_collar_boundary)) {
                best = r;
                have = true;
            }
            if (r.pass_both >= cfg.required_pass && stray == 0) {
                best = r;
                best.search_log = log;
                return best;
            }
        }
        if (!cfg.search) break;
    }
    best.search_log = log;
    return best;
}

}  // namespace shiftlab
