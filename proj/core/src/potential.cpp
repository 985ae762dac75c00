#include "shiftlab/potential.hpp"

#include <algorithm>
#include <cmath>

#include "shiftlab/dynamics.hpp"

namespace shiftlab {

namespace {

constexpr double kRefineMagnitude = 1e12;
// Upper bound on extra iterates spent on refinement; from 2R to 1e12 takes a handful for d >= 2.
constexpr int kMaxRefineSteps = 200;

double coefficient_bound(const Polynomial& p) {
    const double lead = std::abs(p.leading());
    double b = 1.0;
    for (int i = 0; i < p.degree(); ++i) b += std::abs(p.coeffs()[static_cast<std::size_t>(i)]) / lead;
    return b;
}

}  // namespace

double green_escape_radius(const Polynomial& p, double R) {
    return 2.0 * std::max({R, coefficient_bound(p), p.escape_bound()});
}

GreenEval green_1d(const Polynomial& p, Complex z, int n) {
    const int d = p.degree();
    if (d < 2) throw ValidationError("degree too small: Green function needs d >= 2");
    const double resc = green_escape_radius(p);
    const double corr = std::log(std::abs(p.leading())) / (d - 1);
    GreenEval g{0.0, n, std::nullopt};
    double scale = 1.0;  // d^j
    Complex w = z;
    for (int j = 0; j <= n; ++j) {
        if (std::abs(w) > resc) {
            g.escaped_at = j;
            for (int extra = 0; std::abs(w) <= kRefineMagnitude && extra < kMaxRefineSteps; ++extra) {
                w = p.eval(w);
                scale *= d;
            }
            g.value = std::max(0.0, (std::log(std::abs(w)) + corr) / scale);
            return g;
        }
        if (j == n) break;
        w = p.eval(w);
        scale *= d;
    }
    g.value = std::max(0.0, std::log(std::max(1.0, std::abs(w))) / scale);
    return g;
}

GreenEval green_prod(const Polynomial& p, const std::vector<Complex>& w, int n) {
    GreenEval best{0.0, n, std::nullopt};
    for (const auto& c : w) {
        GreenEval g = green_1d(p, c, n);
        if (g.value > best.value) best = g;
    }
    return best;
}

namespace {

// Max modulus over coordinates [lo, hi), the part that carries the escape in the given direction.
double part_norm(const Point& w, int lo, int hi) {
    double m = 0.0;
    for (int i = lo; i < hi; ++i) m = std::max(m, std::abs(w[static_cast<std::size_t>(i)]));
    return m;
}

template <class Step>
GreenEval green_blocks(const ShiftSpec& s, const Point& z, int n, double corr, int lo, int hi, Step step) {
    const int d = s.d();
    const double resc = green_escape_radius(s.p);
    GreenEval g{0.0, n, std::nullopt};
    double scale = 1.0;
    Point w = z;
    for (int j = 0; j <= n; ++j) {
        if (part_norm(w, lo, hi) > resc) {
            g.escaped_at = j;
            for (int extra = 0; part_norm(w, lo, hi) <= kRefineMagnitude && extra < kMaxRefineSteps; ++extra) {
                Point next = step(w);
                if (!next.all_finite()) break;
                w = std::move(next);
                scale *= d;
            }
            g.value = std::max(0.0, (std::log(part_norm(w, lo, hi)) + corr) / scale);
            return g;
        }
        if (j == n) break;
        w = step(w);
        scale *= d;
    }
    g.value = std::max(0.0, std::log(std::max(1.0, w.sup_norm())) / scale);
    return g;
}

}  // namespace

GreenEval green_plus(const ShiftSpec& s, const Point& z, int n) {
    require_dimension(s, z);
    const double corr = std::log(std::abs(s.p.leading())) / (s.d() - 1);
    return green_blocks(s, z, n, corr, s.k - s.nu, s.k, [&](const Point& w) { return forward_block(s, w); });
}

GreenEval green_minus(const ShiftSpec& s, const Point& z, int n) {
    require_dimension(s, z);
    if (std::abs(s.a) < kMinInvertibleA) throw ValidationError("non-invertible: G^- needs a != 0");
    const double corr = (std::log(std::abs(s.p.leading())) - std::log(std::abs(s.a))) / (s.d() - 1);
    return green_blocks(s, z, n, corr, 0, s.k - s.nu, [&](const Point& w) { return backward_block(s, w); });
}

double H_a(const ShiftSpec& s, const Point& z, int n) {
    return green_minus(s, z, n).value + std::log(std::abs(s.a)) / s.d();
}

double H_a_consistent(const ShiftSpec& s, const Point& z, int n) {
    return green_minus(s, z, n).value + std::log(std::abs(s.a)) / (s.d() - 1);
}

ExtendedReal F_limit(const ShiftSpec& s, const Point& z) {
    const double c = graph_residual(s, z);
    if (c == 0.0) return {0.0, true};
    return {std::log(c) / s.d(), false};
}

}  // namespace shiftlab
