#pragma once

#include <optional>
#include <vector>

#include "shiftlab/core_types.hpp"

namespace shiftlab {

/// A truncated Green function value. `escaped_at` is the iterate (or block) index at which the orbit
/// passed the escape radius and the asymptotic refinement took over.
struct GreenEval {
    double value = 0.0;
    int level = 0;
    std::optional<int> escaped_at;
};

/// Radius past which the asymptotic expansion is applied: 2 max(R, coefficient bound).
double green_escape_radius(const Polynomial& p, double R = 0.0);

/// log+|p^n(z)| / d^n with an early exit once |p^j(z)| exceeds the escape radius; the orbit is then
/// followed to |w| > 1e12 and G(w) ~ log|w| + log|c_d| / (d - 1) is used.
GreenEval green_1d(const Polynomial& p, Complex z, int n);

/// max_i G_p(w_i), the Green function of the product map p x ... x p.
GreenEval green_prod(const Polynomial& p, const std::vector<Complex>& w, int n);

/// G_a^+ from n forward nu-blocks, sup norm. The escape test and the asymptotic use the last nu
/// coordinates, which carry the growth.
GreenEval green_plus(const ShiftSpec& s, const Point& z, int n);

/// G_a^- from n backward (k - nu)-blocks, sup norm. Past the escape radius the backward map acts
/// like w -> (c_d / a) w^d on the dominant head coordinate, so G^- ~ log||w|| + (log|c_d| - log|a|) / (d - 1).
GreenEval green_minus(const ShiftSpec& s, const Point& z, int n);

/// H_a(z) = G_a^-(z) + log|a| / d.
double H_a(const ShiftSpec& s, const Point& z, int n);

/// G_a^-(z) + log|a| / (d - 1), the normalization whose a -> 0 limit is F.
double H_a_consistent(const ShiftSpec& s, const Point& z, int n);

/// Extended-real value with an explicit marker for -infinity.
struct ExtendedReal {
    double value = 0.0;
    bool minus_infinity = false;
};

/// F(z) = (1/d) log c(z), with c the graph residual; -infinity exactly on the graph.
ExtendedReal F_limit(const ShiftSpec& s, const Point& z);

}  // namespace shiftlab
