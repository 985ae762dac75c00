#include "shiftlab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace shiftlab {

namespace {

void require_invertible(const ShiftSpec& s) {
    if (std::abs(s.a) < kMinInvertibleA) {
        std::ostringstream msg;
        msg << "non-invertible: |a| = " << std::abs(s.a) << " is below " << kMinInvertibleA;
        throw ValidationError(msg.str());
    }
}

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

}  // namespace

bool is_escaped(const Point& z) noexcept {
    for (const auto& c : z) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()) || std::abs(c) > kEscapeMagnitude) return true;
    }
    return false;
}

Point apply_shift(const ShiftSpec& s, const Point& z) {
    require_dimension(s, z);
    const int k = s.k;
    Point out(idx(k));
    for (int i = 0; i + 1 < k; ++i) out[idx(i)] = z[idx(i + 1)];
    out[idx(k - 1)] = s.p.eval(z[idx(k - s.nu)]) + s.a * z[0];
    return out;
}

Point apply_shift_inverse(const ShiftSpec& s, const Point& z) {
    require_dimension(s, z);
    require_invertible(s);
    const int k = s.k;
    Point out(idx(k));
    out[0] = (z[idx(k - 1)] - s.p.eval(z[idx(k - s.nu - 1)])) / s.a;
    for (int i = 1; i < k; ++i) out[idx(i)] = z[idx(i - 1)];
    return out;
}

IterateResult iterate(const ShiftSpec& s, const Point& z, int n) {
    require_dimension(s, z);
    if (n < 0) require_invertible(s);
    IterateResult r{z, std::nullopt};
    const int steps = std::abs(n);
    for (int i = 1; i <= steps; ++i) {
        Point next = n > 0 ? apply_shift(s, r.point) : apply_shift_inverse(s, r.point);
        if (is_escaped(next)) {
            if (next.all_finite()) r.point = std::move(next);
            r.escaped_at = i;
            return r;
        }
        r.point = std::move(next);
    }
    return r;
}

Orbit iterate_orbit(const ShiftSpec& s, const Point& z, int n) {
    require_dimension(s, z);
    if (n < 0) require_invertible(s);
    Orbit o{z, {z}, n >= 0 ? 1 : -1, std::nullopt};
    const int steps = std::abs(n);
    for (int i = 1; i <= steps; ++i) {
        Point next = n > 0 ? apply_shift(s, o.points.back()) : apply_shift_inverse(s, o.points.back());
        if (is_escaped(next)) {
            o.escaped_at = i;
            break;
        }
        o.points.push_back(std::move(next));
    }
    return o;
}

Point forward_block(const ShiftSpec& s, const Point& z) {
    const int k = s.k, nu = s.nu;
    Point out(idx(k));
    for (int i = 0; i < k - nu; ++i) out[idx(i)] = z[idx(i + nu)];
    for (int j = 0; j < nu; ++j) out[idx(k - nu + j)] = s.a * z[idx(j)] + s.p.eval(z[idx(k - nu + j)]);
    return out;
}

Point backward_block(const ShiftSpec& s, const Point& z) {
    const int k = s.k, nu = s.nu;
    Point out(idx(k));
    for (int i = 0; i < k - nu; ++i) out[idx(i)] = (z[idx(i + nu)] - s.p.eval(z[idx(i)])) / s.a;
    for (int j = 0; j < nu; ++j) out[idx(k - nu + j)] = z[idx(j)];
    return out;
}

IterateResult block_iterate(const ShiftSpec& s, const Point& z, int m, Direction dir) {
    require_dimension(s, z);
    if (dir == Direction::Backward) require_invertible(s);
    IterateResult r{z, std::nullopt};
    for (int i = 1; i <= m; ++i) {
        Point next = dir == Direction::Forward ? forward_block(s, r.point) : backward_block(s, r.point);
        if (is_escaped(next)) {
            if (next.all_finite()) r.point = std::move(next);
            r.escaped_at = i;
            return r;
        }
        r.point = std::move(next);
    }
    return r;
}

Orbit block_orbit(const ShiftSpec& s, const Point& z, int m, Direction dir) {
    require_dimension(s, z);
    if (dir == Direction::Backward) require_invertible(s);
    Orbit o{z, {z}, dir == Direction::Forward ? s.nu : -(s.k - s.nu), std::nullopt};
    for (int i = 1; i <= m; ++i) {
        Point next = dir == Direction::Forward ? forward_block(s, o.points.back()) : backward_block(s, o.points.back());
        if (is_escaped(next)) {
            o.escaped_at = i;
            break;
        }
        o.points.push_back(std::move(next));
    }
    return o;
}

ComplexMatrix step_jacobian(const ShiftSpec& s, const Point& z) {
    const int k = s.k;
    ComplexMatrix J = ComplexMatrix::Zero(k, k);
    for (int i = 0; i + 1 < k; ++i) J(i, i + 1) = 1.0;
    J(k - 1, 0) += s.a;
    J(k - 1, k - s.nu) += s.p.eval_deriv(z[idx(k - s.nu)]);
    return J;
}

ComplexMatrix inverse_step_jacobian(const ShiftSpec& s, const Point& y) {
    require_invertible(s);
    const int k = s.k;
    ComplexMatrix J = ComplexMatrix::Zero(k, k);
    J(0, k - 1) = 1.0 / s.a;
    J(0, k - s.nu - 1) -= s.p.eval_deriv(y[idx(k - s.nu - 1)]) / s.a;
    for (int i = 1; i < k; ++i) J(i, i - 1) = 1.0;
    return J;
}

namespace {

void check_finite(const ComplexMatrix& M, int step) {
    if (!M.allFinite() || M.cwiseAbs().maxCoeff() > kEscapeMagnitude)
        throw EscapeError("Jacobian product overflowed along an escaping orbit", step);
}

}  // namespace

ComplexMatrix jacobian(const ShiftSpec& s, const Point& z, int n) {
    require_dimension(s, z);
    if (n < 1) throw ValidationError("jacobian needs n >= 1");
    ComplexMatrix M = ComplexMatrix::Identity(s.k, s.k);
    Point x = z;
    for (int i = 1; i <= n; ++i) {
        M = step_jacobian(s, x) * M;
        x = apply_shift(s, x);
        check_finite(M, i);
        if (is_escaped(x) && i < n) throw EscapeError("orbit escaped while forming the Jacobian", i);
    }
    return M;
}

ComplexMatrix inverse_jacobian(const ShiftSpec& s, const Point& z, int n) {
    require_dimension(s, z);
    if (n < 1) throw ValidationError("inverse_jacobian needs n >= 1");
    ComplexMatrix M = ComplexMatrix::Identity(s.k, s.k);
    Point y = z;
    for (int i = 1; i <= n; ++i) {
        M = inverse_step_jacobian(s, y) * M;
        y = apply_shift_inverse(s, y);
        check_finite(M, i);
        if (is_escaped(y) && i < n) throw EscapeError("backward orbit escaped while forming the Jacobian", i);
    }
    return M;
}

Point graph_phi(const Polynomial& p, int k, int nu, const std::vector<Complex>& w) {
    if (static_cast<int>(w.size()) != nu) throw ValidationError("graph_phi needs exactly nu parameters");
    Point z(idx(k));
    for (int i = 0; i < nu; ++i) z[idx(i)] = w[idx(i)];
    for (int i = 0; i < k - nu; ++i) z[idx(nu + i)] = p.eval(z[idx(i)]);
    return z;
}

double graph_residual(const ShiftSpec& s, const Point& z) {
    require_dimension(s, z);
    double c = 0.0;
    for (int i = 0; i < s.k - s.nu; ++i) c = std::max(c, std::abs(z[idx(s.nu + i)] - s.p.eval(z[idx(i)])));
    return c;
}

bool patterns_intersect(const ProjectivePattern& x, const ProjectivePattern& y) {
    // Both lie in {t = 0}; two coordinate subspaces of projective space meet iff they share a free slot.
    return std::any_of(x.free_slots.begin(), x.free_slots.end(), [&](int i) {
        return std::find(y.free_slots.begin(), y.free_slots.end(), i) != y.free_slots.end();
    });
}

IndeterminacyDescription indeterminacy_sets(const ShiftSpec& s) {
    const int k = s.k, nu = s.nu;
    IndeterminacyDescription d;
    for (int i = 1; i <= k - nu; ++i) d.plus.free_slots.push_back(i);
    for (int i = k - nu + 1; i <= k; ++i) d.minus.free_slots.push_back(i);
    // S_a alone: the top-degree part vanishes at infinity iff z_{k-nu+1} = 0, its inverse iff z_{k-nu} = 0.
    for (int i = 1; i <= k; ++i) {
        if (i != k - nu + 1) d.step_plus.free_slots.push_back(i);
        if (i != k - nu) d.step_minus.free_slots.push_back(i);
    }
    d.disjoint = !patterns_intersect(d.plus, d.minus);
    d.step_disjoint = !patterns_intersect(d.step_plus, d.step_minus);
    return d;
}

}  // namespace shiftlab
