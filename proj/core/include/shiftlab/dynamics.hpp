#pragma once

#include <optional>
#include <vector>

#include "shiftlab/core_types.hpp"

namespace shiftlab {

inline constexpr double kEscapeMagnitude = 1e30;
inline constexpr double kMinInvertibleA = 1e-14;

enum class Direction { Forward, Backward };

/// Outcome of an iteration. When the orbit passes kEscapeMagnitude the iteration stops,
/// `point` is the last finite state and `escaped_at` the step (or block) index where it happened.
struct IterateResult {
    Point point;
    std::optional<int> escaped_at;
    [[nodiscard]] bool escaped() const noexcept { return escaped_at.has_value(); }
};

struct Orbit {
    Point origin;
    std::vector<Point> points;  // points[0] == origin
    int step = 1;               // +1 single step, +nu forward block, -(k-nu) backward block, -1 single inverse
    std::optional<int> escaped_at;
};

/// Raised when a Jacobian product overflows along an escaping orbit.
class EscapeError : public NumericalError {
public:
    EscapeError(const std::string& what, int step) : NumericalError(what), step_(step) {}
    [[nodiscard]] int step() const noexcept { return step_; }

private:
    int step_;
};

bool is_escaped(const Point& z) noexcept;

Point apply_shift(const ShiftSpec& s, const Point& z);
/// (a^-1 (z_k - p(z_{k-nu})), z_1, ..., z_{k-1}); ValidationError when |a| < kMinInvertibleA.
Point apply_shift_inverse(const ShiftSpec& s, const Point& z);

/// n-fold composition, negative n uses the inverse.
IterateResult iterate(const ShiftSpec& s, const Point& z, int n);
Orbit iterate_orbit(const ShiftSpec& s, const Point& z, int n);

/// One forward nu-block, S^nu, via the closed formula.
Point forward_block(const ShiftSpec& s, const Point& z);
/// One backward (k-nu)-block, S^{-(k-nu)}, via the closed formula.
Point backward_block(const ShiftSpec& s, const Point& z);
/// m blocks: equals iterate with n = m nu (forward) or n = -m (k-nu) (backward).
IterateResult block_iterate(const ShiftSpec& s, const Point& z, int m, Direction dir);
Orbit block_orbit(const ShiftSpec& s, const Point& z, int m, Direction dir);

/// DS_a at z: identity on the superdiagonal, last row a e_1 + p'(z_{k-nu+1}) e_{k-nu+1}.
ComplexMatrix step_jacobian(const ShiftSpec& s, const Point& z);
/// D(S_a^{-1}) at y.
ComplexMatrix inverse_step_jacobian(const ShiftSpec& s, const Point& y);
/// D(S_a^n)(z) for n >= 1 as a product along the orbit. Throws EscapeError on overflow.
ComplexMatrix jacobian(const ShiftSpec& s, const Point& z, int n);
/// D(S_a^{-n})(z) for n >= 1 along the backward orbit.
ComplexMatrix inverse_jacobian(const ShiftSpec& s, const Point& z, int n);

/// The point of the graph Gamma_nu with free parameters w: z_i = w_i for i <= nu, z_{nu+i} = p(z_i).
Point graph_phi(const Polynomial& p, int k, int nu, const std::vector<Complex>& w);
/// c(z) = max_i |z_{nu+i} - p(z_i)| over 1 <= i <= k - nu.
double graph_residual(const ShiftSpec& s, const Point& z);

/// A coordinate subspace of the hyperplane at infinity: homogeneous coordinates [z_1:...:z_k:t]
/// with t = 0 and z_j = 0 for j outside `free_slots` (1-based).
struct ProjectivePattern {
    std::vector<int> free_slots;
};

bool patterns_intersect(const ProjectivePattern& x, const ProjectivePattern& y);

struct IndeterminacyDescription {
    ProjectivePattern plus;        // I^+ of S_a^eta
    ProjectivePattern minus;       // I^- of S_a^eta
    bool disjoint = true;
    ProjectivePattern step_plus;   // I^+ of S_a itself
    ProjectivePattern step_minus;  // I^- of S_a itself
    bool step_disjoint = false;
};

IndeterminacyDescription indeterminacy_sets(const ShiftSpec& s);

}  // namespace shiftlab
