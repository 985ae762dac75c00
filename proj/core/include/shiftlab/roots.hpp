#pragma once

#include <vector>

#include "shiftlab/core_types.hpp"

namespace shiftlab {

/// All d roots of p, from the eigenvalues of the companion matrix followed by two Newton polish steps.
/// Degree 1 and 2 are solved in closed form. Throws NumericalError if a root is non-finite.
std::vector<Complex> poly_roots(const Polynomial& p);

/// The d solutions w of p(w) = target, with multiplicity.
std::vector<Complex> preimages(const Polynomial& p, Complex target);

/// Preimage of target closest to hint.
Complex nearest_preimage(const Polynomial& p, Complex target, Complex hint);

/// Roots of p', the finite critical points.
std::vector<Complex> critical_points(const Polynomial& p);

}  // namespace shiftlab
