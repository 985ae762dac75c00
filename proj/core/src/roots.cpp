#include "shiftlab/roots.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace shiftlab {

namespace {

std::vector<Complex> quadratic_roots(Complex c0, Complex c1, Complex c2) {
    const Complex disc = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
    // Pick the sign that avoids cancellation, then use Vieta for the other root.
    const Complex q = (std::real(std::conj(c1) * disc) >= 0.0) ? -0.5 * (c1 + disc) : -0.5 * (c1 - disc);
    if (q == Complex{0.0, 0.0}) return {Complex{0.0, 0.0}, Complex{0.0, 0.0}};
    return {q / c2, c0 / q};
}

void polish(const Polynomial& p, Complex& r) {
    for (int it = 0; it < 2; ++it) {
        Complex v, dv;
        p.eval_both(r, v, dv);
        if (std::abs(dv) == 0.0) return;
        const Complex next = r - v / dv;
        if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) return;
        if (std::abs(p.eval(next)) > std::abs(v)) return;
        r = next;
    }
}

}  // namespace

std::vector<Complex> poly_roots(const Polynomial& p) {
    const int d = p.degree();
    const auto& c = p.coeffs();
    if (d < 1) return {};
    if (d == 1) return {-c[0] / c[1]};
    std::vector<Complex> out;
    if (d == 2) {
        out = quadratic_roots(c[0], c[1], c[2]);
    } else {
        ComplexMatrix comp = ComplexMatrix::Zero(d, d);
        for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
        for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[static_cast<std::size_t>(i)] / c.back();
        Eigen::ComplexEigenSolver<ComplexMatrix> solver(comp, false);
        if (solver.info() != Eigen::Success) throw NumericalError("root solve failed: eigenvalue iteration did not converge");
        out.assign(solver.eigenvalues().begin(), solver.eigenvalues().end());
        for (auto& r : out) polish(p, r);
    }
    for (const auto& r : out) {
        if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) throw NumericalError("root solve produced a non-finite root");
    }
    return out;
}

std::vector<Complex> preimages(const Polynomial& p, Complex target) {
    std::vector<Complex> c = p.coeffs();
    c[0] -= target;
    try {
        return poly_roots(Polynomial(std::move(c)));
    } catch (const NumericalError&) {
        std::ostringstream msg;
        msg << "root solve failed for target " << target.real() << (target.imag() < 0 ? "" : "+") << target.imag() << "i";
        throw NumericalError(msg.str());
    }
}

Complex nearest_preimage(const Polynomial& p, Complex target, Complex hint) {
    const auto roots = preimages(p, target);
    Complex best = roots.front();
    for (const auto& r : roots) {
        if (std::abs(r - hint) < std::abs(best - hint)) best = r;
    }
    return best;
}

std::vector<Complex> critical_points(const Polynomial& p) { return poly_roots(p.derivative()); }

}  // namespace shiftlab
