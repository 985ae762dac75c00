#include "shiftlab/core_types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace shiftlab {

double Point::sup_norm() const noexcept {
    double m = 0.0;
    for (const auto& c : coords_) m = std::max(m, std::abs(c));
    return m;
}

bool Point::all_finite() const noexcept {
    return std::all_of(coords_.begin(), coords_.end(), [](const Complex& c) {
        return std::isfinite(c.real()) && std::isfinite(c.imag());
    });
}

ComplexVector Point::to_vector() const {
    ComplexVector v(static_cast<Eigen::Index>(coords_.size()));
    for (std::size_t i = 0; i < coords_.size(); ++i) v(static_cast<Eigen::Index>(i)) = coords_[i];
    return v;
}

Point Point::from_vector(const ComplexVector& v) {
    std::vector<Complex> c(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) c[static_cast<std::size_t>(i)] = v(i);
    return Point(std::move(c));
}

double sup_distance(const Point& a, const Point& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double euclidean_distance(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s);
}

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(Complex{0.0, 0.0});
}

Polynomial Polynomial::monic(std::vector<Complex> lower_coeffs) {
    lower_coeffs.emplace_back(1.0, 0.0);
    return Polynomial(std::move(lower_coeffs));
}

bool Polynomial::is_monic(double tol) const {
    return std::abs(leading() - Complex{1.0, 0.0}) <= tol;
}

Complex Polynomial::eval(Complex z) const noexcept {
    Complex acc = coeffs_.back();
    for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Complex Polynomial::eval_deriv(Complex z) const noexcept {
    Complex v, dv;
    eval_both(z, v, dv);
    return dv;
}

void Polynomial::eval_both(Complex z, Complex& value, Complex& deriv) const noexcept {
    value = coeffs_.back();
    deriv = Complex{0.0, 0.0};
    for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) {
        deriv = deriv * z + value;
        value = value * z + *it;
    }
}

Complex Polynomial::iterate(Complex z, int n) const noexcept {
    for (int i = 0; i < n; ++i) z = eval(z);
    return z;
}

Complex Polynomial::iterate_deriv(Complex z, int n) const noexcept {
    Complex d{1.0, 0.0};
    for (int i = 0; i < n; ++i) {
        Complex v, dv;
        eval_both(z, v, dv);
        d *= dv;
        z = v;
    }
    return d;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return Polynomial({Complex{0.0, 0.0}});
    std::vector<Complex> out(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * static_cast<double>(i);
    return Polynomial(std::move(out));
}

double Polynomial::escape_bound() const {
    const int d = degree();
    const double lead = std::abs(leading());
    if (d < 1 || lead == 0.0) return 0.0;
    // |p(w)| - |w| >= lead r^d - sum_{i<d} |c_i| r^i - r; the bound is increasing past its root.
    auto margin = [&](double r) {
        double m = lead * std::pow(r, d) - r;
        for (int i = 0; i < d; ++i) m -= std::abs(coeffs_[static_cast<std::size_t>(i)]) * std::pow(r, i);
        return m;
    };
    double r = 1.0;
    while (margin(r) < 1.0 || margin(2.0 * r) < margin(r)) r *= 1.25;
    return r;
}

Complex eval_poly(const Polynomial& p, Complex z) { return p.eval(z); }
Complex eval_poly_deriv(const Polynomial& p, Complex z) { return p.eval_deriv(z); }

void validate_shift(const ShiftSpec& s, MonicRequirement monic) {
    std::ostringstream msg;
    if (s.k < 3) {
        msg << "k too small: k = " << s.k << ", need k >= 3";
        throw ValidationError(msg.str());
    }
    if (s.nu < 1 || s.nu > s.k - 1) {
        msg << "nu out of range: nu = " << s.nu << ", need 1 <= nu <= " << s.k - 1;
        throw ValidationError(msg.str());
    }
    if (s.p.degree() < 2) {
        msg << "degree too small: d = " << s.p.degree() << ", need d >= 2";
        throw ValidationError(msg.str());
    }
    if (s.p.leading() == Complex{0.0, 0.0}) throw ValidationError("leading coefficient is zero");
    for (const auto& c : s.p.coeffs()) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw ValidationError("non-finite polynomial coefficient");
    }
    if (!std::isfinite(s.a.real()) || !std::isfinite(s.a.imag())) throw ValidationError("non-finite a");
    if (monic == MonicRequirement::Required && !s.p.is_monic())
        throw ValidationError("polynomial must be monic");
}

void require_dimension(const ShiftSpec& s, const Point& z) {
    if (z.size() != static_cast<std::size_t>(s.k)) {
        std::ostringstream msg;
        msg << "dimension mismatch: point has " << z.size() << " coordinates, k = " << s.k;
        throw ValidationError(msg.str());
    }
}

}  // namespace shiftlab
