#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace shiftlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Raised when an input violates a documented precondition. The CLI maps it to exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Raised when a numerical procedure cannot produce a meaningful result. CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point of C^k. Coordinates are 0-based in code; docs use the 1-based z_1..z_k.
class Point {
public:
    Point() = default;
    explicit Point(std::size_t k) : coords_(k, Complex{0.0, 0.0}) {}
    Point(std::initializer_list<Complex> values) : coords_(values) {}
    explicit Point(std::vector<Complex> values) : coords_(std::move(values)) {}

    [[nodiscard]] std::size_t size() const noexcept { return coords_.size(); }
    Complex& operator[](std::size_t i) { return coords_[i]; }
    const Complex& operator[](std::size_t i) const { return coords_[i]; }

    auto begin() noexcept { return coords_.begin(); }
    auto end() noexcept { return coords_.end(); }
    auto begin() const noexcept { return coords_.begin(); }
    auto end() const noexcept { return coords_.end(); }

    [[nodiscard]] std::span<const Complex> coords() const noexcept { return coords_; }

    /// max_i |z_i|
    [[nodiscard]] double sup_norm() const noexcept;
    [[nodiscard]] bool all_finite() const noexcept;

    [[nodiscard]] ComplexVector to_vector() const;
    static Point from_vector(const ComplexVector& v);

    friend bool operator==(const Point&, const Point&) = default;

private:
    std::vector<Complex> coords_;
};

/// Sup-norm distance between two points of equal dimension.
double sup_distance(const Point& a, const Point& b);
/// Euclidean distance in C^k = R^{2k}.
double euclidean_distance(const Point& a, const Point& b);

/// One-variable polynomial with complex coefficients stored lowest degree first.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Complex> coeffs);

    /// z^d + c_{d-1} z^{d-1} + ... from the lower coefficients; the result is monic.
    static Polynomial monic(std::vector<Complex> lower_coeffs);

    [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] Complex leading() const { return coeffs_.back(); }
    [[nodiscard]] bool is_monic(double tol = 0.0) const;

    [[nodiscard]] Complex eval(Complex z) const noexcept;
    [[nodiscard]] Complex eval_deriv(Complex z) const noexcept;
    /// Value and derivative in a single Horner pass.
    void eval_both(Complex z, Complex& value, Complex& deriv) const noexcept;

    /// n-fold composition p^n(z).
    [[nodiscard]] Complex iterate(Complex z, int n) const noexcept;
    /// (p^n)'(z) by the chain rule along the orbit of z.
    [[nodiscard]] Complex iterate_deriv(Complex z, int n) const noexcept;

    [[nodiscard]] Polynomial derivative() const;

    /// R such that |p(w)| >= |w| + 1 whenever |w| >= R, from |p(w)| >= |c_d| r^d - sum |c_i| r^i.
    [[nodiscard]] double escape_bound() const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    std::vector<Complex> coeffs_;
};

Complex eval_poly(const Polynomial& p, Complex z);
Complex eval_poly_deriv(const Polynomial& p, Complex z);

/// The configuration (k, nu, a, p) of the shift-like map
///   S_a(z_1..z_k) = (z_2, ..., z_k, p(z_{k-nu+1}) + a z_1).
struct ShiftSpec {
    int k = 3;
    int nu = 1;
    Complex a{0.0, 0.0};
    Polynomial p;

    /// nu (k - nu): the iterate of S_a that is a regular automorphism.
    [[nodiscard]] int eta() const noexcept { return nu * (k - nu); }
    [[nodiscard]] int d() const noexcept { return p.degree(); }
    /// Number of leading ("head") coordinates, k - nu.
    [[nodiscard]] int head() const noexcept { return k - nu; }
};

enum class MonicRequirement { NotRequired, Required };

/// Throws ValidationError naming the first violated invariant.
void validate_shift(const ShiftSpec& s, MonicRequirement monic = MonicRequirement::NotRequired);
/// Throws ValidationError when z.size() != s.k.
void require_dimension(const ShiftSpec& s, const Point& z);

}  // namespace shiftlab
