#include <doctest.h>

#include "shiftlab/dynamics.hpp"
#include "test_support.hpp"

using namespace shiftlab;
using testsupport::shift;
using testsupport::z2;

namespace {

double sup_entry(const ComplexMatrix& M) { return M.cwiseAbs().maxCoeff(); }

ComplexMatrix fd_jacobian(const ShiftSpec& s, const Point& z, int n) {
    // Complex-analytic map, so a real central difference per coordinate gives the full column.
    const double h = 1e-6;
    ComplexMatrix J(s.k, s.k);
    for (int j = 0; j < s.k; ++j) {
        Point zp = z, zm = z;
        zp[static_cast<std::size_t>(j)] += h;
        zm[static_cast<std::size_t>(j)] -= h;
        const Point fp = iterate(s, zp, n).point, fm = iterate(s, zm, n).point;
        for (int i = 0; i < s.k; ++i) J(i, j) = (fp[static_cast<std::size_t>(i)] - fm[static_cast<std::size_t>(i)]) / (2.0 * h);
    }
    return J;
}

}  // namespace

TEST_CASE("apply_shift formula") {
    const auto s = shift(3, 2, 0.5);
    CHECK(apply_shift(s, Point{1.0, 0.0, 0.0}) == Point{0.0, 0.0, 0.5});
    CHECK(apply_shift(s, Point{0.0, 0.0, 0.0}) == Point{0.0, 0.0, 0.0});
    const auto s0 = shift(3, 2, 0.0, z2(-1.0));
    const Point z{Complex{0.2, 0.1}, Complex{1.1, -0.4}, Complex{-0.3, 0.7}};
    const Point w = apply_shift(s0, z);
    CHECK(w == Point{z[1], z[2], s0.p.eval(z[1])});
    CHECK_THROWS_AS(apply_shift(s, Point{1.0, 2.0}), ValidationError);
}

TEST_CASE("apply_shift_inverse") {
    const auto s = shift(3, 2, 0.5);
    CHECK(apply_shift_inverse(s, Point{0.0, 0.0, 0.5}) == Point{1.0, 0.0, 0.0});
    CHECK(apply_shift_inverse(s, Point{0.0, 0.0, 0.0}) == Point{0.0, 0.0, 0.0});
    CHECK_THROWS_AS(apply_shift_inverse(shift(3, 2, 0.0), Point{0.0, 0.0, 0.5}), ValidationError);
    CHECK_THROWS_AS(apply_shift_inverse(shift(3, 2, 1e-15), Point{0.0, 0.0, 0.5}), ValidationError);

    Rng rng(21);
    for (int t = 0; t < 1000; ++t) {
        const int k = 3 + static_cast<int>(rng.index(3));
        const int nu = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(k - 1)));
        const Complex a = std::polar(std::pow(10.0, -3.0 * rng.uniform()), 6.283185307179586 * rng.uniform());
        const auto s = shift(k, nu, a, testsupport::random_poly(rng, 2 + static_cast<int>(rng.index(3))));
        const Point z = testsupport::random_point(rng, k, 1.5);
        CHECK(sup_distance(apply_shift(s, apply_shift_inverse(s, z)), z) <= 1e-10);
    }
}

TEST_CASE("iterate") {
    const auto s = shift(3, 2, 0.0);
    const Point z{Complex{0.1, 0.2}, 0.3, 0.4};
    CHECK(iterate(s, z, 0).point == z);
    CHECK(iterate(s, Point{0.0, 0.0, 0.0}, 17).point == Point{0.0, 0.0, 0.0});

    // Direct evaluation of the recurrence u_{m+3} = u_{m+2}^2 + a u_m.
    const auto se = shift(3, 2, 0.01);
    std::vector<Complex> u{3.0, 3.0, 3.0};
    for (int m = 0; m < 5; ++m) u.push_back(u[static_cast<std::size_t>(m) + 1] * u[static_cast<std::size_t>(m) + 1] + 0.01 * u[static_cast<std::size_t>(m)]);
    const auto r = iterate(se, Point{3.0, 3.0, 3.0}, 5);
    CHECK_FALSE(r.escaped());
    for (int i = 0; i < 3; ++i) CHECK(std::abs(r.point[static_cast<std::size_t>(i)] - u[static_cast<std::size_t>(i) + 5]) <= 1e-12 * std::abs(u[static_cast<std::size_t>(i) + 5]));
    CHECK(r.point.sup_norm() > 1e3);

    const auto far = iterate(se, Point{3.0, 3.0, 3.0}, 100);
    REQUIRE(far.escaped());
    CHECK(*far.escaped_at < 100);
    CHECK(far.point.all_finite());

    const auto orbit = iterate_orbit(se, Point{0.1, 0.1, 0.1}, 6);
    CHECK(orbit.points.size() == 7);
    for (std::size_t i = 0; i + 1 < orbit.points.size(); ++i)
        CHECK(sup_distance(orbit.points[i + 1], apply_shift(se, orbit.points[i])) == 0.0);
}

TEST_CASE("block_iterate matches single steps") {
    Rng rng(4);
    for (int t = 0; t < 300; ++t) {
        const int k = 3 + static_cast<int>(rng.index(3));
        const int nu = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(k - 1)));
        const Complex a = rng.in_disc(1.0) + 1e-3;
        const auto s = shift(k, nu, a, testsupport::random_poly(rng, 2));
        const Point z = testsupport::random_point(rng, k, 1.0);
        const Point f = block_iterate(s, z, 1, Direction::Forward).point;
        const Point fs = iterate(s, z, nu).point;
        CHECK(sup_distance(f, fs) <= 1e-12 * std::max(1.0, fs.sup_norm()));
        const Point b = block_iterate(s, z, 1, Direction::Backward).point;
        const Point bs = iterate(s, z, -(k - nu)).point;
        CHECK(sup_distance(b, bs) <= 1e-12 * std::max(1.0, bs.sup_norm()));
    }
    const auto s0 = shift(3, 2, 0.0, z2(Complex{0.2, -0.1}));
    const Point z{Complex{0.3, 0.2}, Complex{-0.5, 0.1}, Complex{0.7, 0.4}};
    const Point w = block_iterate(s0, z, 1, Direction::Forward).point;
    CHECK(sup_distance(w, Point{z[2], s0.p.eval(z[1]), s0.p.eval(z[2])}) == 0.0);
}

TEST_CASE("jacobian structure at a = 0") {
    const auto p = z2(Complex{-0.4, 0.2});
    const Point z{Complex{0.3, 0.2}, Complex{-0.5, 0.1}, Complex{0.7, 0.4}};
    const ComplexMatrix J2 = jacobian(shift(3, 2, 0.0, p), z, 2);
    ComplexMatrix expect = ComplexMatrix::Zero(3, 3);
    expect(0, 2) = 1.0;
    expect(1, 1) = p.eval_deriv(z[1]);
    expect(2, 2) = p.eval_deriv(z[2]);
    CHECK(sup_entry(J2 - expect) < 1e-15);

    const ComplexMatrix J1 = jacobian(shift(3, 1, 0.0, p), z, 2);
    ComplexMatrix expect1 = ComplexMatrix::Zero(3, 3);
    expect1(0, 2) = 1.0;
    expect1(1, 2) = p.eval_deriv(z[2]);
    expect1(2, 2) = p.iterate_deriv(z[2], 2);
    CHECK(sup_entry(J1 - expect1) < 1e-14);
}

TEST_CASE("jacobian agrees with finite differences") {
    Rng rng(8);
    for (int t = 0; t < 100; ++t) {
        const int k = 3 + static_cast<int>(rng.index(3));
        const int nu = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(k - 1)));
        const auto s = shift(k, nu, rng.in_disc(0.5), testsupport::z2(rng.in_disc(0.5)));
        const Point z = testsupport::random_point(rng, k, 0.8);
        const int n = 1 + static_cast<int>(rng.index(4));
        CHECK(sup_entry(jacobian(s, z, n) - fd_jacobian(s, z, n)) <= 1e-4);
        const ShiftSpec sb = shift(k, nu, std::polar(0.3 + 0.7 * rng.uniform(), 1.0), s.p);
        const ComplexMatrix back = inverse_jacobian(sb, z, n);
        CHECK(sup_entry(back - fd_jacobian(sb, z, -n)) <= 1e-6 * std::max(1.0, sup_entry(back)));
    }
    CHECK_THROWS_AS(jacobian(shift(3, 2, 0.1), Point{1e20, 1e20, 1e20}, 10), EscapeError);
}

TEST_CASE("graph_phi and graph_residual") {
    const auto p = z2();
    const Complex z1{0.3, 0.4}, z2v{-1.2, 0.5};
    CHECK(sup_distance(graph_phi(p, 3, 2, {z1, z2v}), Point{z1, z2v, z1 * z1}) < 1e-15);
    const Complex w{0.6, -0.2};
    CHECK(graph_phi(p, 4, 1, {w}) == Point{w, p.eval(w), p.iterate(w, 2), p.iterate(w, 3)});
    CHECK(graph_residual(shift(3, 2, 0.0), Point{1.0, 0.0, 2.0}) == doctest::Approx(1.0));

    Rng rng(12);
    for (int t = 0; t < 200; ++t) {
        const int k = 3 + static_cast<int>(rng.index(4));
        const int nu = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(k - 1)));
        const auto s = shift(k, nu, 0.0, testsupport::z2(rng.in_disc(0.5)));
        std::vector<Complex> params(static_cast<std::size_t>(nu));
        for (auto& c : params) c = rng.in_disc(1.0);
        const Point z = graph_phi(s.p, k, nu, params);
        CHECK(graph_residual(s, z) == 0.0);
        // Conjugacy with p applied coordinatewise to the parameters.
        std::vector<Complex> pushed = params;
        for (auto& c : pushed) c = s.p.eval(c);
        CHECK(sup_distance(forward_block(s, z), graph_phi(s.p, k, nu, pushed)) <= 1e-12);
        CHECK(graph_residual(s, iterate(s, z, nu).point) <= 1e-12);
        // Brute-force residual.
        double brute = 0.0;
        const Point r = testsupport::random_point(rng, k, 1.0);
        for (int i = 0; i < k - nu; ++i) brute = std::max(brute, std::abs(r[static_cast<std::size_t>(nu + i)] - s.p.eval(r[static_cast<std::size_t>(i)])));
        CHECK(graph_residual(s, r) == brute);
    }
}

TEST_CASE("indeterminacy patterns") {
    const auto d32 = indeterminacy_sets(shift(3, 2, 0.1));
    CHECK(d32.plus.free_slots == std::vector<int>{1});
    CHECK(d32.minus.free_slots == std::vector<int>{2, 3});
    CHECK(d32.disjoint);
    const auto d31 = indeterminacy_sets(shift(3, 1, 0.1));
    CHECK(d31.plus.free_slots == std::vector<int>{1, 2});
    CHECK(d31.minus.free_slots == std::vector<int>{3});
    for (int k = 3; k <= 7; ++k) {
        for (int nu = 1; nu < k; ++nu) {
            const auto d = indeterminacy_sets(shift(k, nu, 0.1));
            CHECK(d.disjoint);
            CHECK_FALSE(d.step_disjoint);
        }
    }
}
