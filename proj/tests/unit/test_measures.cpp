#include <doctest.h>

#include <cmath>
#include <numeric>

#include "shiftlab/dynamics.hpp"
#include "shiftlab/measures.hpp"
#include "shiftlab/potential.hpp"
#include "test_support.hpp"

using namespace shiftlab;
using testsupport::shift;
using testsupport::z2;

namespace {

Complex mean_coord(const MeasureCloud& c, std::size_t i) {
    Complex m = 0.0;
    for (const auto& z : c.points) m += z[i];
    return m / static_cast<double>(c.size());
}

double mean_abs_pow(const MeasureCloud& c, std::size_t i, int e) {
    double m = 0.0;
    for (const auto& z : c.points) m += std::pow(std::abs(z[i]), e);
    return m / static_cast<double>(c.size());
}

}  // namespace

TEST_CASE("equilibrium samples of z^2 lie on the unit circle") {
    const auto c = sample_mu_p(z2(), 4000, 40, 7);
    REQUIRE(c.size() == 4000);
    CHECK(c.provenance == Provenance::Brolin1D);
    double worst = 0.0;
    for (const auto& z : c.points) worst = std::max(worst, std::abs(std::abs(z[0]) - 1.0));
    CHECK(worst <= 1e-6);
    CHECK(std::abs(mean_coord(c, 0)) <= 3.0 / std::sqrt(4000.0));
    CHECK(std::accumulate(c.weights.begin(), c.weights.end(), 0.0) == doctest::Approx(1.0));
}

TEST_CASE("equilibrium samples of z^2-1 have zero Green value") {
    const auto p = z2(-1.0);
    const auto c = sample_mu_p(p, 2000, 60, 3);
    for (const auto& z : c.points) CHECK(green_1d(p, z[0], 40).value <= 1e-6);
}

TEST_CASE("equilibrium measure is p-invariant in |z|^2 moments") {
    const auto p = z2(-1.0);
    const auto c = sample_mu_p(p, 4000, 60, 5);
    MeasureCloud img = c;
    for (auto& z : img.points) z[0] = p.eval(z[0]);
    const double m0 = mean_abs_pow(c, 0, 2), m1 = mean_abs_pow(img, 0, 2);
    double var = 0.0;
    for (const auto& z : c.points) var += std::pow(std::norm(z[0]) - m0, 2);
    const double se = std::sqrt(var / static_cast<double>(c.size()) / static_cast<double>(c.size()));
    CHECK(std::abs(m0 - m1) <= 3.0 * std::sqrt(2.0) * se);
}

TEST_CASE("sampling is reproducible") {
    const auto a = sample_mu_p_nu(z2(-1.0), 2, 500, 9);
    const auto b = sample_mu_p_nu(z2(-1.0), 2, 500, 9);
    CHECK(a.points == b.points);
    const auto c = sample_mu_p_nu(z2(-1.0), 2, 500, 10);
    CHECK_FALSE(a.points == c.points);
}

TEST_CASE("product samples for z^2 lie on the torus") {
    const auto c = sample_mu_p_nu(z2(), 2, 3000, 2);
    CHECK(c.provenance == Provenance::Product);
    CHECK(c.dim() == 2);
    for (const auto& z : c.points) {
        CHECK(std::abs(std::abs(z[0]) - 1.0) <= 1e-9);
        CHECK(std::abs(std::abs(z[1]) - 1.0) <= 1e-9);
    }
}

TEST_CASE("product measure coordinate symmetry and marginals") {
    const auto p = z2(-1.0);
    const std::size_t n = 4000;
    const auto c = sample_mu_p_nu(p, 2, n, 4);
    const auto one = sample_mu_p(p, n, 100, 44);
    for (int e : {1, 2}) {
        const double m0 = mean_abs_pow(c, 0, e), m1 = mean_abs_pow(c, 1, e), m = mean_abs_pow(one, 0, e);
        double var = 0.0;
        for (const auto& z : c.points) var += std::pow(std::pow(std::abs(z[0]), e) - m0, 2);
        const double se = std::sqrt(var / static_cast<double>(n) / static_cast<double>(n));
        CHECK(std::abs(m0 - m1) <= 3.0 * std::sqrt(2.0) * se);
        CHECK(std::abs(m0 - m) <= 3.0 * std::sqrt(2.0) * se);
    }
}

TEST_CASE("graph pushforward") {
    const auto c = sample_mu_p_nu(z2(), 2, 1000, 6);
    const auto g = pushforward_graph(c, z2(), 3, 2);
    CHECK(g.size() == c.size());
    CHECK(g.provenance == Provenance::GraphPushforward);
    const auto s = shift(3, 2, 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Point& z = g.points[i];
        CHECK(z[0] == c.points[i][0]);
        CHECK(z[1] == c.points[i][1]);
        CHECK(std::abs(z[2] - c.points[i][0] * c.points[i][0]) <= 1e-15);
        CHECK(graph_residual(s, z) <= 1e-15);
    }
}

TEST_CASE("shadowed orbits solve the recurrence") {
    const auto s = shift(3, 2, 0.01);
    std::vector<ResidueChain> chains;
    for (int r = 0; r < 2; ++r) {
        auto c = expanding_chain(s.p, 100, 12, product_stream_seed(1, 0, r));
        c.values.resize(static_cast<std::size_t>(c.past + 61));
        chains.push_back(std::move(c));
    }
    const auto sh = shadow_point(s, chains);
    CHECK(sh.residual <= 1e-12);
    for (int n = sh.orbit_min; n < sh.orbit_max; ++n)
        CHECK(sup_distance(apply_shift(s, sh.state(n, 3)), sh.state(n + 1, 3)) <= 1e-12);
}

TEST_CASE("supp mu_a cloud") {
    const auto s = shift(3, 2, 0.01);
    SuppConfig cfg;
    cfg.count = 400;
    const auto cloud = approximate_supp_mu_a(s, cfg);
    CHECK(cloud.provenance == Provenance::GreenMinimizer);
    CHECK(cloud.size() > 300);
    for (const auto& z : cloud.points) {
        CHECK(green_plus(s, z, cfg.level).value < cfg.eps);
        CHECK(green_minus(s, z, cfg.level).value < cfg.eps);
    }
    // One eta-block multiplies G+ by d and divides G- by d, so images re-filter at 2 eps.
    for (const auto& z : cloud.points) {
        const auto r = iterate(s, z, s.eta());
        REQUIRE_FALSE(r.escaped());
        CHECK(green_plus(s, r.point, cfg.level).value < 2.0 * cfg.eps);
        CHECK(green_minus(s, r.point, cfg.level).value < 2.0 * cfg.eps);
    }
    CHECK_THROWS_AS(approximate_supp_mu_a(shift(3, 2, 0.0), cfg), ValidationError);
}

TEST_CASE("product Lyapunov exponent of z^2") {
    const auto c = sample_mu_p_nu(z2(), 2, 1000, 12);
    const auto l10 = lyapunov_product(z2(), c, 10);
    const auto l20 = lyapunov_product(z2(), c, 20);
    CHECK(std::abs(l20.value - std::log(2.0)) <= 0.02);
    CHECK(std::abs(l20.value - l10.value) <= std::max(l20.stderr_, 1e-9));
    CHECK(l20.samples == 1000);
    const auto raw = lyapunov_product(z2(), c, 3, LyapunovForm::Raw);
    CHECK(raw.value == doctest::Approx(8.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("operator norm") {
    ComplexMatrix M = ComplexMatrix::Zero(3, 3);
    M(0, 0) = 2.0;
    M(1, 2) = Complex{0.0, 5.0};
    M(2, 1) = 1.0;
    CHECK(operator_norm(M) == doctest::Approx(5.0).epsilon(1e-10));
    CHECK(operator_norm(ComplexMatrix::Zero(2, 2)) == 0.0);
}

TEST_CASE("Hausdorff distance") {
    MeasureCloud a, b;
    a.points = {Point{0.0, 0.0}, Point{1.0, 0.0}};
    b.points = {Point{0.0, 0.0}, Point{1.0, 0.0}, Point{0.0, 3.0}};
    CHECK(directed_hausdorff(a, b) == 0.0);
    CHECK(directed_hausdorff(b, a) == doctest::Approx(3.0));
    CHECK(hausdorff(a, b) == doctest::Approx(3.0));
    CHECK(hausdorff(a, a) == 0.0);
}

TEST_CASE("off-graph test set") {
    const auto s = shift(3, 2, 0.1);
    const auto pts = off_graph_test_set(s, 64, 1.2, 0.5, 1.5);
    CHECK(pts.size() == 64);
    for (const auto& z : pts) {
        CHECK(z.sup_norm() <= 1.2 + 1e-12);
        CHECK(graph_residual(s, z) >= 0.5);
        CHECK(graph_residual(s, z) <= 1.5);
    }
    CHECK(off_graph_test_set(s, 64, 1.2, 0.5, 1.5) == pts);
}

TEST_CASE("sweep CSV") {
    CHECK(sweep_csv_header() == "a,hausdorff,sup_Ha_minus_F,lyapunov,lyapunov_stderr,samples,n");
    SweepRow r;
    r.a = 0.5;
    r.samples = 3;
    r.n = 2;
    CHECK(sweep_csv_row(r) == "0.5,0,0,0,0,3,2");
}
