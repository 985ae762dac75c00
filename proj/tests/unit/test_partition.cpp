#include <doctest.h>

#include <cmath>

#include "shiftlab/hyperbolic1d.hpp"
#include "shiftlab/partition.hpp"
#include "test_support.hpp"

using namespace shiftlab;
using testsupport::shift;
using testsupport::z2;

namespace {

PlaneCover z2_cover() {
    return build_plane_cover(z2(), inverse_tree_cloud(z2(), 0.025), 0.1, Box{}, 200);
}

// The three invariant sets of the z^2 example at a = 0, as explicit point sets.
bool on_set(const std::string& name, const Point& z, double tol) {
    const auto unit = [&](Complex w) { return std::abs(std::abs(w) - 1.0) <= tol; };
    const auto zero = [&](Complex w) { return std::abs(w) <= tol; };
    const bool graph = std::abs(z[2] - z[0] * z[0]) <= tol;
    if (name == "J1") return zero(z[0]) && unit(z[1]) && zero(z[2]);
    if (name == "J2") return unit(z[0]) && zero(z[1]) && graph;
    if (name == "J3") return unit(z[0]) && unit(z[1]) && graph;
    return false;
}

}  // namespace

TEST_CASE("admissible labels") {
    CHECK(admissible_labels(1) == std::vector<PartitionLabel>{{Symbol::Zero}});
    const auto l2 = admissible_labels(2);
    REQUIRE(l2.size() == 3);
    CHECK(label_string(l2[0]) == "(0,0)");
    CHECK(label_string(l2[1]) == "(0,c)");
    CHECK(label_string(l2[2]) == "(c,0)");
    CHECK(admissible_labels(3).size() == 7);
    CHECK(set_name(3, {Symbol::Zero, Symbol::C}) == "J1");
    CHECK(set_name(3, {Symbol::C, Symbol::Zero}) == "J2");
    CHECK(set_name(3, {Symbol::Zero, Symbol::Zero}) == "J3");
    CHECK(set_name(4, {Symbol::Zero, Symbol::Zero}).empty());
}

TEST_CASE("z^2 example sets") {
    const auto cover = z2_cover();
    const auto hv = classify_hyperbolic(z2());
    for (double a : {0.0, 1e-3}) {
        CAPTURE(a);
        const auto s = shift(3, 2, a);
        CandidateConfig cc;
        cc.per_label = 100;
        const auto cand = julia_candidates(s, hv, cc);
        CHECK(cand.size() == 300);
        const auto rep = partition_julia(s, cover, cand);
        CHECK(rep.violations == 0);
        CHECK(rep.violations_ok);
        CHECK(rep.invariance >= 0.99);
        CHECK(rep.group_sizes.at(1) == 200);
        CHECK(rep.group_sizes.at(2) == 100);
        std::map<std::string, std::pair<int, int>> agree;
        for (const auto& p : rep.points) {
            const std::string n = set_name(3, p.home);
            ++agree[n].second;
            if (on_set(n, p.z, a == 0.0 ? 1e-9 : 0.01)) ++agree[n].first;
        }
        for (const char* n : {"J1", "J2", "J3"}) {
            CAPTURE(n);
            REQUIRE(agree[n].second > 0);
            CHECK(static_cast<double>(agree[n].first) / agree[n].second >= (a == 0.0 ? 0.95 : 0.9));
        }
    }
}

TEST_CASE("nu = 1 degenerates to the single label") {
    const auto s = shift(3, 1, 1e-3);
    CandidateConfig cc;
    cc.per_label = 50;
    const auto rep = partition_julia(s, z2_cover(), julia_candidates(s, classify_hyperbolic(z2()), cc));
    CHECK(rep.samples == 50);
    CHECK(rep.label_counts.size() == 1);
    CHECK(rep.label_counts.count("(0)") == 1);
    CHECK(rep.violations == 0);
}

TEST_CASE("violations on bare points") {
    const auto s = shift(3, 2, 0.0);
    MeasureCloud c;
    c.points = {Point{0.0, 1.0, std::polar(1.0, 0.5)}, Point{0.0, 1.6, 0.0}, Point{0.0, 0.0, 0.0}};
    const auto rep = partition_julia(s, z2_cover(), c);
    CHECK(rep.violations == 2);
    CHECK_FALSE(rep.points[0].violation);
    CHECK(rep.points[1].violation);  // infinity symbol
    CHECK(rep.points[2].violation);  // all c
    CHECK_FALSE(rep.violations_ok);
    CHECK(rep.points[0].group == 2);
}

TEST_CASE("candidates are deterministic") {
    const auto s = shift(3, 2, 1e-3);
    CandidateConfig cc;
    cc.per_label = 10;
    const auto hv = classify_hyperbolic(z2());
    const auto a = julia_candidates(s, hv, cc), b = julia_candidates(s, hv, cc);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].orbit.point == b[i].orbit.point);
    CHECK_THROWS_AS(julia_candidates(s, HyperbolicityVerdict1D{}, cc), ValidationError);
}
