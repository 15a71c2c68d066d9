#include <doctest.h>

#include "crooked/disjointness.hpp"
#include "crooked/oracle.hpp"
#include "test_util.hpp"

using namespace crooked;
using namespace crooked::testutil;

namespace {

const double kC1 = std::cosh(1.0);
const double kS1 = std::sinh(1.0);
const LVec3 kE1{1, 0, 0};
const LVec3 kAway{-kC1, 0, kS1};

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("tri_tri_intersect basics") {
    const Triangle t1{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    const Triangle far{{10, 0, 0}, {11, 0, 0}, {10, 1, 0}};
    CHECK_FALSE(tri_tri_intersect(t1, far).has_value());

    // crossing through the interior
    const Triangle t2{{0.2, 0.2, -1}, {0.3, 0.2, 1}, {0.2, 0.3, 1}};
    const auto seg = tri_tri_intersect(t1, t2);
    REQUIRE(seg.has_value());
    for (const MinPoint& p : {seg->first, seg->second}) {
        CHECK(std::abs(p.z) < 1e-12);
        CHECK(p.x >= -1e-12);
        CHECK(p.y >= -1e-12);
        CHECK(p.x + p.y <= 1.0 + 1e-12);
    }

    // identical triangles overlap
    CHECK(tri_tri_intersect(t1, t1).has_value());

    // coplanar but disjoint
    const Triangle shifted{{5, 5, 0}, {6, 5, 0}, {5, 6, 0}};
    CHECK_FALSE(tri_tri_intersect(t1, shifted).has_value());

    // touching along a shared edge
    const Triangle adjacent{{0, 0, 0}, {0, 1, 0}, {-1, 0, 0}};
    CHECK(tri_tri_intersect(t1, adjacent).has_value());
}

TEST_CASE("crooked_intersect_oracle agrees with the canonical fixtures") {
    const MinPoint o{0, 0, 0};
    const CrookedPlane P{o, kE1};

    const CrookedPlane disjointQ{o + LVec3{0, -2.0 * std::sqrt(2.0), 0}, kAway};
    CHECK_FALSE(crooked_intersect_oracle(P, disjointQ, 12.0, 64).has_value());

    const CrookedPlane crossingQ{o + LVec3{0, 0, 3}, kAway};
    const auto witness = crooked_intersect_oracle(P, crossingQ, 12.0, 64);
    REQUIRE(witness.has_value());
    CHECK(witness->separation <= 1e-6);
    CHECK(crooked_contains(witness->point, P, 1e-6).kind != PieceKind::Outside);
    CHECK(crooked_contains(witness->point, crossingQ, 1e-6).kind != PieceKind::Outside);
}

TEST_CASE("oracle on identical planes reports the shared vertex") {
    const CrookedPlane P{MinPoint{0.5, 0.25, -0.75}, unit_spacelike(0.9, 0.4)};
    const auto witness = crooked_intersect_oracle(P, P, 4.0, 16);
    REQUIRE(witness.has_value());
    CHECK(crooked_contains(witness->point, P, 1e-6).kind != PieceKind::Outside);
}

TEST_CASE("oracle witnesses respect the refinement bound") {
    Rng rng(51);
    int found = 0;
    for (int i = 0; i < 10; ++i) {
        const CrookedPlane P{random_box_point(rng, 1.5), random_unit_spacelike(rng, 1.5)};
        const CrookedPlane Q{random_box_point(rng, 1.5), random_unit_spacelike(rng, 1.5)};
        const auto w = crooked_intersect_oracle(P, Q, 10.0, 48);
        if (!w) continue;
        ++found;
        CHECK(w->separation <= 1e-6);
        CHECK(crooked_contains(w->point, P, 1e-6).kind != PieceKind::Outside);
        CHECK(crooked_contains(w->point, Q, 1e-6).kind != PieceKind::Outside);
    }
    CHECK(found > 0);
}

TEST_CASE("oracle never contradicts the exact predicate") {
    Rng rng(52);
    int checked = 0;
    while (checked < 12) {
        const CrookedPlane P{random_box_point(rng, 1.5), random_unit_spacelike(rng, 1.5)};
        const CrookedPlane Q{random_box_point(rng, 1.5), random_unit_spacelike(rng, 1.5)};
        const DisjointVerdict v = crooked_disjoint(P, Q);
        if (v == DisjointVerdict::Marginal || v == DisjointVerdict::DegenerateCase) continue;
        ++checked;
        const auto w = crooked_intersect_oracle(P, Q, 14.0, 64);
        if (v == DisjointVerdict::Disjoint) {
            CHECK_FALSE(w.has_value());
        } else {
            CHECK(w.has_value());
        }
    }
}

TEST_CASE("cone_contains_oracle on the stem quadrant") {
    const NullFrame f = null_frame(kE1);
    const std::vector<LVec3> quadrant = {f.u_minus, -f.u_plus};
    CHECK(cone_contains_oracle(quadrant, f.u_minus));
    CHECK_FALSE(cone_interior_oracle(quadrant, f.u_minus));  // rank-2 cone, boundary in R^3
    CHECK_FALSE(cone_contains_oracle(quadrant, f.u_plus));
}

TEST_CASE("cone_contains_oracle agrees with the facet predicate") {
    const ConicalHull hull = displacement_cone(kE1, kAway);
    LVec3 sum;
    for (const LVec3& g : hull.generators) sum += g;
    CHECK(cone_contains_oracle(hull.generators, sum));
    CHECK(cone_interior_oracle(hull.generators, sum));
    CHECK(cone_contains(hull, sum, true) == ConeLocation::In);

    Rng rng(53);
    for (int i = 0; i < 200; ++i) {
        const LVec3 x = random_box_vec(rng, 2.0);
        const ConeLocation exact = cone_contains(hull, x, false, 1e-9);
        // skip probes close to a facet; the two algorithms may disagree there
        double minAbs = 1e9;
        for (const LVec3& n : hull.facetNormals)
            minAbs = std::min(minAbs, std::abs(euclid_dot(n, x)));
        if (minAbs < 1e-4) continue;
        CHECK(cone_contains_oracle(hull.generators, x) == (exact == ConeLocation::In));
    }
}

}  // TEST_SUITE
