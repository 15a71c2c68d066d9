#include <doctest.h>

#include <functional>

#include "crooked/foliation.hpp"
#include "simpson_oracle.hpp"
#include "test_util.hpp"

using namespace crooked;
using namespace crooked::testutil;

namespace {

const double kC1 = std::cosh(1.0);
const double kS1 = std::sinh(1.0);
const LVec3 kE1{1, 0, 0};
const LVec3 kBoosted{kC1, 0, kS1};

DirectingPath canonical_path() { return interp_path(kE1, kBoosted); }

LVec3 central_diff_minus(const DirectingPath& path, double s) {
    const double h = 1e-6;
    const double a = std::max(0.0, s - h), b = std::min(1.0, s + h);
    return (path.frame(b).u_minus - path.frame(a).u_minus) * (1.0 / (b - a));
}

}  // namespace

TEST_SUITE("foliation") {

TEST_CASE("interp_path") {
    const DirectingPath constant = interp_path(kE1, kE1);
    CHECK((constant.value(0.3) - kE1).linf() < 1e-15);

    const DirectingPath path = canonical_path();
    const LVec3 mid = path.value(0.5);
    CHECK(mid.x == doctest::Approx(1.1276).epsilon(1e-4));
    CHECK(mid.y == doctest::Approx(0.0));
    CHECK(mid.z == doctest::Approx(0.5211).epsilon(1e-4));
    CHECK(lorentz_dot(mid, mid) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(interp_path(kE1, {0, 1, 0}), InvalidEndpointsError);
    CHECK_THROWS_AS(interp_path(kE1, {2, 0, 0}), InvalidEndpointsError);
}

TEST_CASE("interp_path derivative matches finite differences") {
    const DirectingPath path = canonical_path();
    for (double t : {0.1, 0.37, 0.62, 0.9}) {
        const double h = 1e-6;
        const LVec3 fd = (path.value(t + h) - path.value(t - h)) * (1.0 / (2.0 * h));
        CHECK((path.derivative(t) - fd).linf() < 1e-8);
    }
}

TEST_CASE("validate_path accepts the canonical path") {
    const ValidationReport r = validate_path(canonical_path(), 20);
    CHECK(r.passed());
    CHECK(r.pairwiseDisjointPairs == 190);
}

TEST_CASE("validate_path flags a constant path") {
    const ValidationReport r = validate_path(interp_path(kE1, kE1), 20);
    CHECK_FALSE(r.orientationViolations.empty());
    CHECK(r.failures.empty());  // pairwise products are exactly 1
}

TEST_CASE("validate_path flags a crossing path") {
    // rotation path: pairwise products cos(dt) < 1
    std::vector<std::pair<double, LVec3>> knots;
    for (int i = 0; i <= 8; ++i) {
        const double t = i / 8.0;
        knots.emplace_back(t, unit_spacelike(0.5 * t, 0.0));
    }
    const ValidationReport r = validate_path(sampled_path(std::move(knots)), 10);
    CHECK_FALSE(r.failures.empty());
}

TEST_CASE("sampled_path validates its knots") {
    CHECK_THROWS_AS(sampled_path({{0.0, kE1}}), InvalidParamsError);
    CHECK_THROWS_AS(sampled_path({{0.0, kE1}, {0.5, kE1}}), InvalidParamsError);
    CHECK_THROWS_AS(sampled_path({{0.0, kE1}, {0.0, kE1}, {1.0, kE1}}), InvalidParamsError);
}

TEST_CASE("sampled_path reproduces a smooth path between knots") {
    const DirectingPath exact = canonical_path();
    std::vector<std::pair<double, LVec3>> knots;
    for (int i = 0; i <= 16; ++i) {
        const double t = i / 16.0;
        knots.emplace_back(t, exact.value(t));
    }
    const DirectingPath hermite = sampled_path(std::move(knots));
    for (double t : {0.03, 0.21, 0.5, 0.77, 0.99}) {
        CHECK((hermite.value(t) - exact.value(t)).linf() < 1e-4);
        // tangents are second-order in the knot spacing
        CHECK((hermite.derivative(t) - exact.derivative(t)).linf() < 1e-2);
    }
    CHECK(validate_path(hermite, 15).passed());
}

TEST_CASE("displacement_integral on a constant path") {
    const DirectingPath constant = interp_path(kE1, kE1);
    const auto one = [](double) { return 1.0; };
    const auto two = [](double) { return 2.0; };

    const LVec3 d1 = displacement_integral(constant, one, one);
    CHECK((d1 - LVec3{0, std::sqrt(2.0), 0}).linf() < 1e-12);

    const LVec3 d2 = displacement_integral(constant, two, one);
    CHECK((d2 - LVec3{0, 3.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}).linf() < 1e-12);
}

TEST_CASE("displacement_integral is linear in the profiles") {
    const DirectingPath path = canonical_path();
    Rng rng(41);
    std::uniform_real_distribution<double> coeff(0.1, 2.0);
    for (int i = 0; i < 10; ++i) {
        const double a1 = coeff(rng), b1 = coeff(rng), a2 = coeff(rng), b2 = coeff(rng);
        const auto f1 = [a1](double s) { return a1 * (1.0 + s); };
        const auto g1 = [b1](double s) { return b1 * (2.0 - s); };
        const auto f2 = [a2](double s) { return a2 * std::exp(-s); };
        const auto g2 = [b2](double) { return b2; };
        const LVec3 lhs = displacement_integral(
            path, [&](double s) { return f1(s) + f2(s); },
            [&](double s) { return g1(s) + g2(s); });
        const LVec3 rhs =
            displacement_integral(path, f1, g1) + displacement_integral(path, f2, g2);
        CHECK((lhs - rhs).linf() <= 2.0 * kQuadTol);
    }
}

TEST_CASE("displacement_integral fails on wild integrands") {
    const auto wild = [](double s) { return 2.0 + std::cos(3.0e5 * s); };  // unresolvable at the cap
    const auto one = [](double) { return 1.0; };
    CHECK_THROWS_AS(displacement_integral(canonical_path(), wild, one), QuadratureFailureError);
}

TEST_CASE("extreme_ray_displacement on a constant path") {
    const DirectingPath constant = interp_path(kE1, kE1);
    const NullFrame f = null_frame(kE1);
    const int n = 10;
    const LVec3 got = extreme_ray_displacement(constant, n, ExtremeRay::StartMinus);
    const LVec3 expected =
        (1.0 - std::exp(-n)) * f.u_minus - std::exp(-n) * f.u_plus;
    CHECK((got - expected).linf() < 1e-11);
}

TEST_CASE("extreme rays converge at rate 1/n") {
    const DirectingPath path = canonical_path();
    const LVec3 target = null_frame(kE1).u_minus;
    double err[4];
    const int ns[4] = {5, 10, 20, 40};
    for (int i = 0; i < 4; ++i)
        err[i] = euclid_norm(extreme_ray_displacement(path, ns[i], ExtremeRay::StartMinus) -
                             target);
    CHECK(err[1] < err[0]);
    CHECK(err[2] < err[1]);
    CHECK(err[3] < err[2]);
    CHECK(err[2] / err[1] > 0.35);
    CHECK(err[2] / err[1] < 0.65);
    CHECK(err[3] / err[2] > 0.35);
    CHECK(err[3] / err[2] < 0.65);
}

TEST_CASE("integration by parts identity") {
    const DirectingPath path = canonical_path();
    for (int n : {8, 12, 20}) {
        const double nd = n;
        const LVec3 lhs = simpson([&](double s) {
            return nd * std::exp(-nd * s) * path.frame(s).u_minus;
        });
        const LVec3 tail = simpson([&](double s) {
            return std::exp(-nd * s) * central_diff_minus(path, s);
        });
        const LVec3 rhs = path.frame(0.0).u_minus - std::exp(-nd) * path.frame(1.0).u_minus + tail;
        CHECK((lhs - rhs).linf() <= 1e-8);
    }
}

TEST_CASE("solve_vertex_path recovers the constant profile") {
    const DirectingPath constant = interp_path(kE1, kE1);  // solver math fixture only
    const MinPoint p0{0, 0, 0};
    const VertexCurve curve =
        solve_vertex_path(constant, p0, p0 + LVec3{0, std::sqrt(2.0), 0});
    CHECK(curve.residual() <= 1e-10);
    // the recovered family is f = g = 1
    for (double s : {0.0, 0.25, 0.5, 1.0}) {
        CHECK(curve.basis().f(s) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(curve.basis().g(s) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("solve_vertex_path hits the canonical target") {
    const DirectingPath path = canonical_path();
    const NullFrame f0 = null_frame(kE1);
    const NullFrame f1 = null_frame(kBoosted);
    const LVec3 delta = f0.u_minus - f0.u_plus + f1.u_minus - f1.u_plus;
    const MinPoint p0{0.25, -0.5, 1.0};
    const VertexCurve curve = solve_vertex_path(path, p0, p0 + delta);
    CHECK(curve.residual() <= 1e-8 * (1.0 + euclid_norm(delta)));
    CHECK(euclid_norm(curve.position(1.0) - (p0 + delta)) <=
          1e-8 * (1.0 + euclid_norm(delta)));
}

TEST_CASE("solve_vertex_path reports infeasible targets") {
    const DirectingPath constant = interp_path(kE1, kE1);
    const MinPoint p0{0, 0, 0};
    // u_minus + u_plus is not of the form a u_minus - b u_plus with a, b >= 0
    CHECK_THROWS_AS(solve_vertex_path(constant, p0, p0 + LVec3{0, 0, std::sqrt(2.0)}),
                    InfeasibleError);
}

TEST_CASE("attainable displacements scale and add like a cone") {
    const DirectingPath path = canonical_path();
    Rng rng(42);
    std::uniform_real_distribution<double> coeff(0.2, 1.5);
    for (int i = 0; i < 5; ++i) {
        const double a = coeff(rng), b = coeff(rng), k = coeff(rng);
        const auto f = [a](double s) { return a + s * s; };
        const auto g = [b](double s) { return b + 0.5 * s; };
        const LVec3 base = displacement_integral(path, f, g);
        const LVec3 scaled = displacement_integral(
            path, [&](double s) { return k * f(s); }, [&](double s) { return k * g(s); });
        CHECK((scaled - k * base).linf() <= 2.0 * kQuadTol * std::max(1.0, k));
    }
}

TEST_CASE("attainable displacements lie strictly inside the displacement cone") {
    const DirectingPath path = canonical_path();
    const ConicalHull cone = displacement_cone(-kE1, kBoosted);
    Rng rng(43);
    std::uniform_real_distribution<double> coeff(0.05, 2.0);
    for (int i = 0; i < 40; ++i) {
        const double c1 = coeff(rng), c2 = coeff(rng), c3 = coeff(rng), c4 = coeff(rng);
        const auto f = [&](double s) { return c1 + c2 * std::exp(-4.0 * s); };
        const auto g = [&](double s) { return c3 + c4 * std::exp(-4.0 * (1.0 - s)); };
        const LVec3 d = displacement_integral(path, f, g);
        CHECK(cone_contains(cone, d, true) == ConeLocation::In);
    }
}

TEST_CASE("build_foliation on the canonical fixture") {
    const MinPoint o{0, 0, 0};
    const CrookedPlane P{o, kE1};
    const CrookedPlane Q{o + LVec3{0, -2.0 * std::sqrt(2.0), 0}, {-kC1, 0, kS1}};
    const Foliation fol = build_foliation(P, Q);

    // leaf(0) is exactly P (the directing sign may flip; C(u) = C(-u))
    const CrookedPlane L0 = leaf(fol, 0.0);
    CHECK(L0.vertex.x == P.vertex.x);
    CHECK(L0.vertex.y == P.vertex.y);
    CHECK(L0.vertex.z == P.vertex.z);
    CHECK(((L0.direction - P.direction).linf() == 0.0 ||
           (L0.direction + P.direction).linf() == 0.0));

    const CrookedPlane L1 = leaf(fol, 1.0);
    CHECK(euclid_norm(L1.vertex - Q.vertex) <= 1e-8 * (1.0 + euclid_norm(Q.vertex - P.vertex)));

    // the middle leaf sits strictly between the endpoints
    const CrookedPlane Lm = leaf(fol, 0.5);
    CHECK(crooked_disjoint(P, Lm) == DisjointVerdict::Disjoint);
    CHECK(crooked_disjoint(Lm, Q) == DisjointVerdict::Disjoint);
    const ConicalHull cone = displacement_cone(-fol.path.value(0.0), fol.path.value(0.5));
    CHECK(cone_contains(cone, Lm.vertex - P.vertex, true) == ConeLocation::In);

    const ValidationReport report = validate_foliation(fol, 50);
    CHECK(report.passed());
    CHECK(report.pairwiseDisjointPairs == 1225);
    CHECK(report.endpointResidual <= 1e-8 * (1.0 + euclid_norm(Q.vertex - P.vertex)));

    CHECK_THROWS_AS(leaf(fol, -0.1), OutOfRangeError);
    CHECK_THROWS_AS(leaf(fol, 1.1), OutOfRangeError);
}

TEST_CASE("build_foliation rejects bad inputs") {
    const MinPoint o{0, 0, 0};
    const CrookedPlane P{o, kE1};
    CHECK_THROWS_AS(build_foliation(P, CrookedPlane{o + LVec3{0, 0, 3}, {-kC1, 0, kS1}}),
                    NotDisjointError);
    CHECK_THROWS_AS(build_foliation(P, CrookedPlane{o + LVec3{1, 1, 0}, kE1}),
                    DegenerateCaseError);
    CHECK_THROWS_AS(build_foliation(P, CrookedPlane{o + LVec3{1, 1, 0}, -kE1}),
                    DegenerateCaseError);
}

TEST_CASE("validate_foliation flags boundary velocities") {
    // f = 1, g = 0: the velocity rides the boundary ray of the stem quadrant
    const DirectingPath path = canonical_path();
    BasisFamily boundary;
    boundary.n = 4;
    boundary.c = {0, 0, 0, 0, 1, 0};
    boundary.delta = 0.0;
    const MinPoint p0{0, 0, 0};
    const VertexCurve curve(path, boundary, p0, p0 + LVec3{1, 0, 0}, 0.0);
    const Foliation fol{path, curve};
    const ValidationReport report = validate_foliation(fol, 10);
    CHECK_FALSE(report.derivativeConeViolations.empty());
}

TEST_CASE("validate_foliation with two samples checks only the endpoints") {
    const MinPoint o{0, 0, 0};
    const CrookedPlane P{o, kE1};
    const CrookedPlane Q{o + LVec3{0, -2.0 * std::sqrt(2.0), 0}, {-kC1, 0, kS1}};
    const Foliation fol = build_foliation(P, Q);
    const ValidationReport report = validate_foliation(fol, 2);
    CHECK(report.pairwiseDisjointPairs == 1);
    CHECK(report.passed());
}

TEST_CASE("leaf(0) applies no quadrature") {
    const MinPoint p0{0.125, -0.25, 0.0625};  // dyadic, exact in binary
    const DirectingPath path = canonical_path();
    const VertexCurve curve = solve_vertex_path(path, p0, p0 + LVec3{0, 2.0, 0.1});
    CHECK(curve.position(0.0).x == p0.x);
    CHECK(curve.position(0.0).y == p0.y);
    CHECK(curve.position(0.0).z == p0.z);
}

}  // TEST_SUITE
