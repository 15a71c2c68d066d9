#include "crooked/disjointness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace crooked {

const char* to_string(PairClass c) {
    switch (c) {
        case PairClass::Ultraparallel: return "ultraparallel";
        case PairClass::Asymptotic: return "asymptotic";
        case PairClass::Identical: return "identical";
        case PairClass::OppositeIdentical: return "opposite_identical";
        case PairClass::Crossing: return "crossing";
    }
    return "?";
}

const char* to_string(ConeLocation c) {
    switch (c) {
        case ConeLocation::In: return "in";
        case ConeLocation::Out: return "out";
        case ConeLocation::Marginal: return "marginal";
        case ConeLocation::Degenerate: return "degenerate";
    }
    return "?";
}

const char* to_string(DisjointVerdict v) {
    switch (v) {
        case DisjointVerdict::Disjoint: return "disjoint";
        case DisjointVerdict::Intersect: return "intersect";
        case DisjointVerdict::DegenerateCase: return "degenerate";
        case DisjointVerdict::Marginal: return "marginal";
    }
    return "?";
}

bool consistently_oriented(const LVec3& u, const LVec3& u2, double tol) {
    if (lorentz_dot(u, u2) > -1.0 + tol) return false;
    const NullFrame f1 = null_frame(u);
    const NullFrame f2 = null_frame(u2);
    return lorentz_dot(u, f2.u_minus) <= tol && lorentz_dot(u, f2.u_plus) <= tol &&
           lorentz_dot(u2, f1.u_minus) <= tol && lorentz_dot(u2, f1.u_plus) <= tol;
}

std::optional<SignChoice> orient_pair(const LVec3& u, const LVec3& u2, double tol) {
    static constexpr int kOrder[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    for (const auto& signs : kOrder) {
        const LVec3 a = u * static_cast<double>(signs[0]);
        const LVec3 b = u2 * static_cast<double>(signs[1]);
        if (consistently_oriented(a, b, tol)) return SignChoice{signs[0], signs[1]};
    }
    return std::nullopt;
}

PairClass classify_pair(const LVec3& u, const LVec3& u2, double eps) {
    if (std::abs(lorentz_dot(u, u) - 1.0) > kUnitTol ||
        std::abs(lorentz_dot(u2, u2) - 1.0) > kUnitTol)
        throw NotUnitSpacelikeError("classify_pair: directions must be unit spacelike");
    if ((u2 - u).linf() <= eps) return PairClass::Identical;
    if ((u2 + u).linf() <= eps) return PairClass::OppositeIdentical;
    const double d = lorentz_dot(u, u2);
    if (std::abs(d) < 1.0 - eps) return PairClass::Crossing;
    const auto signs = orient_pair(u, u2, eps);
    if (!signs) return PairClass::Crossing;
    const double oriented = d * signs->eps1 * signs->eps2;
    return oriented < -1.0 - eps ? PairClass::Ultraparallel : PairClass::Asymptotic;
}

namespace {

constexpr double kHullTol = 1e-9;

}  // namespace

ConicalHull conical_hull(std::vector<LVec3> generators) {
    ConicalHull hull;
    hull.generators = std::move(generators);

    std::vector<LVec3> dirs;
    dirs.reserve(hull.generators.size());
    for (const LVec3& g : hull.generators) {
        const double n = euclid_norm(g);
        if (n > kHullTol) dirs.push_back(g * (1.0 / n));
    }
    if (dirs.empty()) return hull;

    hull.rank = 1;
    for (size_t i = 0; i + 1 < dirs.size() && hull.rank < 3; ++i)
        for (size_t j = i + 1; j < dirs.size(); ++j) {
            if (euclid_norm(euclid_cross(dirs[i], dirs[j])) > kHullTol) {
                hull.rank = std::max(hull.rank, 2);
                for (size_t k = 0; k < dirs.size(); ++k)
                    if (std::abs(det3(dirs[i], dirs[j], dirs[k])) > kHullTol) hull.rank = 3;
            }
            if (hull.rank == 3) break;
        }
    if (hull.rank < 3) return hull;

    // Unique ray directions; an antipodal pair means the cone contains a
    // line and has no pointed interior description.
    std::vector<LVec3> rays;
    for (const LVec3& d : dirs) {
        bool dup = false;
        for (const LVec3& r : rays) {
            const double c = euclid_dot(d, r);
            if (c > 1.0 - 1e-12) dup = true;
            if (c < -1.0 + 1e-12) return hull;  // not salient
        }
        if (!dup) rays.push_back(d);
    }

    // Facets are spanned by ray pairs with every other ray on one side.
    for (size_t i = 0; i + 1 < rays.size(); ++i) {
        for (size_t j = i + 1; j < rays.size(); ++j) {
            LVec3 n = euclid_cross(rays[i], rays[j]);
            const double nn = euclid_norm(n);
            if (nn <= kHullTol) continue;
            n = n * (1.0 / nn);
            double lo = 0.0, hi = 0.0;
            for (const LVec3& r : rays) {
                const double s = euclid_dot(n, r);
                lo = std::min(lo, s);
                hi = std::max(hi, s);
            }
            LVec3 normal;
            if (lo >= -kHullTol)
                normal = n;
            else if (hi <= kHullTol)
                normal = -n;
            else
                continue;
            bool dup = false;
            for (const LVec3& m : hull.facetNormals)
                if (euclid_dot(m, normal) > 1.0 - 1e-10) dup = true;
            if (!dup) hull.facetNormals.push_back(normal);
        }
    }
    hull.salient = hull.facetNormals.size() >= 3;

    // Extreme rays lie on at least two facets of a pointed 3D cone.
    for (size_t g = 0; g < hull.generators.size(); ++g) {
        const double n = euclid_norm(hull.generators[g]);
        if (n <= kHullTol) continue;
        const LVec3 d = hull.generators[g] * (1.0 / n);
        int onFacets = 0;
        for (const LVec3& m : hull.facetNormals)
            if (std::abs(euclid_dot(m, d)) <= kHullTol) ++onFacets;
        if (onFacets >= 2) hull.extremeRays.push_back(static_cast<int>(g));
    }
    return hull;
}

ConicalHull displacement_cone(const LVec3& u, const LVec3& u2, double tol) {
    if (!consistently_oriented(u, u2, tol))
        throw NotConsistentlyOrientedError("displacement_cone: pair is not consistently oriented");
    const NullFrame f1 = null_frame(u);
    const NullFrame f2 = null_frame(u2);
    return conical_hull({f2.u_minus, -f2.u_plus, -f1.u_minus, f1.u_plus});
}

ConeLocation cone_contains(const ConicalHull& hull, const LVec3& x, bool strict, double tol) {
    if (hull.rank < 3 || !hull.salient) return ConeLocation::Degenerate;
    const double band = tol * std::max(1.0, x.linf());
    double lowest = std::numeric_limits<double>::infinity();
    for (const LVec3& n : hull.facetNormals) lowest = std::min(lowest, euclid_dot(n, x));
    if (strict) {
        if (lowest > band) return ConeLocation::In;
        if (lowest < -band) return ConeLocation::Out;
        return ConeLocation::Marginal;
    }
    return lowest >= -band ? ConeLocation::In : ConeLocation::Out;
}

DisjointVerdict crooked_disjoint(const CrookedPlane& P, const CrookedPlane& Q, double tol) {
    const PairClass pc = classify_pair(P.direction, Q.direction, tol);
    if (pc == PairClass::Identical || pc == PairClass::OppositeIdentical)
        return DisjointVerdict::DegenerateCase;
    const auto signs = orient_pair(P.direction, Q.direction, tol);
    if (!signs) return DisjointVerdict::Intersect;  // no consistent orientation exists

    const ConicalHull cone = displacement_cone(P.direction * double(signs->eps1),
                                               Q.direction * double(signs->eps2), tol);
    switch (cone_contains(cone, Q.vertex - P.vertex, /*strict=*/true, tol)) {
        case ConeLocation::In: return DisjointVerdict::Disjoint;
        case ConeLocation::Out: return DisjointVerdict::Intersect;
        case ConeLocation::Marginal: return DisjointVerdict::Marginal;
        case ConeLocation::Degenerate: return DisjointVerdict::DegenerateCase;
    }
    return DisjointVerdict::DegenerateCase;
}

}  // namespace crooked
