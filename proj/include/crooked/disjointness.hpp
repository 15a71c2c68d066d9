#pragma once

#include <optional>
#include <vector>

#include "crooked/crooked_plane.hpp"

namespace crooked {

/// Default tolerance band for pair classification and cone membership.
/// Boundary cases of the open disjointness criterion are genuinely
/// undecidable at float precision and are surfaced as Marginal.
inline constexpr double kPairTol = 1e-9;

enum class PairClass { Ultraparallel, Asymptotic, Identical, OppositeIdentical, Crossing };

const char* to_string(PairClass c);

/// Signs applied to a direction pair to make it consistently oriented.
struct SignChoice {
    int eps1 = 1;
    int eps2 = 1;
};

/**
 * Consistent orientation of two unit spacelike vectors: u.u2 <= -1 and all
 * four mixed products u_i . u_j^(+/-) nonpositive (within tol).
 */
bool consistently_oriented(const LVec3& u, const LVec3& u2, double tol = kPairTol);

/**
 * Tries the sign choices (+,+), (+,-), (-,+), (-,-) in that fixed order and
 * returns the first that passes consistently_oriented, or nullopt when no
 * choice of signs works (crossing pairs).
 */
std::optional<SignChoice> orient_pair(const LVec3& u, const LVec3& u2, double tol = kPairTol);

/**
 * Relative position of the geodesics determined by two unit spacelike
 * vectors, from the oriented product: Ultraparallel below -1, Asymptotic at
 * -1 within the eps band, Crossing when no sign choice helps.
 */
PairClass classify_pair(const LVec3& u, const LVec3& u2, double eps = kPairTol);

/**
 * Finitely generated cone in coordinate space, with facet normals for
 * strict membership. Convexity and conical membership are affine-linear
 * notions; all hull combinatorics here are Euclidean, never Lorentzian.
 */
struct ConicalHull {
    std::vector<LVec3> generators;
    std::vector<int> extremeRays;      // indices into generators
    std::vector<LVec3> facetNormals;   // unit, inward-positive: interior iff all dots > 0
    int rank = 0;
    bool salient = false;              // pointed with nonempty interior
};

/// Builds the hull of arbitrary generators (facets only when rank 3).
ConicalHull conical_hull(std::vector<LVec3> generators);

/**
 * The displacement cone of a consistently oriented pair: hull of the four
 * rays u2_minus, -u2_plus, -u_minus, u_plus. Its interior is exactly the
 * set of vertex displacements making the two crooked planes disjoint.
 * Throws NotConsistentlyOrientedError otherwise.
 */
ConicalHull displacement_cone(const LVec3& u, const LVec3& u2, double tol = kPairTol);

enum class ConeLocation { In, Out, Marginal, Degenerate };

const char* to_string(ConeLocation c);

/**
 * Membership of x in the hull. Degenerate when the cone has no interior in
 * R^3. Strict mode reports Marginal inside the tolerance band around the
 * facets; non-strict resolves the band as In.
 */
ConeLocation cone_contains(const ConicalHull& hull, const LVec3& x, bool strict,
                           double tol = kPairTol);

enum class DisjointVerdict { Disjoint, Intersect, DegenerateCase, Marginal };

const char* to_string(DisjointVerdict v);

/**
 * Exact disjointness of two crooked planes. Pairs admitting no consistent
 * orientation necessarily intersect; identical/opposite directions are
 * reported DegenerateCase; otherwise the verdict is the strict cone test
 * of the vertex displacement.
 */
DisjointVerdict crooked_disjoint(const CrookedPlane& P, const CrookedPlane& Q,
                                 double tol = kPairTol);

}  // namespace crooked
