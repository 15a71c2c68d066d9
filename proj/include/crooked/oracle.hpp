#pragma once

#include <optional>
#include <vector>

#include "crooked/crooked_plane.hpp"

namespace crooked {

/// Triangle in affine coordinates.
struct Triangle {
    MinPoint a, b, c;
};

/**
 * Euclidean triangle-triangle intersection (interval-overlap method).
 * Returns the intersection segment when the triangles cross within tol;
 * coplanar overlaps report a degenerate segment at a common point.
 */
std::optional<std::pair<MinPoint, MinPoint>> tri_tri_intersect(const Triangle& t1,
                                                               const Triangle& t2,
                                                               double tol = 1e-12);

/// A certified crossing of two crooked planes.
struct Witness {
    MinPoint point;
    PieceLabel pieceA;
    PieceLabel pieceB;
    double separation = 0.0;  // joint membership residual at the point
};

/**
 * Brute-force crossing search, independent of the cone criterion: meshes
 * both planes over the given ball, scans triangle pairs behind an
 * axis-aligned-box broad phase in deterministic order, and refines the
 * first hit by bisection to residual <= 1e-6. An empty result certifies no
 * intersection within the sampled ball only; crooked planes are unbounded
 * and only the exact predicate can certify global disjointness.
 */
std::optional<Witness> crooked_intersect_oracle(const CrookedPlane& P, const CrookedPlane& Q,
                                                double radius = 20.0, int resolution = 128);

/**
 * Sampling-based cone membership, independent of the facet predicate:
 * minimizes |sum lambda_i g_i - x| over lambda >= 0 by projected
 * coordinate descent from zero. Membership iff the final residual is
 * <= tol * (1 + |x|).
 */
bool cone_contains_oracle(const std::vector<LVec3>& generators, const LVec3& x,
                          double tol = 1e-8);

/// Interior test by membership of the six axis probes x +- delta e_k with
/// delta = 1e-4 |x|.
bool cone_interior_oracle(const std::vector<LVec3>& generators, const LVec3& x,
                          double tol = 1e-8);

}  // namespace crooked
