#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "crooked/lorentz.hpp"

namespace crooked {

/// Default membership tolerance, scale-relative to the sup-norm of the
/// query.
inline constexpr double kMembershipTol = 1e-9;

/// A point of Minkowski affine 3-space after a choice of origin.
struct MinPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr MinPoint() = default;

    MinPoint(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
        if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
            throw NonFiniteError("MinPoint component is NaN or infinite");
    }

    MinPoint operator+(const LVec3& v) const { return {x + v.x, y + v.y, z + v.z}; }
    LVec3 operator-(const MinPoint& o) const { return {x - o.x, y - o.y, z - o.z}; }
};

/// The piecewise linear surface with the given vertex and unit spacelike
/// directing vector: stem (causal orthogonal vectors) plus two null wings.
struct CrookedPlane {
    MinPoint vertex;
    LVec3 direction;

    CrookedPlane(const MinPoint& p, const LVec3& u) : vertex(p), direction(u) {
        if (std::abs(lorentz_dot(u, u) - 1.0) > kUnitTol)
            throw NotUnitSpacelikeError("CrookedPlane: direction is not unit spacelike");
    }
};

/// Coordinates of a vector in the null-frame basis (u, u_minus, u_plus).
struct FrameCoords {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

enum class PieceKind : std::uint8_t { Stem, WingPlus, WingMinus, Outside };

const char* to_string(PieceKind k);

/// Membership verdict: which piece the query lies on, with a flag raised
/// when the query is within 10x tolerance of a piece boundary.
struct PieceLabel {
    PieceKind kind = PieceKind::Outside;
    bool marginal = false;
};

/**
 * Change of basis into (u, u_minus, u_plus). From the frame Gram matrix:
 * alpha = v.u, beta = -(v.u_plus), gamma = -(v.u_minus).
 */
FrameCoords frame_coordinates(const LVec3& v, const NullFrame& frame);

/// True iff v lies in the stem of u: orthogonal to u with v.v <= 0, i.e.
/// beta*gamma >= 0 in frame coordinates.
bool stem_contains(const LVec3& v, const NullFrame& frame, double tol = kMembershipTol);

/**
 * Classifies v against the linear crooked plane C(u). The wings are the
 * half-planes {alpha u + gamma u_plus : alpha >= 0} and
 * {alpha u + beta u_minus : alpha <= 0}; these are exactly the solutions
 * of the defining cross-product condition via u x u_plus = u_plus and
 * u x u_minus = -u_minus.
 */
PieceLabel piece_classify(const LVec3& v, const NullFrame& frame, double tol = kMembershipTol);

/// piece_classify of q - vertex in the frame of the directing vector.
PieceLabel crooked_contains(const MinPoint& q, const CrookedPlane& plane,
                            double tol = kMembershipTol);

/**
 * Membership in the stem quadrant {a u_minus - b u_plus : a, b >= 0}\{0}.
 * Strict mode tests the relative interior (a, b > 0), the derivative cone
 * of the foliation criterion.
 */
bool stem_quadrant_contains(const LVec3& v, const NullFrame& frame, bool strict,
                            double tol = kMembershipTol);

/// Triangulated patch of a crooked plane, tagged per piece.
struct Mesh {
    std::vector<MinPoint> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<PieceKind> pieceTags;  // one per triangle
};

/**
 * Triangulates the part of the crooked plane within the Euclidean ball of
 * the given radius around the vertex. Stem quadrants are gridded in
 * (beta, gamma), wings in (alpha, null coordinate); cells touching the
 * ball are kept whole, so coverage is a superset of the surface inside the
 * ball. resolution = grid cells per patch axis.
 */
Mesh mesh_crooked_plane(const CrookedPlane& plane, double radius, int resolution);

}  // namespace crooked
