#pragma once

#include <cmath>
#include <iosfwd>

#include "crooked/errors.hpp"

namespace crooked {

/// Default tolerance for causal classification. Scale-adjusted by the
/// squared sup-norm of the vector being classified.
inline constexpr double kClassTol = 1e-12;

/// Tolerance under which a direction counts as unit spacelike.
inline constexpr double kUnitTol = 1e-9;

/**
 * A vector of R^{2,1}: coordinates in the basis e1, e2, e3 carrying the
 * symmetric bilinear form x^2 + y^2 - z^2. Constructors reject NaN and
 * infinite components.
 */
struct LVec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr LVec3() = default;

    LVec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
        if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
            throw NonFiniteError("LVec3 component is NaN or infinite");
    }

    LVec3 operator+(const LVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    LVec3 operator-(const LVec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    LVec3 operator-() const { return {-x, -y, -z}; }
    LVec3 operator*(double s) const { return {s * x, s * y, s * z}; }
    LVec3& operator+=(const LVec3& o) { return *this = *this + o; }

    double linf() const { return std::max({std::abs(x), std::abs(y), std::abs(z)}); }
};

inline LVec3 operator*(double s, const LVec3& v) { return v * s; }

std::ostream& operator<<(std::ostream& os, const LVec3& v);

/// The form u1 v1 + u2 v2 - u3 v3.
inline double lorentz_dot(const LVec3& u, const LVec3& v) {
    return u.x * v.x + u.y * v.y - u.z * v.z;
}

/// Lorentzian cross product: antisymmetric, and (u x v) . w = det(u, v, w).
inline LVec3 lorentz_cross(const LVec3& u, const LVec3& v) {
    return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.y * v.x - u.x * v.y};
}

/// Determinant of the 3x3 matrix with rows a, b, c.
inline double det3(const LVec3& a, const LVec3& b, const LVec3& c) {
    return a.x * (b.y * c.z - b.z * c.y) - a.y * (b.x * c.z - b.z * c.x) +
           a.z * (b.x * c.y - b.y * c.x);
}

/// Euclidean dot product. Hull combinatorics and meshing use the Euclidean
/// metric, never the form.
inline double euclid_dot(const LVec3& u, const LVec3& v) {
    return u.x * v.x + u.y * v.y + u.z * v.z;
}

inline double euclid_norm(const LVec3& v) { return std::sqrt(euclid_dot(v, v)); }

/// Euclidean cross product (right-handed, metric-free orientation tool).
inline LVec3 euclid_cross(const LVec3& u, const LVec3& v) {
    return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
}

enum class CausalClass { Spacelike, Timelike, Null, Zero };

const char* to_string(CausalClass c);

/**
 * Causal type of v at tolerance eps: Zero when the vector itself is
 * negligible, Null when the self-product is negligible relative to the
 * squared magnitude, otherwise Spacelike/Timelike by sign.
 */
CausalClass classify_vector(const LVec3& v, double eps = kClassTol);

/// v / sqrt(v.v). Throws NotSpacelikeError when v.v <= eps.
LVec3 normalize_spacelike(const LVec3& v, double eps = kClassTol);

/**
 * A unit spacelike vector with its two null companions, normalized so the
 * companions have equal, strictly positive third coordinates and product
 * u_minus . u_plus = -1, labeled so that (u, u_minus, u_plus) is a
 * positively oriented basis. Satisfies u x u_plus = u_plus,
 * u x u_minus = -u_minus and u_minus x u_plus = u.
 */
struct NullFrame {
    LVec3 u;
    LVec3 u_minus;
    LVec3 u_plus;
};

/**
 * Extends a unit spacelike u to its null frame, in closed form through the
 * rotation-boost decomposition u = (r cos t, r sin t, h) with r^2 - h^2 = 1.
 * Throws NotUnitSpacelikeError unless |u.u - 1| <= kUnitTol.
 */
NullFrame null_frame(const LVec3& u);

}  // namespace crooked
