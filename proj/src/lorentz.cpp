#include "crooked/lorentz.hpp"

#include <ostream>

namespace crooked {

std::ostream& operator<<(std::ostream& os, const LVec3& v) {
    return os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
}

const char* to_string(CausalClass c) {
    switch (c) {
        case CausalClass::Spacelike: return "spacelike";
        case CausalClass::Timelike: return "timelike";
        case CausalClass::Null: return "null";
        case CausalClass::Zero: return "zero";
    }
    return "?";
}

CausalClass classify_vector(const LVec3& v, double eps) {
    if (eps <= 0.0) throw InvalidParamsError("classify_vector: eps must be positive");
    const double mag = v.linf();
    if (mag <= eps) return CausalClass::Zero;
    const double q = lorentz_dot(v, v);
    if (std::abs(q) <= eps * mag * mag) return CausalClass::Null;
    return q > 0.0 ? CausalClass::Spacelike : CausalClass::Timelike;
}

LVec3 normalize_spacelike(const LVec3& v, double eps) {
    const double q = lorentz_dot(v, v);
    if (q <= eps) throw NotSpacelikeError("normalize_spacelike: self-product not positive");
    const double inv = 1.0 / std::sqrt(q);
    return v * inv;
}

NullFrame null_frame(const LVec3& u) {
    if (std::abs(lorentz_dot(u, u) - 1.0) > kUnitTol)
        throw NotUnitSpacelikeError("null_frame: direction is not unit spacelike");

    // u = (r cos t, r sin t, h) with r^2 - h^2 = 1, so r >= 1 always.
    const double h = u.z;
    const double r = std::sqrt(u.x * u.x + u.y * u.y);
    const double c = u.x / r;
    const double s = u.y / r;

    // Null directions orthogonal to u, representatives scaled from third
    // coordinate 1 by the common factor r/sqrt(2) that makes their product -1.
    const double k = 1.0 / std::sqrt(2.0);
    LVec3 a{(h * c - s) * k, (h * s + c) * k, r * k};
    LVec3 b{(h * c + s) * k, (h * s - c) * k, r * k};

    // The closed form already orders (a, b) positively; the determinant test
    // keeps the label assignment canonical rather than formula-dependent.
    if (det3(u, a, b) < 0.0) std::swap(a, b);
    return NullFrame{u, a, b};
}

}  // namespace crooked
