#pragma once

#include <cmath>
#include <random>

#include "crooked/crooked_plane.hpp"
#include "crooked/lorentz.hpp"

namespace crooked::testutil {

using Rng = std::mt19937_64;

/// Unit spacelike vector from angle and rapidity: (cosh(a) cos t, cosh(a) sin t, sinh(a)).
inline LVec3 unit_spacelike(double theta, double rapidity) {
    return {std::cosh(rapidity) * std::cos(theta), std::cosh(rapidity) * std::sin(theta),
            std::sinh(rapidity)};
}

inline LVec3 random_unit_spacelike(Rng& rng, double maxRapidity = 3.0) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> rap(-maxRapidity, maxRapidity);
    return unit_spacelike(angle(rng), rap(rng));
}

inline LVec3 random_box_vec(Rng& rng, double half) {
    std::uniform_real_distribution<double> u(-half, half);
    return {u(rng), u(rng), u(rng)};
}

inline MinPoint random_box_point(Rng& rng, double half) {
    std::uniform_real_distribution<double> u(-half, half);
    return {u(rng), u(rng), u(rng)};
}

inline double frame_defect(const NullFrame& f) {
    double d = std::abs(lorentz_dot(f.u, f.u) - 1.0);
    d = std::max(d, std::abs(lorentz_dot(f.u, f.u_minus)));
    d = std::max(d, std::abs(lorentz_dot(f.u, f.u_plus)));
    d = std::max(d, std::abs(lorentz_dot(f.u_minus, f.u_minus)));
    d = std::max(d, std::abs(lorentz_dot(f.u_plus, f.u_plus)));
    d = std::max(d, std::abs(lorentz_dot(f.u_minus, f.u_plus) + 1.0));
    d = std::max(d, std::abs(f.u_minus.z - f.u_plus.z));
    d = std::max(d, (lorentz_cross(f.u, f.u_plus) - f.u_plus).linf());
    d = std::max(d, (lorentz_cross(f.u, f.u_minus) + f.u_minus).linf());
    d = std::max(d, (lorentz_cross(f.u_minus, f.u_plus) - f.u).linf());
    if (!(f.u_minus.z > 0.0) || !(f.u_plus.z > 0.0)) d = std::max(d, 1.0);
    if (!(det3(f.u, f.u_minus, f.u_plus) > 0.0)) d = std::max(d, 1.0);
    return d;
}

}  // namespace crooked::testutil
