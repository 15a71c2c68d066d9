#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "crooked/disjointness.hpp"

namespace crooked {

/// Absolute per-component tolerance of the adaptive displacement quadrature.
inline constexpr double kQuadTol = 1e-10;

/// Relative endpoint tolerance of the vertex-path solver.
inline constexpr double kSolverTol = 1e-8;

/// Cap of the concentration-escalation schedule {4, 8, 16, 32, 60}.
inline constexpr int kDefaultNMax = 60;

/**
 * A path t -> u_t of unit spacelike vectors on [0, 1]. Interpolated paths
 * (normalized linear interpolation) have an analytic derivative; sampled
 * paths are cubic-Hermite interpolants of user knots, renormalized, with
 * derivatives by centered differences (step 1e-6).
 */
class DirectingPath {
public:
    enum class Kind { Interpolated, Sampled };

    LVec3 value(double t) const;
    LVec3 derivative(double t) const;
    NullFrame frame(double t) const { return null_frame(value(t)); }

    Kind kind() const { return kind_; }
    const LVec3& start() const { return u0_; }
    const LVec3& end() const { return u1_; }
    const std::vector<std::pair<double, LVec3>>& knots() const { return knots_; }

    friend DirectingPath interp_path(const LVec3& u0, const LVec3& u1);
    friend DirectingPath sampled_path(std::vector<std::pair<double, LVec3>> knots);

private:
    DirectingPath() = default;

    Kind kind_ = Kind::Interpolated;
    LVec3 u0_, u1_;
    std::vector<std::pair<double, LVec3>> knots_;
    std::vector<LVec3> tangents_;
};

/**
 * Normalized linear interpolation between two unit spacelike endpoints.
 * Requires u0.u1 >= 1 - 1e-9 so the interpolant stays spacelike; callers
 * pre-normalize signs via orient_pair on (-u0, u1).
 */
DirectingPath interp_path(const LVec3& u0, const LVec3& u1);

/// Cubic-Hermite path through user knots (t strictly increasing from 0 to 1).
DirectingPath sampled_path(std::vector<std::pair<double, LVec3>> knots);

/// Aggregated result of path or foliation validation. A passing report has
/// all violation lists empty; endpointResidual is informational.
struct ValidationReport {
    double endpointResidual = 0.0;
    long pairwiseDisjointPairs = 0;
    std::vector<std::pair<double, double>> failures;
    std::vector<double> derivativeConeViolations;
    std::vector<std::pair<double, double>> orientationViolations;

    bool passed() const {
        return failures.empty() && derivativeConeViolations.empty() &&
               orientationViolations.empty();
    }
};

/**
 * Checks the foliation hypotheses for a directing path on a uniform grid:
 * unit norm, pairwise products >= 1, and consistent orientation of
 * (-u_t, u_s) for t < s (pairs with u_s = u_t are excluded by the
 * asymptotic definition and reported as orientation violations).
 */
ValidationReport validate_path(const DirectingPath& path, int gridSize);

/**
 * Vector quadrature of f(s) u_s^- - g(s) u_s^+ over [0, 1] for strictly
 * positive f, g: composite 16-point Gauss-Legendre on panels geometrically
 * refined toward both endpoints (ratio 0.5, initially 8 panels), doubling
 * the panel count until two successive results agree within quadTol per
 * component. Throws QuadratureFailureError at the panel cap.
 */
LVec3 displacement_integral(const DirectingPath& path, const std::function<double(double)>& f,
                            const std::function<double(double)>& g, double quadTol = kQuadTol);

/// Which boundary ray of the displacement cone to approximate.
enum class ExtremeRay { StartMinus, EndMinus, StartPlusNegated, EndPlusNegated };

/**
 * Displacement of the endpoint-concentrated profile pair: f_n(s) = n e^{-ns}
 * with g_n = e^{-n} approaches the ray of u_0^-; mirroring the concentration
 * to s = 1 approaches u_1^-, and exchanging the roles of f and g approaches
 * the two negated plus-rays.
 */
LVec3 extreme_ray_displacement(const DirectingPath& path, int n, ExtremeRay ray,
                               double quadTol = kQuadTol);

/**
 * Profile pair (f, g) spanned by endpoint-concentrated exponentials and
 * constants, with a positivity floor delta:
 *   f(s) = c1 n e^{-ns} + c2 n e^{-n(1-s)} + c5 + delta
 *   g(s) = c3 n e^{-ns} + c4 n e^{-n(1-s)} + c6 + delta
 * All coefficients nonnegative and delta > 0 keep f, g strictly positive.
 */
struct BasisFamily {
    int n = 4;
    std::array<double, 6> c{};
    double delta = 0.0;

    double f(double s) const;
    double g(double s) const;
};

/**
 * Vertex curve p_t = p0 + integral of v(s) = f(s) u_s^- - g(s) u_s^+ from 0
 * to t, evaluated through a cached cumulative quadrature. Positive f, g put
 * the velocity in the relative interior of the stem quadrant of u_t, which
 * is exactly the foliation criterion for the leaves C(p_t, u_t).
 */
class VertexCurve {
public:
    VertexCurve(DirectingPath path, BasisFamily basis, MinPoint p0, MinPoint target,
                double residual);

    MinPoint position(double t) const;  // p_t; exact p0 at t = 0
    LVec3 velocity(double t) const;     // v(t), no quadrature involved

    const BasisFamily& basis() const { return basis_; }
    const MinPoint& p0() const { return p0_; }
    const MinPoint& target() const { return target_; }
    double residual() const { return residual_; }

private:
    DirectingPath path_;
    BasisFamily basis_;
    MinPoint p0_, target_;
    double residual_ = 0.0;
    std::vector<double> breakpoints_;
    std::vector<LVec3> cumulative_;
};

/**
 * Finds a profile pair whose displacement integral matches p1 - p0: solves
 * the 3-equation nonnegative least-squares problem over the six basis
 * displacements (minus the delta-floor displacement), escalating the
 * concentration n through {4, 8, 16, 32, 60} until the endpoint residual is
 * within solverTol * (1 + |p1 - p0|). Throws InfeasibleError when the cap
 * is reached, signalling a displacement outside the attainable cone up to
 * numerical margin. Preconditions (valid path, disjoint endpoint planes)
 * are the caller's contract; build_foliation enforces them.
 */
VertexCurve solve_vertex_path(const DirectingPath& path, const MinPoint& p0, const MinPoint& p1,
                              double solverTol = kSolverTol, int nMax = kDefaultNMax);

/// A directing path with its vertex curve; leaf(t) = C(p_t, u_t).
struct Foliation {
    DirectingPath path;
    VertexCurve curve;
};

/**
 * Builds a foliation interpolating between two disjoint crooked planes:
 * orients direction signs so (-u_0, u_1) is consistently oriented, builds
 * the interpolated path and solves for the vertex curve. Throws
 * NotDisjointError / DegenerateCaseError / InfeasibleError.
 */
Foliation build_foliation(const CrookedPlane& P, const CrookedPlane& Q,
                          double solverTol = kSolverTol, int nMax = kDefaultNMax);

/// The leaf C(p_t, u_t); t must lie in [0, 1].
CrookedPlane leaf(const Foliation& fol, double t);

/**
 * Certifies the foliation on a uniform grid: endpoint residual, pairwise
 * exact disjointness of leaves (consistent orientation of (-u_t, u_s) plus
 * strict cone membership of p_s - p_t), and strict stem-quadrant membership
 * of the velocity at every node.
 */
ValidationReport validate_foliation(const Foliation& fol, int samples);

}  // namespace crooked
