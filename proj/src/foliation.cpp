#include "crooked/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace crooked {

namespace {

// 16-point Gauss-Legendre rule on [-1, 1].
constexpr int kGL = 16;
constexpr double kGLNode[kGL / 2] = {
    0.09501250983763744018531934, 0.28160355077925891323046050,
    0.45801677765722738634241944, 0.61787624440264374844667176,
    0.75540440835500303389510119, 0.86563120238783174388046790,
    0.94457502307323257607798842, 0.98940093499164993259615417,
};
constexpr double kGLWeight[kGL / 2] = {
    0.18945061045506849628539672, 0.18260341504492358886676366,
    0.16915651939500253818931208, 0.14959598881657673208150173,
    0.12462897125553387205247628, 0.09515851168249278480992511,
    0.06225352393864789286284384, 0.02715245941175409485178057,
};

template <typename F>
LVec3 gl16(const F& integrand, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    LVec3 acc;
    for (int i = 0; i < kGL / 2; ++i) {
        const double d = half * kGLNode[i];
        acc += kGLWeight[i] * (integrand(mid - d) + integrand(mid + d));
    }
    return half * acc;
}

// Panel mesh of [0, 1]: initially 8 panels geometrically refined toward
// both endpoints with ratio 0.5; each level splits every panel at its
// midpoint, doubling the count while deepening the endpoint refinement.
std::vector<double> panel_breakpoints(int level) {
    std::vector<double> bp = {0.0,       1.0 / 16, 1.0 / 8,   1.0 / 4, 1.0 / 2,
                              3.0 / 4,   7.0 / 8,  15.0 / 16, 1.0};
    for (int j = 0; j < level; ++j) {
        std::vector<double> next;
        next.reserve(2 * bp.size());
        for (size_t k = 0; k + 1 < bp.size(); ++k) {
            next.push_back(bp[k]);
            next.push_back(0.5 * (bp[k] + bp[k + 1]));
        }
        next.push_back(1.0);
        bp = std::move(next);
    }
    return bp;
}

template <typename F>
LVec3 panel_integral(const F& integrand, const std::vector<double>& bp) {
    LVec3 total;
    for (size_t k = 0; k + 1 < bp.size(); ++k) total += gl16(integrand, bp[k], bp[k + 1]);
    return total;
}

// Fixed panelization shared by the solver's basis integrals and the vertex
// curve cache; resolves e^{-ns} up to the escalation cap with margin.
constexpr int kFixedLevel = 3;  // 64 panels, smallest width 2^-7

struct VelocityIntegrand {
    const DirectingPath& path;
    const std::function<double(double)>& f;
    const std::function<double(double)>& g;

    LVec3 operator()(double s) const {
        const NullFrame fr = path.frame(s);
        return f(s) * fr.u_minus - g(s) * fr.u_plus;
    }
};

}  // namespace

DirectingPath interp_path(const LVec3& u0, const LVec3& u1) {
    if (std::abs(lorentz_dot(u0, u0) - 1.0) > kUnitTol ||
        std::abs(lorentz_dot(u1, u1) - 1.0) > kUnitTol)
        throw InvalidEndpointsError("interp_path: endpoints must be unit spacelike");
    if (lorentz_dot(u0, u1) < 1.0 - kUnitTol)
        throw InvalidEndpointsError("interp_path: endpoint product below 1");
    DirectingPath p;
    p.kind_ = DirectingPath::Kind::Interpolated;
    p.u0_ = u0;
    p.u1_ = u1;
    return p;
}

DirectingPath sampled_path(std::vector<std::pair<double, LVec3>> knots) {
    if (knots.size() < 2) throw InvalidParamsError("sampled_path: need at least two knots");
    for (size_t i = 0; i + 1 < knots.size(); ++i)
        if (!(knots[i].first < knots[i + 1].first))
            throw InvalidParamsError("sampled_path: knot parameters must strictly increase");
    if (std::abs(knots.front().first) > 1e-12 || std::abs(knots.back().first - 1.0) > 1e-12)
        throw InvalidParamsError("sampled_path: knots must span [0, 1]");

    DirectingPath p;
    p.kind_ = DirectingPath::Kind::Sampled;
    p.u0_ = knots.front().second;
    p.u1_ = knots.back().second;
    p.knots_ = std::move(knots);

    // Catmull-Rom style tangents; quadratic one-sided stencils at the ends.
    const auto& k = p.knots_;
    p.tangents_.resize(k.size());
    for (size_t i = 1; i + 1 < k.size(); ++i)
        p.tangents_[i] =
            (k[i + 1].second - k[i - 1].second) * (1.0 / (k[i + 1].first - k[i - 1].first));
    const auto quadratic_tangent = [](double t, const std::pair<double, LVec3>& a,
                                      const std::pair<double, LVec3>& b,
                                      const std::pair<double, LVec3>& c) {
        const double ta = a.first, tb = b.first, tc = c.first;
        return a.second * ((2 * t - tb - tc) / ((ta - tb) * (ta - tc))) +
               b.second * ((2 * t - ta - tc) / ((tb - ta) * (tb - tc))) +
               c.second * ((2 * t - ta - tb) / ((tc - ta) * (tc - tb)));
    };
    if (k.size() == 2) {
        const LVec3 slope = (k[1].second - k[0].second) * (1.0 / (k[1].first - k[0].first));
        p.tangents_[0] = p.tangents_[1] = slope;
    } else {
        p.tangents_.front() = quadratic_tangent(k[0].first, k[0], k[1], k[2]);
        p.tangents_.back() =
            quadratic_tangent(k.back().first, k[k.size() - 3], k[k.size() - 2], k.back());
    }
    return p;
}

LVec3 DirectingPath::value(double t) const {
    if (t == 0.0) return u0_;  // endpoints are exact, never renormalized
    if (t == 1.0) return u1_;
    if (kind_ == Kind::Interpolated) {
        const LVec3 w = (1.0 - t) * u0_ + t * u1_;
        return normalize_spacelike(w);
    }
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                               [](double v, const auto& kn) { return v < kn.first; });
    size_t seg = it == knots_.begin() ? 0 : static_cast<size_t>(it - knots_.begin()) - 1;
    seg = std::min(seg, knots_.size() - 2);
    const auto& [ta, ua] = knots_[seg];
    const auto& [tb, ub] = knots_[seg + 1];
    const double h = tb - ta;
    const double x = (t - ta) / h;
    const double x2 = x * x, x3 = x2 * x;
    const LVec3 w = (2 * x3 - 3 * x2 + 1) * ua + (x3 - 2 * x2 + x) * h * tangents_[seg] +
                    (-2 * x3 + 3 * x2) * ub + (x3 - x2) * h * tangents_[seg + 1];
    // Renormalize when safely spacelike; otherwise surface the raw value so
    // validate_path can report the unit-norm violation.
    if (lorentz_dot(w, w) > 1e-6) return normalize_spacelike(w);
    return w;
}

LVec3 DirectingPath::derivative(double t) const {
    if (kind_ == Kind::Interpolated) {
        const LVec3 w = (1.0 - t) * u0_ + t * u1_;
        const LVec3 wd = u1_ - u0_;
        const double q = lorentz_dot(w, w);
        const double s = std::sqrt(q);
        return wd * (1.0 / s) - w * (lorentz_dot(w, wd) / (q * s));
    }
    const double h = 1e-6;
    const double a = std::max(0.0, t - h);
    const double b = std::min(1.0, t + h);
    return (value(b) - value(a)) * (1.0 / (b - a));
}

ValidationReport validate_path(const DirectingPath& path, int gridSize) {
    if (gridSize < 2) throw InvalidParamsError("validate_path: gridSize must be >= 2");
    const double tol = 1e-9;
    ValidationReport report;

    std::vector<double> ts(gridSize);
    std::vector<LVec3> us(gridSize);
    for (int i = 0; i < gridSize; ++i) {
        ts[i] = static_cast<double>(i) / (gridSize - 1);
        us[i] = path.value(ts[i]);
        if (std::abs(lorentz_dot(us[i], us[i]) - 1.0) > tol)
            report.failures.emplace_back(ts[i], ts[i]);
    }
    for (int i = 0; i < gridSize; ++i) {
        for (int j = i + 1; j < gridSize; ++j) {
            ++report.pairwiseDisjointPairs;
            if (lorentz_dot(us[i], us[j]) < 1.0 - tol)
                report.failures.emplace_back(ts[i], ts[j]);
            // u_s = u_t makes (-u_t, u_s) an opposite pair, which the
            // asymptotic definition excludes.
            if ((us[j] - us[i]).linf() <= tol || !consistently_oriented(-us[i], us[j], tol))
                report.orientationViolations.emplace_back(ts[i], ts[j]);
        }
    }
    return report;
}

LVec3 displacement_integral(const DirectingPath& path, const std::function<double(double)>& f,
                            const std::function<double(double)>& g, double quadTol) {
    const VelocityIntegrand integrand{path, f, g};
    LVec3 prev;
    bool havePrev = false;
    for (int level = 0; level <= 4; ++level) {
        const LVec3 cur = panel_integral(integrand, panel_breakpoints(level));
        if (havePrev && (cur - prev).linf() <= quadTol) return cur;
        prev = cur;
        havePrev = true;
    }
    throw QuadratureFailureError("displacement_integral: no convergence at panel cap");
}

LVec3 extreme_ray_displacement(const DirectingPath& path, int n, ExtremeRay ray, double quadTol) {
    if (n < 1) throw InvalidParamsError("extreme_ray_displacement: n must be >= 1");
    const double nd = n;
    const auto concentrated0 = [nd](double s) { return nd * std::exp(-nd * s); };
    const auto concentrated1 = [nd](double s) { return nd * std::exp(-nd * (1.0 - s)); };
    const auto small = [nd](double) { return std::exp(-nd); };
    switch (ray) {
        case ExtremeRay::StartMinus: return displacement_integral(path, concentrated0, small, quadTol);
        case ExtremeRay::EndMinus: return displacement_integral(path, concentrated1, small, quadTol);
        case ExtremeRay::StartPlusNegated:
            return displacement_integral(path, small, concentrated0, quadTol);
        case ExtremeRay::EndPlusNegated:
            return displacement_integral(path, small, concentrated1, quadTol);
    }
    throw InvalidParamsError("extreme_ray_displacement: bad ray");
}

double BasisFamily::f(double s) const {
    const double nd = n;
    return c[0] * nd * std::exp(-nd * s) + c[1] * nd * std::exp(-nd * (1.0 - s)) + c[4] + delta;
}

double BasisFamily::g(double s) const {
    const double nd = n;
    return c[2] * nd * std::exp(-nd * s) + c[3] * nd * std::exp(-nd * (1.0 - s)) + c[5] + delta;
}

namespace {

struct NnlsResult {
    std::vector<double> coeffs;
    double residual = 0.0;
};

// Lawson-Hanson active-set nonnegative least squares for a 3 x m system,
// with deterministic lowest-index tie-breaking.
NnlsResult nnls3(const std::vector<LVec3>& cols, const LVec3& b) {
    const size_t m = cols.size();
    std::vector<double> c(m, 0.0);
    std::vector<bool> inP(m, false);
    std::vector<size_t> P;

    const auto residualOf = [&](const std::vector<double>& x) {
        LVec3 r = b;
        for (size_t i = 0; i < m; ++i) r = r - cols[i] * x[i];
        return r;
    };

    double scale = euclid_norm(b);
    for (const LVec3& a : cols) scale = std::max(scale, euclid_norm(a));
    const double tolw = 1e-12 * std::max(scale, 1.0);

    LVec3 r = b;
    for (int iter = 0; iter < 100; ++iter) {
        // Most-positive gradient among passive columns enters first.
        double best = tolw;
        size_t enter = m;
        for (size_t i = 0; i < m; ++i) {
            if (inP[i]) continue;
            const double w = euclid_dot(cols[i], r);
            if (w > best) {
                best = w;
                enter = i;
            }
        }
        if (enter == m) break;
        inP[enter] = true;
        P.push_back(enter);

        for (int inner = 0; inner < 100; ++inner) {
            // Least squares on the active columns via normal equations;
            // |P| never exceeds 3 since entering columns are independent.
            const size_t k = P.size();
            if (k > 3) {
                inP[P.back()] = false;
                P.pop_back();
                break;
            }
            double G[3][4] = {};
            for (size_t a = 0; a < k; ++a) {
                for (size_t bcol = 0; bcol < k; ++bcol)
                    G[a][bcol] = euclid_dot(cols[P[a]], cols[P[bcol]]);
                G[a][k] = euclid_dot(cols[P[a]], b);
            }
            // Gaussian elimination with partial pivoting.
            bool singular = false;
            for (size_t col = 0; col < k; ++col) {
                size_t piv = col;
                for (size_t row = col + 1; row < k; ++row)
                    if (std::abs(G[row][col]) > std::abs(G[piv][col])) piv = row;
                if (std::abs(G[piv][col]) < 1e-14 * std::max(1.0, scale * scale)) {
                    singular = true;
                    break;
                }
                if (piv != col)
                    for (size_t q = 0; q <= k; ++q) std::swap(G[piv][q], G[col][q]);
                for (size_t row = 0; row < k; ++row) {
                    if (row == col) continue;
                    const double fac = G[row][col] / G[col][col];
                    for (size_t q = col; q <= k; ++q) G[row][q] -= fac * G[col][q];
                }
            }
            std::vector<double> z(m, 0.0);
            if (singular) {
                // Dependent column slipped in; drop it and fall back.
                inP[P.back()] = false;
                P.pop_back();
                break;
            }
            for (size_t a = 0; a < k; ++a) z[P[a]] = G[a][k] / G[a][a];

            double minz = std::numeric_limits<double>::infinity();
            for (size_t idx : P) minz = std::min(minz, z[idx]);
            if (minz > 0.0) {
                c = z;
                break;
            }
            double alpha = 1.0;
            for (size_t idx : P)
                if (z[idx] <= 0.0) alpha = std::min(alpha, c[idx] / (c[idx] - z[idx]));
            for (size_t idx : P) c[idx] += alpha * (z[idx] - c[idx]);
            for (size_t a = P.size(); a-- > 0;) {
                if (c[P[a]] <= tolw) {
                    c[P[a]] = 0.0;
                    inP[P[a]] = false;
                    P.erase(P.begin() + static_cast<long>(a));
                }
            }
        }
        r = residualOf(c);
    }
    return {c, euclid_norm(residualOf(c))};
}

}  // namespace

VertexCurve::VertexCurve(DirectingPath path, BasisFamily basis, MinPoint p0, MinPoint target,
                         double residual)
    : path_(std::move(path)), basis_(basis), p0_(p0), target_(target), residual_(residual) {
    breakpoints_ = panel_breakpoints(kFixedLevel);
    cumulative_.resize(breakpoints_.size());
    const auto integrand = [this](double s) {
        const NullFrame fr = path_.frame(s);
        return basis_.f(s) * fr.u_minus - basis_.g(s) * fr.u_plus;
    };
    LVec3 acc;
    cumulative_[0] = acc;
    for (size_t k = 0; k + 1 < breakpoints_.size(); ++k) {
        acc += gl16(integrand, breakpoints_[k], breakpoints_[k + 1]);
        cumulative_[k + 1] = acc;
    }
}

MinPoint VertexCurve::position(double t) const {
    if (t <= 0.0) return p0_;  // endpoint exactness, no quadrature at t = 0
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    size_t k = it == breakpoints_.begin() ? 0 : static_cast<size_t>(it - breakpoints_.begin()) - 1;
    k = std::min(k, breakpoints_.size() - 2);
    const auto integrand = [this](double s) {
        const NullFrame fr = path_.frame(s);
        return basis_.f(s) * fr.u_minus - basis_.g(s) * fr.u_plus;
    };
    return p0_ + (cumulative_[k] + gl16(integrand, breakpoints_[k], t));
}

LVec3 VertexCurve::velocity(double t) const {
    const NullFrame fr = path_.frame(t);
    return basis_.f(t) * fr.u_minus - basis_.g(t) * fr.u_plus;
}

VertexCurve solve_vertex_path(const DirectingPath& path, const MinPoint& p0, const MinPoint& p1,
                              double solverTol, int nMax) {
    // Sanity check of the caller contract at the quadrature scale.
    for (double t : {0.0, 0.37, 1.0})
        if (std::abs(lorentz_dot(path.value(t), path.value(t)) - 1.0) > 1e-6)
            throw PreconditionFailedError("solve_vertex_path: path is not unit spacelike");

    const LVec3 delta = p1 - p0;
    const double scale = 1.0 + euclid_norm(delta);
    const double floor = 1e-6 * scale;
    const auto bp = panel_breakpoints(kFixedLevel);

    const auto minusIntegral = [&](const std::function<double(double)>& w) {
        return panel_integral(
            [&](double s) { return w(s) * path.frame(s).u_minus; }, bp);
    };
    const auto plusIntegral = [&](const std::function<double(double)>& w) {
        return panel_integral(
            [&](double s) { return w(s) * path.frame(s).u_plus; }, bp);
    };

    const auto one = [](double) { return 1.0; };
    const LVec3 constMinus = minusIntegral(one);
    const LVec3 constPlus = plusIntegral(one);

    static constexpr int kSchedule[] = {4, 8, 16, 32, 60};
    for (int n : kSchedule) {
        if (n > nMax) break;
        const double nd = n;
        const auto conc0 = [nd](double s) { return nd * std::exp(-nd * s); };
        const auto conc1 = [nd](double s) { return nd * std::exp(-nd * (1.0 - s)); };

        const std::vector<LVec3> cols = {
            minusIntegral(conc0), minusIntegral(conc1),
            -plusIntegral(conc0), -plusIntegral(conc1),
            constMinus,           -constPlus,
        };
        const LVec3 target = delta - floor * (constMinus - constPlus);

        const NnlsResult sol = nnls3(cols, target);
        if (sol.residual <= solverTol * scale) {
            BasisFamily basis;
            basis.n = n;
            for (int i = 0; i < 6; ++i) basis.c[static_cast<size_t>(i)] = sol.coeffs[static_cast<size_t>(i)];
            basis.delta = floor;
            return VertexCurve(path, basis, p0, p1, sol.residual);
        }
    }
    throw InfeasibleError("solve_vertex_path: target displacement not reached at the n cap");
}

Foliation build_foliation(const CrookedPlane& P, const CrookedPlane& Q, double solverTol,
                          int nMax) {
    switch (crooked_disjoint(P, Q)) {
        case DisjointVerdict::Disjoint: break;
        case DisjointVerdict::DegenerateCase:
            throw DegenerateCaseError("build_foliation: directions are identical or opposite");
        default:
            throw NotDisjointError("build_foliation: input planes are not disjoint");
    }
    // Signs making (-u_0, u_1) consistently oriented; existence follows from
    // disjointness.
    const auto signs = orient_pair(-P.direction, Q.direction);
    if (!signs) throw NotDisjointError("build_foliation: no consistent orientation");
    const DirectingPath path =
        interp_path(P.direction * double(signs->eps1), Q.direction * double(signs->eps2));
    VertexCurve curve = solve_vertex_path(path, P.vertex, Q.vertex, solverTol, nMax);
    return Foliation{path, std::move(curve)};
}

CrookedPlane leaf(const Foliation& fol, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw OutOfRangeError("leaf: t must lie in [0, 1]");
    return CrookedPlane(fol.curve.position(t), fol.path.value(t));
}

ValidationReport validate_foliation(const Foliation& fol, int samples) {
    if (samples < 2) throw InvalidParamsError("validate_foliation: samples must be >= 2");
    const double tol = 1e-9;
    ValidationReport report;

    std::vector<double> ts(samples);
    std::vector<LVec3> us(samples);
    std::vector<MinPoint> ps(samples);
    for (int i = 0; i < samples; ++i) {
        ts[i] = static_cast<double>(i) / (samples - 1);
        us[i] = fol.path.value(ts[i]);
        ps[i] = fol.curve.position(ts[i]);
    }
    report.endpointResidual = euclid_norm(ps[samples - 1] - fol.curve.target());

    for (int i = 0; i < samples; ++i) {
        for (int j = i + 1; j < samples; ++j) {
            ++report.pairwiseDisjointPairs;
            if ((us[j] - us[i]).linf() <= tol || !consistently_oriented(-us[i], us[j], tol)) {
                report.orientationViolations.emplace_back(ts[i], ts[j]);
                continue;
            }
            const ConicalHull cone = displacement_cone(-us[i], us[j]);
            if (cone_contains(cone, ps[j] - ps[i], /*strict=*/true, tol) != ConeLocation::In)
                report.failures.emplace_back(ts[i], ts[j]);
        }
    }
    for (int i = 0; i < samples; ++i) {
        const LVec3 v = fol.curve.velocity(ts[i]);
        if (!stem_quadrant_contains(v, null_frame(us[i]), /*strict=*/true))
            report.derivativeConeViolations.push_back(ts[i]);
    }
    return report;
}

}  // namespace crooked
