#include "crooked/crooked_plane.hpp"

#include <algorithm>
#include <cmath>

namespace crooked {

const char* to_string(PieceKind k) {
    switch (k) {
        case PieceKind::Stem: return "stem";
        case PieceKind::WingPlus: return "wing_plus";
        case PieceKind::WingMinus: return "wing_minus";
        case PieceKind::Outside: return "outside";
    }
    return "?";
}

FrameCoords frame_coordinates(const LVec3& v, const NullFrame& frame) {
    return {lorentz_dot(v, frame.u), -lorentz_dot(v, frame.u_plus),
            -lorentz_dot(v, frame.u_minus)};
}

namespace {

struct PieceTests {
    FrameCoords fc;
    double lin;   // tolerance for the linear coordinates
    double quad;  // tolerance for the beta*gamma product
    bool stem;
    bool wingPlus;
    bool wingMinus;
};

PieceTests run_piece_tests(const LVec3& v, const NullFrame& frame, double tol) {
    PieceTests t;
    t.fc = frame_coordinates(v, frame);
    const double scale = std::max(1.0, v.linf());
    t.lin = tol * scale;
    t.quad = tol * scale * scale;
    t.stem = std::abs(t.fc.alpha) <= t.lin && t.fc.beta * t.fc.gamma >= -t.quad;
    t.wingPlus = std::abs(t.fc.beta) <= t.lin && t.fc.alpha >= -t.lin;
    t.wingMinus = std::abs(t.fc.gamma) <= t.lin && t.fc.alpha <= t.lin;
    return t;
}

}  // namespace

bool stem_contains(const LVec3& v, const NullFrame& frame, double tol) {
    return run_piece_tests(v, frame, tol).stem;
}

PieceLabel piece_classify(const LVec3& v, const NullFrame& frame, double tol) {
    const PieceTests t = run_piece_tests(v, frame, tol);
    const double band = 10.0 * t.lin;
    const auto near = [band](double x) { return std::abs(x) <= band; };

    // The stem and each wing share a null boundary line; points on a shared
    // line with a nonzero null coordinate report the wing, flagged marginal.
    if (t.stem && t.wingPlus && t.wingMinus) return {PieceKind::Stem, true};
    if (t.stem && t.wingPlus) return {PieceKind::WingPlus, true};
    if (t.stem && t.wingMinus) return {PieceKind::WingMinus, true};
    if (t.stem)
        return {PieceKind::Stem, near(t.fc.beta) || near(t.fc.gamma)};
    if (t.wingPlus && t.wingMinus) return {PieceKind::WingPlus, true};
    if (t.wingPlus) return {PieceKind::WingPlus, near(t.fc.alpha)};
    if (t.wingMinus) return {PieceKind::WingMinus, near(t.fc.alpha)};

    const PieceTests wide = run_piece_tests(v, frame, 10.0 * tol);
    return {PieceKind::Outside, wide.stem || wide.wingPlus || wide.wingMinus};
}

PieceLabel crooked_contains(const MinPoint& q, const CrookedPlane& plane, double tol) {
    return piece_classify(q - plane.vertex, null_frame(plane.direction), tol);
}

bool stem_quadrant_contains(const LVec3& v, const NullFrame& frame, bool strict, double tol) {
    const FrameCoords fc = frame_coordinates(v, frame);
    const double lin = tol * std::max(1.0, v.linf());
    if (std::abs(fc.alpha) > lin) return false;
    if (strict) return fc.beta > lin && -fc.gamma > lin;
    if (v.linf() <= lin) return false;  // quadrant excludes the zero vector
    return fc.beta >= -lin && -fc.gamma >= -lin;
}

namespace {

// Smallest eigenvalue of the Euclidean Gram matrix of (a, b); bounds the
// parameter box needed to cover a Euclidean ball of a given radius.
double min_gram_eigenvalue(const LVec3& a, const LVec3& b) {
    const double g11 = euclid_dot(a, a);
    const double g22 = euclid_dot(b, b);
    const double g12 = euclid_dot(a, b);
    const double mean = 0.5 * (g11 + g22);
    const double disc = std::sqrt(0.25 * (g11 - g22) * (g11 - g22) + g12 * g12);
    return mean - disc;
}

struct PatchBuilder {
    Mesh mesh;
    const MinPoint* origin = nullptr;
    double radius = 0.0;

    // Grids the patch {s*A + t*B : (s,t) in [s0,s1]x[t0,t1]} and keeps every
    // cell with at least one corner inside the ball.
    void add(const LVec3& A, const LVec3& B, double s0, double s1, double t0, double t1,
             int res, PieceKind tag) {
        const int base = static_cast<int>(mesh.vertices.size());
        std::vector<bool> inside;
        inside.reserve(static_cast<size_t>(res + 1) * (res + 1));
        for (int i = 0; i <= res; ++i) {
            const double s = s0 + (s1 - s0) * i / res;
            for (int j = 0; j <= res; ++j) {
                const double t = t0 + (t1 - t0) * j / res;
                const LVec3 d = s * A + t * B;
                mesh.vertices.push_back(*origin + d);
                inside.push_back(euclid_norm(d) <= radius);
            }
        }
        const auto idx = [&](int i, int j) { return base + i * (res + 1) + j; };
        const auto in = [&](int i, int j) { return inside[i * (res + 1) + j]; };
        for (int i = 0; i < res; ++i) {
            for (int j = 0; j < res; ++j) {
                if (!(in(i, j) || in(i + 1, j) || in(i, j + 1) || in(i + 1, j + 1)))
                    continue;
                mesh.triangles.push_back({idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)});
                mesh.triangles.push_back({idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)});
                mesh.pieceTags.push_back(tag);
                mesh.pieceTags.push_back(tag);
            }
        }
    }
};

}  // namespace

Mesh mesh_crooked_plane(const CrookedPlane& plane, double radius, int resolution) {
    if (!(radius > 0.0)) throw InvalidParamsError("mesh_crooked_plane: radius must be positive");
    if (resolution < 2) throw InvalidParamsError("mesh_crooked_plane: resolution must be >= 2");

    const NullFrame f = null_frame(plane.direction);
    PatchBuilder b;
    b.origin = &plane.vertex;
    b.radius = radius;

    const auto extent = [&](const LVec3& A, const LVec3& B) {
        return radius / std::sqrt(min_gram_eigenvalue(A, B));
    };

    // Stem quadrants in (beta, gamma), same-sign pairs.
    const double Ls = extent(f.u_minus, f.u_plus);
    b.add(f.u_minus, f.u_plus, 0.0, Ls, 0.0, Ls, resolution, PieceKind::Stem);
    b.add(f.u_minus, f.u_plus, -Ls, 0.0, -Ls, 0.0, resolution, PieceKind::Stem);

    // Wings: half-planes bounded by the null lines.
    const double Lp = extent(f.u, f.u_plus);
    b.add(f.u, f.u_plus, 0.0, Lp, -Lp, Lp, resolution, PieceKind::WingPlus);
    const double Lm = extent(f.u, f.u_minus);
    b.add(f.u, f.u_minus, -Lm, 0.0, -Lm, Lm, resolution, PieceKind::WingMinus);

    return b.mesh;
}

}  // namespace crooked
