#include "crooked/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace crooked {

namespace {

LVec3 coords(const MinPoint& p) { return {p.x, p.y, p.z}; }

struct CrossingSpan {
    double lo = 0.0, hi = 0.0;
    LVec3 plo, phi;
};

// Interval of a triangle along the plane-intersection line: signed
// distances d* to the other plane (zero-snapped), projections p* onto the
// line axis. Assumes the distances do not all share a strict sign.
std::optional<CrossingSpan> crossing_span(const LVec3& v0, const LVec3& v1, const LVec3& v2,
                                          double d0, double d1, double d2, double p0, double p1,
                                          double p2) {
    const LVec3 v[3] = {v0, v1, v2};
    const double d[3] = {d0, d1, d2};
    const double p[3] = {p0, p1, p2};

    int zero[3], nz = 0;
    for (int i = 0; i < 3; ++i)
        if (d[i] == 0.0) zero[nz++] = i;

    std::vector<std::pair<double, LVec3>> hits;
    const auto edge_hit = [&](int i, int j) {
        const double f = d[i] / (d[i] - d[j]);
        hits.emplace_back(p[i] + f * (p[j] - p[i]), v[i] + f * (v[j] - v[i]));
    };

    if (nz == 3) return std::nullopt;  // coplanar, handled separately
    if (nz == 2) {
        hits.emplace_back(p[zero[0]], v[zero[0]]);
        hits.emplace_back(p[zero[1]], v[zero[1]]);
    } else if (nz == 1) {
        hits.emplace_back(p[zero[0]], v[zero[0]]);
        const int i = (zero[0] + 1) % 3, j = (zero[0] + 2) % 3;
        if (d[i] * d[j] < 0.0) edge_hit(i, j);
    } else {
        // One vertex isolated on its own side; its two edges cross.
        int iso = d[0] * d[1] > 0.0 ? 2 : (d[0] * d[2] > 0.0 ? 1 : 0);
        edge_hit(iso, (iso + 1) % 3);
        edge_hit(iso, (iso + 2) % 3);
    }
    if (hits.empty()) return std::nullopt;

    CrossingSpan s;
    s.lo = s.hi = hits[0].first;
    s.plo = s.phi = hits[0].second;
    for (const auto& [param, pt] : hits) {
        if (param < s.lo) { s.lo = param; s.plo = pt; }
        if (param > s.hi) { s.hi = param; s.phi = pt; }
    }
    return s;
}

// 2D helpers for the coplanar case, on the dominant-axis projection.
struct P2 {
    double u, v;
};

P2 project2(const LVec3& p, int axis) {
    switch (axis) {
        case 0: return {p.y, p.z};
        case 1: return {p.x, p.z};
        default: return {p.x, p.y};
    }
}

double orient2(const P2& a, const P2& b, const P2& c) {
    return (b.u - a.u) * (c.v - a.v) - (b.v - a.v) * (c.u - a.u);
}

bool point_in_tri2(const P2& p, const P2& a, const P2& b, const P2& c, double eps) {
    const double s0 = orient2(a, b, p);
    const double s1 = orient2(b, c, p);
    const double s2 = orient2(c, a, p);
    const bool nonNeg = s0 >= -eps && s1 >= -eps && s2 >= -eps;
    const bool nonPos = s0 <= eps && s1 <= eps && s2 <= eps;
    return nonNeg || nonPos;
}

std::optional<double> segment_cross2(const P2& a, const P2& b, const P2& c, const P2& d,
                                     double eps) {
    const double d1 = orient2(c, d, a);
    const double d2 = orient2(c, d, b);
    const double d3 = orient2(a, b, c);
    const double d4 = orient2(a, b, d);
    if (((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) &&
        ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps)))
        return d1 / (d1 - d2);  // parameter along (a, b)
    return std::nullopt;
}

std::optional<std::pair<MinPoint, MinPoint>> coplanar_overlap(const LVec3 t1[3],
                                                              const LVec3 t2[3], const LVec3& n,
                                                              double eps) {
    const double ax = std::abs(n.x), ay = std::abs(n.y), az = std::abs(n.z);
    const int axis = ax >= ay && ax >= az ? 0 : (ay >= az ? 1 : 2);
    P2 q1[3], q2[3];
    for (int i = 0; i < 3; ++i) {
        q1[i] = project2(t1[i], axis);
        q2[i] = project2(t2[i], axis);
    }
    const auto pt = [](const LVec3& v) { return MinPoint{v.x, v.y, v.z}; };
    for (int i = 0; i < 3; ++i) {
        if (point_in_tri2(q1[i], q2[0], q2[1], q2[2], eps))
            return std::make_pair(pt(t1[i]), pt(t1[i]));
        if (point_in_tri2(q2[i], q1[0], q1[1], q1[2], eps))
            return std::make_pair(pt(t2[i]), pt(t2[i]));
    }
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const auto f = segment_cross2(q1[i], q1[(i + 1) % 3], q2[j], q2[(j + 1) % 3], eps);
            if (f) {
                const LVec3 x = t1[i] + *f * (t1[(i + 1) % 3] - t1[i]);
                return std::make_pair(pt(x), pt(x));
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::pair<MinPoint, MinPoint>> tri_tri_intersect(const Triangle& t1,
                                                               const Triangle& t2, double tol) {
    const LVec3 a[3] = {coords(t1.a), coords(t1.b), coords(t1.c)};
    const LVec3 b[3] = {coords(t2.a), coords(t2.b), coords(t2.c)};

    double scale = 1.0;
    for (int i = 0; i < 3; ++i) scale = std::max({scale, a[i].linf(), b[i].linf()});
    const double eps = tol * scale;

    const LVec3 n2 = euclid_cross(b[1] - b[0], b[2] - b[0]);
    double da[3];
    for (int i = 0; i < 3; ++i) {
        da[i] = euclid_dot(n2, a[i] - b[0]);
        if (std::abs(da[i]) <= eps * euclid_norm(n2)) da[i] = 0.0;
    }
    if ((da[0] > 0 && da[1] > 0 && da[2] > 0) || (da[0] < 0 && da[1] < 0 && da[2] < 0))
        return std::nullopt;

    const LVec3 n1 = euclid_cross(a[1] - a[0], a[2] - a[0]);
    double db[3];
    for (int i = 0; i < 3; ++i) {
        db[i] = euclid_dot(n1, b[i] - a[0]);
        if (std::abs(db[i]) <= eps * euclid_norm(n1)) db[i] = 0.0;
    }
    if ((db[0] > 0 && db[1] > 0 && db[2] > 0) || (db[0] < 0 && db[1] < 0 && db[2] < 0))
        return std::nullopt;

    if (da[0] == 0 && da[1] == 0 && da[2] == 0)
        return coplanar_overlap(a, b, n2, eps * euclid_norm(n2));

    // Projection axis: dominant component of the intersection line direction.
    const LVec3 dir = euclid_cross(n1, n2);
    const double dx = std::abs(dir.x), dy = std::abs(dir.y), dz = std::abs(dir.z);
    const auto proj = [&](const LVec3& v) {
        return dx >= dy && dx >= dz ? v.x : (dy >= dz ? v.y : v.z);
    };

    const auto s1 = crossing_span(a[0], a[1], a[2], da[0], da[1], da[2], proj(a[0]), proj(a[1]),
                                  proj(a[2]));
    const auto s2 = crossing_span(b[0], b[1], b[2], db[0], db[1], db[2], proj(b[0]), proj(b[1]),
                                  proj(b[2]));
    if (!s1 || !s2) return std::nullopt;

    const double lo = std::max(s1->lo, s2->lo);
    const double hi = std::min(s1->hi, s2->hi);
    if (lo > hi + eps) return std::nullopt;
    const LVec3 xlo = s1->lo >= s2->lo ? s1->plo : s2->plo;
    const LVec3 xhi = s1->hi <= s2->hi ? s1->phi : s2->phi;
    return std::make_pair(MinPoint{xlo.x, xlo.y, xlo.z}, MinPoint{xhi.x, xhi.y, xhi.z});
}

namespace {

// Distance-like defect of q from the nearest piece of the crooked plane,
// in frame coordinates; zero on the surface.
double membership_residual(const MinPoint& q, const CrookedPlane& plane, const NullFrame& f) {
    const FrameCoords fc = frame_coordinates(q - plane.vertex, f);
    const double stem = std::max(std::abs(fc.alpha),
                                 std::sqrt(std::max(0.0, -(fc.beta * fc.gamma))));
    const double wingP = std::max(std::abs(fc.beta), std::max(0.0, -fc.alpha));
    const double wingM = std::max(std::abs(fc.gamma), std::max(0.0, fc.alpha));
    return std::min({stem, wingP, wingM});
}

struct Aabb {
    double lo[3], hi[3];
};

Aabb triangle_box(const Mesh& m, size_t t) {
    Aabb box;
    const MinPoint* v[3] = {&m.vertices[size_t(m.triangles[t][0])],
                            &m.vertices[size_t(m.triangles[t][1])],
                            &m.vertices[size_t(m.triangles[t][2])]};
    box.lo[0] = std::min({v[0]->x, v[1]->x, v[2]->x});
    box.lo[1] = std::min({v[0]->y, v[1]->y, v[2]->y});
    box.lo[2] = std::min({v[0]->z, v[1]->z, v[2]->z});
    box.hi[0] = std::max({v[0]->x, v[1]->x, v[2]->x});
    box.hi[1] = std::max({v[0]->y, v[1]->y, v[2]->y});
    box.hi[2] = std::max({v[0]->z, v[1]->z, v[2]->z});
    return box;
}

bool boxes_overlap(const Aabb& a, const Aabb& b, double pad) {
    for (int k = 0; k < 3; ++k)
        if (a.lo[k] > b.hi[k] + pad || b.lo[k] > a.hi[k] + pad) return false;
    return true;
}

// Uniform spatial hash over triangle boxes.
class BoxGrid {
public:
    BoxGrid(const std::vector<Aabb>& boxes, double cell) : cell_(cell) {
        for (size_t i = 0; i < boxes.size(); ++i)
            visit_cells(boxes[i], [&](std::int64_t key) { cells_[key].push_back(int(i)); });
        stamp_.assign(boxes.size(), -1);
    }

    // Candidates overlapping the box, ascending, deduplicated.
    const std::vector<int>& query(const Aabb& box) {
        ++generation_;
        out_.clear();
        visit_cells(box, [&](std::int64_t key) {
            const auto it = cells_.find(key);
            if (it == cells_.end()) return;
            for (int idx : it->second) {
                if (stamp_[size_t(idx)] != generation_) {
                    stamp_[size_t(idx)] = generation_;
                    out_.push_back(idx);
                }
            }
        });
        std::sort(out_.begin(), out_.end());
        return out_;
    }

private:
    template <typename F>
    void visit_cells(const Aabb& box, F&& f) const {
        int lo[3], hi[3];
        for (int k = 0; k < 3; ++k) {
            lo[k] = int(std::floor(box.lo[k] / cell_));
            hi[k] = int(std::floor(box.hi[k] / cell_));
        }
        for (int x = lo[0]; x <= hi[0]; ++x)
            for (int y = lo[1]; y <= hi[1]; ++y)
                for (int z = lo[2]; z <= hi[2]; ++z)
                    f(((std::int64_t(x) & 0x1FFFFF) << 42) |
                      ((std::int64_t(y) & 0x1FFFFF) << 21) |
                      (std::int64_t(z) & 0x1FFFFF));
    }

    double cell_;
    std::unordered_map<std::int64_t, std::vector<int>> cells_;
    std::vector<int> stamp_;
    std::vector<int> out_;
    int generation_ = 0;
};

Triangle mesh_triangle(const Mesh& m, size_t t) {
    return {m.vertices[size_t(m.triangles[t][0])], m.vertices[size_t(m.triangles[t][1])],
            m.vertices[size_t(m.triangles[t][2])]};
}

}  // namespace

std::optional<Witness> crooked_intersect_oracle(const CrookedPlane& P, const CrookedPlane& Q,
                                                double radius, int resolution) {
    if (!(radius > 0.0)) throw InvalidParamsError("crooked_intersect_oracle: radius must be positive");
    const Mesh ma = mesh_crooked_plane(P, radius, resolution);
    const Mesh mb = mesh_crooked_plane(Q, radius, resolution);
    const NullFrame fa = null_frame(P.direction);
    const NullFrame fb = null_frame(Q.direction);

    std::vector<Aabb> boxesA(ma.triangles.size()), boxesB(mb.triangles.size());
    for (size_t i = 0; i < boxesA.size(); ++i) boxesA[i] = triangle_box(ma, i);
    double meanExtent = 0.0;
    for (size_t i = 0; i < boxesB.size(); ++i) {
        boxesB[i] = triangle_box(mb, i);
        for (int k = 0; k < 3; ++k) meanExtent += boxesB[i].hi[k] - boxesB[i].lo[k];
    }
    if (boxesB.empty() || boxesA.empty()) return std::nullopt;
    meanExtent /= 3.0 * double(boxesB.size());
    BoxGrid grid(boxesB, std::max(2.0 * meanExtent, 1e-9));

    for (size_t ia = 0; ia < ma.triangles.size(); ++ia) {
        const Triangle ta = mesh_triangle(ma, ia);
        for (int ib : grid.query(boxesA[ia])) {
            if (!boxes_overlap(boxesA[ia], boxesB[size_t(ib)], 0.0)) continue;
            const auto seg = tri_tri_intersect(ta, mesh_triangle(mb, size_t(ib)));
            if (!seg) continue;

            // Bisect along the crossing segment until the joint membership
            // residual meets the certificate bound.
            const double target = 1e-6;
            MinPoint lo = seg->first, hi = seg->second;
            const auto residual = [&](const MinPoint& q) {
                return std::max(membership_residual(q, P, fa), membership_residual(q, Q, fb));
            };
            MinPoint best{0.5 * (lo.x + hi.x), 0.5 * (lo.y + hi.y), 0.5 * (lo.z + hi.z)};
            double bestRes = residual(best);
            for (int step = 0; step < 60 && bestRes > target; ++step) {
                if (residual(lo) < residual(hi))
                    hi = best;
                else
                    lo = best;
                best = MinPoint{0.5 * (lo.x + hi.x), 0.5 * (lo.y + hi.y), 0.5 * (lo.z + hi.z)};
                bestRes = residual(best);
            }
            if (bestRes > target) continue;

            Witness w;
            w.point = best;
            w.pieceA = crooked_contains(best, P, 1e-6);
            w.pieceB = crooked_contains(best, Q, 1e-6);
            w.separation = bestRes;
            if (w.pieceA.kind == PieceKind::Outside || w.pieceB.kind == PieceKind::Outside)
                continue;
            return w;
        }
    }
    return std::nullopt;
}

bool cone_contains_oracle(const std::vector<LVec3>& generators, const LVec3& x, double tol) {
    if (generators.empty())
        throw InvalidParamsError("cone_contains_oracle: need at least one generator");
    std::vector<double> lambda(generators.size(), 0.0);
    LVec3 r = -x;  // residual of sum(lambda_i g_i) - x
    double prevSq = euclid_dot(r, r);
    for (int pass = 0; pass < 200000; ++pass) {
        for (size_t i = 0; i < generators.size(); ++i) {
            const LVec3& g = generators[i];
            const double q = euclid_dot(g, g);
            if (q <= 0.0) continue;
            const double next = std::max(0.0, lambda[i] - euclid_dot(g, r) / q);
            if (next != lambda[i]) {
                r += (next - lambda[i]) * g;
                lambda[i] = next;
            }
        }
        const double sq = euclid_dot(r, r);
        if (prevSq - sq < tol * tol) break;
        prevSq = sq;
    }
    return euclid_norm(r) <= tol * (1.0 + euclid_norm(x));
}

bool cone_interior_oracle(const std::vector<LVec3>& generators, const LVec3& x, double tol) {
    const double nx = euclid_norm(x);
    if (nx <= tol) return false;
    const double d = 1e-4 * nx;
    const LVec3 probes[6] = {{x.x + d, x.y, x.z}, {x.x - d, x.y, x.z}, {x.x, x.y + d, x.z},
                             {x.x, x.y - d, x.z}, {x.x, x.y, x.z + d}, {x.x, x.y, x.z - d}};
    for (const LVec3& p : probes)
        if (!cone_contains_oracle(generators, p, tol)) return false;
    return true;
}

}  // namespace crooked
