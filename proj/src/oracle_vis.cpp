#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <tuple>

#include "linkpath/oracle.hpp"

namespace lp {

namespace {

// Free wedge at a boundary vertex runs counterclockwise from (after - v) to (before - v).
bool dir_in_free_wedge(const Point& v, const Point& before, const Point& after, const Point& dir);

// Which boundary feature a point lies on.
struct Feature {
    enum Kind { None, OnEdge, AtVertex } kind = None;
    Point a, b;  // OnEdge: the directed edge. AtVertex: a = previous vertex, b = next vertex
    Point v;
};

Feature feature_at(const std::vector<Edge>& edges, const Point& x) {
    Feature f;
    for (size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = edges[i];
        if (e.b == x) {
            // e ends at x; the next edge of that ring starts there
            for (const Edge& g : edges)
                if (g.ring == e.ring && g.a == x) {
                    f.kind = Feature::AtVertex;
                    f.a = e.a;
                    f.b = g.b;
                    f.v = x;
                    return f;
                }
        }
    }
    for (const Edge& e : edges)
        if (on_segment(x, e.a, e.b)) {
            f.kind = Feature::OnEdge;
            f.a = e.a;
            f.b = e.b;
            return f;
        }
    return f;
}

// Does the direction dir leave x into the closed free space?
bool locally_free(const PolygonalDomain& d, const std::vector<Edge>& edges, const Point& x, const Point& dir) {
    Feature f = feature_at(edges, x);
    switch (f.kind) {
        case Feature::None:
            return in_closed_free(d, x);
        case Feature::OnEdge:
            return sgn(cross(f.b - f.a, dir)) >= 0;
        case Feature::AtVertex:
            return dir_in_free_wedge(f.v, f.a, f.b, dir);
    }
    return false;
}

struct DPt {
    double x, y;
};

DPt dpt(const Point& p) { return {to_double(p.x), to_double(p.y)}; }

// Conservative: true only if every point is clearly on one side of the line p0 + l*dir.
bool clearly_one_side(const DPt& p0, const DPt& dir, std::initializer_list<DPt> pts) {
    int side = 0;
    for (const DPt& q : pts) {
        double v = dir.x * (q.y - p0.y) - dir.y * (q.x - p0.x);
        double tol = 1e-9 * (std::abs(dir.x) + std::abs(dir.y)) *
                     (std::abs(q.x) + std::abs(q.y) + std::abs(p0.x) + std::abs(p0.y) + 1);
        int sd = v > tol ? 1 : (v < -tol ? -1 : 0);
        if (sd == 0 || (side != 0 && sd != side)) return false;
        side = sd;
    }
    return true;
}

struct EdgeCtx {
    std::vector<Edge> edges;
    std::vector<Point> prev;  // vertex before edges[i].a in its ring
    std::vector<std::pair<DPt, DPt>> dbl;
    explicit EdgeCtx(const PolygonalDomain& d) : edges(d.edges()), prev(edges.size()) {
        for (auto& e : edges) dbl.push_back({dpt(e.a), dpt(e.b)});
        for (size_t i = 0; i < edges.size(); ++i)
            for (const Edge& g : edges)
                if (g.ring == edges[i].ring && g.b == edges[i].a) prev[i] = g.a;
    }
};

bool dir_in_free_wedge(const Point& v, const Point& before, const Point& after, const Point& dir) {
    Point u1 = after - v, u2 = before - v;
    if (sgn(cross(u1, u2)) > 0) return sgn(cross(u1, dir)) >= 0 && sgn(cross(dir, u2)) >= 0;
    return !(sgn(cross(u2, dir)) > 0 && sgn(cross(dir, u1)) > 0);
}

// Maximal free intervals [la, lb] (la < lb) of the line p0 + l*dir.
std::vector<std::pair<Coord, Coord>> free_chords(const EdgeCtx& ctx, const Point& p0, const Point& dir) {
    struct Brk {
        Coord l;
        int edge;
        bool vertex;
    };
    std::vector<Brk> ls;
    Coord dd = dot(dir, dir);
    DPt dp0 = dpt(p0), ddir = dpt(dir);
    for (size_t i = 0; i < ctx.edges.size(); ++i) {
        if (clearly_one_side(dp0, ddir, {ctx.dbl[i].first, ctx.dbl[i].second})) continue;
        const Edge& e = ctx.edges[i];
        Point ab = e.b - e.a;
        Coord den = cross(dir, ab);
        Point ap = e.a - p0;
        if (sgn(den) != 0) {
            Coord mu = cross(ap, dir) / den;
            if (mu < 0 || mu >= 1) continue;  // the far endpoint is the next edge's start
            ls.push_back({cross(ap, ab) / den, static_cast<int>(i), sgn(mu) == 0});
        } else if (sgn(cross(ap, dir)) == 0) {
            ls.push_back({dot(ap, dir) / dd, static_cast<int>(i), true});
        }
    }
    std::sort(ls.begin(), ls.end(), [](const Brk& a, const Brk& b) { return a.l < b.l; });
    ls.erase(std::unique(ls.begin(), ls.end(), [](const Brk& a, const Brk& b) { return a.l == b.l; }), ls.end());
    std::vector<std::pair<Coord, Coord>> out;
    bool open = false;
    Coord start;
    for (size_t i = 0; i + 1 < ls.size(); ++i) {
        const Edge& e = ctx.edges[ls[i].edge];
        bool fr = ls[i].vertex ? dir_in_free_wedge(e.a, ctx.prev[ls[i].edge], e.b, dir)
                               : sgn(cross(e.b - e.a, dir)) >= 0;
        if (fr && !open) {
            open = true;
            start = ls[i].l;
        } else if (!fr && open) {
            open = false;
            out.push_back({start, ls[i].l});
        }
    }
    if (open) out.push_back({start, ls.back().l});
    return out;
}

// Parameter interval of the line p0 + l*dir inside a closed triangle (or degenerate triangle).
std::optional<std::pair<Coord, Coord>> line_in_convex(const std::vector<Point>& poly, const Point& p0, const Point& dir) {
    // clip the parameter range against each edge half-plane (counterclockwise polygon)
    std::optional<Coord> lo, hi;
    size_t m = poly.size();
    for (size_t i = 0; i < m; ++i) {
        const Point &a = poly[i], &b = poly[(i + 1) % m];
        if (a == b) continue;
        // orient(a, b, p0 + l dir) >= 0  <=>  cross(b-a, p0-a) + l cross(b-a, dir) >= 0
        Coord c0 = cross(b - a, p0 - a), c1 = cross(b - a, dir);
        if (sgn(c1) == 0) {
            if (sgn(c0) < 0) return std::nullopt;
            continue;
        }
        Coord l = -c0 / c1;
        if (sgn(c1) > 0) {
            if (!lo || l > *lo) lo = l;
        } else {
            if (!hi || l < *hi) hi = l;
        }
    }
    if (!lo || !hi) return std::nullopt;  // only for degenerate input
    if (*lo > *hi) return std::nullopt;
    return std::make_pair(*lo, *hi);
}

struct DBox {
    double x0, y0, x1, y1;
};

DBox dbox(const std::vector<Point>& v) {
    DBox b{1e300, 1e300, -1e300, -1e300};
    for (auto& p : v) {
        double x = to_double(p.x), y = to_double(p.y);
        b.x0 = std::min(b.x0, x);
        b.y0 = std::min(b.y0, y);
        b.x1 = std::max(b.x1, x);
        b.y1 = std::max(b.y1, y);
    }
    return b;
}

// Conservative: false only if the line clearly misses the box.
bool line_may_hit(const DBox& b, const Point& p0, const Point& dir) {
    double px = to_double(p0.x), py = to_double(p0.y), dx = to_double(dir.x), dy = to_double(dir.y);
    double s[4];
    int i = 0;
    for (double x : {b.x0, b.x1})
        for (double y : {b.y0, b.y1}) s[i++] = dx * (y - py) - dy * (x - px);
    double mx = std::max({std::abs(s[0]), std::abs(s[1]), std::abs(s[2]), std::abs(s[3])});
    double tol = 1e-9 * (mx + 1);
    bool allpos = true, allneg = true;
    for (double v : s) {
        if (v <= tol) allpos = false;
        if (v >= -tol) allneg = false;
    }
    return !(allpos || allneg);
}

// Visible region as a list of triangles (p, X_i, Y_i), one per angular wedge.
std::vector<std::array<Point, 3>> visibility_fan(const PolygonalDomain& d, const Point& p) {
    auto edges = d.edges();
    std::vector<Point> dirs;
    for (auto& e : edges)
        if (e.a != p) dirs.push_back(e.a - p);
    auto half = [](const Point& v) { return (sgn(v.y) > 0 || (sgn(v.y) == 0 && sgn(v.x) > 0)) ? 0 : 1; };
    std::sort(dirs.begin(), dirs.end(), [&](const Point& a, const Point& b) {
        int ha = half(a), hb = half(b);
        if (ha != hb) return ha < hb;
        return sgn(cross(a, b)) > 0;
    });
    std::vector<Point> uniq;
    for (auto& v : dirs)
        if (uniq.empty() || !(sgn(cross(uniq.back(), v)) == 0 && sgn(dot(uniq.back(), v)) > 0)) uniq.push_back(v);
    if (uniq.size() > 1 && sgn(cross(uniq.back(), uniq.front())) == 0 && sgn(dot(uniq.back(), uniq.front())) > 0)
        uniq.pop_back();
    if (uniq.empty()) return {};
    {
        // split wedges of 180 degrees or more (p on the boundary) so every wedge is a triangle
        std::vector<Point> ref;
        for (size_t i = 0; i < uniq.size(); ++i) {
            const Point& d1 = uniq[i];
            const Point& d2 = uniq[(i + 1) % uniq.size()];
            ref.push_back(d1);
            Point cur = d1;
            for (int turns = 0; turns < 3 && (uniq.size() == 1 || sgn(cross(cur, d2)) <= 0); ++turns) {
                cur = Point(-cur.y, cur.x);
                if (uniq.size() > 1 && sgn(cross(cur, d2)) == 0 && sgn(dot(cur, d2)) > 0) break;
                ref.push_back(cur);
            }
        }
        uniq.swap(ref);
    }
    std::vector<std::array<Point, 3>> fan;
    const size_t m = uniq.size();
    for (size_t i = 0; i < m; ++i) {
        const Point& d1 = uniq[i];
        const Point& d2 = uniq[(i + 1) % m];
        Point r = d1 + d2;
        if (!locally_free(d, edges, p, r)) {
            fan.push_back({p, p, p});  // keeps p on the ring when it sits on the boundary
            continue;
        }
        // nearest edge crossed by the ray p + l r, l > 0
        std::optional<Coord> best;
        Point ba, bb;
        for (auto& e : edges) {
            Point ab = e.b - e.a;
            Coord den = cross(r, ab);
            if (sgn(den) == 0) continue;
            Point ap = e.a - p;
            Coord mu = cross(ap, r) / den;
            if (mu < 0 || mu > 1) continue;
            Coord l = cross(ap, ab) / den;
            if (sgn(l) <= 0) continue;
            if (!best || l < *best) {
                best = l;
                ba = e.a;
                bb = e.b;
            }
        }
        if (!best) continue;
        auto X = line_intersection(p, p + d1, ba, bb);
        auto Y = line_intersection(p, p + d2, ba, bb);
        if (!X || !Y) continue;
        fan.push_back({p, *X, *Y});
    }
    return fan;
}

std::vector<Point> fan_ring(const std::vector<std::array<Point, 3>>& fan) {
    std::vector<Point> ring;
    for (auto& t : fan)
        for (int k = 1; k <= 2; ++k)
            if (ring.empty() || ring.back() != t[k]) ring.push_back(t[k]);
    while (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();
    return ring;
}

bool fans_meet(const std::vector<std::array<Point, 3>>& A, const std::vector<std::array<Point, 3>>& B) {
    for (auto& a : A) {
        std::vector<Point> pa(a.begin(), a.end());
        DBox ba = dbox(pa);
        for (auto& b : B) {
            std::vector<Point> pb(b.begin(), b.end());
            DBox bb = dbox(pb);
            if (ba.x1 < bb.x0 - 1e-9 * (1 + std::abs(bb.x0)) || bb.x1 < ba.x0 - 1e-9 * (1 + std::abs(ba.x0)) ||
                ba.y1 < bb.y0 - 1e-9 * (1 + std::abs(bb.y0)) || bb.y1 < ba.y0 - 1e-9 * (1 + std::abs(ba.y0)))
                continue;
            if (!convex_intersection(pa, pb).empty()) return true;
        }
    }
    return false;
}

// Intervals of a line inside a fan.
std::vector<std::pair<Coord, Coord>> line_in_fan(const std::vector<std::array<Point, 3>>& fan,
                                                 const std::vector<std::array<DPt, 3>>& dfan, const Point& p0,
                                                 const Point& dir) {
    std::vector<std::pair<Coord, Coord>> out;
    DPt dp0 = dpt(p0), ddir = dpt(dir);
    for (size_t i = 0; i < fan.size(); ++i) {
        if (clearly_one_side(dp0, ddir, {dfan[i][0], dfan[i][1], dfan[i][2]})) continue;
        const auto& t = fan[i];
        std::vector<Point> tri(t.begin(), t.end());  // fan triangles are counterclockwise
        if (auto r = line_in_convex(tri, p0, dir)) out.push_back(*r);
    }
    return out;
}

}  // namespace

std::vector<Point> visibility_polygon(const PolygonalDomain& d, const Point& p) { return fan_ring(visibility_fan(d, p)); }

bool linkdist_le1(const PolygonalDomain& d, const Point& s, const Point& t) { return segment_in_free(d, s, t); }

bool linkdist_le2(const PolygonalDomain& d, const Point& s, const Point& t) {
    if (linkdist_le1(d, s, t)) return true;
    return fans_meet(visibility_fan(d, s), visibility_fan(d, t));
}

bool linkdist_le3(const PolygonalDomain& d, const Point& s, const Point& t) {
    if (linkdist_le1(d, s, t)) return true;
    auto Fs = visibility_fan(d, s), Ft = visibility_fan(d, t);
    if (fans_meet(Fs, Ft)) return true;
    EdgeCtx ctx(d);
    std::vector<Point> W;
    for (auto& e : ctx.edges) W.push_back(e.a);
    auto Rs = fan_ring(Fs), Rt = fan_ring(Ft);
    W.insert(W.end(), Rs.begin(), Rs.end());
    W.insert(W.end(), Rt.begin(), Rt.end());
    std::sort(W.begin(), W.end());
    W.erase(std::unique(W.begin(), W.end()), W.end());
    DBox bs = dbox(Rs), bt = dbox(Rt);
    auto to_dfan = [](const std::vector<std::array<Point, 3>>& F) {
        std::vector<std::array<DPt, 3>> out;
        for (auto& t : F) out.push_back({dpt(t[0]), dpt(t[1]), dpt(t[2])});
        return out;
    };
    auto dFs = to_dfan(Fs), dFt = to_dfan(Ft);
    for (size_t i = 0; i < W.size(); ++i)
        for (size_t j = i + 1; j < W.size(); ++j) {
            Point dir = W[j] - W[i];
            if (!line_may_hit(bs, W[i], dir) || !line_may_hit(bt, W[i], dir)) continue;
            auto S = line_in_fan(Fs, dFs, W[i], dir);
            if (S.empty()) continue;
            auto T = line_in_fan(Ft, dFt, W[i], dir);
            if (T.empty()) continue;
            for (auto& [a, b] : free_chords(ctx, W[i], dir)) {
                bool hs = false, ht = false;
                for (auto& [x, y] : S) hs |= x <= b && a <= y;
                for (auto& [x, y] : T) ht |= x <= b && a <= y;
                if (hs && ht) return true;
            }
        }
    return false;
}

std::optional<int> brute_minlink(const PolygonalDomain& d, const Point& s, const Point& t, int cap,
                                 size_t max_vertices) {
    if (d.n() > max_vertices) throw std::invalid_argument("instance too large for brute_minlink");
    if (linkdist_le1(d, s, t)) return 1;
    EdgeCtx ctx(d);
    std::vector<Point> P;
    for (auto& e : ctx.edges) P.push_back(e.a);
    P.push_back(s);
    P.push_back(t);
    std::sort(P.begin(), P.end());
    P.erase(std::unique(P.begin(), P.end()), P.end());

    struct Chord {
        Point a, b;
        double ax, ay, bx, by;
    };
    std::vector<Chord> chords;
    std::set<std::tuple<Coord, Coord, Coord>> seen;
    for (size_t i = 0; i < P.size(); ++i)
        for (size_t j = i + 1; j < P.size(); ++j) {
            Point dir = P[j] - P[i];
            // canonical line A x + B y = C with the first nonzero of (A, B) equal to 1
            Coord A = dir.y, B = -dir.x;
            Coord k = sgn(A) != 0 ? A : B;
            A /= k;
            B /= k;
            Coord Cc = A * P[i].x + B * P[i].y;
            if (!seen.insert({A, B, Cc}).second) continue;
            for (auto& [la, lb] : free_chords(ctx, P[i], dir)) {
                Point a = P[i] + dir * la, b = P[i] + dir * lb;
                chords.push_back({a, b, to_double(a.x), to_double(a.y), to_double(b.x), to_double(b.y)});
            }
        }
    double scale = 1;
    for (auto& c : chords) scale = std::max({scale, std::abs(c.ax), std::abs(c.ay), std::abs(c.bx), std::abs(c.by)});
    const double tol = 1e-9 * scale * scale;
    auto maybe = [&](const Chord& p, const Chord& q) {
        auto o = [](double ax, double ay, double bx, double by, double cx, double cy) {
            return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
        };
        double o1 = o(p.ax, p.ay, p.bx, p.by, q.ax, q.ay), o2 = o(p.ax, p.ay, p.bx, p.by, q.bx, q.by);
        if ((o1 > tol && o2 > tol) || (o1 < -tol && o2 < -tol)) return false;
        double o3 = o(q.ax, q.ay, q.bx, q.by, p.ax, p.ay), o4 = o(q.ax, q.ay, q.bx, q.by, p.bx, p.by);
        if ((o3 > tol && o4 > tol) || (o3 < -tol && o4 < -tol)) return false;
        return true;
    };

    std::vector<int> frontier, rest;
    for (size_t i = 0; i < chords.size(); ++i) {
        if (on_segment(s, chords[i].a, chords[i].b))
            frontier.push_back(static_cast<int>(i));
        else
            rest.push_back(static_cast<int>(i));
    }
    for (int level = 1; level <= cap && !frontier.empty(); ++level) {
        for (int c : frontier)
            if (on_segment(t, chords[c].a, chords[c].b)) return level;
        std::vector<int> next, keep;
        for (int r : rest) {
            bool hit = false;
            for (int c : frontier) {
                if (!maybe(chords[c], chords[r])) continue;
                if (segments_intersect({chords[c].a, chords[c].b}, {chords[r].a, chords[r].b}).kind !=
                    Intersection::Empty) {
                    hit = true;
                    break;
                }
            }
            (hit ? next : keep).push_back(r);
        }
        frontier.swap(next);
        rest.swap(keep);
    }
    return std::nullopt;
}

}  // namespace lp
