#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "linkpath/bridging.hpp"

namespace lp {

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        p[b] = a;
        return true;
    }
};

struct D2 {
    double x, y;
};

D2 d2(const Point& p) { return {to_double(p.x), to_double(p.y)}; }

// Segments share a point other than a common endpoint.
bool segments_conflict(const Point& a, const Point& b, const Point& c, const Point& d) {
    auto r = segments_intersect({a, b}, {c, d});
    if (r.kind == Intersection::Empty) return false;
    if (r.kind == Intersection::Overlap && r.p != r.q) return true;
    const Point& x = r.p;
    bool end_ab = x == a || x == b, end_cd = x == c || x == d;
    return !(end_ab && end_cd);
}

bool boxes_meet(const Segment& s, const Segment& t) {
    D2 a = d2(s.a), b = d2(s.b), c = d2(t.a), e = d2(t.b);
    const double eps = 1e-9;
    return std::max(a.x, b.x) + eps >= std::min(c.x, e.x) && std::max(c.x, e.x) + eps >= std::min(a.x, b.x) &&
           std::max(a.y, b.y) + eps >= std::min(c.y, e.y) && std::max(c.y, e.y) + eps >= std::min(a.y, b.y);
}

}  // namespace

std::vector<std::pair<int, int>> low_stab_spanning_tree(const std::vector<Point>& pts, uint64_t seed) {
    const int n = static_cast<int>(pts.size());
    if (n < 1) throw std::invalid_argument("spanning tree needs at least one point");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (pts[i] == pts[j]) throw std::invalid_argument("spanning tree points must be distinct");
    std::vector<std::pair<int, int>> tree;
    if (n == 1) return tree;
    std::vector<D2> P;
    for (auto& p : pts) P.push_back(d2(p));
    std::mt19937_64 rng(seed);
    // test lines: slightly turned lines through point pairs, a*x + b*y = c
    struct Line {
        double a, b, c;
    };
    std::vector<Line> lines;
    const long pairs = static_cast<long>(n) * (n - 1) / 2;
    const long want = std::min<long>(pairs * 2, 6000);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::uniform_real_distribution<double> jit(-1e-3, 1e-3);
    while (static_cast<long>(lines.size()) < want) {
        int i = pick(rng), j = pick(rng);
        if (i == j) continue;
        double dx = P[j].x - P[i].x, dy = P[j].y - P[i].y;
        double t = jit(rng);
        double ca = std::cos(t), sa = std::sin(t);
        double ex = dx * ca - dy * sa, ey = dx * sa + dy * ca;
        double mx = 0.5 * (P[i].x + P[j].x), my = 0.5 * (P[i].y + P[j].y);
        lines.push_back({-ey, ex, -ey * mx + ex * my});
    }
    auto side = [&](const Line& L, int i) { return L.a * P[i].x + L.b * P[i].y - L.c; };
    // candidate edges
    std::vector<std::pair<int, int>> cand;
    if (n <= 120) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) cand.push_back({i, j});
    } else {
        const int k = 16;
        for (int i = 0; i < n; ++i) {
            std::vector<std::pair<double, int>> dist;
            for (int j = 0; j < n; ++j)
                if (j != i) dist.push_back({std::hypot(P[j].x - P[i].x, P[j].y - P[i].y), j});
            std::partial_sort(dist.begin(), dist.begin() + std::min<int>(k, n - 1), dist.end());
            for (int t = 0; t < std::min<int>(k, n - 1); ++t) cand.push_back({std::min(i, dist[t].second), std::max(i, dist[t].second)});
        }
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    }
    // drop candidates running through a third point
    std::vector<char> alive(cand.size(), 1);
    for (size_t e = 0; e < cand.size(); ++e) {
        auto [i, j] = cand[e];
        for (int x = 0; x < n && alive[e]; ++x) {
            if (x == i || x == j) continue;
            double cr = (P[j].x - P[i].x) * (P[x].y - P[i].y) - (P[j].y - P[i].y) * (P[x].x - P[i].x);
            double sc = std::abs(P[j].x - P[i].x) + std::abs(P[j].y - P[i].y) + 1;
            if (std::abs(cr) > 1e-9 * sc * sc) continue;
            if (on_segment(pts[x], pts[i], pts[j])) alive[e] = 0;
        }
    }
    std::vector<double> w(lines.size(), 1.0), cost(cand.size(), 0.0);
    std::vector<std::vector<int>> crossing(lines.size());
    for (size_t l = 0; l < lines.size(); ++l)
        for (size_t e = 0; e < cand.size(); ++e) {
            double s1 = side(lines[l], cand[e].first), s2 = side(lines[l], cand[e].second);
            if ((s1 < 0 && s2 > 0) || (s1 > 0 && s2 < 0)) {
                crossing[l].push_back(static_cast<int>(e));
                cost[e] += 1.0;
            }
        }
    UnionFind uf(n);
    int comps = n;
    auto crosses_tree = [&](int i, int j) {
        for (auto [a, b] : tree)
            if (segments_conflict(pts[i], pts[j], pts[a], pts[b])) return true;
        return false;
    };
    auto add = [&](int i, int j) {
        tree.push_back({i, j});
        uf.unite(i, j);
        --comps;
        D2 a = P[i], b = P[j];
        for (size_t l = 0; l < lines.size(); ++l) {
            double s1 = side(lines[l], i), s2 = side(lines[l], j);
            if (!((s1 < 0 && s2 > 0) || (s1 > 0 && s2 < 0))) continue;
            for (int e : crossing[l]) cost[e] += w[l];
            w[l] *= 2;
        }
        double x0 = std::min(a.x, b.x), x1 = std::max(a.x, b.x), y0 = std::min(a.y, b.y), y1 = std::max(a.y, b.y);
        for (size_t e = 0; e < cand.size(); ++e) {
            if (!alive[e]) continue;
            auto [p, q] = cand[e];
            if (std::max(P[p].x, P[q].x) < x0 || std::min(P[p].x, P[q].x) > x1 || std::max(P[p].y, P[q].y) < y0 ||
                std::min(P[p].y, P[q].y) > y1)
                continue;
            if (segments_conflict(pts[p], pts[q], pts[i], pts[j])) alive[e] = 0;
        }
    };
    while (comps > 1) {
        int best = -1;
        for (size_t e = 0; e < cand.size(); ++e) {
            if (!alive[e]) continue;
            auto [i, j] = cand[e];
            if (uf.find(i) == uf.find(j)) {
                alive[e] = 0;
                continue;
            }
            if (best < 0 || cost[e] < cost[best]) best = static_cast<int>(e);
        }
        if (best >= 0) {
            alive[best] = 0;
            add(cand[best].first, cand[best].second);
            continue;
        }
        // candidates exhausted: cheapest valid pair overall
        std::pair<int, int> pick2{-1, -1};
        double pc = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if (uf.find(i) == uf.find(j)) continue;
                bool through = false;
                for (int x = 0; x < n && !through; ++x)
                    if (x != i && x != j && on_segment(pts[x], pts[i], pts[j])) through = true;
                if (through || crosses_tree(i, j)) continue;
                double c = 0;
                for (size_t l = 0; l < lines.size(); ++l) {
                    double s1 = side(lines[l], i), s2 = side(lines[l], j);
                    if ((s1 < 0 && s2 > 0) || (s1 > 0 && s2 < 0)) c += w[l];
                }
                if (pick2.first < 0 || c < pc) {
                    pick2 = {i, j};
                    pc = c;
                }
            }
        if (pick2.first < 0) throw std::logic_error("spanning tree: no non-crossing edge left");
        add(pick2.first, pick2.second);
    }
    return tree;
}

namespace {

// Ring index containing boundary point p (-1 if none).
int ring_of(const PolygonalDomain& d, const Point& p) {
    for (int r = 0; r < d.ring_count(); ++r) {
        const Ring& R = d.ring(r);
        for (size_t i = 0; i < R.size(); ++i) {
            const Point &a = R[i], &b = R[(i + 1) % R.size()];
            if (p.x < std::min(a.x, b.x) || std::max(a.x, b.x) < p.x || p.y < std::min(a.y, b.y) ||
                std::max(a.y, b.y) < p.y)
                continue;
            if (on_segment(p, a, b)) return r;
        }
    }
    return -1;
}

}  // namespace

BridgeSet compute_bridges(const PolygonalDomain& d) {
    BridgeSet B;
    B.h = d.h();
    if (d.h() == 0) return B;
    std::vector<Point> reps;
    for (int r = 0; r < d.ring_count(); ++r) reps.push_back(*std::min_element(d.ring(r).begin(), d.ring(r).end()));
    auto tree = low_stab_spanning_tree(reps);
    auto edges = d.edges();
    UnionFind uf(d.ring_count());
    for (auto [i, j] : tree) {
        const Point &a = reps[i], &b = reps[j];
        Point dir = b - a;
        Coord dd = dot(dir, dir);
        std::vector<Coord> ts = {Coord(0), Coord(1)};
        Coord bx0 = std::min(a.x, b.x), bx1 = std::max(a.x, b.x), by0 = std::min(a.y, b.y), by1 = std::max(a.y, b.y);
        for (auto& e : edges) {
            if (std::max(e.a.x, e.b.x) < bx0 || std::min(e.a.x, e.b.x) > bx1 || std::max(e.a.y, e.b.y) < by0 ||
                std::min(e.a.y, e.b.y) > by1)
                continue;
            auto r = segments_intersect({a, b}, {e.a, e.b});
            if (r.kind == Intersection::Empty) continue;
            ts.push_back(dot(r.p - a, dir) / dd);
            if (r.kind == Intersection::Overlap) ts.push_back(dot(r.q - a, dir) / dd);
        }
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        for (size_t k = 0; k + 1 < ts.size(); ++k) {
            Point p = a + dir * ts[k], q = a + dir * ts[k + 1];
            if (classify_point(d, midpoint(p, q)) <= 0) continue;
            int rp = ring_of(d, p), rq = ring_of(d, q);
            if (rp < 0 || rq < 0 || rp == rq) continue;
            if (!uf.unite(rp, rq)) continue;
            B.bridges.push_back({p, q});
            B.rings.push_back({rp, rq});
        }
    }
    if (B.bridges.size() != d.h()) throw std::logic_error("bridge count differs from the number of holes");
    return B;
}

int stabbing_count(const BridgeSet& B, const Point& a, const Point& b) {
    int n = 0;
    for (auto& s : B.bridges) {
        int o1 = orient(a, b, s.a), o2 = orient(a, b, s.b);
        if (o1 * o2 < 0 || (o1 == 0 && o2 == 0)) ++n;
    }
    return n;
}

namespace {

struct DirEdge {
    int from, to;
    int bridge;  // -1 for a boundary edge
};

// Half-plane index and cross-product order of directions, counterclockwise from +x.
bool angle_less(const Point& u, const Point& v) {
    auto half = [](const Point& p) { return (sgn(p.y) < 0 || (sgn(p.y) == 0 && sgn(p.x) < 0)) ? 1 : 0; };
    int hu = half(u), hv = half(v);
    if (hu != hv) return hu < hv;
    return sgn(cross(u, v)) > 0;
}

struct Walk {
    std::vector<Point> pts;
    std::vector<int> bridge;
    bool single = false;
};

Walk trace_cut(const PolygonalDomain& d, const BridgeSet& B) {
    std::map<Point, int> id;
    std::vector<Point> node;
    auto nid = [&](const Point& p) {
        auto it = id.find(p);
        if (it != id.end()) return it->second;
        id[p] = static_cast<int>(node.size());
        node.push_back(p);
        return static_cast<int>(node.size()) - 1;
    };
    std::vector<DirEdge> E;
    for (int r = 0; r < d.ring_count(); ++r) {
        const Ring& R = d.ring(r);
        for (size_t i = 0; i < R.size(); ++i) {
            const Point &a = R[i], &b = R[(i + 1) % R.size()];
            Point dir = b - a;
            Coord dd = dot(dir, dir);
            std::vector<std::pair<Coord, Point>> cuts = {{Coord(0), a}, {Coord(1), b}};
            for (auto& s : B.bridges)
                for (const Point* p : {&s.a, &s.b})
                    if (!(p->x < std::min(a.x, b.x) || std::max(a.x, b.x) < p->x || p->y < std::min(a.y, b.y) ||
                          std::max(a.y, b.y) < p->y) &&
                        on_segment(*p, a, b))
                        cuts.push_back({dot(*p - a, dir) / dd, *p});
            std::sort(cuts.begin(), cuts.end(), [](auto& x, auto& y) { return x.first < y.first; });
            for (size_t k = 0; k + 1 < cuts.size(); ++k)
                if (cuts[k].first < cuts[k + 1].first) E.push_back({nid(cuts[k].second), nid(cuts[k + 1].second), -1});
        }
    }
    for (size_t b = 0; b < B.bridges.size(); ++b) {
        int u = nid(B.bridges[b].a), v = nid(B.bridges[b].b);
        E.push_back({u, v, static_cast<int>(b)});
        E.push_back({v, u, static_cast<int>(b)});
    }
    std::vector<std::vector<int>> out(node.size());
    for (size_t e = 0; e < E.size(); ++e) out[E[e].from].push_back(static_cast<int>(e));
    // sort outgoing edges counterclockwise
    for (size_t v = 0; v < node.size(); ++v)
        std::sort(out[v].begin(), out[v].end(), [&](int x, int y) {
            return angle_less(node[E[x].to] - node[v], node[E[y].to] - node[v]);
        });
    auto next = [&](int e) {
        int v = E[e].to;
        Point back = node[E[e].from] - node[v];
        // first outgoing edge clockwise from the reverse direction
        const auto& o = out[v];
        int best = -1;
        for (int k = static_cast<int>(o.size()) - 1; k >= 0; --k) {
            Point dir = node[E[o[k]].to] - node[v];
            if (angle_less(dir, back)) {
                best = o[k];
                break;
            }
        }
        if (best < 0) {
            // wrap around: the largest angle that is not the reverse direction
            for (int k = static_cast<int>(o.size()) - 1; k >= 0; --k) {
                Point dir = node[E[o[k]].to] - node[v];
                if (sgn(cross(dir, back)) != 0 || sgn(dot(dir, back)) < 0) {
                    best = o[k];
                    break;
                }
            }
        }
        if (best < 0) best = o.front();
        return best;
    };
    Walk W;
    int start = 0;
    std::vector<char> used(E.size(), 0);
    int e = start;
    size_t guard = 0;
    do {
        used[e] = 1;
        W.pts.push_back(node[E[e].from]);
        W.bridge.push_back(E[e].bridge);
        e = next(e);
        if (++guard > 4 * E.size() + 8) throw std::logic_error("cut polygon walk does not close");
    } while (e != start);
    W.single = std::all_of(used.begin(), used.end(), [](char c) { return c != 0; });
    return W;
}

}  // namespace

bool bridges_valid(const PolygonalDomain& d, const BridgeSet& B) {
    if (B.bridges.size() != d.h()) return false;
    for (size_t i = 0; i < B.bridges.size(); ++i) {
        const auto& s = B.bridges[i];
        if (!segment_in_free(d, s.a, s.b)) return false;
        for (size_t j = i + 1; j < B.bridges.size(); ++j)
            if (boxes_meet(s, B.bridges[j]) && segments_conflict(s.a, s.b, B.bridges[j].a, B.bridges[j].b)) return false;
    }
    return trace_cut(d, B).single;
}

namespace {

bool strictly_inside_angle(const Point& c, const Point& a, const Point& b, const Point& x) {
    // x strictly inside the convex angle a-c-b (a to b counterclockwise)
    return orient(c, a, x) > 0 && orient(c, x, b) > 0;
}

}  // namespace

std::vector<std::array<int, 3>> triangulate_walk(const std::vector<Point>& walk) {
    const int n = static_cast<int>(walk.size());
    if (n < 3) throw std::invalid_argument("walk needs at least three vertices");
    std::vector<int> prv(n), nxt(n);
    for (int i = 0; i < n; ++i) {
        prv[i] = (i + n - 1) % n;
        nxt[i] = (i + 1) % n;
    }
    std::vector<char> gone(n, 0);
    std::vector<D2> P;
    for (auto& p : walk) P.push_back(d2(p));
    std::vector<std::array<int, 3>> out;
    auto is_ear = [&](int i) {
        int a = prv[i], b = nxt[i];
        const Point &A = walk[a], &C = walk[i], &Bp = walk[b];
        if (orient(A, C, Bp) <= 0) return false;
        double x0 = std::min({P[a].x, P[i].x, P[b].x}), x1 = std::max({P[a].x, P[i].x, P[b].x});
        double y0 = std::min({P[a].y, P[i].y, P[b].y}), y1 = std::max({P[a].y, P[i].y, P[b].y});
        for (int j = nxt[b]; j != a; j = nxt[j]) {
            if (P[j].x < x0 - 1e-9 || P[j].x > x1 + 1e-9 || P[j].y < y0 - 1e-9 || P[j].y > y1 + 1e-9) continue;
            const Point& X = walk[j];
            const Point* corner = X == A ? &A : X == C ? &C : X == Bp ? &Bp : nullptr;
            if (!corner) {
                if (orient(A, C, X) >= 0 && orient(C, Bp, X) >= 0 && orient(Bp, A, X) >= 0) return false;
                continue;
            }
            // a copy of a corner: its edges must not enter the triangle
            for (int k : {prv[j], nxt[j]}) {
                const Point& Y = walk[k];
                if (Y == *corner) continue;
                if (corner == &C && strictly_inside_angle(C, Bp, A, Y)) return false;
                if (corner == &A && strictly_inside_angle(A, C, Bp, Y)) return false;
                if (corner == &Bp && strictly_inside_angle(Bp, A, C, Y)) return false;
            }
        }
        return true;
    };
    int remaining = n, i = 0, stall = 0;
    while (remaining > 3) {
        if (gone[i]) {
            i = nxt[i];
            continue;
        }
        if (is_ear(i)) {
            out.push_back({prv[i], i, nxt[i]});
            gone[i] = 1;
            nxt[prv[i]] = nxt[i];
            prv[nxt[i]] = prv[i];
            --remaining;
            stall = 0;
            i = prv[i];
            continue;
        }
        i = nxt[i];
        if (++stall > remaining + 1) {
            // collinear leftovers: cut degenerate spikes (zero-area) to make progress
            bool cut = false;
            for (int k = 0, j = i; k < remaining; ++k, j = nxt[j])
                if (orient(walk[prv[j]], walk[j], walk[nxt[j]]) == 0 && walk[prv[j]] != walk[nxt[j]]) {
                    // a straight vertex: drop it from the ring, keep its neighbours' triangles intact later
                    continue;
                } else if (walk[prv[j]] == walk[nxt[j]]) {
                    gone[j] = 1;
                    nxt[prv[j]] = nxt[j];
                    prv[nxt[j]] = prv[j];
                    --remaining;
                    cut = true;
                    i = prv[j];
                    break;
                }
            if (!cut) throw std::logic_error("ear clipping stalled");
            stall = 0;
        }
    }
    int a = i;
    while (gone[a]) a = nxt[a];
    if (orient(walk[prv[a]], walk[a], walk[nxt[a]]) > 0) out.push_back({prv[a], a, nxt[a]});
    return out;
}

int CutPolygon::locate(const Point& q) const {
    for (size_t t = 0; t < tris.size(); ++t) {
        const Point &a = walk[tris[t].v[0]], &b = walk[tris[t].v[1]], &c = walk[tris[t].v[2]];
        if (orient(a, b, q) >= 0 && orient(b, c, q) >= 0 && orient(c, a, q) >= 0) return static_cast<int>(t);
    }
    return -1;
}

CutPolygon cut_polygon(const PolygonalDomain& d, const BridgeSet& B) {
    for (size_t i = 0; i < B.bridges.size(); ++i)
        for (size_t j = i + 1; j < B.bridges.size(); ++j)
            if (boxes_meet(B.bridges[i], B.bridges[j]) &&
                segments_conflict(B.bridges[i].a, B.bridges[i].b, B.bridges[j].a, B.bridges[j].b))
                throw std::invalid_argument("bridges cross");
    Walk W = trace_cut(d, B);
    if (!W.single) throw std::invalid_argument("free space minus the bridges is not simply connected");
    CutPolygon cp;
    cp.walk = W.pts;
    cp.walk_bridge = W.bridge;
    auto tri = triangulate_walk(cp.walk);
    const int n = static_cast<int>(cp.walk.size());
    std::map<std::pair<int, int>, std::pair<int, int>> side_of;  // undirected walk-index pair -> (tri, side)
    for (auto& t : tri) {
        CutTriangle c;
        c.v = t;
        c.nb = {-1, -1, -1};
        c.bridge = {-1, -1, -1};
        c.partner = {-1, -1, -1};
        cp.tris.push_back(c);
    }
    std::vector<std::pair<int, int>> walk_side(n, {-1, -1});  // walk edge i -> (tri, side)
    for (size_t t = 0; t < cp.tris.size(); ++t)
        for (int s = 0; s < 3; ++s) {
            int a = cp.tris[t].v[s], b = cp.tris[t].v[(s + 1) % 3];
            if (b == (a + 1) % n) {
                walk_side[a] = {static_cast<int>(t), s};
                continue;
            }
            auto key = std::minmax(a, b);
            auto it = side_of.find(key);
            if (it == side_of.end()) {
                side_of[key] = {static_cast<int>(t), s};
            } else {
                cp.tris[t].nb[s] = it->second.first;
                cp.tris[it->second.first].nb[it->second.second] = static_cast<int>(t);
            }
        }
    // bridge partners: the two walk edges of one bridge
    std::map<int, std::vector<int>> copies;
    for (int i = 0; i < n; ++i)
        if (cp.walk_bridge[i] >= 0) copies[cp.walk_bridge[i]].push_back(i);
    for (auto& [b, ws] : copies) {
        if (ws.size() != 2) continue;
        auto [t0, s0] = walk_side[ws[0]];
        auto [t1, s1] = walk_side[ws[1]];
        if (t0 < 0 || t1 < 0) continue;
        cp.tris[t0].bridge[s0] = b;
        cp.tris[t1].bridge[s1] = b;
        cp.tris[t0].partner[s0] = t1;
        cp.tris[t1].partner[s1] = t0;
    }
    return cp;
}

bool dual_is_tree(const CutPolygon& cp) {
    const size_t T = cp.tris.size();
    if (T == 0) return false;
    size_t edges = 0;
    for (auto& t : cp.tris)
        for (int nb : t.nb)
            if (nb >= 0) ++edges;
    edges /= 2;
    if (edges + 1 != T) return false;
    std::vector<char> seen(T, 0);
    std::vector<int> st = {0};
    seen[0] = 1;
    size_t cnt = 1;
    while (!st.empty()) {
        int t = st.back();
        st.pop_back();
        for (int nb : cp.tris[t].nb)
            if (nb >= 0 && !seen[nb]) {
                seen[nb] = 1;
                ++cnt;
                st.push_back(nb);
            }
    }
    return cnt == T;
}

}  // namespace lp
