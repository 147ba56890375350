#include "linkpath/illumination.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace lp {
namespace {

// Sightline search. A directed line stabbing a sleeve of triangles in order keeps the left
// endpoints of every crossed edge on its left and the right endpoints on its right. Lines are
// written y = a x + b (|a| <= 1, cases 0/1 travel +x/-x) or x = a y + b (cases 2/3 travel
// +y/-y); each case is a convex polygon of feasible (a, b).

struct Lin {
    Coord a, b, c;  // a*u + b*v + c >= 0
    Coord at(const Point& p) const { return Coord(a * p.x + b * p.y + c); }
};

std::vector<Point> clip(const std::vector<Point>& P, const Lin& L) {
    std::vector<Point> out;
    const size_t n = P.size();
    if (n == 0) return out;
    std::vector<Coord> f(n);
    for (size_t i = 0; i < n; ++i) f[i] = L.at(P[i]);
    auto push = [&](const Point& p) {
        if (out.empty() || out.back() != p) out.push_back(p);
    };
    for (size_t i = 0; i < n; ++i) {
        size_t j = (i + 1) % n;
        if (sgn(f[i]) >= 0) push(P[i]);
        if ((sgn(f[i]) > 0 && sgn(f[j]) < 0) || (sgn(f[i]) < 0 && sgn(f[j]) > 0)) {
            Coord t = f[i] / (f[i] - f[j]);
            push(Point(P[i].x + (P[j].x - P[i].x) * t, P[i].y + (P[j].y - P[i].y) * t));
        }
    }
    if (out.size() > 1 && out.front() == out.back()) out.pop_back();
    return out;
}

struct Cone {
    std::array<std::vector<Point>, 4> P;

    explicit Cone(const Coord& B) {
        for (auto& p : P) p = {Point(-1, Coord(-B)), Point(1, Coord(-B)), Point(1, B), Point(-1, B)};
    }
    bool empty() const {
        for (auto& p : P)
            if (!p.empty()) return false;
        return true;
    }
    void add(const Point& p, bool left) {
        for (int k = 0; k < 4; ++k) {
            if (P[k].empty()) continue;
            Lin v = k < 2 ? Lin{-p.x, -1, p.y} : Lin{p.y, 1, Coord(-p.x)};
            bool neg = left == ((k & 1) != 0);
            if (neg) v = Lin{-v.a, -v.b, -v.c};
            P[k] = clip(P[k], v);
        }
    }
    // p, q in the counterclockwise order of the triangle being left.
    void add_edge(const Point& p, const Point& q) {
        add(q, true);
        add(p, false);
    }
};

struct WLine {
    Point o, dir;
};

WLine witness_line(const Cone& C) {
    for (int k = 0; k < 4; ++k) {
        if (C.P[k].empty()) continue;
        Coord a = 0, b = 0;
        for (auto& p : C.P[k]) {
            a += p.x;
            b += p.y;
        }
        a /= static_cast<long>(C.P[k].size());
        b /= static_cast<long>(C.P[k].size());
        if (k < 2) return {Point(0, b), Point(1, a)};
        return {Point(b, 0), Point(a, 1)};
    }
    throw std::logic_error("empty sightline cone");
}

std::optional<Point> hit(const WLine& L, const Point& p, const Point& q) {
    Coord gp = cross(L.dir, p - L.o), gq = cross(L.dir, q - L.o);
    if (gp == gq) return std::nullopt;
    Coord t = gp / (gp - gq);
    return Point(p.x + (q.x - p.x) * t, p.y + (q.y - p.y) * t);
}

Point nearest_end(const WLine& L, const Point& p, const Point& q, const Point& r) {
    Coord dp = dot(L.dir, p - r), dq = dot(L.dir, q - r);
    return Coord(abs(dp)) <= Coord(abs(dq)) ? p : q;
}

struct Source {
    bool point = false;
    Point s;     // when point
    Point p, q;  // window edge otherwise
};

std::pair<Point, Point> witness(const Cone& C, const Source& src, const Point& p, const Point& q) {
    WLine L = witness_line(C);
    std::optional<Point> y = hit(L, p, q);
    if (src.point) return {src.s, y ? *y : nearest_end(L, p, q, src.s)};
    std::optional<Point> x = hit(L, src.p, src.q);
    if (x && y) return {*x, *y};
    if (y) return {nearest_end(L, src.p, src.q, *y), *y};
    if (x) return {*x, nearest_end(L, p, q, *x)};
    return {src.p, nearest_end(L, p, q, src.p)};
}

bool in_tri(const std::array<Point, 3>& t, const Point& q) {
    return orient(t[0], t[1], q) >= 0 && orient(t[1], t[2], q) >= 0 && orient(t[2], t[0], q) >= 0;
}

struct Emitter {
    int color = 0;
    int kind = 0;  // 0 point s, 1 window, 2 bridge side
    int tri = -1;  // window: triangle being left; bridge: triangle entered
    int side = -1;
    int src_tri = -1, src_rec = -1;
};

class Engine {
public:
    Engine(const CutPolygon& cp, size_t h, int m, bool merging) : cp_(cp), h_(h) {
        if (m < 1) throw std::invalid_argument("m must be positive");
        M.m = m;
        M.merging = merging;
        const size_t T = cp.tris.size();
        M.tris.resize(T);
        M.tri_geom.resize(T);
        Coord mx = 1;
        for (auto& p : cp.walk) mx = std::max({mx, Coord(abs(p.x)), Coord(abs(p.y))});
        box_ = Coord(2 * mx + 1);
        for (size_t t = 0; t < T; ++t) M.tri_geom[t] = {pt(t, 0), pt(t, 1), pt(t, 2)};
        M.bridge_side_stage.assign(h, {-1, -1});
        bridge_tris_.assign(h, {-1, -1});
        for (size_t t = 0; t < T; ++t)
            for (int s = 0; s < 3; ++s) {
                int b = cp.tris[t].bridge[s];
                if (b < 0 || b >= static_cast<int>(h)) continue;
                auto& bt = bridge_tris_[b];
                if (bt[0] < 0) bt[0] = static_cast<int>(t);
                else if (bt[1] < 0) bt[1] = static_cast<int>(t);
            }
        emitted_.assign(h, {false, false});
        parent_.resize(h + 1);
        std::iota(parent_.begin(), parent_.end(), 0);
        weight_.assign(h + 1, 1);
    }

    // Runs stages until a triangle in `goal` is lit or nothing changes.
    void run(const Point& s, const std::vector<int>& goal) {
        std::vector<Emitter> pending = {Emitter{0, 0, -1, -1, -1, -1}};
        s_ = s;
        for (int k = 1; !pending.empty(); ++k) {
            stage_ = k;
            M.log.push_back(StageEvent{k, 0, 0, 0});
            fresh_.clear();
            order(pending);
            for (auto& e : pending) emit(e);
            if (M.log.back().lit == 0) {
                M.log.pop_back();
                break;
            }
            M.final_stage = k;
            bool reached = false;
            for (int g : goal) reached |= M.tris[g].stage >= 0;
            if (reached) break;
            pending = next_emitters();
        }
        M.colors.clear();
        for (size_t c = 0; c <= h_; ++c)
            if (find(static_cast<int>(c)) == static_cast<int>(c)) M.colors.push_back(Color{static_cast<int>(c), weight_[c]});
    }

    IlluminationMap M;

private:
    const CutPolygon& cp_;
    size_t h_;
    Coord box_;
    Point s_;
    int stage_ = 0;
    std::vector<std::array<int, 2>> bridge_tris_;
    std::vector<std::array<bool, 2>> emitted_;
    std::vector<int> parent_, weight_;
    std::vector<std::pair<int, int>> fresh_;  // (triangle, record) added in the current stage

    Point pt(size_t t, int i) const { return cp_.walk[cp_.tris[t].v[i % 3]]; }

    int find(int c) {
        while (parent_[c] != c) c = parent_[c] = parent_[parent_[c]];
        return c;
    }

    void order(std::vector<Emitter>& E) {
        std::stable_sort(E.begin(), E.end(), [&](const Emitter& a, const Emitter& b) {
            int ra = find(a.color), rb = find(b.color);
            if (M.merging && weight_[ra] != weight_[rb]) return weight_[ra] > weight_[rb];
            return ra < rb;
        });
    }

    bool lit_by(int t, int c) {
        int r = find(c);
        for (auto& rec : M.tris[t].records)
            if (find(rec.color) == r) return true;
        return false;
    }

    void block(int t, int c) {
        ++M.log.back().blockings;
        if (!M.merging) return;
        int g = find(c), r = find(M.tris[t].records.front().color);
        if (g == r) return;
        // the root keeps the smaller id so tie order stays stable
        if (r > g) std::swap(r, g);
        parent_[g] = r;
        weight_[r] += weight_[g];
        ++M.merges;
        ++M.log.back().merges;
    }

    // Attempts to light t with color c; false if t is opaque to c.
    bool light(int t, int c, int entry, int src_tri, int src_rec, const Point& x, const Point& y) {
        auto& T = M.tris[t];
        if (static_cast<int>(T.records.size()) >= M.m) {
            block(t, c);
            return false;
        }
        T.records.push_back(LightRecord{c, stage_, entry, src_tri, src_rec, x, y});
        if (T.stage < 0) {
            T.stage = stage_;
            for (int s = 0; s < 3; ++s) {
                int b = cp_.tris[t].bridge[s];
                if (b < 0 || b >= static_cast<int>(h_)) continue;
                int side = bridge_tris_[b][0] == t ? 0 : 1;
                if (M.bridge_side_stage[b][side] < 0) M.bridge_side_stage[b][side] = stage_;
            }
        }
        if (static_cast<int>(T.records.size()) >= M.m) T.blocked = true;
        fresh_.push_back({t, static_cast<int>(T.records.size()) - 1});
        ++M.log.back().lit;
        return true;
    }

    int side_toward(int t, int nb) const {
        for (int s = 0; s < 3; ++s)
            if (cp_.tris[t].nb[s] == nb) return s;
        throw std::logic_error("triangles are not adjacent");
    }

    // Depth-first flood away from triangle t0 (already lit by this emission) through sightlines.
    void flood(int t0, int entry, const Cone& cone0, const Source& src, int c, int src_tri, int src_rec) {
        struct Item {
            int t, entry;
            Cone cone;
        };
        std::vector<Item> st;
        st.push_back({t0, entry, cone0});
        while (!st.empty()) {
            Item it = std::move(st.back());
            st.pop_back();
            for (int s = 0; s < 3; ++s) {
                if (s == it.entry) continue;
                int t2 = cp_.tris[it.t].nb[s];
                if (t2 < 0 || lit_by(t2, c)) continue;
                Point p = pt(it.t, s), q = pt(it.t, s + 1);
                Cone next = it.cone;
                next.add_edge(p, q);
                if (next.empty()) continue;
                auto [x, y] = witness(next, src, p, q);
                int e2 = side_toward(t2, it.t);
                if (!light(t2, c, e2, src_tri, src_rec, x, y)) continue;
                st.push_back({t2, e2, std::move(next)});
            }
        }
    }

    void emit(const Emitter& e) {
        int c = e.color;
        if (e.kind == 0) {
            Source src{true, s_, {}, {}};
            std::vector<int> own;
            for (size_t t = 0; t < M.tris.size(); ++t)
                if (in_tri(M.tri_geom[t], s_) && !lit_by(static_cast<int>(t), c))
                    if (light(static_cast<int>(t), c, -1, -1, -1, s_, s_)) own.push_back(static_cast<int>(t));
            Cone base(box_);
            base.add(s_, true);
            base.add(s_, false);
            for (int t : own) flood(t, -1, base, src, c, -1, -1);
            return;
        }
        int t1, e1;
        Point p, q;
        if (e.kind == 1) {
            t1 = cp_.tris[e.tri].nb[e.side];
            if (t1 < 0 || lit_by(t1, c)) return;
            p = pt(e.tri, e.side);
            q = pt(e.tri, e.side + 1);
            e1 = side_toward(t1, e.tri);
        } else {
            t1 = e.tri;
            e1 = e.side;
            if (lit_by(t1, c)) return;
            // the bridge copy runs counterclockwise around t1; seen from the far side it is reversed
            q = pt(t1, e1);
            p = pt(t1, e1 + 1);
        }
        Point mid = midpoint(p, q);
        if (!light(t1, c, e1, e.src_tri, e.src_rec, mid, mid)) return;
        Cone base(box_);
        base.add_edge(p, q);
        flood(t1, e1, base, Source{false, {}, p, q}, c, e.src_tri, e.src_rec);
    }

    std::vector<Emitter> next_emitters() {
        std::vector<Emitter> out;
        for (auto [t, r] : fresh_) {
            const auto& rec = M.tris[t].records[r];
            for (int s = 0; s < 3; ++s) {
                int nb = cp_.tris[t].nb[s];
                if (nb >= 0) {
                    if (!lit_by(nb, rec.color)) out.push_back(Emitter{rec.color, 1, t, s, t, r});
                    continue;
                }
                int b = cp_.tris[t].bridge[s];
                if (b < 0 || b >= static_cast<int>(h_)) continue;
                int side = bridge_tris_[b][0] == t ? 0 : 1;
                int far = 1 - side;
                int ft = bridge_tris_[b][far];
                if (ft < 0 || emitted_[b][far]) continue;
                emitted_[b][far] = true;
                int fs = -1;
                for (int k = 0; k < 3; ++k)
                    if (cp_.tris[ft].bridge[k] == b) fs = k;
                out.push_back(Emitter{b + 1, 2, ft, fs, t, r});
            }
        }
        return out;
    }
};

std::vector<int> containing(const IlluminationMap& M, const Point& q) {
    std::vector<int> out;
    for (size_t t = 0; t < M.tri_geom.size(); ++t)
        if (in_tri(M.tri_geom[t], q)) out.push_back(static_cast<int>(t));
    return out;
}

struct Tagged {
    Point p;
    int stage, color;
    bool y_end;  // sightline end inside a triangle (next link is the extra turn)
};

ApproxPath build_path(const PolygonalDomain& d, const IlluminationMap& M, const Point& t, const std::vector<int>& goal) {
    ApproxPath out;
    int bt = -1, br = -1;
    for (int g : goal)
        for (size_t r = 0; r < M.tris[g].records.size(); ++r)
            if (bt < 0 || M.tris[g].records[r].stage < M.tris[bt].records[br].stage) {
                bt = g;
                br = static_cast<int>(r);
            }
    if (bt < 0) {
        out.failure = "target never lit";
        for (size_t x = 0; x < M.tris.size(); ++x)
            if (M.tris[x].stage >= 0) out.lit_triangles.push_back(static_cast<int>(x));
        return out;
    }
    std::vector<Tagged> rev = {{t, M.tris[bt].records[br].stage, M.tris[bt].records[br].color, false}};
    for (int ct = bt, cr = br; ct >= 0;) {
        const auto& r = M.tris[ct].records[cr];
        rev.push_back({r.y, r.stage, r.color, true});
        rev.push_back({r.x, r.stage, r.color, false});
        int nt = r.src_tri, nr = r.src_rec;
        ct = nt;
        cr = nr;
    }
    std::reverse(rev.begin(), rev.end());
    std::vector<Tagged> P;
    for (auto& v : rev)
        if (P.empty() || P.back().p != v.p) P.push_back(v);
    // greedy shortcuts in the original free space
    std::vector<size_t> keep = {0};
    for (size_t i = 0; i + 1 < P.size();) {
        size_t j = P.size() - 1;
        while (j > i + 1 && !segment_in_free(d, P[i].p, P[j].p)) --j;
        keep.push_back(j);
        i = j;
    }
    for (size_t k = 0; k < keep.size(); ++k) out.pts.push_back(P[keep[k]].p);
    for (size_t k = 0; k + 1 < keep.size(); ++k) {
        const auto& a = P[keep[k]];
        out.prov.push_back(LinkProvenance{a.stage, a.color, a.y_end && keep[k + 1] == keep[k] + 1});
    }
    out.links = static_cast<int>(out.pts.size()) - 1;
    for (size_t k = 0; k + 1 < out.pts.size(); ++k)
        if (!segment_in_free(d, out.pts[k], out.pts[k + 1])) {
            out.failure = "link leaves free space";
            return out;
        }
    out.ok = true;
    return out;
}

IlluminationResult run_pipeline(const PolygonalDomain& d, const BridgeSet& B, const CutPolygon& cp, const Point& s,
                                const Point& t, int m, bool merging) {
    if (!in_closed_free(d, s) || !in_closed_free(d, t)) throw std::invalid_argument("s or t outside free space");
    Engine E(cp, B.bridges.size(), m, merging);
    std::vector<int> goal;
    for (size_t x = 0; x < cp.tris.size(); ++x)
        if (in_tri(E.M.tri_geom[x], t)) goal.push_back(static_cast<int>(x));
    if (goal.empty()) throw std::invalid_argument("t lies in no triangle of the cut polygon");
    E.run(s, goal);
    IlluminationResult res;
    res.map = std::move(E.M);
    res.path = build_path(d, res.map, t, goal);
    return res;
}

}  // namespace

IlluminationResult illuminate(const PolygonalDomain& d, const BridgeSet& B, const CutPolygon& cp, const Point& s,
                              const Point& t, int m) {
    return run_pipeline(d, B, cp, s, t, m, false);
}

IlluminationResult illuminate_merging(const PolygonalDomain& d, const BridgeSet& B, const CutPolygon& cp,
                                      const Point& s, const Point& t) {
    return run_pipeline(d, B, cp, s, t, 1, true);
}

IlluminationMap illumination_map(const PolygonalDomain& d, const BridgeSet& B, const CutPolygon& cp, const Point& s,
                                 int m, bool merging) {
    if (!in_closed_free(d, s)) throw std::invalid_argument("s outside free space");
    Engine E(cp, B.bridges.size(), m, merging);
    E.run(s, {});
    return std::move(E.M);
}

std::optional<int> approx_distance_query(const IlluminationMap& map, const Point& q) {
    std::optional<int> best;
    for (int t : containing(map, q))
        if (map.tris[t].stage >= 0 && (!best || map.tris[t].stage < *best)) best = map.tris[t].stage;
    return best;
}

std::vector<std::vector<int>> stage_frames(const IlluminationMap& map) {
    std::vector<std::vector<int>> out(map.final_stage);
    for (int k = 1; k <= map.final_stage; ++k)
        for (size_t t = 0; t < map.tris.size(); ++t)
            if (map.tris[t].stage >= 0 && map.tris[t].stage <= k) out[k - 1].push_back(static_cast<int>(t));
    return out;
}

}  // namespace lp
