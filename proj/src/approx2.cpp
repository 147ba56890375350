#include <algorithm>
#include <stdexcept>

#include "linkpath/coriext.hpp"

namespace lp {

namespace {

// An accepted family of parallel rays, u - sigma*w in [lo, hi] (view coordinates).
struct Ray {
    Coord lo, hi;
    int src;  // source piece, -1 for s
    bool point = false;  // the single line through s
};

// The horizontal decomposition seen upright (flip = 1) or turned by 180 degrees (flip = -1).
struct View {
    const Trapezoidation& T;
    int flip;
    Coord lo(int x) const { return flip > 0 ? T.cells[x].lo : Coord(-T.cells[x].hi); }
    Coord hi(int x) const { return flip > 0 ? T.cells[x].hi : Coord(-T.cells[x].lo); }
    const TEdge& left(int x) const { return T.edges[flip > 0 ? T.cells[x].left : T.cells[x].right]; }
    const TEdge& right(int x) const { return T.edges[flip > 0 ? T.cells[x].right : T.cells[x].left]; }
    // side lines u = a + b*w in view coordinates
    std::pair<Coord, Coord> line(const TEdge& e) const {
        if (flip > 0) return {e.a, e.b};
        return {Coord(-e.a), e.b};
    }
    Coord uL(int x, const Coord& w) const {
        auto [a, b] = line(left(x));
        return a + b * w;
    }
    Coord uR(int x, const Coord& w) const {
        auto [a, b] = line(right(x));
        return a + b * w;
    }
    const std::vector<int>& up(int x) const { return flip > 0 ? T.cells[x].upper_nb : T.cells[x].lower_nb; }
    Coord to_w(const Coord& w) const { return flip > 0 ? w : Coord(-w); }
};

struct Sweeper {
    const View& V;
    Coord sigma;

    Coord alpha(const Coord& u, const Coord& w) const { return u - sigma * w; }

    // Upper end (height) of the chord of line alpha inside cell x.
    Coord exit(int x, const Coord& al) const {
        Coord best = V.hi(x);
        auto [aL, bL] = V.line(V.left(x));
        auto [aR, bR] = V.line(V.right(x));
        if (sigma < bL) {
            Coord w = (al - aL) / (bL - sigma);
            if (w < best) best = w;
        }
        if (bR < sigma) {
            Coord w = (aR - al) / (sigma - bR);
            if (w < best) best = w;
        }
        return best;
    }

    Coord max_exit(int x, const Coord& a, const Coord& b) const {
        std::vector<Coord> cand = {a, b};
        auto [aL, bL] = V.line(V.left(x));
        auto [aR, bR] = V.line(V.right(x));
        Coord H = V.hi(x);
        // breakpoints of the concave minimum
        if (sigma < bL) cand.push_back(aL + (bL - sigma) * H);
        if (bR < sigma) cand.push_back(aR - (sigma - bR) * H);
        if (sigma < bL && bR < sigma) {
            // (al - aL)/(bL - sigma) == (aR - al)/(sigma - bR)
            Coord p = bL - sigma, q = sigma - bR;
            cand.push_back((aL * q + aR * p) / (p + q));
        }
        Coord best = exit(x, a);
        for (auto& c : cand)
            if (a <= c && c <= b) {
                Coord e = exit(x, c);
                if (e > best) best = e;
            }
        return best;
    }

    std::pair<Coord, Coord> base_range(int x, const Coord& w) const {
        return {alpha(V.uL(x, w), w), alpha(V.uR(x, w), w)};
    }
};

struct Band {
    int cell;
    Coord a, b;  // original heights
    int src, dir;
};

}  // namespace

ApproxMap2 build_2approx_map(const PolygonalDomain& d, const OrientationSet& C, const Point& s) {
    auto v = validate(d);
    if (has_errors(v)) throw std::invalid_argument("invalid domain");
    if (!in_closed_free(d, s)) throw std::invalid_argument("source point outside the free space");
    for (auto& c : C.dirs) {
        Frame f(c);
        for (int r = 0; r < d.ring_count(); ++r)
            for (auto& p : d.ring(r))
                if (f.height(p) == f.height(s))
                    throw std::invalid_argument("source point lies on an orientation line through a vertex");
    }
    ApproxMap2 A;
    A.C = C;
    A.s = s;
    A.domain = d;
    A.H = init_cmap(d, Direction(1, 0), s);
    const Trapezoidation& T = A.H.T;
    const size_t nc = T.cells.size();
    std::vector<View> views = {View{T, 1}, View{T, -1}};
    std::vector<std::vector<int>> order(2);
    for (int f = 0; f < 2; ++f) {
        order[f].resize(nc);
        for (size_t i = 0; i < nc; ++i) order[f][i] = static_cast<int>(i);
        std::stable_sort(order[f].begin(), order[f].end(),
                         [&](int a, int b) { return views[f].lo(a) < views[f].lo(b); });
    }
    int quiet = 0;
    for (int L = 2; quiet < 2; ++L) {
        // sources: s for L = 2, otherwise the label L-2 pieces
        std::vector<std::vector<int>> src(nc);
        bool have = L == 2;
        if (L > 2)
            for (size_t x = 0; x < nc; ++x)
                for (int id : A.H.cell_pieces[x])
                    if (A.H.pieces[id].label == L - 2) {
                        src[x].push_back(id);
                        have = true;
                    }
        if (!have) {
            ++quiet;
            continue;
        }
        std::vector<Band> bands;
        for (size_t ci = 0; ci < C.dirs.size(); ++ci) {
            const Direction& c = C.dirs[ci];
            if (c.dy == 0) continue;
            Coord sigma = Coord(c.dx) / Coord(c.dy);
            for (int f = 0; f < 2; ++f) {
                const View& V = views[f];
                Sweeper S{V, sigma};
                std::vector<std::vector<Ray>> in(nc);
                for (int x : order[f]) {
                    struct Start {
                        Ray r;
                        Coord h0;
                    };
                    std::vector<Start> st;
                    for (auto& r : in[x]) st.push_back({r, V.lo(x)});
                    if (L == 2 && x == A.H.seed_cell) {
                        Coord w = V.to_w(s.y), u = V.to_w(s.x);
                        Coord al = S.alpha(u, w);
                        st.push_back({{al, al, -1, true}, w});
                    }
                    for (int id : src[x]) {
                        const Piece& p = A.H.pieces[id];
                        Coord a = V.to_w(p.lo), b = V.to_w(p.hi);
                        if (b < a) std::swap(a, b);
                        auto [r0, r1] = S.base_range(x, a);
                        auto [r2, r3] = S.base_range(x, b);
                        Coord lo = std::min({r0, r1, r2, r3}), hi = std::max({r0, r1, r2, r3});
                        st.push_back({{lo, hi, id}, a});
                    }
                    if (st.empty()) continue;
                    Coord H = V.hi(x);
                    auto [tlo, thi] = S.base_range(x, H);
                    for (auto& e : st) {
                        Coord top = S.max_exit(x, e.r.lo, e.r.hi);
                        if (e.h0 < top) {
                            Coord a = V.to_w(e.h0), b = V.to_w(top);
                            if (b < a) std::swap(a, b);
                            bands.push_back({x, a, b, e.r.src, static_cast<int>(ci)});
                        }
                        Coord lo = std::max(e.r.lo, tlo), hi = std::min(e.r.hi, thi);
                        if (hi < lo || (lo == hi && !e.r.point)) continue;
                        for (int y : V.up(x)) {
                            auto [ylo, yhi] = S.base_range(y, H);
                            Coord a = std::max(lo, ylo), b = std::min(hi, yhi);
                            if (b < a || (a == b && !e.r.point)) continue;
                            in[y].push_back({a, b, e.r.src, e.r.point});
                        }
                    }
                }
            }
        }
        bool any = false;
        for (auto& b : bands) any |= apply_light(A.H, b.cell, b.a, b.b, L, b.dir, b.src, LightMode::None);
        if (any) {
            quiet = 0;
            A.steps = L;
        } else {
            ++quiet;
        }
    }
    A.pred.resize(A.H.pieces.size());
    for (size_t i = 0; i < A.H.pieces.size(); ++i) {
        const Piece& p = A.H.pieces[i];
        if (p.label >= 2) A.pred[i] = {p.src_piece, p.src_map};
    }
    return A;
}


namespace {

// Parameter range of the line p + t*dir inside a convex polygon (or segment).
std::optional<std::pair<Coord, Coord>> line_clip(const std::vector<Point>& poly, const Point& p, const Point& dir) {
    std::optional<std::pair<Coord, Coord>> r;
    auto add = [&](const Coord& t) {
        if (!r)
            r = std::make_pair(t, t);
        else
            r = std::make_pair(std::min(r->first, t), std::max(r->second, t));
    };
    Point nrm(Coord(-dir.y), dir.x);
    Coord dd = dot(dir, dir);
    for (size_t i = 0; i < poly.size(); ++i) {
        const Point &a = poly[i], &b = poly[(i + 1) % poly.size()];
        Coord sa = dot(a - p, nrm), sb = dot(b - p, nrm);
        if (sgn(sa) == 0) add(dot(a - p, dir) / dd);
        if (sgn(sb) == 0) add(dot(b - p, dir) / dd);
        if ((sgn(sa) < 0 && sgn(sb) > 0) || (sgn(sa) > 0 && sgn(sb) < 0)) {
            Point x = a + (b - a) * (sa / (sa - sb));
            add(dot(x - p, dir) / dd);
        }
    }
    return r;
}

// Horizontal chord of cell x at height w.
std::pair<Point, Point> chord(const CMap& H, int x, const Coord& w) { return {Point(H.T.uL(x, w), w), Point(H.T.uR(x, w), w)}; }

}  // namespace

namespace {

struct LastLink {
    int label = kDark;
    std::optional<Point> via;  // start of a final non-horizontal link into q
    int via_piece = -1;
};

// Band label of q, or one more than a band seen from q along another orientation.
LastLink last_link(const PolygonalDomain& d, const ApproxMap2& A, const Point& q) {
    const CMap& H = A.H;
    LastLink best;
    best.label = query_map(H, q);
    for (const Direction& c : A.C.dirs) {
        if (c.dy == 0) continue;
        Point dir = c.vec();
        if (q != A.s && cross(A.s - q, dir) == 0 && segment_in_free(d, q, A.s)) {
            if (best.label == kDark || 1 < best.label) best = {1, A.s, -1};
            continue;
        }
        for (auto& ids : H.cell_pieces)
            for (int id : ids) {
                const Piece& P = H.pieces[id];
                if (P.label <= kDark || (best.label != kDark && P.label + 1 >= best.label)) continue;
                auto span = line_clip(H.piece_polygon(id), q, dir);
                if (!span || (sgn(span->first) <= 0 && sgn(span->second) >= 0)) continue;
                Point p = q + dir * (sgn(span->first) > 0 ? span->first : span->second);
                if (!segment_in_free(d, q, p)) continue;
                best = {P.label + 1, p, id};
            }
    }
    return best;
}

std::vector<Point> band_path(const PolygonalDomain& d, const ApproxMap2& A, const Point& q, int id = -1);

}  // namespace

int query_2approx(const ApproxMap2& A, const Point& q) {
    if (A.H.T.locate(q) < 0) throw std::invalid_argument("query point outside the free space");
    return last_link(A.domain, A, q).label;
}

std::vector<Point> extract_2approx_path(const PolygonalDomain& d, const ApproxMap2& A, const Point& q) {
    if (A.H.T.locate(q) < 0) throw std::invalid_argument("query point outside the free space");
    auto L = last_link(d, A, q);
    if (L.label == kDark) throw std::domain_error("query point not reached");
    if (!L.via) return band_path(d, A, q);
    std::vector<Point> out = *L.via == A.s ? std::vector<Point>{A.s} : band_path(d, A, *L.via, L.via_piece);
    if (out.size() >= 2 && cross(out.back() - out[out.size() - 2], q - out.back()) == 0 &&
        dot(out.back() - out[out.size() - 2], q - out.back()) > 0)
        out.back() = q;
    else
        out.push_back(q);
    return out;
}

namespace {

std::vector<Point> band_path(const PolygonalDomain& d, const ApproxMap2& A, const Point& q, int id) {
    const CMap& H = A.H;
    if (id < 0) {
        int x = H.T.locate(q);
        if (x < 0) throw std::invalid_argument("query point outside the free space");
        for (int pid : H.cell_pieces[x]) {
            const Piece& p = H.pieces[pid];
            if (p.lo <= q.y && q.y <= p.hi && p.label > 0 && (id < 0 || p.label < H.pieces[id].label)) id = pid;
        }
    }
    if (id < 0) throw std::domain_error("query point not reached");
    // Path ends: q, then back through the predecessors.
    std::vector<Point> rev = {q};
    Point cur = q;
    while (true) {
        const Piece& p = H.pieces[id];
        if (p.label == 1) {
            if (cur != A.s) rev.push_back(A.s);
            break;
        }
        const Direction& c = A.C.dirs[p.src_map];
        Point dir = c.vec();
        auto [cl, cr] = chord(H, p.cell, cur.y);
        // candidate crossing points along the chord of cur
        std::vector<Point> targets;
        if (p.src_piece < 0) {
            targets.push_back(A.s);
        } else {
            for (auto& v : H.piece_polygon(p.src_piece)) targets.push_back(v);
            for (int r = 0; r < d.ring_count(); ++r)
                for (auto& v : d.ring(r)) targets.push_back(v);
            targets.push_back(cl);
            targets.push_back(cr);
            targets.push_back(cur);
        }
        std::vector<Coord> al;
        for (auto& t : targets) al.push_back(t.x - t.y * Coord(c.dx) / Coord(c.dy));
        std::sort(al.begin(), al.end());
        al.erase(std::unique(al.begin(), al.end()), al.end());
        std::vector<Coord> cand = al;
        for (size_t i = 0; i + 1 < al.size(); ++i) cand.push_back((al[i] + al[i + 1]) / 2);
        Coord a0 = cl.x - cur.y * Coord(c.dx) / Coord(c.dy), a1 = cr.x - cur.y * Coord(c.dx) / Coord(c.dy);
        std::optional<std::pair<Point, Point>> hop;  // (r on cur's chord, p in the source piece)
        std::vector<Point> src_poly;
        if (p.src_piece >= 0) src_poly = H.piece_polygon(p.src_piece);
        for (auto& a : cand) {
            if (a < a0 || a1 < a) continue;
            Point r(a + cur.y * Coord(c.dx) / Coord(c.dy), cur.y);
            std::optional<Point> pp;
            if (p.src_piece < 0) {
                if (cross(A.s - r, dir) == 0) pp = A.s;
            } else {
                auto span = line_clip(src_poly, r, dir);
                if (!span) continue;
                Coord t = span->first <= 0 && 0 <= span->second ? Coord(0)
                          : (span->first > 0 ? span->first : span->second);
                pp = r + dir * t;
            }
            if (!pp || !segment_in_free(d, r, *pp)) continue;
            hop = std::make_pair(r, *pp);
            break;
        }
        if (!hop) throw std::logic_error("approximate path: predecessor link not found");
        if (hop->first != cur) rev.push_back(hop->first);
        if (hop->second != hop->first) rev.push_back(hop->second);
        cur = hop->second;
        if (p.src_piece < 0) break;
        id = p.src_piece;
    }
    std::reverse(rev.begin(), rev.end());
    // drop a repeated point and merge collinear consecutive links
    std::vector<Point> out;
    for (auto& p : rev) {
        if (!out.empty() && out.back() == p) continue;
        if (out.size() >= 2 && cross(out.back() - out[out.size() - 2], p - out.back()) == 0 &&
            dot(out.back() - out[out.size() - 2], p - out.back()) > 0)
            out.back() = p;
        else
            out.push_back(p);
    }
    return out;
}

}  // namespace

}  // namespace lp
