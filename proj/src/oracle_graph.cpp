#include <algorithm>
#include <stdexcept>

#include "linkpath/oracle.hpp"

namespace lp {

namespace {

struct BBox {
    Coord x0, y0, x1, y1;
};

BBox bbox(const std::vector<Point>& v) {
    BBox b{v[0].x, v[0].y, v[0].x, v[0].y};
    for (auto& p : v) {
        if (p.x < b.x0) b.x0 = p.x;
        if (p.y < b.y0) b.y0 = p.y;
        if (p.x > b.x1) b.x1 = p.x;
        if (p.y > b.y1) b.y1 = p.y;
    }
    return b;
}

bool meets(const BBox& a, const BBox& b) { return a.x0 <= b.x1 && b.x0 <= a.x1 && a.y0 <= b.y1 && b.y0 <= a.y1; }

bool segs_meet(const Point& a, const Point& b, const Point& c, const Point& d) {
    return segments_intersect({a, b}, {c, d}).kind != Intersection::Empty;
}

// Both bases of X meet both bases of P (original coordinates).
bool straddles(const CMap& mx, int x, const CMap& mp, int p) {
    const Piece& X = mx.pieces[x];
    const Piece& P = mp.pieces[p];
    auto base = [](const CMap& m, const Piece& q, const Coord& w) {
        return std::make_pair(m.T.frame.from({m.T.uL(q.cell, w), w}), m.T.frame.from({m.T.uR(q.cell, w), w}));
    };
    auto x1 = base(mx, X, X.lo), x2 = base(mx, X, X.hi);
    auto p1 = base(mp, P, P.lo), p2 = base(mp, P, P.hi);
    for (auto* xb : {&x1, &x2})
        for (auto* pb : {&p1, &p2})
            if (!segs_meet(xb->first, xb->second, pb->first, pb->second)) return false;
    return true;
}

// A side of X and a side of P lie on one boundary edge and overlap with positive length.
bool flush_pair(const CMap& mx, int x, const CMap& mp, int p) {
    const Piece& X = mx.pieces[x];
    const Piece& P = mp.pieces[p];
    const Trapezoid& TX = mx.T.cells[X.cell];
    const Trapezoid& TP = mp.T.cells[P.cell];
    for (int ex : {TX.left, TX.right})
        for (int ep : {TP.left, TP.right}) {
            if (ex != ep) continue;
            const TEdge& a = mx.T.edges[ex];
            const TEdge& b = mp.T.edges[ep];
            Point xa = mx.T.frame.from({a.u_at(X.lo), X.lo}), xb = mx.T.frame.from({a.u_at(X.hi), X.hi});
            Point pa = mp.T.frame.from({b.u_at(P.lo), P.lo}), pb = mp.T.frame.from({b.u_at(P.hi), P.hi});
            auto r = segments_intersect({xa, xb}, {pa, pb});
            if (r.kind == Intersection::Overlap && r.p != r.q) return true;
        }
    return false;
}

}  // namespace

CoriLinkMap brute_graph_map(const PolygonalDomain& d, const OrientationSet& C, const Point& s,
                            const std::function<bool(int, int)>& allowed, DichotomyStats* dich, size_t max_vertices,
                            int max_steps) {
    if (d.n() > max_vertices) throw std::invalid_argument("instance too large for the brute-force oracle");
    CoriLinkMap L = init_linkmap(d, C, s);
    const int nc = static_cast<int>(L.maps.size());
    for (int k = 2; k <= max_steps; ++k) {
        struct Src {
            int map, id;
            std::vector<Point> poly;
            BBox box;
        };
        std::vector<Src> src;
        for (int c = 0; c < nc; ++c)
            for (auto& order : L.maps[c].cell_pieces)
                for (int id : order)
                    if (L.maps[c].pieces[id].label == k - 1) {
                        auto poly = L.maps[c].piece_polygon(id);
                        src.push_back({c, id, poly, bbox(poly)});
                    }
        if (src.empty()) break;
        struct Hit {
            int map, cell;
            Coord a, b;
            int sm, sp;
        };
        std::vector<Hit> hits;
        for (int c = 0; c < nc; ++c) {
            CMap& m = L.maps[c];
            for (size_t cell = 0; cell < m.cell_pieces.size(); ++cell)
                for (int id : m.cell_pieces[cell]) {
                    const Piece& X = m.pieces[id];
                    if (X.label != kDark || X.degenerate()) continue;
                    auto xf = m.piece_frame_polygon(id);
                    BBox xb = bbox(m.piece_polygon(id));
                    for (auto& S : src) {
                        if (S.map == c) continue;
                        if (allowed && !allowed(c, S.map)) continue;
                        if (!meets(xb, S.box)) continue;
                        std::vector<Point> pf;
                        for (auto& p : S.poly) pf.push_back(m.T.frame.to(p));
                        auto pr = projected_overlap(pf, xf);
                        if (!pr) continue;
                        hits.push_back({c, X.cell, pr->first, pr->second, S.map, S.id});
                        if (dich && k >= 3) {
                            bool f = flush_pair(m, id, L.maps[S.map], S.id);
                            bool st = straddles(m, id, L.maps[S.map], S.id);
                            ++dich->pairs;
                            if (f) ++dich->flush;
                            if (st) ++dich->straddle;
                            if (f && st) ++dich->both;
                            if (!f && !st) ++dich->neither;
                        }
                    }
                }
        }
        bool any = false;
        for (auto& h : hits)
            any |= apply_light(L.maps[h.map], h.cell, h.a, h.b, k, h.sm, h.sp, LightMode::None);
        if (!any) break;
        L.stats.steps = k;
    }
    return L;
}

LabelRuns brute_graph_labels(const PolygonalDomain& d, const OrientationSet& C, const Point& s) {
    return label_runs(brute_graph_map(d, C, s));
}

}  // namespace lp
