#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "linkpath/coriext.hpp"

namespace lp {

bool detect_problematic(const Trapezoidation& T, int cell, const OrientationSet& C) {
    const Trapezoid& t = T.cells[cell];
    Coord H = t.hi - t.lo;
    if (sgn(H) <= 0) return false;
    Coord a0 = T.uL(cell, t.lo), b0 = T.uR(cell, t.lo), a1 = T.uL(cell, t.hi), b1 = T.uR(cell, t.hi);
    for (auto& c : C.dirs) {
        Point v = T.frame.to(c.vec());
        if (sgn(v.y) == 0) continue;
        if (sgn(v.y) < 0) v = Point(-v.x, -v.y);
        // slope du/dw of v must lie between the two corner-to-corner slopes
        if ((a1 - b0) * v.y <= v.x * H && v.x * H <= (b1 - a0) * v.y) return false;
    }
    return true;
}

namespace {

Point neg(const Point& p) { return Point(-p.x, -p.y); }

std::optional<Point> side_at(const Point& a, const Point& b, const Coord& y) {
    if (a.y == b.y) return std::nullopt;
    Coord t = (y - a.y) / (b.y - a.y);
    return a + (b - a) * t;
}

ZigzagGeom make_geom(const Trapezoidation& T, int cell, const OrientationSet& C, int flip) {
    ZigzagGeom g;
    g.flip = flip;
    const Trapezoid& t = T.cells[cell];
    const TEdge& L = T.edges[t.left];
    const TEdge& R = T.edges[t.right];
    auto N = [&](const Point& p) { return flip > 0 ? p : neg(p); };
    const TEdge& S1 = flip > 0 ? L : R;
    const TEdge& S2 = flip > 0 ? R : L;
    g.a1 = N(S1.p);
    g.b1 = N(S1.q);
    g.a2 = N(S2.p);
    g.b2 = N(S2.q);
    auto down = [](Point d) { return sgn(d.y) > 0 ? neg(d) : d; };
    Point d1 = down(g.b1 - g.a1), d2 = down(g.b2 - g.a2);
    Point dlo = d1, dhi = d2;
    if (sgn(cross(d1, d2)) < 0) std::swap(dlo, dhi);
    std::optional<Point> best12, best21;
    for (size_t i = 0; i < C.dirs.size(); ++i) {
        Point v = N(T.frame.to(C.dirs[i].vec()));
        std::vector<Point> reps;
        if (sgn(v.y) == 0)
            reps = {Point(abs(v.x), Coord(0)), Point(-abs(v.x), Coord(0))};
        else
            reps = {down(v)};
        for (auto& r : reps) {
            if (sgn(cross(dhi, r)) > 0 && (!best12 || sgn(cross(r, *best12)) > 0)) {
                best12 = r;
                g.c2 = static_cast<int>(i);
            }
            if (sgn(cross(r, dlo)) > 0 && (!best21 || sgn(cross(*best21, r)) > 0)) {
                best21 = r;
                g.c1 = static_cast<int>(i);
            }
        }
    }
    if (!best12 || !best21) throw std::logic_error("zigzag: no extreme orientation");
    g.e12 = *best12;
    g.e21 = *best21;
    return g;
}

bool reached(int side, const Point& P, const std::optional<Coord>& h1, const std::optional<Coord>& h2) {
    const auto& h = side == 1 ? h1 : h2;
    return h && P.y <= *h;
}

// Links needed after standing on `side` at P; nullopt if the bounce stalls or exceeds cap.
std::optional<int> bounce(const ZigzagGeom& g, int side, Point P, const std::optional<Coord>& h1,
                          const std::optional<Coord>& h2, int cap) {
    int K = 0;
    int stall = 0;
    while (!reached(side, P, h1, h2)) {
        if (K >= cap) return std::nullopt;
        const Point& dir = side == 1 ? g.e12 : g.e21;
        auto Q = side == 1 ? line_intersection(P, P + dir, g.a2, g.b2) : line_intersection(P, P + dir, g.a1, g.b1);
        if (!Q) return std::nullopt;
        stall = Q->y < P.y ? 0 : stall + 1;
        if (stall >= 2) return std::nullopt;
        P = *Q;
        side = 3 - side;
        ++K;
    }
    return K;
}

Coord qpow(Coord b, long e) {
    Coord r = 1;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// Smallest j >= 0 with t * R^j >= tau (R > 1, t > 0).
std::optional<long> first_power(const Coord& t, const Coord& R, const Coord& tau) {
    if (t >= tau) return 0L;
    if (R <= 1) return std::nullopt;
    long double est = std::log(to_double(tau) / to_double(t)) / std::log(to_double(R));
    long j = std::max(0L, static_cast<long>(std::floor(est)) - 1);
    while (j > 0 && t * qpow(R, j - 1) >= tau) --j;
    while (t * qpow(R, j) < tau) ++j;
    return j;
}

// Closed form for sides meeting at an apex above q (or parallel sides).
std::optional<int> closed_form(const ZigzagGeom& g, const Point& q, const std::optional<Coord>& h1,
                               const std::optional<Coord>& h2) {
    auto A = line_intersection(g.a1, g.b1, g.a2, g.b2);
    auto down = [](Point d) { return sgn(d.y) > 0 ? neg(d) : d; };
    Point u1 = down(g.b1 - g.a1), u2 = down(g.b2 - g.a2);
    std::optional<int> best;
    auto take = [&](std::optional<long> j, int base) {
        if (!j) return;
        long K = 2 * *j + base;
        if (K > (1L << 30)) return;
        if (!best || K < *best) best = static_cast<int>(K);
    };
    if (!A) {
        // parallel sides: every bounce descends by a fixed amount
        auto P1 = side_at(g.a1, g.b1, q.y), P2 = side_at(g.a2, g.b2, q.y);
        if (!P1 || !P2) return std::nullopt;
        auto drop = [&](const Point& P, int side) -> Coord {
            const Point& dir = side == 1 ? g.e12 : g.e21;
            auto Q = side == 1 ? line_intersection(P, P + dir, g.a2, g.b2) : line_intersection(P, P + dir, g.a1, g.b1);
            return Coord(P.y - Q->y);
        };
        Coord d12 = drop(*P1, 1), d21 = drop(*P2, 2), D = d12 + d21;
        auto steps = [&](const Coord& y, const std::optional<Coord>& h) -> std::optional<long> {
            if (!h) return std::nullopt;
            if (y <= *h) return 0L;
            if (sgn(D) <= 0) return std::nullopt;
            Coord r = (y - *h) / D;
            mpz_class c = r.get_num() / r.get_den();
            if (Coord(c) < r) c += 1;
            return c.get_si();
        };
        // left first: S1 at q.y, S2 at q.y - d12, ...
        take(steps(q.y, h1), 1);
        take(steps(Coord(q.y - d12), h2), 2);
        take(steps(q.y, h2), 1);
        take(steps(Coord(q.y - d21), h1), 2);
        return best;
    }
    if (!(A->y > q.y)) return std::nullopt;
    auto t_at = [&](const Point& u, const Coord& y) -> Coord { return (y - A->y) / u.y; };
    auto rho = [&](int side) -> Coord {
        const Point& u = side == 1 ? u1 : u2;
        const Point& v = side == 1 ? u2 : u1;
        Point P = *A + u;
        const Point& dir = side == 1 ? g.e12 : g.e21;
        auto Q = line_intersection(P, P + dir, *A, *A + v);
        return Coord((Q->y - A->y) / v.y);
    };
    Coord r12 = rho(1), r21 = rho(2), R = r12 * r21;
    auto tau = [&](const Point& u, const std::optional<Coord>& h) -> std::optional<Coord> {
        if (!h) return std::nullopt;
        return t_at(u, *h);
    };
    auto tau1 = tau(u1, h1), tau2 = tau(u2, h2);
    auto powers = [&](const Coord& t, const std::optional<Coord>& tt, int base) {
        if (!tt) return;
        if (sgn(*tt) <= 0) {
            take(0L, base);
            return;
        }
        take(first_power(t, R, *tt), base);
    };
    Coord t1 = t_at(u1, q.y), t2 = t_at(u2, q.y);
    // left first: S1 at t1, S2 at t1 r12, S1 at t1 R, ...
    powers(t1, tau1, 1);
    powers(Coord(t1 * r12), tau2, 2);
    powers(t2, tau2, 1);
    powers(Coord(t2 * r21), tau1, 2);
    return best;
}

}  // namespace

std::optional<int> zigzag_links(const ZigzagGeom& g, const Point& q, const std::optional<Coord>& h1,
                                const std::optional<Coord>& h2, ZigzagMethod method, int cap) {
    if (!h1 && !h2) return std::nullopt;
    auto A = line_intersection(g.a1, g.b1, g.a2, g.b2);
    bool formula = !A || A->y > q.y;
    // sides meeting below q: bounces creep toward the apex and never pass it
    if (!formula && !(h1 && *h1 > A->y) && !(h2 && *h2 > A->y)) return std::nullopt;
    if (formula) {
        auto est = closed_form(g, q, h1, h2);
        if (method == ZigzagMethod::ClosedForm) return est;
        if (est) cap = std::min(cap, *est + 8);
    }
    std::optional<int> best;
    for (int side : {1, 2}) {
        auto P = side == 1 ? side_at(g.a1, g.b1, q.y) : side_at(g.a2, g.b2, q.y);
        if (!P) continue;
        auto r = bounce(g, side, *P, h1, h2, cap);
        if (r && (!best || 1 + *r < *best)) best = 1 + *r;
    }
    return best;
}

bool ZigzagCell::contains(const CMap& m, const Point& q) const {
    Point f = m.T.frame.to(q);
    if (!m.T.contains_frame(cell, f)) return false;
    Coord w = geom.flip > 0 ? f.y : Coord(-f.y);
    return cut_lo <= w && w <= cut_hi;
}

std::optional<int> ZigzagCell::label(const CMap& m, const Point& q) const {
    Point f = m.T.frame.to(q);
    auto K = zigzag_links(geom, geom.flip > 0 ? f : neg(f), h1n, h2n);
    if (!K) return std::nullopt;
    return base_label + 2 + *K;
}

namespace {

struct Problem {
    int map = -1, cell = -1;
    bool triangle = false;
    int k = -1;  // first lit step
    int flip = 1;
    bool frozen = false, finished = false;
    int zz = -1;  // index into zigzags
    std::optional<Coord> b1, b2;  // current band thresholds on S1 and S2
    std::optional<Coord> reach;
};

struct Builder {
    ArbitraryLinkMap& A;
    const OrientationSet& C;
    std::vector<Problem> probs;

    Builder(ArbitraryLinkMap& a, const OrientationSet& c) : A(a), C(c) {}

    Point norm(int flip, const Point& f) const { return flip > 0 ? f : neg(f); }

    bool any_dark(const CMap& m, int cell) const {
        for (int id : m.cell_pieces[cell])
            if (m.pieces[id].label == kDark && !m.pieces[id].degenerate()) return true;
        return false;
    }

    Segment side_segment(const CMap& m, int cell, int which) const {
        const Trapezoid& t = m.T.cells[cell];
        const TEdge& e = m.T.edges[which == 0 ? t.left : t.right];
        return {m.T.frame.from({e.u_at(t.lo), t.lo}), m.T.frame.from({e.u_at(t.hi), t.hi})};
    }

    // Highest normalised height reached on side S_j by label-`lab` pieces of the extreme maps.
    std::optional<Coord> anchor(const Problem& P, const ZigzagGeom& g, int j, int lab, Point* where) const {
        const CMap& m = A.L.maps[P.map];
        int which = (j == 1) == (g.flip > 0) ? 0 : 1;
        Segment S = side_segment(m, P.cell, which);
        std::optional<Coord> best;
        for (int e : {g.c1, g.c2}) {
            const CMap& me = A.L.maps[e];
            for (size_t x = 0; x < me.cell_pieces.size(); ++x)
                for (int id : me.cell_pieces[x]) {
                    const Piece& p = me.pieces[id];
                    if (p.label != lab) continue;
                    for (auto& y : convex_intersection({S.a, S.b}, me.piece_polygon(id))) {
                        Coord w = norm(g.flip, m.T.frame.to(y)).y;
                        if (!best || w > *best) {
                            best = w;
                            if (where) *where = y;
                        }
                    }
                }
        }
        return best;
    }

    // Height on S_j from which one link reaches S_{3-j} at height y.
    std::optional<Coord> back(const ZigzagGeom& g, int j, const std::optional<Coord>& y) const {
        if (!y) return std::nullopt;
        const Point &a = j == 1 ? g.a2 : g.a1, &b = j == 1 ? g.b2 : g.b1;
        auto P = side_at(a, b, *y);
        if (!P) return std::nullopt;
        const Point& dir = j == 1 ? g.e12 : g.e21;
        auto Q = j == 1 ? line_intersection(*P, *P - dir, g.a1, g.b1) : line_intersection(*P, *P - dir, g.a2, g.b2);
        if (!Q) return std::nullopt;
        return Q->y;
    }

    void first_light(Problem& P, const CMap& m) {
        const Trapezoid& t = m.T.cells[P.cell];
        int first = -1;
        const Piece* fp = nullptr;
        for (int id : m.cell_pieces[P.cell]) {
            const Piece& p = m.pieces[id];
            if (p.label > 0 && (first < 0 || p.label < first)) {
                first = p.label;
                fp = &p;
            }
        }
        if (first < 0) return;
        P.k = first;
        if (P.triangle)
            P.flip = m.T.uL(P.cell, t.hi) == m.T.uR(P.cell, t.hi) ? 1 : -1;
        else
            P.flip = (fp->hi == t.hi && fp->lo != t.lo) ? -1 : 1;
    }

    void freeze(Problem& P, CMap& m) {
        const Trapezoid& t = m.T.cells[P.cell];
        ZigzagCell z;
        z.map = P.map;
        z.cell = P.cell;
        z.base_label = P.k;
        z.geom = make_geom(m.T, P.cell, C, P.flip);
        Coord top = P.flip > 0 ? t.hi : Coord(-t.lo);
        Coord cut = P.flip > 0 ? t.lo : Coord(-t.hi);
        for (int id : m.cell_pieces[P.cell]) {
            const Piece& p = m.pieces[id];
            if (p.label <= 0) continue;
            Coord hi = P.flip > 0 ? p.hi : Coord(-p.lo);
            if (hi > cut) cut = hi;
        }
        z.cut_lo = cut;
        z.cut_hi = top;
        z.h1n = anchor(P, z.geom, 1, P.k + 2, &z.h1);
        z.h2n = anchor(P, z.geom, 2, P.k + 2, &z.h2);
        std::vector<Point> poly;
        for (auto& f : m.T.frame_polygon(P.cell)) poly.push_back(norm(P.flip, f));
        poly = clip_halfplane(poly, Point(Coord(1), cut), Point(Coord(0), cut));
        for (auto& f : poly) z.region.push_back(m.T.frame.from(norm(P.flip, f)));
        if (P.triangle) {
            for (int id : m.cell_pieces[P.cell]) {
                Piece& p = m.pieces[id];
                Coord lo = P.flip > 0 ? p.lo : Coord(-p.hi);
                if (p.label == kDark && lo >= cut) p.label = kZigzag;
            }
            P.finished = true;
        } else {
            z.banded = true;
            P.b1 = z.h1n;
            P.b2 = z.h2n;
        }
        P.zz = static_cast<int>(A.zigzags.size());
        A.zigzags.push_back(std::move(z));
    }

    // Light the next zigzag band of a cell with two proper bases; false once it stops growing.
    bool band(Problem& P, CMap& m, int kk) {
        ZigzagCell& z = A.zigzags[P.zz];
        if (kk > z.base_label + 3) {
            auto n1 = back(z.geom, 1, P.b2), n2 = back(z.geom, 2, P.b1);
            P.b1 = n1;
            P.b2 = n2;
        }
        std::optional<Coord> reach;
        for (auto* b : {&P.b1, &P.b2})
            if (*b && (!reach || **b > *reach)) reach = **b;
        if (!reach || (P.reach && *reach <= *P.reach)) return false;
        P.reach = reach;
        if (*reach <= z.cut_lo) return true;
        Coord hi = std::min(*reach, z.cut_hi);
        z.band_tops.push_back(hi);
        Coord a = P.flip > 0 ? z.cut_lo : Coord(-hi), b = P.flip > 0 ? hi : Coord(-z.cut_lo);
        apply_light(m, P.cell, a, b, kk, -2, -1, LightMode::None);
        return hi < z.cut_hi && any_dark(m, P.cell);
    }

    bool step(int kk, CoriLinkMap& L) {
        bool pending = false;
        for (auto& P : probs) {
            if (P.finished) continue;
            CMap& m = L.maps[P.map];
            if (P.k < 0) first_light(P, m);
            if (P.k < 0) continue;
            if (!P.frozen && kk >= P.k + 3) {
                P.frozen = true;
                if (!any_dark(m, P.cell)) {
                    P.finished = true;
                    continue;
                }
                freeze(P, m);
            }
            if (P.frozen && !P.finished && !band(P, m, kk)) P.finished = true;
            if (!P.finished) pending = true;
        }
        return pending;
    }
};

}  // namespace

ArbitraryLinkMap build_arbitrary_linkmap(const PolygonalDomain& d, const OrientationSet& C, const Point& s,
                                         const EngineOptions& opt) {
    auto v = validate(d);
    if (has_errors(v)) throw std::invalid_argument("invalid domain");
    ArbitraryLinkMap A;
    A.L = init_linkmap(d, C, s);
    Builder B(A, C);
    for (size_t c = 0; c < A.L.maps.size(); ++c) {
        const auto& T = A.L.maps[c].T;
        for (size_t x = 0; x < T.cells.size(); ++x)
            if (detect_problematic(T, static_cast<int>(x), C)) {
                const Trapezoid& t = T.cells[x];
                bool tri = T.uL(static_cast<int>(x), t.hi) == T.uR(static_cast<int>(x), t.hi) ||
                           T.uL(static_cast<int>(x), t.lo) == T.uR(static_cast<int>(x), t.lo);
                Problem pr;
                pr.map = static_cast<int>(c);
                pr.cell = static_cast<int>(x);
                pr.triangle = tri;
                B.probs.push_back(pr);
                A.problematic.push_back({static_cast<int>(c), static_cast<int>(x)});
            }
    }
    if (B.probs.empty()) {
        run_linkmap_engine(A.L, opt);
    } else {
        run_linkmap_engine(A.L, opt, [&](int k, CoriLinkMap& L) { return B.step(k, L); });
    }
    // non-problematic cells should settle within a few consecutive steps
    std::vector<std::vector<char>> prob(A.L.maps.size());
    for (size_t c = 0; c < A.L.maps.size(); ++c) prob[c].assign(A.L.maps[c].T.cells.size(), 0);
    for (auto [c, x] : A.problematic) prob[c][x] = 1;
    for (size_t c = 0; c < A.L.maps.size(); ++c) {
        const CMap& m = A.L.maps[c];
        for (size_t x = 0; x < m.cell_pieces.size(); ++x) {
            if (prob[c][x]) continue;
            int lo = -1, hi = -1;
            for (int id : m.cell_pieces[x]) {
                int l = m.pieces[id].label;
                if (l <= 0 || m.pieces[id].degenerate()) continue;
                lo = lo < 0 ? l : std::min(lo, l);
                hi = std::max(hi, l);
            }
            if (lo > 0 && hi - lo > 4) ++A.straddle_assert_violations;
        }
    }
    return A;
}

int query_arbitrary(const ArbitraryLinkMap& A, const Point& q) {
    int best = query_cori(A.L, q);
    for (auto& z : A.zigzags) {
        const CMap& m = A.L.maps[z.map];
        if (z.banded || !z.contains(m, q)) continue;
        auto v = z.label(m, q);
        if (v && (best == kDark || *v < best)) best = *v;
    }
    return best;
}

}  // namespace lp
