#include "linkpath/corilink.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "linkpath/sweep.hpp"

namespace lp {

namespace {

std::vector<Point> dedupe_ring(std::vector<Point> v) {
    std::vector<Point> out;
    for (auto& p : v)
        if (out.empty() || out.back() != p) out.push_back(std::move(p));
    while (out.size() > 1 && out.front() == out.back()) out.pop_back();
    return out;
}

std::vector<Point> to_frame(const Frame& f, const std::vector<Point>& pts) {
    std::vector<Point> out;
    out.reserve(pts.size());
    for (auto& p : pts) out.push_back(f.to(p));
    return out;
}

struct Box {
    double x0, y0, x1, y1;
    bool meets(const Box& o) const { return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1; }
};

Box box_of(const std::vector<Point>& pts) {
    Box b{1e300, 1e300, -1e300, -1e300};
    for (auto& p : pts) {
        double x = to_double(p.x), y = to_double(p.y);
        b.x0 = std::min(b.x0, x);
        b.y0 = std::min(b.y0, y);
        b.x1 = std::max(b.x1, x);
        b.y1 = std::max(b.y1, y);
    }
    const double eps = 1e-9 * (1 + std::max({std::abs(b.x0), std::abs(b.x1), std::abs(b.y0), std::abs(b.y1)}));
    b.x0 -= eps;
    b.y0 -= eps;
    b.x1 += eps;
    b.y1 += eps;
    return b;
}

// Non-degenerate piece of `cell` containing height w; with upper = true the one above at a boundary.
int piece_at(const CMap& m, int cell, const Coord& w, bool upper) {
    int best = -1;
    for (int id : m.cell_pieces[cell]) {
        const Piece& p = m.pieces[id];
        if (p.degenerate()) continue;
        if (upper ? (p.lo <= w && w < p.hi) : (p.lo < w && w <= p.hi)) return id;
        if (p.lo <= w && w <= p.hi) best = id;
    }
    return best;
}

}  // namespace

std::vector<Point> CMap::piece_frame_polygon(int id) const {
    const Piece& p = pieces[id];
    return dedupe_ring({{T.uL(p.cell, p.lo), p.lo}, {T.uR(p.cell, p.lo), p.lo}, {T.uR(p.cell, p.hi), p.hi},
                        {T.uL(p.cell, p.hi), p.hi}});
}

std::vector<Point> CMap::piece_polygon(int id) const {
    std::vector<Point> out;
    for (auto& f : piece_frame_polygon(id)) out.push_back(T.frame.from(f));
    return out;
}

std::vector<std::tuple<Coord, Coord, int>> CMap::runs(int cell) const {
    std::vector<std::tuple<Coord, Coord, int>> out;
    for (int id : cell_pieces[cell]) {
        const Piece& p = pieces[id];
        if (!out.empty() && std::get<2>(out.back()) == p.label && std::get<1>(out.back()) == p.lo) {
            std::get<1>(out.back()) = p.hi;
            continue;
        }
        out.emplace_back(p.lo, p.hi, p.label);
    }
    return out;
}

std::optional<std::pair<Coord, Coord>> projected_overlap(const std::vector<Point>& a, const std::vector<Point>& b) {
    if (b.size() < 2) return std::nullopt;
    auto r = convex_intersection(a, b);
    if (r.empty()) return std::nullopt;
    Coord lo = r[0].y, hi = r[0].y;
    for (auto& p : r) {
        if (p.y < lo) lo = p.y;
        if (p.y > hi) hi = p.y;
    }
    if (!(lo < hi)) return std::nullopt;
    return std::make_pair(lo, hi);
}

bool apply_light(CMap& m, int cell, const Coord& a, const Coord& b, int label, int src_map, int src_piece,
                 LightMode mode) {
    if (!(a < b)) return false;
    auto& order = m.cell_pieces[cell];
    std::vector<int> next;
    bool changed = false;
    for (int id : order) {
        Piece p = m.pieces[id];
        if (p.label != kDark || p.degenerate() || !(p.lo < b && a < p.hi)) {
            next.push_back(id);
            continue;
        }
        changed = true;
        Coord lo = std::max(p.lo, a), hi = std::min(p.hi, b);
        auto add = [&](const Coord& x, const Coord& y, bool lit) {
            Piece q;
            q.cell = cell;
            q.lo = x;
            q.hi = y;
            if (lit) {
                q.label = label;
                q.src_map = src_map;
                q.src_piece = src_piece;
                q.mode = mode;
            }
            next.push_back(static_cast<int>(m.pieces.size()));
            m.pieces.push_back(std::move(q));
        };
        if (p.lo < lo) add(p.lo, lo, false);
        add(lo, hi, true);
        if (hi < p.hi) add(hi, p.hi, false);
    }
    if (changed) order.swap(next);
    return changed;
}

CMap init_cmap(const PolygonalDomain& d, const Direction& c, const Point& s) {
    CMap m;
    m.c = c;
    m.T = build_trapezoidation(d, c);
    m.seed_height = m.T.frame.height(s);
    if (std::binary_search(m.T.heights.begin(), m.T.heights.end(), m.seed_height))
        throw std::invalid_argument("source point lies on an orientation line through a vertex");
    m.seed_cell = m.T.locate(s);
    m.cell_pieces.resize(m.T.cells.size());
    for (auto& t : m.T.cells) {
        auto add = [&](const Coord& lo, const Coord& hi, int label) {
            Piece p;
            p.cell = t.id;
            p.lo = lo;
            p.hi = hi;
            p.label = label;
            if (label == 1) p.mode = LightMode::Seed;
            m.cell_pieces[t.id].push_back(static_cast<int>(m.pieces.size()));
            m.pieces.push_back(std::move(p));
        };
        if (t.id == m.seed_cell) {
            add(t.lo, m.seed_height, kDark);
            add(m.seed_height, m.seed_height, 1);
            add(m.seed_height, t.hi, kDark);
        } else {
            add(t.lo, t.hi, kDark);
        }
    }
    return m;
}

CoriLinkMap init_linkmap(const PolygonalDomain& d, const OrientationSet& C, const Point& s) {
    if (!in_closed_free(d, s)) throw std::invalid_argument("source point outside the free space");
    CoriLinkMap L;
    L.C = C;
    L.s = s;
    for (auto& c : C.dirs) L.maps.push_back(init_cmap(d, c, s));
    return L;
}

namespace {

struct Light {
    int map, cell;
    Coord a, b;
    int src_map, src_piece;
    LightMode mode;
};

struct Engine {
    CoriLinkMap& L;
    const EngineOptions& opt;
    StepHook hook;
    std::vector<std::vector<Box>> cell_box;  // per map, per cell (original coordinates)
    struct Record {
        int map, cell;
        Coord lo, hi;
        int step;
    };
    std::vector<Record> records;
    std::map<std::pair<int, int>, std::set<int>> steps_of_cell;
    std::vector<std::pair<int, int>> partial_prev;  // (map, cell) partially lit in the previous step

    Engine(CoriLinkMap& l, const EngineOptions& o) : L(l), opt(o) {
        for (auto& m : L.maps) {
            std::vector<Box> b;
            for (size_t i = 0; i < m.T.cells.size(); ++i) b.push_back(box_of(m.T.polygon(static_cast<int>(i))));
            cell_box.push_back(std::move(b));
        }
    }

    size_t C() const { return L.maps.size(); }

    void record(int map, int piece, int step) {
        if (!opt.instrument) return;
        const Piece& p = L.maps[map].pieces[piece];
        records.push_back({map, p.cell, p.lo, p.hi, step});
        steps_of_cell[{map, p.cell}].insert(step);
    }

    std::vector<int> upper_pieces(const CMap& m, int id) const {
        const Piece& p = m.pieces[id];
        const auto& order = m.cell_pieces[p.cell];
        auto it = std::find(order.begin(), order.end(), id);
        for (++it; it != order.end(); ++it)
            if (!m.pieces[*it].degenerate()) return {*it};
        std::vector<int> out;
        for (int nb : m.T.cells[p.cell].upper_nb)
            for (int q : m.cell_pieces[nb])
                if (!m.pieces[q].degenerate()) {
                    out.push_back(q);
                    break;
                }
        return out;
    }

    bool has_dark(const CMap& m, int cell, const Coord& a, const Coord& b) const {
        for (int id : m.cell_pieces[cell]) {
            const Piece& p = m.pieces[id];
            if (p.label == kDark && !p.degenerate() && p.lo < b && a < p.hi) return true;
        }
        return false;
    }

    bool apply_all(int k, std::vector<Light>& lights) {
        bool any = false;
        for (auto& l : lights)
            any |= apply_light(L.maps[l.map], l.cell, l.a, l.b, k, l.src_map, l.src_piece, l.mode);
        return any;
    }

    // Seed step: the chords through s of every other orientation light label 2.
    void seed_step(std::vector<Light>& out) {
        for (size_t cs = 0; cs < C(); ++cs) {
            const CMap& src = L.maps[cs];
            int chord = -1;
            for (int id : src.cell_pieces[src.seed_cell])
                if (src.pieces[id].label == 1) chord = id;
            auto seg = src.piece_polygon(chord);
            Box sb = box_of(seg);
            for (size_t c = 0; c < C(); ++c) {
                if (c == cs) continue;
                const CMap& m = L.maps[c];
                auto fseg = to_frame(m.T.frame, seg);
                for (size_t x = 0; x < m.T.cells.size(); ++x) {
                    if (!cell_box[c][x].meets(sb)) continue;
                    auto pr = projected_overlap(fseg, m.T.frame_polygon(static_cast<int>(x)));
                    if (!pr) continue;
                    out.push_back({static_cast<int>(c), static_cast<int>(x), pr->first, pr->second,
                                   static_cast<int>(cs), chord, LightMode::Seed});
                }
            }
        }
    }

    void flush_phase(int k, const std::vector<std::vector<int>>& sources, std::vector<Light>& out) {
        for (size_t cs = 0; cs < C(); ++cs) {
            const CMap& sm = L.maps[cs];
            for (int pid : sources[cs]) {
                const Piece& P = sm.pieces[pid];
                const Trapezoid& Y = sm.T.cells[P.cell];
                std::vector<Point> Ppoly;
                for (int e : {Y.left, Y.right}) {
                    const TEdge& se = sm.T.edges[e];
                    Point a = sm.T.frame.from({se.u_at(P.lo), P.lo});
                    Point b = sm.T.frame.from({se.u_at(P.hi), P.hi});
                    for (size_t c = 0; c < C(); ++c) {
                        if (c == cs) continue;
                        const CMap& m = L.maps[c];
                        if (m.T.edges[e].horizontal) continue;
                        Coord ha = m.T.frame.height(a), hb = m.T.frame.height(b);
                        if (hb < ha) std::swap(ha, hb);
                        const auto& sup = m.T.support[e];
                        size_t lo = 0, hi = sup.size();
                        while (lo < hi) {
                            size_t mid = (lo + hi) / 2;
                            if (m.T.cells[sup[mid]].hi > ha)
                                hi = mid;
                            else
                                lo = mid + 1;
                        }
                        for (size_t i = lo; i < sup.size() && m.T.cells[sup[i]].lo < hb; ++i) {
                            int x = sup[i];
                            if (!has_dark(m, x, m.T.cells[x].lo, m.T.cells[x].hi)) continue;
                            if (Ppoly.empty()) Ppoly = sm.piece_polygon(pid);
                            auto pr = projected_overlap(m.T.frame_polygon(x), to_frame(m.T.frame, Ppoly));
                            if (!pr) continue;
                            out.push_back({static_cast<int>(c), x, pr->first, pr->second, static_cast<int>(cs), pid,
                                           LightMode::Flush});
                            ++L.stats.flush_lights;
                        }
                    }
                }
            }
        }
        (void)k;
    }

    struct Para {
        int src;                  // source piece id in the c* map
        Coord alo, ahi;           // sheared extent
        Coord w2, w3;             // height range of the parallelogram part
        std::vector<Point> poly;  // the whole source piece in the c frame
    };

    struct Ev {
        int kind;  // 0 clip, 1 insert, 2 trapezoid
        int idx;
    };

    void straddle_sweep(int k, size_t c, size_t cs, const std::vector<int>& sources, std::vector<Light>& out) {
        const CMap& m = L.maps[c];
        const CMap& sm = L.maps[cs];
        const Frame& F = m.T.frame;
        Point cv = sm.c.vec();
        Coord us = F.cx * cv.x + F.cy * cv.y, ws = F.cx * cv.y - F.cy * cv.x;
        Coord sigma = us / ws;
        SweepStatus st(sigma);
        EventQueue<Ev> q;
        std::vector<Para> paras;
        std::vector<char> queued(m.pieces.size(), 0);

        auto push_piece = [&](int id) {
            if (queued[id]) return;
            queued[id] = 1;
            q.push(m.pieces[id].lo, 2, id, Ev{2, id});
        };

        for (int pid : sources) {
            const Piece& P = sm.pieces[pid];
            const Trapezoid& Y = sm.T.cells[P.cell];
            auto corner = [&](bool right, const Coord& w) -> Point {
                return F.to(sm.T.frame.from({right ? sm.T.uR(P.cell, w) : sm.T.uL(P.cell, w), w}));
            };
            Point LL = corner(false, P.lo), LR = corner(true, P.lo), UL = corner(false, P.hi), UR = corner(true, P.hi);
            if (LL == LR || UL == UR) continue;
            Coord a1 = std::min(LL.y, LR.y), b1 = std::max(LL.y, LR.y);
            Coord a2 = std::min(UL.y, UR.y), b2 = std::max(UL.y, UR.y);
            Coord w2 = std::max(a1, a2), w3 = std::min(b1, b2);
            if (!(w2 < w3)) continue;
            Coord al1 = LL.x - sigma * LL.y, al2 = UL.x - sigma * UL.y;
            Para pa;
            pa.src = pid;
            pa.alo = std::min(al1, al2);
            pa.ahi = std::max(al1, al2);
            pa.w2 = w2;
            pa.w3 = w3;
            pa.poly = dedupe_ring({LL, LR, UR, UL});
            // the lower base starts at the corner of height w2 that bounds its base from below
            int vertex_edge = -1;
            if (a1 == w2) vertex_edge = (LL.y == a1) ? Y.left : Y.right;
            else
                vertex_edge = (UL.y == a2) ? Y.left : Y.right;
            int base_edge = -1;
            for (int e : {Y.left, Y.right})
                if (m.T.edges[e].horizontal && m.T.edges[e].p.y == w2) base_edge = e;
            Coord u1 = pa.alo + sigma * w2, u2 = pa.ahi + sigma * w2;
            int pot_cell = pot_of(m.T, w2, u1, u2, base_edge, vertex_edge);
            int idx = static_cast<int>(paras.size());
            paras.push_back(std::move(pa));
            const Para& pr = paras.back();
            q.push(pr.w2, 1, idx, Ev{1, idx});
            q.push(pr.w3, 0, idx, Ev{0, idx});
            if (pot_cell < 0) continue;
            int pot = piece_at(m, pot_cell, w2, true);
            if (pot < 0) continue;
            const Piece& T = m.pieces[pot];
            record(static_cast<int>(c), pot, k);
            ++L.stats.events;
            if (opt.rect_mode) {
                bool ok = T.lo == w2 && m.T.uL(T.cell, w2) < u2 && u1 < m.T.uR(T.cell, w2);
                if (!ok) ++L.stats.pot_overlap_failures;
            }
            if (T.label == kDark) light_from(k, c, cs, pot, pr, out);
            queued[pot] = 1;
            for (int up : upper_pieces(m, pot)) push_piece(up);
        }

        while (!q.empty()) {
            Coord h;
            Ev ev = q.pop(&h);
            st.shift_frame(h);
            if (ev.kind == 0) {
                const Para& pa = paras[ev.idx];
                st.clip(pa.alo + sigma * h, pa.ahi + sigma * h);
                continue;
            }
            if (ev.kind == 1) {
                const Para& pa = paras[ev.idx];
                st.insert({pa.alo + sigma * h, pa.ahi + sigma * h, ev.idx});
                continue;
            }
            int id = ev.idx;
            const Piece& X = m.pieces[id];
            Coord ul = m.T.uL(X.cell, X.lo), ur = m.T.uR(X.cell, X.lo);
            auto ov = st.overlap(ul, ur);
            ++L.stats.events;
            if (ov.empty()) continue;
            record(static_cast<int>(c), id, k);
            if (X.label == kDark) {
                // same label from every source: stop once the band is covered
                std::set<int> seen;
                std::vector<std::pair<Coord, Coord>> got;
                for (auto& iv : ov) {
                    if (!seen.insert(iv.source).second) continue;
                    auto r = light_from(k, c, cs, id, paras[iv.source], out);
                    if (!r) continue;
                    got.push_back(*r);
                    if (covers(got, X.lo, X.hi)) break;
                }
            }
            for (int up : upper_pieces(m, id)) push_piece(up);
        }
    }

    static bool covers(std::vector<std::pair<Coord, Coord>>& iv, const Coord& lo, const Coord& hi) {
        std::sort(iv.begin(), iv.end());
        Coord reach = lo;
        for (auto& [a, b] : iv) {
            if (a > reach) return false;
            if (b > reach) reach = b;
            if (reach >= hi) return true;
        }
        return reach >= hi;
    }

    std::optional<std::pair<Coord, Coord>> light_from(int k, size_t c, size_t cs, int piece, const Para& pa,
                                                      std::vector<Light>& out) {
        const CMap& m = L.maps[c];
        const Piece& X = m.pieces[piece];
        auto pr = projected_overlap(m.piece_frame_polygon(piece), pa.poly);
        if (!pr) return pr;
        if (pr->first > X.lo || pr->second < X.hi) {
            const Trapezoid& Y = L.maps[cs].T.cells[L.maps[cs].pieces[pa.src].cell];
            const Trapezoid& T = m.T.cells[X.cell];
            bool shares = T.left == Y.left || T.left == Y.right || T.right == Y.left || T.right == Y.right;
            if (!shares) ++L.stats.straddle_partial_nonflush;
        }
        out.push_back({static_cast<int>(c), X.cell, pr->first, pr->second, static_cast<int>(cs), pa.src,
                       LightMode::Straddle});
        ++L.stats.straddle_lights;
        (void)k;
        return pr;
    }

    void run() {
        L.stats = {};
        // step 2
        {
            std::vector<Light> lights;
            seed_step(lights);
            bool any = apply_all(2, lights);
            if (hook) any |= hook(2, L);
            L.stats.steps = any ? 2 : 1;
            if (!any) return finish();
        }
        for (int k = 3; k <= opt.max_steps; ++k) {
            std::vector<std::vector<int>> sources(C());
            bool have = false;
            for (size_t c = 0; c < C(); ++c)
                for (auto& order : L.maps[c].cell_pieces)
                    for (int id : order) {
                        const Piece& p = L.maps[c].pieces[id];
                        if (p.label == k - 1 && !p.degenerate()) {
                            sources[c].push_back(id);
                            have = true;
                        }
                    }
            if (!have && !hook) break;
            bool any = false;
            if (opt.flush) {
                std::vector<Light> lights;
                flush_phase(k, sources, lights);
                any |= apply_all(k, lights);
            }
            std::vector<Light> lights;
            for (size_t c = 0; c < C(); ++c)
                for (size_t cs = 0; cs < C(); ++cs)
                    if (c != cs && !sources[cs].empty()) straddle_sweep(k, c, cs, sources[cs], lights);
            any |= apply_all(k, lights);
            if (hook) any |= hook(k, L);
            if (opt.instrument) check_remainders(k);
            if (!any) break;
            L.stats.steps = k;
        }
        finish();
    }

    // Cells partially lit in step k-1 (beyond the seed step) must be finished by step k.
    void check_remainders(int k) {
        for (auto [c, x] : partial_prev) {
            const CMap& m = L.maps[c];
            if (has_dark(m, x, m.T.cells[x].lo, m.T.cells[x].hi)) ++L.stats.remainder_violations;
        }
        partial_prev.clear();
        for (size_t c = 0; c < C(); ++c) {
            const CMap& m = L.maps[c];
            for (size_t x = 0; x < m.T.cells.size(); ++x) {
                bool lit_now = false, dark = false;
                for (int id : m.cell_pieces[x]) {
                    const Piece& p = m.pieces[id];
                    if (p.label == k) lit_now = true;
                    if (p.label == kDark && !p.degenerate()) dark = true;
                }
                if (lit_now && dark) partial_prev.push_back({static_cast<int>(c), static_cast<int>(x)});
            }
        }
    }

    void finish() {
        auto& S = L.stats;
        for (auto& m : L.maps)
            for (size_t x = 0; x < m.T.cells.size(); ++x) {
                int runs = 0;
                for (auto& [lo, hi, lab] : m.runs(static_cast<int>(x)))
                    if (lo < hi) ++runs;
                S.max_subcells = std::max(S.max_subcells, runs);
                if (runs > 3) ++S.split_violations;
                for (int id : m.cell_pieces[x])
                    if (m.pieces[id].label == kDark && !m.pieces[id].degenerate()) ++S.dark_left;
            }
        for (auto& r : records) {
            const CMap& m = L.maps[r.map];
            for (int id : m.cell_pieces[r.cell]) {
                const Piece& p = m.pieces[id];
                if (p.degenerate() || p.label == kZigzag || !(p.lo < r.hi && r.lo < p.hi)) continue;
                if (p.label == kDark || p.label < r.step - 4 || p.label > r.step + 2) {
                    ++S.window_violations;
                    break;
                }
            }
        }
        for (auto& [key, steps] : steps_of_cell) {
            int n = static_cast<int>(steps.size());
            S.max_steps_per_cell = std::max(S.max_steps_per_cell, n);
            if (n > 7) ++S.steps_per_cell_violations;
        }
    }
};

}  // namespace

void run_linkmap_engine(CoriLinkMap& L, const EngineOptions& opt, const StepHook& hook) {
    Engine E(L, opt);
    E.hook = hook;
    E.run();
}

CoriLinkMap build_cori_linkmap(const PolygonalDomain& d, const OrientationSet& C, const Point& s,
                               const EngineOptions& opt) {
    if (!is_c_oriented(d, C)) throw std::invalid_argument("domain is not C-oriented");
    CoriLinkMap L = init_linkmap(d, C, s);
    run_linkmap_engine(L, opt);
    return L;
}

int query_map(const CMap& m, const Point& q) {
    Point f = m.T.frame.to(q);
    int best = kDark;
    for (int x : m.T.cells_at_frame(f))
        for (int id : m.cell_pieces[x]) {
            const Piece& p = m.pieces[id];
            if (p.label <= kDark || f.y < p.lo || f.y > p.hi) continue;
            if (best == kDark || p.label < best) best = p.label;
        }
    return best;
}

int query_cori(const CoriLinkMap& m, const Point& q) {
    if (m.maps.empty() || m.maps[0].T.cells_at_frame(m.maps[0].T.frame.to(q)).empty())
        throw std::domain_error("outside free space");
    int best = kDark;
    for (auto& mp : m.maps) {
        int v = query_map(mp, q);
        if (v != kDark && (best == kDark || v < best)) best = v;
    }
    return best;
}

std::vector<Point> extract_cori_path(const CoriLinkMap& L, const Point& q) {
    int bm = -1, bp = -1, best = kDark;
    for (size_t c = 0; c < L.maps.size(); ++c) {
        const CMap& m = L.maps[c];
        Point f = m.T.frame.to(q);
        for (int x : m.T.cells_at_frame(f))
            for (int id : m.cell_pieces[x]) {
                const Piece& p = m.pieces[id];
                if (p.label <= kDark || f.y < p.lo || f.y > p.hi) continue;
                if (best == kDark || p.label < best) {
                    best = p.label;
                    bm = static_cast<int>(c);
                    bp = id;
                }
            }
    }
    if (best == kDark) throw std::domain_error("query point not reached");
    std::vector<Point> pts{q};
    Point x = q;
    while (L.maps[bm].pieces[bp].label > 1) {
        const CMap& m = L.maps[bm];
        const Piece& p = m.pieces[bp];
        Coord w = m.T.frame.height(x);
        Point A = m.T.frame.from({m.T.uL(p.cell, w), w}), B = m.T.frame.from({m.T.uR(p.cell, w), w});
        if (p.src_map < 0) throw std::domain_error("path runs through a zigzag region");
        const CMap& sm = L.maps[p.src_map];
        auto P = sm.piece_polygon(p.src_piece);
        auto r = convex_intersection({A, B}, P);
        if (r.empty()) throw std::logic_error("broken predecessor chain");
        // extreme points along the chord
        Point dir = B - A;
        Point lo = r[0], hi = r[0];
        for (auto& y : r) {
            if (dot(y - lo, dir) < 0) lo = y;
            if (dot(y - hi, dir) > 0) hi = y;
        }
        Point y = midpoint(lo, hi);
        if (y != pts.back()) pts.push_back(y);
        x = y;
        int nm = p.src_map, np = p.src_piece;
        bm = nm;
        bp = np;
    }
    if (pts.back() != L.s || pts.size() == 1) pts.push_back(L.s);
    std::reverse(pts.begin(), pts.end());
    return pts;
}

LabelRuns label_runs(const CoriLinkMap& m) {
    LabelRuns out;
    for (auto& mp : m.maps) {
        std::vector<std::vector<std::tuple<Coord, Coord, int>>> per;
        for (size_t x = 0; x < mp.T.cells.size(); ++x) per.push_back(mp.runs(static_cast<int>(x)));
        out.push_back(std::move(per));
    }
    return out;
}

}  // namespace lp
