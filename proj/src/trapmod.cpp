#include "linkpath/trapmod.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace lp {

Trapezoidation::Trapezoidation(const Trapezoidation& o)
    : frame(o.frame),
      edges(o.edges),
      cells(o.cells),
      support(o.support),
      cell_above(o.cell_above),
      cell_below(o.cell_below),
      heights(o.heights) {}

Trapezoidation& Trapezoidation::operator=(const Trapezoidation& o) {
    if (this != &o) {
        Trapezoidation tmp(o);
        *this = std::move(tmp);
    }
    return *this;
}

std::vector<Point> Trapezoidation::frame_polygon(int c) const {
    const Trapezoid& t = cells[c];
    std::vector<Point> f{{uL(c, t.lo), t.lo}, {uR(c, t.lo), t.lo}, {uR(c, t.hi), t.hi}, {uL(c, t.hi), t.hi}};
    std::vector<Point> out;
    for (auto& p : f)
        if (out.empty() || out.back() != p) out.push_back(p);
    if (out.size() > 1 && out.front() == out.back()) out.pop_back();
    return out;
}

std::vector<Point> Trapezoidation::polygon(int c) const {
    std::vector<Point> out;
    for (auto& p : frame_polygon(c)) out.push_back(frame.from(p));
    return out;
}

Segment Trapezoidation::lower_base(int c) const {
    const Trapezoid& t = cells[c];
    return {frame.from({uL(c, t.lo), t.lo}), frame.from({uR(c, t.lo), t.lo})};
}

Segment Trapezoidation::upper_base(int c) const {
    const Trapezoid& t = cells[c];
    return {frame.from({uL(c, t.hi), t.hi}), frame.from({uR(c, t.hi), t.hi})};
}

bool Trapezoidation::contains_frame(int c, const Point& f) const {
    const Trapezoid& t = cells[c];
    if (f.y < t.lo || f.y > t.hi) return false;
    return uL(c, f.y) <= f.x && f.x <= uR(c, f.y);
}

const std::vector<int>& Trapezoidation::slab(size_t i) const {
    std::lock_guard<std::mutex> lock(*slab_mu_);
    auto it = slabs_.find(i);
    if (it != slabs_.end()) return it->second;
    std::vector<int> ids;
    const Coord &a = heights[i], &b = heights[i + 1];
    for (auto& t : cells)
        if (t.lo <= a && t.hi >= b) ids.push_back(t.id);
    return slabs_.emplace(i, std::move(ids)).first->second;
}

std::vector<int> Trapezoidation::cells_at_frame(const Point& f) const {
    std::vector<int> out;
    if (heights.size() < 2) return out;
    auto it = std::lower_bound(heights.begin(), heights.end(), f.y);
    size_t k = static_cast<size_t>(it - heights.begin());
    std::vector<size_t> slabs_to_check;
    if (it != heights.end() && *it == f.y) {
        if (k > 0) slabs_to_check.push_back(k - 1);
        if (k + 1 < heights.size()) slabs_to_check.push_back(k);
    } else if (k > 0 && k < heights.size()) {
        slabs_to_check.push_back(k - 1);
    }
    for (size_t s : slabs_to_check)
        for (int c : slab(s))
            if (contains_frame(c, f)) out.push_back(c);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int Trapezoidation::locate(const Point& q) const {
    auto v = cells_at_frame(frame.to(q));
    if (v.empty()) throw std::domain_error("outside free space");
    return v.front();
}

int Trapezoidation::support_cell(int edge, const Coord& w) const {
    const auto& L = support[edge];
    // first cell with hi > w, i.e. the upper one at a shared vertex
    size_t lo = 0, hi = L.size();
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (cells[L[mid]].hi > w)
            hi = mid;
        else
            lo = mid + 1;
    }
    if (lo < L.size() && cells[L[lo]].lo <= w) return L[lo];
    if (!L.empty() && cells[L.back()].hi == w) return L.back();
    return -1;
}

namespace {

struct Builder {
    Trapezoidation& T;
    Coord cur;  // current sweep height

    struct Cmp {
        Builder* B;
        using is_transparent = void;
        bool operator()(int x, int y) const {
            if (x == y) return false;
            const TEdge &ex = B->T.edges[x], &ey = B->T.edges[y];
            Coord ux = ex.u_at(B->cur), uy = ey.u_at(B->cur);
            if (ux != uy) return ux < uy;
            if (ex.b != ey.b) return ex.b < ey.b;
            if (ex.upward != ey.upward) return ex.upward;  // coincident copies: the upward one is on the left
            return x < y;
        }
        bool operator()(int x, const Coord& u) const { return B->T.edges[x].u_at(B->cur) < u; }
        bool operator()(const Coord& u, int x) const { return u < B->T.edges[x].u_at(B->cur); }
    };

    std::set<int, Cmp> active;
    std::vector<std::set<int, Cmp>::iterator> pos;
    std::vector<int> open_cell;  // by left side edge of a free gap

    explicit Builder(Trapezoidation& t) : T(t), active(Cmp{this}) {}

    // Gaps (left, right) whose closed span at the current height contains u.
    std::vector<std::pair<int, int>> touched(const Coord& u) {
        std::vector<std::pair<int, int>> out;
        auto lo = active.lower_bound(u);
        auto hi = active.upper_bound(u);
        auto prev = [&](std::set<int, Cmp>::iterator it) { return std::prev(it); };
        if (lo != active.begin() && lo != active.end()) out.push_back({*prev(lo), *lo});
        if (lo != hi) {
            auto it = lo;
            while (true) {
                auto nx = std::next(it);
                if (nx == active.end()) break;
                out.push_back({*it, *nx});
                if (nx == hi) break;
                it = nx;
            }
        }
        return out;
    }

    bool free_gap(int left) const { return !T.edges[left].upward; }
};

}  // namespace

Trapezoidation build_trapezoidation(const std::vector<Segment>& directed, const Direction& c) {
    Trapezoidation T;
    T.frame = Frame(c);
    const size_t m = directed.size();
    T.edges.resize(m);
    std::vector<Coord> hs;
    for (size_t i = 0; i < m; ++i) {
        TEdge& e = T.edges[i];
        e.p = T.frame.to(directed[i].a);
        e.q = T.frame.to(directed[i].b);
        if (e.p == e.q) throw std::invalid_argument("degenerate boundary edge");
        e.horizontal = e.p.y == e.q.y;
        e.upward = e.q.y > e.p.y;
        e.wlo = std::min(e.p.y, e.q.y);
        e.whi = std::max(e.p.y, e.q.y);
        if (!e.horizontal) {
            e.b = (e.q.x - e.p.x) / (e.q.y - e.p.y);
            e.a = e.p.x - e.b * e.p.y;
        } else {
            e.a = 0;
            e.b = 0;
        }
        hs.push_back(e.p.y);
    }
    std::sort(hs.begin(), hs.end());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
    T.heights = hs;
    const size_t H = hs.size();
    auto hidx = [&](const Coord& w) { return static_cast<size_t>(std::lower_bound(hs.begin(), hs.end(), w) - hs.begin()); };

    std::vector<std::vector<int>> starts(H), ends(H), horiz(H);
    std::vector<std::vector<Coord>> verts(H);
    for (size_t i = 0; i < m; ++i) {
        const TEdge& e = T.edges[i];
        size_t a = hidx(e.wlo), b = hidx(e.whi);
        verts[hidx(e.p.y)].push_back(e.p.x);
        if (e.horizontal) {
            horiz[a].push_back(static_cast<int>(i));
        } else {
            starts[a].push_back(static_cast<int>(i));
            ends[b].push_back(static_cast<int>(i));
        }
    }
    T.support.assign(m, {});
    T.cell_above.assign(m, -1);
    T.cell_below.assign(m, -1);

    Builder B(T);
    B.pos.resize(m);
    B.open_cell.assign(m, -1);

    for (size_t k = 0; k < H; ++k) {
        const Coord& h = hs[k];
        B.cur = h;
        auto& vs = verts[k];
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());

        std::vector<int> closed, opened;
        for (auto& u : vs)
            for (auto [L, R] : B.touched(u)) {
                if (!B.free_gap(L) || B.open_cell[L] < 0) continue;
                int id = B.open_cell[L];
                T.cells[id].hi = h;
                closed.push_back(id);
                B.open_cell[L] = -1;
            }
        for (int e : ends[k]) B.active.erase(B.pos[e]);
        for (int e : starts[k]) B.pos[e] = B.active.insert(e).first;
        for (auto& u : vs)
            for (auto [L, R] : B.touched(u)) {
                if (!B.free_gap(L) || B.open_cell[L] >= 0) continue;
                Trapezoid t;
                t.id = static_cast<int>(T.cells.size());
                t.lo = h;
                t.left = L;
                t.right = R;
                B.open_cell[L] = t.id;
                T.support[L].push_back(t.id);
                T.support[R].push_back(t.id);
                opened.push_back(t.id);
                T.cells.push_back(std::move(t));
            }

        // sort by left end at h, then link bases overlapping with positive length
        auto by_left = [&](int x, int y) {
            Coord lx = T.uL(x, h), ly = T.uL(y, h);
            if (lx != ly) return lx < ly;
            return T.uR(x, h) < T.uR(y, h);
        };
        std::sort(closed.begin(), closed.end(), by_left);
        std::sort(opened.begin(), opened.end(), by_left);
        size_t i = 0, j = 0;
        while (i < closed.size() && j < opened.size()) {
            int a = closed[i], b = opened[j];
            Coord l = std::max(T.uL(a, h), T.uL(b, h));
            Coord r = std::min(T.uR(a, h), T.uR(b, h));
            if (l < r) {
                T.cells[a].upper_nb.push_back(b);
                T.cells[b].lower_nb.push_back(a);
            }
            if (T.uR(a, h) < T.uR(b, h))
                ++i;
            else
                ++j;
        }
        // horizontal edges: +u edges have free space above, -u edges below
        for (int e : horiz[k]) {
            const TEdge& E = T.edges[e];
            Coord u1 = std::min(E.p.x, E.q.x), u2 = std::max(E.p.x, E.q.x);
            bool above = E.q.x > E.p.x;
            const auto& list = above ? opened : closed;
            for (int cid : list)
                if (T.uL(cid, h) <= u1 && u2 <= T.uR(cid, h)) {
                    if (above) {
                        T.cell_above[e] = cid;
                        T.cells[cid].lower_edges.push_back(e);
                    } else {
                        T.cell_below[e] = cid;
                        T.cells[cid].upper_edges.push_back(e);
                    }
                    break;
                }
        }
    }
    for (auto& t : T.cells) {
        std::sort(t.upper_nb.begin(), t.upper_nb.end());
        std::sort(t.lower_nb.begin(), t.lower_nb.end());
    }
    return T;
}

Trapezoidation build_trapezoidation(const PolygonalDomain& d, const Direction& c) {
    std::vector<Segment> segs;
    for (auto& e : d.edges()) segs.emplace_back(e.a, e.b);
    return build_trapezoidation(segs, c);
}

int pot_of(const Trapezoidation& t, const Coord& w, const Coord& u1, const Coord& u2, int base_edge, int vertex_edge) {
    if (base_edge >= 0 && t.cell_above[base_edge] >= 0) return t.cell_above[base_edge];
    if (vertex_edge >= 0) {
        int c = t.support_cell(vertex_edge, w);
        if (c >= 0 && t.cells[c].hi > w) {
            Coord mid = (u1 + u2) / 2;
            if (t.contains_frame(c, {mid, w})) return c;
        }
    }
    Coord mid = (u1 + u2) / 2;
    auto cand = t.cells_at_frame({mid, w});
    for (int c : cand)
        if (t.cells[c].hi > w) return c;
    return cand.empty() ? -1 : cand.front();
}

}  // namespace lp
