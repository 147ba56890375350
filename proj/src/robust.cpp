#include "linkpath/robust.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace lp {
namespace {

Point rot90(const Point& v) { return Point(Coord(-v.y), v.x); }

bool in_closed_tri(const std::vector<Point>& t, const Point& q) {
    Coord a = area2(t);
    if (sgn(a) == 0) return on_segment(q, t[0], t[1]) || on_segment(q, t[1], t[2]) || on_segment(q, t[2], t[0]);
    int s = sgn(a);
    for (int i = 0; i < 3; ++i)
        if (orient(t[i], t[(i + 1) % 3], q) * s < 0) return false;
    return true;
}

struct LineHit {
    enum Kind { None, Point_, Overlap } kind = None;
    Point p;
};

// Line through o with direction v against the closed segment ab.
LineHit line_segment(const Point& o, const Point& v, const Point& a, const Point& b) {
    Coord ga = cross(v, a - o), gb = cross(v, b - o);
    int sa = sgn(ga), sb = sgn(gb);
    if (sa == 0 && sb == 0) return {LineHit::Overlap, a};
    if (sa * sb > 0) return {};
    Coord t = ga / (ga - gb);
    return {LineHit::Point_, a + (b - a) * t};
}

// Among C directions and their opposites, the one closest to e turning counterclockwise
// (ccw = true) or clockwise, within a quarter turn; nullopt if none.
std::optional<Point> nearest_dir(const Point& e, const OrientationSet& C, bool ccw) {
    std::optional<Point> best;
    for (auto& d : C.dirs)
        for (int s : {1, -1}) {
            Point v = d.vec() * Coord(s);
            if (sgn(dot(e, v)) <= 0) continue;
            int c = sgn(cross(e, v));
            if (ccw ? c < 0 : c > 0) continue;
            if (!best) {
                best = v;
                continue;
            }
            int turn = sgn(cross(*best, v));
            if (ccw ? turn < 0 : turn > 0) best = v;
        }
    return best;
}

}  // namespace

RobustnessSpec make_spec(int i, const OrientationSet& C) {
    if (i < 2) throw std::invalid_argument("i must be at least 2");
    RobustnessSpec s;
    s.i = i;
    s.C_phi = C;
    // dirs are sorted by angle in [0, 180); the last gap wraps around
    const double phi = std::numbers::pi / i;
    std::vector<double> ang;
    for (auto& d : C.dirs) ang.push_back(std::atan2(static_cast<double>(d.dy), static_cast<double>(d.dx)));
    bool ok = !ang.empty();
    for (size_t k = 0; k < ang.size(); ++k) {
        double next = k + 1 < ang.size() ? ang[k + 1] : ang[0] + std::numbers::pi;
        if (next - ang[k] > phi * (1 + 1e-9)) ok = false;
    }
    s.max_gap_ok = ok;
    return s;
}

std::optional<Coord> tan_phi(const RobustnessSpec& spec) {
    if (spec.i == 2) return std::nullopt;
    if (spec.i == 4) return Coord(1);
    const double phi = std::numbers::pi / spec.i;
    // over-estimate; squared checks make the irrational cases provably conservative
    Coord r(std::tan(phi) * (1 + 1e-9));
    if (spec.i == 3) {
        while (r * r < 3) r *= Coord(1000001, 1000000);
    } else if (spec.i == 6) {
        while (3 * r * r < 1) r *= Coord(1000001, 1000000);
    }
    return r;
}

std::vector<Point> robustness_triangle(const Point& p, const Point& q, const Coord& tan) {
    Point w = rot90(q - p) * tan;
    return {p, q - w, q + w};
}

bool is_c_path(const std::vector<Point>& path, const OrientationSet& C) {
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        if (path[i] == path[i + 1]) return false;
        if (!C.contains(edge_direction(path[i], path[i + 1]))) return false;
    }
    return true;
}

bool is_robust(const PolygonalDomain& d, const std::vector<Point>& path, const RobustnessSpec& spec) {
    if (path.size() < 2) throw std::invalid_argument("path needs at least two vertices");
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        if (path[i] == path[i + 1]) throw std::invalid_argument("repeated path vertex");
        if (!segment_in_free(d, path[i], path[i + 1])) throw std::invalid_argument("path leaves the free space");
    }
    auto tan = tan_phi(spec);
    if (!tan) return false;  // unbounded triangles never fit in a bounded domain
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        auto T = robustness_triangle(path[i], path[i + 1], *tan);
        for (int k = 0; k < 3; ++k)
            if (!segment_in_free(d, T[k], T[(k + 1) % 3])) return false;
        // no boundary ring may sit strictly inside the triangle
        for (int r = 0; r < d.ring_count(); ++r) {
            const Point& v = d.ring(r)[0];
            bool inside = true;
            for (int k = 0; k < 3; ++k) inside &= orient(T[k], T[(k + 1) % 3], v) > 0;
            if (inside) return false;
        }
    }
    return true;
}

std::vector<SnapTriangle> snap_triangles(const std::vector<Point>& path, const RobustnessSpec& spec) {
    std::vector<SnapTriangle> out;
    auto tan = tan_phi(spec);
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        Point e = path[i + 1] - path[i];
        auto vp = nearest_dir(e, spec.C_phi, true), vm = nearest_dir(e, spec.C_phi, false);
        if (!vp || !vm) return {};
        Coord ee = dot(e, e);
        auto end = [&](const Point& v) { return path[i] + v * Coord(ee / dot(e, v)); };
        if (tan)
            for (auto* v : {&*vp, &*vm})
                if (Coord(abs(cross(e, *v))) > *tan * dot(e, *v)) return {};
        out.push_back({path[i], end(*vp), end(*vm)});
    }
    return out;
}

bool segment_in_triangles(const Point& a, const Point& b, const std::vector<std::vector<Point>>& tris) {
    std::vector<Coord> ts = {Coord(0), Coord(1)};
    Point v = b - a;
    Coord vv = dot(v, v);
    for (auto& t : tris)
        for (int k = 0; k < 3; ++k) {
            const Point &u = t[k], &w = t[(k + 1) % 3];
            if (u == w) continue;
            Coord gu = cross(v, u - a), gw = cross(v, w - a);
            if (sgn(gu) == 0 && sgn(gw) == 0) {
                if (sgn(vv) == 0) continue;
                for (const Point* p : {&u, &w}) ts.push_back(Coord(dot(*p - a, v) / vv));
                continue;
            }
            if (sgn(gu) * sgn(gw) > 0) continue;
            Point x = u + (w - u) * Coord(gu / (gu - gw));
            if (sgn(vv) != 0) ts.push_back(Coord(dot(x - a, v) / vv));
        }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    auto covered = [&](const Point& p) {
        for (auto& t : tris)
            if (in_closed_tri(t, p)) return true;
        return false;
    };
    for (size_t k = 0; k < ts.size(); ++k) {
        if (ts[k] < 0 || ts[k] > 1) continue;
        if (!covered(a + v * ts[k])) return false;
        if (k + 1 < ts.size() && ts[k + 1] <= 1 && ts[k] >= 0) {
            Coord mid = (ts[k] + ts[k + 1]) / 2;
            if (!covered(a + v * mid)) return false;
        }
    }
    return true;
}

SnapResult snap(const PolygonalDomain& d, const std::vector<Point>& path, const RobustnessSpec& spec) {
    SnapResult R;
    bool robust;
    try {
        robust = is_robust(d, path, spec);
    } catch (const std::invalid_argument& e) {
        R.failure = e.what();
        return R;
    }
    if (is_c_path(path, spec.C_phi)) {
        R.ok = R.identity = true;
        R.pts = path;
        R.links = static_cast<int>(path.size()) - 1;
        return R;
    }
    if (!robust) {
        R.failure = "path is not robust";
        return R;
    }
    auto V = snap_triangles(path, spec);
    if (V.size() + 1 != path.size()) {
        R.failure = "no supplied direction within phi of an edge";
        return R;
    }
    const size_t k = path.size() - 1;
    std::vector<Point> q(k + 1);
    {
        const auto& T = V[k - 1];
        auto h = line_segment(path[k], T.minus - T.apex, T.apex, T.plus);
        q[k] = h.kind == LineHit::Point_ ? h.p : T.plus;
        if (h.kind == LineHit::None) {
            R.failure = "last turn point not found";
            return R;
        }
    }
    for (size_t i = k - 1; i >= 1; --i) {
        Point dir = q[i + 1] == path[i] ? V[i].plus - V[i].apex : q[i + 1] - path[i];
        const auto& T = V[i - 1];
        auto hp = line_segment(path[i], dir, T.apex, T.plus);
        auto hm = line_segment(path[i], dir, T.apex, T.minus);
        bool base = sgn(cross(dir, T.plus - path[i])) == 0 && sgn(cross(dir, T.minus - path[i])) == 0;
        if (base || hp.kind == LineHit::Overlap) q[i] = T.plus;
        else if (hm.kind == LineHit::Overlap) q[i] = T.minus;
        else if (hp.kind == LineHit::Point_) q[i] = hp.p;
        else if (hm.kind == LineHit::Point_) q[i] = hm.p;
        else {
            R.failure = "turn point " + std::to_string(i) + " not found";
            return R;
        }
    }
    q[0] = path[0];
    std::vector<Point> raw = q;
    raw.push_back(path[k]);
    std::vector<std::vector<Point>> tri;
    for (auto& T : V) tri.push_back({T.apex, T.plus, T.minus});
    // raw link j (q_j -> q_{j+1}) lies in V[j-1] u V[j]
    for (size_t j = 0; j + 1 < raw.size(); ++j) {
        if (raw[j] == raw[j + 1]) continue;
        std::vector<std::vector<Point>> two;
        if (j >= 1) two.push_back(tri[j - 1]);
        if (j < tri.size()) two.push_back(tri[j]);
        if (!segment_in_triangles(raw[j], raw[j + 1], two)) {
            R.failure = "link " + std::to_string(j) + " leaves its snap triangles";
            return R;
        }
    }
    std::vector<Point> out;
    for (auto& p : raw) {
        if (!out.empty() && out.back() == p) continue;
        if (out.size() >= 2 && orient(out[out.size() - 2], out.back(), p) == 0 &&
            on_segment(out.back(), out[out.size() - 2], p))
            out.back() = p;
        else
            out.push_back(p);
    }
    R.pts = out;
    R.links = static_cast<int>(out.size()) - 1;
    if (!is_c_path(out, spec.C_phi)) {
        R.failure = "snapped link is not C-oriented";
        return R;
    }
    for (size_t j = 0; j + 1 < out.size(); ++j) {
        // smallest run of consecutive snap triangles covering the link
        std::pair<int, int> sup = {-1, -1};
        for (size_t w = 1; w <= tri.size() && sup.first < 0; ++w)
            for (size_t a = 0; a + w <= tri.size() && sup.first < 0; ++a) {
                std::vector<std::vector<Point>> run(tri.begin() + a, tri.begin() + a + w);
                if (segment_in_triangles(out[j], out[j + 1], run))
                    sup = {static_cast<int>(a), static_cast<int>(a + w - 1)};
            }
        R.support.push_back(sup);
        if (sup.first < 0 || !segment_in_free(d, out[j], out[j + 1])) {
            R.failure = "snapped link outside the triangle union";
            return R;
        }
    }
    R.ok = R.links <= static_cast<int>(k) + 1;
    if (!R.ok) R.failure = "too many links";
    return R;
}

std::optional<std::vector<Point>> random_robust_path(const PolygonalDomain& d, const RobustnessSpec& spec, int k,
                                                     uint64_t seed) {
    auto tan = tan_phi(spec);
    if (!tan || k < 1) return std::nullopt;
    Coord lo_x = d.outer[0].x, hi_x = lo_x, lo_y = d.outer[0].y, hi_y = lo_y;
    for (auto& p : d.outer) {
        lo_x = std::min(lo_x, p.x);
        hi_x = std::max(hi_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_y = std::max(hi_y, p.y);
    }
    std::mt19937_64 rng(seed);
    const long G = 240;
    std::uniform_int_distribution<long> ux(0, G), dv(-12, 12), len(2, 10);
    auto grid = [&](long a, long b) {
        return Point(lo_x + (hi_x - lo_x) * frac(a, G), lo_y + (hi_y - lo_y) * frac(b, G));
    };
    for (int attempt = 0; attempt < 50; ++attempt) {
        Point s = grid(ux(rng), ux(rng));
        if (!in_open_free(d, s)) continue;
        // keep s off every C_phi line through a vertex so link maps can be seeded there
        bool general = true;
        for (int r = 0; r < d.ring_count() && general; ++r)
            for (auto& v : d.ring(r))
                for (auto& c : spec.C_phi.dirs) general &= sgn(cross(c.vec(), s - v)) != 0;
        if (!general) continue;
        std::vector<Point> path = {s};
        for (int step = 0; step < k; ++step) {
            bool grown = false;
            for (int t = 0; t < 300 && !grown; ++t) {
                Point v(dv(rng), dv(rng));
                if (sgn(v.x) == 0 && sgn(v.y) == 0) continue;
                if (spec.C_phi.contains(edge_direction(Point(0, 0), v))) continue;
                Coord scale = (hi_x - lo_x + hi_y - lo_y) * frac(len(rng), G);
                Point q = path.back() + v * scale;
                if (!in_open_free(d, q) || !segment_in_free(d, path.back(), q)) continue;
                std::vector<Point> edge = {path.back(), q};
                if (!is_robust(d, edge, spec)) continue;
                path.push_back(q);
                grown = true;
            }
            if (!grown) break;
        }
        if (static_cast<int>(path.size()) == k + 1) return path;
    }
    return std::nullopt;
}

}  // namespace lp
