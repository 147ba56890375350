#include "linkpath/domain.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

namespace lp {

using json = nlohmann::json;

size_t PolygonalDomain::n() const {
    size_t s = outer.size();
    for (auto& h : holes) s += h.size();
    return s;
}

std::vector<Edge> PolygonalDomain::edges() const {
    std::vector<Edge> out;
    out.reserve(n());
    for (int r = 0; r < ring_count(); ++r) {
        const Ring& R = ring(r);
        for (size_t i = 0; i < R.size(); ++i) out.push_back({R[i], R[(i + 1) % R.size()], r, static_cast<int>(i)});
    }
    return out;
}

static bool angle_less(const Direction& a, const Direction& b) {
    return sgn(cross(a.vec(), b.vec())) > 0;
}

OrientationSet::OrientationSet(std::vector<Direction> d) : dirs(std::move(d)) {
    std::sort(dirs.begin(), dirs.end(), angle_less);
    for (size_t i = 1; i < dirs.size(); ++i)
        if (dirs[i] == dirs[i - 1]) throw std::invalid_argument("orientation set has duplicate directions");
    if (dirs.size() < 2) throw std::invalid_argument("orientation set needs at least two directions");
}

bool OrientationSet::contains(const Direction& d) const {
    return std::find(dirs.begin(), dirs.end(), d) != dirs.end();
}

Direction edge_direction(const Point& a, const Point& b) {
    Point v = b - a;
    mpz_class l = lcm(v.x.get_den(), v.y.get_den());
    mpz_class x = v.x.get_num() * (l / v.x.get_den());
    mpz_class y = v.y.get_num() * (l / v.y.get_den());
    mpz_class g = gcd(x, y);
    if (g == 0) throw std::invalid_argument("zero-length edge");
    x /= g;
    y /= g;
    if (!x.fits_slong_p() || !y.fits_slong_p()) throw std::overflow_error("edge direction too large");
    return Direction(x.get_si(), y.get_si());
}

namespace {

struct EdgeRef {
    int ring, idx;
    Point a, b;
    Coord xmin, xmax, ymin, ymax;
};

}  // namespace

std::vector<Violation> validate(const PolygonalDomain& d) {
    std::vector<Violation> out;
    auto add = [&](std::string w, int r, int v, bool warn = false) { out.push_back({std::move(w), r, v, warn}); };

    std::vector<EdgeRef> edges;
    bool ring_ok = true;
    for (int r = 0; r < d.ring_count(); ++r) {
        const Ring& R = d.ring(r);
        int m = static_cast<int>(R.size());
        if (m < 3) {
            add("ring has fewer than 3 vertices", r, -1);
            ring_ok = false;
            continue;
        }
        for (int i = 0; i < m; ++i) {
            const Point &p = R[(i + m - 1) % m], &q = R[i], &s = R[(i + 1) % m];
            if (q == s) {
                add("repeated vertex", r, i);
                ring_ok = false;
            } else if (p != q && orient(p, q, s) == 0) {
                add("collinear adjacent edges", r, i);
            }
        }
        Coord a2 = area2(R);
        if (r == 0 && sgn(a2) <= 0) add("outer not counterclockwise", 0, -1);
        if (r > 0 && sgn(a2) >= 0) add("hole not clockwise", r, -1);
        for (int i = 0; i < m; ++i) {
            const Point &a = R[i], &b = R[(i + 1) % m];
            edges.push_back({r, i, a, b, std::min(a.x, b.x), std::max(a.x, b.x), std::min(a.y, b.y), std::max(a.y, b.y)});
        }
    }
    if (!ring_ok) return out;

    std::vector<size_t> order(edges.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t i, size_t j) { return edges[i].xmin < edges[j].xmin; });

    std::set<std::pair<int, int>> reported;  // (kind, ring pair code) to avoid flooding
    std::vector<size_t> active;
    for (size_t oi : order) {
        const EdgeRef& e = edges[oi];
        std::vector<size_t> keep;
        for (size_t aj : active) {
            const EdgeRef& f = edges[aj];
            if (f.xmax < e.xmin) continue;
            keep.push_back(aj);
            if (f.ymax < e.ymin || e.ymax < f.ymin) continue;
            auto res = segments_intersect({e.a, e.b}, {f.a, f.b});
            if (res.kind == Intersection::Empty) continue;
            if (e.ring == f.ring) {
                int m = static_cast<int>(d.ring(e.ring).size());
                bool adjacent = (e.idx + 1) % m == f.idx || (f.idx + 1) % m == e.idx;
                if (adjacent && res.kind == Intersection::PointHit) continue;
                if (reported.insert({0, e.ring}).second) add("ring not simple", e.ring, std::min(e.idx, f.idx));
            } else {
                int r1 = std::min(e.ring, f.ring), r2 = std::max(e.ring, f.ring);
                if (r1 == 0) {
                    if (reported.insert({1, r2}).second) add("hole not inside outer", r2, -1);
                } else if (reported.insert({2, r1 * 100003 + r2}).second) {
                    add("holes intersect", r1, r2 - 1);
                }
            }
        }
        keep.push_back(oi);
        active.swap(keep);
    }

    for (int r = 1; r < d.ring_count(); ++r) {
        if (reported.count({1, r})) continue;
        if (point_in_ring(d.ring(r)[0], d.outer) != 1) add("hole not inside outer", r, 0);
    }
    // Nested holes: a hole's first vertex strictly inside another hole (edge contacts were reported above).
    for (int r = 1; r < d.ring_count(); ++r) {
        const Point& v = d.ring(r)[0];
        for (int q = 1; q < d.ring_count(); ++q) {
            if (q == r) continue;
            if (point_in_ring(v, d.ring(q)) == 1) add("holes intersect", std::min(r, q), std::max(r, q) - 1);
        }
    }

    // Warning: two edges supported by the same line.
    std::map<std::tuple<long, long, Coord>, std::pair<int, int>> lines;
    for (auto& e : edges) {
        Direction dir = edge_direction(e.a, e.b);
        Coord off = cross(dir.vec(), e.a);
        auto key = std::make_tuple(dir.dx, dir.dy, off);
        auto it = lines.find(key);
        if (it == lines.end()) {
            lines.emplace(key, std::make_pair(e.ring, e.idx));
        } else {
            add("two edges supported by the same line", e.ring, e.idx, true);
        }
    }
    return out;
}

bool has_errors(const std::vector<Violation>& v) {
    return std::any_of(v.begin(), v.end(), [](const Violation& x) { return !x.warning; });
}

bool has_same_line_edges(const std::vector<Violation>& v) {
    return std::any_of(v.begin(), v.end(), [](const Violation& x) { return x.warning; });
}

bool is_c_oriented(const PolygonalDomain& d, const OrientationSet& C) {
    for (auto& e : d.edges())
        if (!C.contains(edge_direction(e.a, e.b))) return false;
    return true;
}

void normalize_orientation(PolygonalDomain& d) {
    if (sgn(area2(d.outer)) < 0) std::reverse(d.outer.begin(), d.outer.end());
    for (auto& h : d.holes)
        if (sgn(area2(h)) > 0) std::reverse(h.begin(), h.end());
}

int classify_point(const PolygonalDomain& d, const Point& p) {
    int r = point_in_ring(p, d.outer);
    if (r < 0) return -1;
    int res = r;
    for (auto& h : d.holes) {
        int q = point_in_ring(p, h);
        if (q > 0) return -1;
        if (q == 0) res = 0;
    }
    return res;
}

bool segment_in_free(const PolygonalDomain& d, const Point& a, const Point& b) {
    if (a == b) return in_closed_free(d, a);
    if (!in_closed_free(d, a) || !in_closed_free(d, b)) return false;
    Point ab = b - a;
    Coord len2 = dot(ab, ab);
    std::vector<Coord> ts{Coord(0), Coord(1)};
    Coord bxmin = std::min(a.x, b.x), bxmax = std::max(a.x, b.x);
    Coord bymin = std::min(a.y, b.y), bymax = std::max(a.y, b.y);
    for (int r = 0; r < d.ring_count(); ++r) {
        const Ring& R = d.ring(r);
        for (size_t i = 0; i < R.size(); ++i) {
            const Point &p = R[i], &q = R[(i + 1) % R.size()];
            if (std::max(p.x, q.x) < bxmin || std::min(p.x, q.x) > bxmax) continue;
            if (std::max(p.y, q.y) < bymin || std::min(p.y, q.y) > bymax) continue;
            Segment s1(a, b), s2(p, q);
            if (segments_cross_properly(s1, s2)) return false;
            auto res = segments_intersect(s1, s2);
            if (res.kind == Intersection::PointHit) {
                ts.push_back(dot(res.p - a, ab) / len2);
            } else if (res.kind == Intersection::Overlap) {
                ts.push_back(dot(res.p - a, ab) / len2);
                ts.push_back(dot(res.q - a, ab) / len2);
            }
        }
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    for (size_t i = 0; i + 1 < ts.size(); ++i) {
        Coord tm = (ts[i] + ts[i + 1]) / 2;
        if (!in_closed_free(d, a + ab * tm)) return false;
    }
    return true;
}

Coord free_area2(const PolygonalDomain& d) {
    Coord s = area2(d.outer);
    for (auto& h : d.holes) s += area2(h);
    return s;
}

// ---------------------------------------------------------------- JSON

static json int_json(const mpz_class& z) {
    if (z.fits_slong_p()) return json(static_cast<int64_t>(z.get_si()));
    return json(z.get_str());
}

static mpz_class json_int(const json& j) {
    if (j.is_number_integer()) return mpz_class(std::to_string(j.get<int64_t>()));
    if (j.is_string()) return mpz_class(j.get<std::string>());
    throw std::runtime_error("expected an integer coordinate component");
}

static json point_json(const Point& p) {
    if (p.x.get_den() == 1 && p.y.get_den() == 1) return json::array({int_json(p.x.get_num()), int_json(p.y.get_num())});
    return json::array({int_json(p.x.get_num()), int_json(p.x.get_den()), int_json(p.y.get_num()), int_json(p.y.get_den())});
}

Coord parse_coord(const std::string& s) {
    Coord c(s);
    c.canonicalize();
    return c;
}

static Coord json_coord(const json& j) {
    if (j.is_string()) return parse_coord(j.get<std::string>());
    return Coord(json_int(j));
}

static Point json_point(const json& j) {
    if (!j.is_array()) throw std::runtime_error("point must be an array");
    if (j.size() == 2) return Point(json_coord(j[0]), json_coord(j[1]));
    if (j.size() == 4) {
        Coord x(json_int(j[0]), json_int(j[1])), y(json_int(j[2]), json_int(j[3]));
        if (x.get_den() == 0 || y.get_den() == 0) throw std::runtime_error("zero denominator");
        x.canonicalize();
        y.canonicalize();
        return Point(x, y);
    }
    throw std::runtime_error("point must have 2 or 4 components");
}

static json ring_json(const Ring& r) {
    json a = json::array();
    for (auto& p : r) a.push_back(point_json(p));
    return a;
}

static Ring json_ring(const json& j) {
    if (!j.is_array()) throw std::runtime_error("ring must be an array");
    Ring r;
    for (auto& p : j) r.push_back(json_point(p));
    return r;
}

std::string instance_to_json(const DomainInstance& inst) {
    json j;
    j["outer"] = ring_json(inst.domain.outer);
    j["holes"] = json::array();
    for (auto& h : inst.domain.holes) j["holes"].push_back(ring_json(h));
    j["s"] = point_json(inst.s);
    if (inst.t) j["t"] = point_json(*inst.t);
    if (inst.orientations) {
        json o = json::array();
        for (auto& d : inst.orientations->dirs) o.push_back({d.dx, d.dy});
        j["orientations"] = o;
    }
    return j.dump();
}

DomainInstance instance_from_json(const std::string& text) {
    json j = json::parse(text);
    DomainInstance inst;
    if (!j.contains("outer")) throw std::runtime_error("missing outer ring");
    inst.domain.outer = json_ring(j["outer"]);
    if (j.contains("holes"))
        for (auto& h : j["holes"]) inst.domain.holes.push_back(json_ring(h));
    if (j.contains("s")) inst.s = json_point(j["s"]);
    if (j.contains("t") && !j["t"].is_null()) inst.t = json_point(j["t"]);
    if (j.contains("orientations") && !j["orientations"].is_null()) {
        std::vector<Direction> dirs;
        for (auto& d : j["orientations"]) dirs.emplace_back(d.at(0).get<long>(), d.at(1).get<long>());
        inst.orientations = OrientationSet(dirs);
    }
    return inst;
}

std::vector<Point> points_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.is_object()) j = j.at("path");
    return json_ring(j);
}

std::string points_to_json(const std::vector<Point>& pts) { return ring_json(pts).dump(); }

OrientationSet orientations_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.is_object()) j = j.at("orientations");
    if (!j.is_array()) throw std::runtime_error("orientations must be an array");
    std::vector<Direction> dirs;
    for (auto& d : j) dirs.emplace_back(d.at(0).get<long>(), d.at(1).get<long>());
    return OrientationSet(dirs);
}

DomainInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return instance_from_json(ss.str());
}

void save_instance(const DomainInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << instance_to_json(inst) << "\n";
}

// ---------------------------------------------------------------- GeomBase

static Coord default_thickness(const GeomBaseParams& p) {
    if (p.thickness) return *p.thickness;
    return std::min(p.y2 - p.y1, p.y3 - p.y2) / 4;
}

DomainInstance gen_geombase(const std::vector<GapSpec>& gaps, const GeomBaseParams& p) {
    if (gaps.empty()) throw std::invalid_argument("geombase: empty gap set");
    if (!(p.y1 < p.y2 && p.y2 < p.y3)) throw std::invalid_argument("geombase: lines must be increasing");
    Coord th = default_thickness(p), w = p.gap_halfwidth;
    if (sgn(th) <= 0 || sgn(w) <= 0) throw std::invalid_argument("geombase: thickness and gap width must be positive");
    std::vector<Coord> xs[3];
    for (auto& g : gaps) {
        if (g.line < 1 || g.line > 3) throw std::invalid_argument("geombase: line index must be 1..3");
        xs[g.line - 1].push_back(g.x);
    }
    Coord gmin = gaps[0].x, gmax = gaps[0].x;
    for (int i = 0; i < 3; ++i) {
        if (xs[i].empty()) throw std::invalid_argument("geombase: every line needs at least one gap");
        std::sort(xs[i].begin(), xs[i].end());
        for (size_t j = 1; j < xs[i].size(); ++j)
            if (xs[i][j] - xs[i][j - 1] <= 2 * w) throw std::invalid_argument("geombase: overlapping gaps on one line");
        gmin = std::min(gmin, xs[i].front());
        gmax = std::max(gmax, xs[i].back());
    }
    Coord ys[3] = {p.y1, p.y2, p.y3};
    Coord xmin = gmin - w - p.margin, xmax = gmax + w + p.margin;
    Coord yb = p.y1 - th / 2 - (p.y2 - p.y1), yt = p.y3 + th / 2 + (p.y3 - p.y2);

    DomainInstance inst;
    Ring& R = inst.domain.outer;
    R.push_back({xmin, yb});
    R.push_back({xmax, yb});
    for (int i = 0; i < 3; ++i) {
        Coord lo = ys[i] - th / 2, hi = ys[i] + th / 2, rx = xs[i].back() + w;
        R.push_back({xmax, lo});
        R.push_back({rx, lo});
        R.push_back({rx, hi});
        R.push_back({xmax, hi});
    }
    R.push_back({xmax, yt});
    R.push_back({xmin, yt});
    for (int i = 2; i >= 0; --i) {
        Coord lo = ys[i] - th / 2, hi = ys[i] + th / 2, lx = xs[i].front() - w;
        R.push_back({xmin, hi});
        R.push_back({lx, hi});
        R.push_back({lx, lo});
        R.push_back({xmin, lo});
    }
    for (int i = 0; i < 3; ++i) {
        Coord lo = ys[i] - th / 2, hi = ys[i] + th / 2;
        for (size_t j = 0; j + 1 < xs[i].size(); ++j) {
            Coord a = xs[i][j] + w, b = xs[i][j + 1] - w;
            inst.domain.holes.push_back({{a, lo}, {a, hi}, {b, hi}, {b, lo}});
        }
    }
    // s and t sit in shallow pockets next to the walls so that neither sees through a gap.
    Coord delta = th / 8;
    inst.s = Point(xmin + 1, p.y1 - th / 2 - delta);
    inst.t = Point(xmax - 1, p.y3 + th / 2 + delta);
    return inst;
}

namespace {

// Keep points (a,b) of a convex polygon with A*a + B*b + K >= 0.
std::vector<Point> clip_linear(const std::vector<Point>& poly, const Coord& A, const Coord& B, const Coord& K) {
    std::vector<Point> out;
    size_t n = poly.size();
    auto val = [&](const Point& p) { return Coord(A * p.x + B * p.y + K); };
    for (size_t i = 0; i < n; ++i) {
        const Point &p = poly[i], &q = poly[(i + 1) % n];
        Coord vp = val(p), vq = val(q);
        if (sgn(vp) >= 0 && (out.empty() || out.back() != p)) out.push_back(p);
        if ((sgn(vp) > 0 && sgn(vq) < 0) || (sgn(vp) < 0 && sgn(vq) > 0)) {
            Coord t = vp / (vp - vq);
            Point x = p + (q - p) * t;
            if (out.empty() || out.back() != x) out.push_back(x);
        }
    }
    if (out.size() > 1 && out.front() == out.back()) out.pop_back();
    return out;
}

}  // namespace

bool geombase_triple_stabbable(const std::vector<GapSpec>& gaps, const GeomBaseParams& p) {
    Coord th = default_thickness(p), w = p.gap_halfwidth;
    Coord ys[3] = {p.y1, p.y2, p.y3};
    std::vector<Coord> xs[3];
    for (auto& g : gaps) xs[g.line - 1].push_back(g.x);
    Coord big = 1;
    for (auto& g : gaps) big += abs(g.x);
    big = (big + abs(p.y3) + abs(p.y1) + 1) * (1 + 2 * w / th) * 4;
    for (auto& x1 : xs[0])
        for (auto& x2 : xs[1])
            for (auto& x3 : xs[2]) {
                // parametrize the line as x = a + b*y; each tunnel wall gives two linear constraints
                std::vector<Point> poly{{-big, -big}, {big, -big}, {big, big}, {-big, big}};
                Coord cx[3] = {x1, x2, x3};
                for (int i = 0; i < 3 && !poly.empty(); ++i)
                    for (int sgny = -1; sgny <= 1 && !poly.empty(); sgny += 2) {
                        Coord y = ys[i] + Coord(sgny) * th / 2;
                        poly = clip_linear(poly, Coord(-1), -y, cx[i] + w);  // a + b y <= x + w
                        if (!poly.empty()) poly = clip_linear(poly, Coord(1), y, w - cx[i]);  // a + b y >= x - w
                    }
                if (!poly.empty()) return true;
            }
    return false;
}

// ---------------------------------------------------------------- zig-zag corridor

ZigzagParams zigzag_default(int k, bool feasible) {
    ZigzagParams p;
    for (int i = 0; i < k; ++i) {
        if (feasible)
            p.channel_gaps.push_back({Coord(10), Coord(12), Coord(14)});
        else
            p.channel_gaps.push_back({Coord(10), Coord(12), Coord(17)});
    }
    return p;
}

DomainInstance gen_zigzag(int k, const ZigzagParams& p) {
    if (k < 1) throw std::invalid_argument("zigzag: k must be positive");
    if (static_cast<int>(p.channel_gaps.size()) != k) throw std::invalid_argument("zigzag: one gap triple per channel");
    const Coord W = p.channel_width, w = p.gap_halfwidth, th = p.thickness;
    for (auto& g : p.channel_gaps) {
        if (!g.empty() && g.size() != 3) throw std::invalid_argument("zigzag: channel needs 0 or 3 gaps");
        for (auto& o : g)
            if (o - w <= 0 || o + w >= W) throw std::invalid_argument("zigzag: gap outside channel");
    }
    const Coord B0 = p.turn, B1 = B0 + 2 * p.pocket + 2 * p.spacing, Yt = B1 + p.turn;
    auto X = [&](int i) -> Coord { return Coord(i) * (W + p.wall); };
    const Coord Xmax = X(k - 1) + W;

    struct Band {
        Coord lo, hi, off;
    };
    // bands[i] sorted by increasing height
    std::vector<std::vector<Band>> bands(k);
    for (int i = 0; i < k; ++i) {
        if (p.channel_gaps[i].empty()) continue;
        for (int j = 0; j < 3; ++j) {
            Coord y = (i % 2 == 0) ? Coord(B0 + p.pocket + Coord(j) * p.spacing)
                                   : Coord(B1 - p.pocket - Coord(j) * p.spacing);
            bands[i].push_back({y - th / 2, y + th / 2, p.channel_gaps[i][j]});
        }
        std::sort(bands[i].begin(), bands[i].end(), [](const Band& a, const Band& b) { return a.lo < b.lo; });
    }
    auto right_teeth_up = [&](Ring& R, int i, const Coord& xr) {
        for (auto& b : bands[i]) {
            Coord g = X(i) + b.off + w;
            R.push_back({xr, b.lo});
            R.push_back({g, b.lo});
            R.push_back({g, b.hi});
            R.push_back({xr, b.hi});
        }
    };
    auto left_teeth_down = [&](Ring& R, int i, const Coord& xl) {
        for (auto it = bands[i].rbegin(); it != bands[i].rend(); ++it) {
            Coord g = X(i) + it->off - w;
            R.push_back({xl, it->hi});
            R.push_back({g, it->hi});
            R.push_back({g, it->lo});
            R.push_back({xl, it->lo});
        }
    };

    DomainInstance inst;
    Ring& R = inst.domain.outer;
    R.push_back({Coord(0), Coord(0)});
    for (int i = 0; i + 1 < k; ++i) {
        if (i % 2 != 0) continue;  // channels i, i+1 meet at the top: finger rises from the bottom
        R.push_back({X(i) + W, Coord(0)});
        right_teeth_up(R, i, X(i) + W);
        R.push_back({X(i) + W, B1});
        R.push_back({X(i + 1), B1});
        left_teeth_down(R, i + 1, X(i + 1));
        R.push_back({X(i + 1), Coord(0)});
    }
    R.push_back({Xmax, Coord(0)});
    right_teeth_up(R, k - 1, Xmax);
    R.push_back({Xmax, Yt});
    for (int i = k - 2; i >= 0; --i) {
        if (i % 2 != 1) continue;  // meet at the bottom: finger hangs from the top
        R.push_back({X(i + 1), Yt});
        left_teeth_down(R, i + 1, X(i + 1));
        R.push_back({X(i + 1), B0});
        R.push_back({X(i) + W, B0});
        right_teeth_up(R, i, X(i) + W);
        R.push_back({X(i) + W, Yt});
    }
    R.push_back({Coord(0), Yt});
    left_teeth_down(R, 0, Coord(0));

    Coord delta = th / 8;
    if (bands[0].empty()) {
        inst.s = Point(Coord(1), B0 + p.pocket);
    } else {
        inst.s = Point(Coord(1), bands[0].front().lo - delta);
    }
    int L = k - 1;
    if (bands[L].empty()) {
        inst.t = Point(Xmax - 1, B0 + p.pocket);
    } else if (L % 2 == 0) {
        inst.t = Point(Xmax - 1, bands[L].back().hi + delta);
    } else {
        inst.t = Point(Xmax - 1, bands[L].front().lo - delta);
    }
    return inst;
}

// ---------------------------------------------------------------- random instances

namespace {

using Rng = std::mt19937_64;

long uni(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

// Distinct sorted integers from [lo, hi].
std::vector<long> distinct_sorted(Rng& rng, long lo, long hi, int count) {
    std::set<long> s;
    while (static_cast<int>(s.size()) < count) s.insert(uni(rng, lo, hi));
    return {s.begin(), s.end()};
}

// Histogram polygon over [x0..xc] with flat bottom at y0 and distinct column heights (raw units), CCW.
Ring histogram(Rng& rng, const std::vector<long>& xs, long y0, long ylo, long yhi) {
    int c = static_cast<int>(xs.size()) - 1;
    std::vector<long> hs = distinct_sorted(rng, ylo, yhi, c);
    std::shuffle(hs.begin(), hs.end(), rng);
    Ring r;
    r.push_back({xs[0], y0});
    r.push_back({xs[c], y0});
    for (int i = c - 1; i >= 0; --i) {
        r.push_back({xs[i + 1], hs[i]});
        r.push_back({xs[i], hs[i]});
    }
    return r;
}

int grid_side(int h) {
    int g = 1;
    while (g * g < h) ++g;
    return g;
}

DomainInstance random_rectilinear(int n_target, int h, Rng& rng) {
    const long G = h + 1;  // residue class per ring keeps every supporting line distinct
    int outer_cols = std::max(1, (n_target / (h + 1) - 2) / 2);
    int hole_cols = h > 0 ? std::max(1, ((n_target - (2 * outer_cols + 2)) / h - 2) / 2) : 1;
    int gs = grid_side(h);
    long S = 4 * hole_cols + 12;  // raw box size
    long margin = 2;
    long grid_lo = 2, grid_hi = grid_lo + gs * S;
    long top_lo = grid_hi + 2, top_hi = top_lo + 4 * outer_cols + 8;

    auto scale = [&](const Ring& raw, long res) {
        Ring out;
        for (auto& p : raw) out.push_back({p.x * G + res, p.y * G + res});
        return out;
    };

    DomainInstance inst;
    // outer: skyline over [0, width]
    long width = std::max<long>(grid_hi + grid_lo, 2L * outer_cols + 2);
    std::vector<long> oxs = distinct_sorted(rng, 1, width - 1, outer_cols - 1);
    oxs.insert(oxs.begin(), 0);
    oxs.push_back(width);
    inst.domain.outer = scale(histogram(rng, oxs, 0, top_lo, top_hi), h);

    std::vector<int> cells(gs * gs);
    for (int i = 0; i < gs * gs; ++i) cells[i] = i;
    std::shuffle(cells.begin(), cells.end(), rng);
    for (int j = 0; j < h; ++j) {
        long bx = grid_lo + (cells[j] % gs) * S, by = grid_lo + (cells[j] / gs) * S;
        long lo = margin, hi = S - margin;
        std::vector<long> xs = distinct_sorted(rng, lo, hi, hole_cols + 1);
        long y0 = uni(rng, lo, lo + 2);
        Ring raw = histogram(rng, xs, y0, y0 + 1, hi);
        int mode = static_cast<int>(uni(rng, 0, 7));
        for (auto& p : raw) {
            Coord x = p.x, y = p.y;
            if (mode & 1) std::swap(x, y);
            if (mode & 2) x = Coord(S) - x;
            if (mode & 4) y = Coord(S) - y;
            p = Point(x + bx, y + by);
        }
        Ring hole = scale(raw, j);
        if (sgn(area2(hole)) > 0) std::reverse(hole.begin(), hole.end());
        inst.domain.holes.push_back(hole);
    }
    return inst;
}

// Intersection of slabs perpendicular-offset along each direction: a convex C-oriented polygon.
Ring slab_polygon(const std::vector<Direction>& dirs, const Point& c, const std::vector<std::pair<long, long>>& offs,
                  const Coord& big) {
    std::vector<Point> poly{{c.x - big, c.y - big}, {c.x + big, c.y - big}, {c.x + big, c.y + big}, {c.x - big, c.y + big}};
    for (size_t i = 0; i < dirs.size() && !poly.empty(); ++i) {
        Point d = dirs[i].vec();
        // keep cross(d, p - c) in [-lo, hi]
        Point n(-d.y, d.x);
        Point base_lo = c - n * Coord(offs[i].first, 1) * (1 / dot(n, n));
        Point base_hi = c + n * Coord(offs[i].second, 1) * (1 / dot(n, n));
        poly = clip_halfplane(poly, base_lo, base_lo + d);        // left of d through base_lo
        poly = clip_halfplane(poly, base_hi + d, base_hi);        // right of d through base_hi
    }
    return poly;
}

DomainInstance random_coriented(int n_target, int h, const OrientationSet& C, Rng& rng) {
    if (uni(rng, 0, 1) == 1) {
        // a random rectilinear domain under the integer map (1,0) -> c1, (0,1) -> c2
        const auto& dirs = C.dirs;
        Direction a = dirs[0], b = dirs[uni(rng, 1, static_cast<long>(dirs.size()) - 1)];
        if (a.dx * b.dy - a.dy * b.dx < 0) std::swap(a, b);
        DomainInstance inst = random_rectilinear(n_target, h, rng);
        auto map = [&](Ring& r) {
            for (auto& p : r) p = Point(p.x * a.dx + p.y * b.dx, p.x * a.dy + p.y * b.dy);
        };
        map(inst.domain.outer);
        for (auto& hr : inst.domain.holes) map(hr);
        return inst;
    }
    int gs = grid_side(h);
    long S = 40;
    DomainInstance inst;
    const auto& dirs = C.dirs;
    for (int attempt = 0;; ++attempt) {
        std::vector<int> cells(gs * gs);
        for (int i = 0; i < gs * gs; ++i) cells[i] = i;
        std::shuffle(cells.begin(), cells.end(), rng);
        inst.domain.holes.clear();
        bool ok = true;
        for (int j = 0; j < h && ok; ++j) {
            long bx = (cells[j] % gs) * S, by = (cells[j] / gs) * S;
            Point c(bx + S / 2 + uni(rng, -3, 3), by + S / 2 + uni(rng, -3, 3));
            Ring poly;
            for (int shrink = 0; shrink < 8; ++shrink) {
                std::vector<std::pair<long, long>> offs;
                for (auto& d : dirs) {
                    long nrm = std::max(std::labs(d.dx), std::labs(d.dy));
                    long r = std::max(2L, (S / 2 - 4) >> shrink);
                    offs.push_back({uni(rng, r / 3 + 1, r) * nrm, uni(rng, r / 3 + 1, r) * nrm});
                }
                poly = slab_polygon(dirs, c, offs, Coord(4 * S));
                bool inside = poly.size() >= 3;
                for (auto& p : poly)
                    if (p.x <= bx + 1 || p.x >= bx + S - 1 || p.y <= by + 1 || p.y >= by + S - 1) inside = false;
                if (inside) break;
                poly.clear();
            }
            if (poly.empty()) {
                ok = false;
                break;
            }
            std::reverse(poly.begin(), poly.end());
            inst.domain.holes.push_back(poly);
        }
        if (!ok) {
            if (attempt > 20) throw std::runtime_error("gen_random: could not place C-oriented holes");
            continue;
        }
        // outer: slab polygon around the grid with margin
        Point c(gs * S / 2, gs * S / 2);
        std::vector<std::pair<long, long>> offs;
        for (auto& d : dirs) {
            Point dv = d.vec();
            Coord lo = 0, hi = 0;
            for (long cx : {0L, gs * S})
                for (long cy : {0L, gs * S}) {
                    Coord v = cross(dv, Point(cx, cy) - c);
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            long nrm = std::max(std::labs(d.dx), std::labs(d.dy));
            Coord nlo = -lo;
            offs.push_back({nlo.get_num().get_si() + uni(rng, 2, 12) * nrm, hi.get_num().get_si() + uni(rng, 2, 12) * nrm});
        }
        inst.domain.outer = slab_polygon(dirs, c, offs, Coord(8 * gs * S));
        break;
    }
    // scale to integers
    mpz_class L = 1;
    auto acc = [&](const Ring& r) {
        for (auto& p : r) {
            L = lcm(L, p.x.get_den());
            L = lcm(L, p.y.get_den());
        }
    };
    acc(inst.domain.outer);
    for (auto& hr : inst.domain.holes) acc(hr);
    Coord Lq(L);
    for (auto& p : inst.domain.outer) p = p * Lq;
    for (auto& hr : inst.domain.holes)
        for (auto& p : hr) p = p * Lq;
    return inst;
}

Ring convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    Ring h(2 * pts.size());
    size_t k = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && orient(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && orient(h[k - 2], h[k - 1], pts[i - 1]) <= 0) --k;
        h[k++] = pts[i - 1];
    }
    h.resize(k - 1);
    return h;
}

Ring jittered_circle(Rng& rng, double cx, double cy, double r, int m, double jitter) {
    std::vector<Point> pts;
    std::uniform_real_distribution<double> ja(-jitter, jitter);
    for (int i = 0; i < m; ++i) {
        double a = 2 * std::numbers::pi * (i + ja(rng) * 0.4) / m;
        double rr = r * (1 + ja(rng) * 0.1);
        pts.push_back({std::lround(cx + rr * std::cos(a)), std::lround(cy + rr * std::sin(a))});
    }
    return convex_hull(pts);
}

DomainInstance random_general(int n_target, int h, Rng& rng) {
    int gs = grid_side(h);
    int per_hole = h > 0 ? std::clamp((n_target - 8) / h, 3, 10) : 3;
    int outer_m = std::max(6, n_target - per_hole * h);
    long S = 12 + 3 * per_hole;
    DomainInstance inst;
    std::vector<int> cells(gs * gs);
    for (int i = 0; i < gs * gs; ++i) cells[i] = i;
    std::shuffle(cells.begin(), cells.end(), rng);
    for (int j = 0; j < h; ++j) {
        double bx = (cells[j] % gs) * S, by = (cells[j] / gs) * S;
        Ring poly;
        do {
            poly = jittered_circle(rng, bx + S / 2.0, by + S / 2.0, S / 2.0 - 3, per_hole, 1.0);
        } while (poly.size() < 3);
        std::reverse(poly.begin(), poly.end());
        inst.domain.holes.push_back(poly);
    }
    double half = gs * S / 2.0;
    double R = half * std::sqrt(2.0) + 6;
    R /= std::cos(std::numbers::pi / outer_m);
    R += 4;
    inst.domain.outer = jittered_circle(rng, half, half, R, outer_m, 0.5);
    return inst;
}

}  // namespace

Point sample_free_point(const PolygonalDomain& d, const std::vector<Direction>& dirs, uint64_t seed) {
    Rng rng(seed * 0x9E3779B97F4A7C15ULL + 12345);
    Coord xmin = d.outer[0].x, xmax = xmin, ymin = d.outer[0].y, ymax = ymin;
    for (auto& p : d.outer) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    const long D = 97;
    for (int it = 0; it < 100000; ++it) {
        Coord fx = frac(uni(rng, 1, D * 64 - 1), D * 64), fy = frac(uni(rng, 1, D * 64 - 1), D * 64);
        Point p(xmin + (xmax - xmin) * fx, ymin + (ymax - ymin) * fy);
        if (!in_open_free(d, p)) continue;
        bool general = true;
        for (int r = 0; r < d.ring_count() && general; ++r)
            for (auto& v : d.ring(r)) {
                for (auto& dir : dirs)
                    if (along(dir, v, p) == 0) {
                        general = false;
                        break;
                    }
                if (!general) break;
            }
        if (general) return p;
    }
    throw std::runtime_error("sample_free_point: no point found");
}

DomainInstance gen_random(GenKind kind, int n_target, int h_target, const std::optional<OrientationSet>& C,
                          uint64_t seed) {
    if (h_target < 0 || n_target < 3) throw std::invalid_argument("gen_random: bad size parameters");
    Rng rng(seed * 1000003ULL + static_cast<uint64_t>(kind) * 7919ULL + 17);
    for (int attempt = 0; attempt < 10; ++attempt) {
        DomainInstance inst;
        std::vector<Direction> dirs;
        switch (kind) {
            case GenKind::Rectilinear:
                inst = random_rectilinear(n_target, h_target, rng);
                inst.orientations = OrientationSet::rectilinear();
                dirs = inst.orientations->dirs;
                break;
            case GenKind::COriented:
                if (!C) throw std::invalid_argument("gen_random: c_oriented needs an orientation set");
                inst = random_coriented(n_target, h_target, *C, rng);
                inst.orientations = *C;
                dirs = C->dirs;
                break;
            case GenKind::General:
                inst = random_general(n_target, h_target, rng);
                if (C) {
                    inst.orientations = *C;
                    dirs = C->dirs;
                }
                break;
        }
        normalize_orientation(inst.domain);
        if (has_errors(validate(inst.domain))) continue;
        inst.s = sample_free_point(inst.domain, dirs, rng());
        inst.t = sample_free_point(inst.domain, dirs, rng());
        return inst;
    }
    throw std::runtime_error("gen_random: generation failed after retries");
}

}  // namespace lp
