#include "linkpath/geom.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace lp {

Direction::Direction(long dx_, long dy_) {
    if (dx_ == 0 && dy_ == 0) throw std::invalid_argument("direction (0,0)");
    long g = std::gcd(std::labs(dx_), std::labs(dy_));
    dx_ /= g;
    dy_ /= g;
    if (dy_ < 0 || (dy_ == 0 && dx_ < 0)) {
        dx_ = -dx_;
        dy_ = -dy_;
    }
    dx = dx_;
    dy = dy_;
}

int sgn(const Coord& v) { return mpq_sgn(v.get_mpq_t()); }

Coord cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
Coord dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }

int orient(const Point& p, const Point& q, const Point& r) { return sgn(cross(q - p, r - p)); }

int along(const Direction& d, const Point& p, const Point& q) { return sgn(cross(d.vec(), q - p)); }

bool on_segment(const Point& p, const Point& a, const Point& b) {
    if (orient(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

std::optional<Point> line_intersection(const Point& a, const Point& b, const Point& c, const Point& d) {
    Point r = b - a, s = d - c;
    Coord den = cross(r, s);
    if (sgn(den) == 0) return std::nullopt;
    Coord t = cross(c - a, s) / den;
    return a + r * t;
}

Intersection segments_intersect(const Segment& s1, const Segment& s2) {
    Intersection out;
    const Point &a = s1.a, &b = s1.b, &c = s2.a, &d = s2.b;
    int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 == 0 && o2 == 0) {
        // collinear (or degenerate): project on the dominant axis
        bool use_x = a.x != b.x || (a.x == b.x && c.x != d.x);
        auto key = [&](const Point& p) -> const Coord& { return use_x ? p.x : p.y; };
        Point lo1 = a, hi1 = b, lo2 = c, hi2 = d;
        if (key(hi1) < key(lo1)) std::swap(lo1, hi1);
        if (key(hi2) < key(lo2)) std::swap(lo2, hi2);
        if (a == b && c == d) {
            if (a == c) { out.kind = Intersection::PointHit; out.p = a; }
            return out;
        }
        if (a == b) {
            if (on_segment(a, c, d)) { out.kind = Intersection::PointHit; out.p = a; }
            return out;
        }
        if (c == d) {
            if (on_segment(c, a, b)) { out.kind = Intersection::PointHit; out.p = c; }
            return out;
        }
        const Point& lo = key(lo1) < key(lo2) ? lo2 : lo1;
        const Point& hi = key(hi1) < key(hi2) ? hi1 : hi2;
        if (key(hi) < key(lo)) return out;
        if (lo == hi) {
            out.kind = Intersection::PointHit;
            out.p = lo;
        } else {
            out.kind = Intersection::Overlap;
            out.p = lo;
            out.q = hi;
        }
        return out;
    }
    if (o1 * o2 > 0 || o3 * o4 > 0) return out;
    if (a == b) {
        if (on_segment(a, c, d)) { out.kind = Intersection::PointHit; out.p = a; }
        return out;
    }
    if (c == d) {
        if (on_segment(c, a, b)) { out.kind = Intersection::PointHit; out.p = c; }
        return out;
    }
    if (o3 == 0 && o4 == 0) {
        // s2 degenerate-collinear handled above; here s1 is a point-like case
        return out;
    }
    auto p = line_intersection(a, b, c, d);
    if (!p) return out;
    out.kind = Intersection::PointHit;
    out.p = *p;
    return out;
}

bool segments_cross_properly(const Segment& s1, const Segment& s2) {
    int o1 = orient(s1.a, s1.b, s2.a), o2 = orient(s1.a, s1.b, s2.b);
    int o3 = orient(s2.a, s2.b, s1.a), o4 = orient(s2.a, s2.b, s1.b);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

Coord area2(const std::vector<Point>& poly) {
    Coord s = 0;
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) s += cross(poly[i], poly[(i + 1) % n]);
    return s;
}

int point_in_ring(const Point& p, const std::vector<Point>& ring) {
    size_t n = ring.size();
    bool inside = false;
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point &a = ring[j], &b = ring[i];
        const Coord &ylo = a.y < b.y ? a.y : b.y, &yhi = a.y < b.y ? b.y : a.y;
        if (p.y < ylo || yhi < p.y) continue;
        const Coord &xlo = a.x < b.x ? a.x : b.x, &xhi = a.x < b.x ? b.x : a.x;
        if (xhi < p.x) continue;
        if (p.x < xlo) {
            if ((a.y <= p.y) != (b.y <= p.y)) inside = !inside;
            continue;
        }
        if (on_segment(p, a, b)) return 0;
        bool up = (a.y <= p.y) != (b.y <= p.y);
        if (up) {
            // x coordinate of the edge at height p.y compared with p.x
            Coord xint = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < xint) inside = !inside;
        }
    }
    return inside ? 1 : -1;
}

std::vector<Point> clip_halfplane(const std::vector<Point>& poly, const Point& a, const Point& b) {
    std::vector<Point> out;
    size_t n = poly.size();
    if (n == 0) return out;
    auto push = [&](const Point& p) {
        if (out.empty() || out.back() != p) out.push_back(p);
    };
    for (size_t i = 0; i < n; ++i) {
        const Point& p = poly[i];
        const Point& q = poly[(i + 1) % n];
        int sp = orient(a, b, p), sq = orient(a, b, q);
        if (sp >= 0) push(p);
        if ((sp > 0 && sq < 0) || (sp < 0 && sq > 0)) {
            auto x = line_intersection(p, q, a, b);
            if (x) push(*x);
        }
    }
    if (out.size() > 1 && out.front() == out.back()) out.pop_back();
    return out;
}

std::vector<Point> convex_intersection(const std::vector<Point>& subject, const std::vector<Point>& ccw_clip) {
    std::vector<Point> cur = subject;
    size_t m = ccw_clip.size();
    for (size_t i = 0; i < m && !cur.empty(); ++i) {
        const Point& a = ccw_clip[i];
        const Point& b = ccw_clip[(i + 1) % m];
        if (a == b) continue;
        cur = clip_halfplane(cur, a, b);
    }
    return cur;
}

double to_double(const Coord& c) { return c.get_d(); }

std::string to_string(const Coord& c) { return c.get_str(); }

std::string to_string(const Point& p) { return "(" + p.x.get_str() + "," + p.y.get_str() + ")"; }

Point midpoint(const Point& a, const Point& b) { return Point((a.x + b.x) / 2, (a.y + b.y) / 2); }

}  // namespace lp
