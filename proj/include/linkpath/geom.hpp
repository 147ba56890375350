#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace lp {

using Coord = mpq_class;

// Reduced rational n/d (mpq_class(n, d) alone does not canonicalize).
inline Coord frac(long n, long d) {
    Coord c(n, d);
    c.canonicalize();
    return c;
}

struct Point {
    Coord x, y;

    Point() = default;
    Point(Coord x_, Coord y_) : x(std::move(x_)), y(std::move(y_)) {}
    Point(long x_, long y_) : x(x_), y(y_) {}

    bool operator==(const Point& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Point& o) const { return !(*this == o); }
    bool operator<(const Point& o) const { return x < o.x || (x == o.x && y < o.y); }

    Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
    Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
    Point operator*(const Coord& k) const { return {x * k, y * k}; }
};

// Primitive integer direction, canonical half-plane: dy > 0, or dy == 0 and dx > 0.
struct Direction {
    long dx = 1, dy = 0;

    Direction() = default;
    Direction(long dx_, long dy_);   // normalizes; throws on (0,0)

    bool operator==(const Direction& o) const { return dx == o.dx && dy == o.dy; }
    bool operator!=(const Direction& o) const { return !(*this == o); }
    Point vec() const { return Point(dx, dy); }
};

struct Segment {
    Point a, b;
    Segment() = default;
    Segment(Point a_, Point b_) : a(std::move(a_)), b(std::move(b_)) {}
    bool degenerate() const { return a == b; }
};

int sgn(const Coord& v);
Coord cross(const Point& a, const Point& b);
Coord dot(const Point& a, const Point& b);

int orient(const Point& p, const Point& q, const Point& r);
int along(const Direction& d, const Point& p, const Point& q);

// Is p on the closed segment ab?
bool on_segment(const Point& p, const Point& a, const Point& b);

struct Intersection {
    enum Kind { Empty, PointHit, Overlap } kind = Empty;
    Point p, q;   // PointHit uses p; Overlap is the segment p-q
};

Intersection segments_intersect(const Segment& s1, const Segment& s2);

// Proper crossing: interiors meet at a single point not an endpoint of either.
bool segments_cross_properly(const Segment& s1, const Segment& s2);

// Intersection of the lines through ab and cd, if not parallel.
std::optional<Point> line_intersection(const Point& a, const Point& b, const Point& c, const Point& d);

// Twice the signed area.
Coord area2(const std::vector<Point>& poly);

// -1 outside, 0 on boundary, +1 inside (any orientation, simple ring).
int point_in_ring(const Point& p, const std::vector<Point>& ring);

// Clip a convex polygon (any vertex order kept) against the half-plane left of or on a->b.
std::vector<Point> clip_halfplane(const std::vector<Point>& poly, const Point& a, const Point& b);

// Intersection of two convex polygons given counterclockwise. Degenerate results
// (segments, points) are returned as their vertex lists.
std::vector<Point> convex_intersection(const std::vector<Point>& subject, const std::vector<Point>& ccw_clip);

double to_double(const Coord& c);
std::string to_string(const Coord& c);
std::string to_string(const Point& p);
Point midpoint(const Point& a, const Point& b);

}  // namespace lp
