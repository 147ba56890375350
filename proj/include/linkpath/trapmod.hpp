#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "linkpath/domain.hpp"
#include "linkpath/geom.hpp"

namespace lp {

// Exact frame for orientation c: u runs along c, w is the height across it.
//   u = cx*x + cy*y,  w = cx*y - cy*x
// The map is a scaled rotation, so orientation and incidence are preserved.
struct Frame {
    Direction c;
    Coord cx, cy, n2;

    Frame() : Frame(Direction(1, 0)) {}
    explicit Frame(const Direction& d) : c(d), cx(d.dx), cy(d.dy), n2(d.dx * d.dx + d.dy * d.dy) {}
    Point to(const Point& p) const { return Point(cx * p.x + cy * p.y, cx * p.y - cy * p.x); }
    Point from(const Point& f) const { return Point((cx * f.x - cy * f.y) / n2, (cy * f.x + cx * f.y) / n2); }
    Coord height(const Point& p) const { return cx * p.y - cy * p.x; }
};

// Boundary edge seen in a frame. Free space is on its left.
struct TEdge {
    Point p, q;        // frame coordinates, directed
    bool horizontal;   // parallel to c
    bool upward;       // q above p (non-horizontal only)
    Coord wlo, whi;
    Coord a, b;        // u = a + b*w (non-horizontal only)
    Coord u_at(const Coord& w) const { return a + b * w; }
};

struct Trapezoid {
    int id = -1;
    Coord lo, hi;                     // heights of the lower and upper base
    int left = -1, right = -1;        // side edges (non-horizontal)
    std::vector<int> lower_edges;     // horizontal boundary edges lying on the lower base
    std::vector<int> upper_edges;
    std::vector<int> upper_nb, lower_nb;
};

class Trapezoidation {
public:
    Frame frame;
    std::vector<TEdge> edges;
    std::vector<Trapezoid> cells;
    std::vector<std::vector<int>> support;   // per edge: cells having it as a side, by height
    std::vector<int> cell_above, cell_below; // per horizontal edge: the cell on its free side

    Coord uL(int cell, const Coord& w) const { return edges[cells[cell].left].u_at(w); }
    Coord uR(int cell, const Coord& w) const { return edges[cells[cell].right].u_at(w); }

    // Cell outline in original coordinates, counterclockwise, duplicate corners removed.
    std::vector<Point> polygon(int cell) const;
    std::vector<Point> frame_polygon(int cell) const;
    Segment lower_base(int cell) const;
    Segment upper_base(int cell) const;

    // Closed containment in frame coordinates.
    bool contains_frame(int cell, const Point& f) const;
    // All cells whose closure contains the frame point (ascending id).
    std::vector<int> cells_at_frame(const Point& f) const;
    // Cell containing q (original coordinates); ties go to the smallest id.
    int locate(const Point& q) const;
    // Cell of L(e) whose side interval contains height w; at a shared vertex the upper one.
    int support_cell(int edge, const Coord& w) const;

    std::vector<Coord> heights;  // distinct vertex heights, ascending

    Trapezoidation() = default;
    Trapezoidation(const Trapezoidation& o);
    Trapezoidation& operator=(const Trapezoidation& o);
    Trapezoidation(Trapezoidation&&) noexcept = default;
    Trapezoidation& operator=(Trapezoidation&&) noexcept = default;

private:
    const std::vector<int>& slab(size_t i) const;
    mutable std::unique_ptr<std::mutex> slab_mu_ = std::make_unique<std::mutex>();
    mutable std::map<size_t, std::vector<int>> slabs_;
};

// Decomposition of the free space bounded by the given directed edges (free on the left).
Trapezoidation build_trapezoidation(const std::vector<Segment>& directed_edges, const Direction& c);
Trapezoidation build_trapezoidation(const PolygonalDomain& d, const Direction& c);

// The cell a parallelogram with lower base {w} x [u1,u2] (frame coordinates) is planted in.
// base_edge >= 0: the lower base lies on that horizontal boundary edge.
// vertex_edge >= 0: the lower base starts at a vertex on that side edge (flush case).
int pot_of(const Trapezoidation& t, const Coord& w, const Coord& u1, const Coord& u2, int base_edge = -1,
           int vertex_edge = -1);

}  // namespace lp
