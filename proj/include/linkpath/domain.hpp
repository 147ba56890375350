#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linkpath/geom.hpp"

namespace lp {

using Ring = std::vector<Point>;

// Directed boundary edge; free space lies to its left.
struct Edge {
    Point a, b;
    int ring;    // 0 = outer, i+1 = hole i
    int index;   // vertex index of a inside its ring
};

struct PolygonalDomain {
    Ring outer;               // counterclockwise
    std::vector<Ring> holes;  // each clockwise

    size_t n() const;
    size_t h() const { return holes.size(); }
    const Ring& ring(int r) const { return r == 0 ? outer : holes[r - 1]; }
    int ring_count() const { return 1 + static_cast<int>(holes.size()); }
    std::vector<Edge> edges() const;
    bool operator==(const PolygonalDomain& o) const { return outer == o.outer && holes == o.holes; }
};

struct OrientationSet {
    std::vector<Direction> dirs;  // sorted by angle in [0, 180)

    OrientationSet() = default;
    explicit OrientationSet(std::vector<Direction> d);  // sorts, rejects duplicates and C < 2
    size_t C() const { return dirs.size(); }
    bool contains(const Direction& d) const;
    static OrientationSet rectilinear() { return OrientationSet({Direction(1, 0), Direction(0, 1)}); }
};

struct DomainInstance {
    PolygonalDomain domain;
    Point s;
    std::optional<Point> t;
    std::optional<OrientationSet> orientations;
};

struct Violation {
    std::string what;
    int ring = -1;
    int vertex = -1;
    bool warning = false;
};

// Orientation of a directed edge as an undirected, canonical direction.
Direction edge_direction(const Point& a, const Point& b);

std::vector<Violation> validate(const PolygonalDomain& d);
bool has_errors(const std::vector<Violation>& v);
bool has_same_line_edges(const std::vector<Violation>& v);
bool is_c_oriented(const PolygonalDomain& d, const OrientationSet& C);

// Reverse rings so the outer ring is counterclockwise and holes are clockwise.
void normalize_orientation(PolygonalDomain& d);

// -1 outside free space, 0 on its boundary, +1 strictly inside.
int classify_point(const PolygonalDomain& d, const Point& p);
inline bool in_closed_free(const PolygonalDomain& d, const Point& p) { return classify_point(d, p) >= 0; }
inline bool in_open_free(const PolygonalDomain& d, const Point& p) { return classify_point(d, p) > 0; }
// Closed segment ab lies in the closed free space (grazing allowed).
bool segment_in_free(const PolygonalDomain& d, const Point& a, const Point& b);
Coord free_area2(const PolygonalDomain& d);

// JSON document IO.
std::string instance_to_json(const DomainInstance& inst);
DomainInstance instance_from_json(const std::string& text);
DomainInstance load_instance(const std::string& path);
void save_instance(const DomainInstance& inst, const std::string& path);
Coord parse_coord(const std::string& s);

// Point lists (paths) as a JSON array, or an object with a "path" array.
std::vector<Point> points_from_json(const std::string& text);
std::string points_to_json(const std::vector<Point>& pts);
// Orientation lists as a JSON array of [dx, dy], or an object with an "orientations" array.
OrientationSet orientations_from_json(const std::string& text);

// Generators.
struct GapSpec {
    int line;  // 1..3
    Coord x;
};

struct GeomBaseParams {
    Coord y1 = 2, y2 = 4, y3 = 6;
    Coord gap_halfwidth = Coord(1, 4);
    std::optional<Coord> thickness;  // defaults to a quarter of the smaller line spacing
    Coord margin = 4;                // horizontal room beyond the outermost gaps
};

DomainInstance gen_geombase(const std::vector<GapSpec>& gaps, const GeomBaseParams& p = {});

// Exact test: some line passes through all three gap tunnels of a gadget triple.
bool geombase_triple_stabbable(const std::vector<GapSpec>& gaps, const GeomBaseParams& p);

struct ZigzagParams {
    // Gap x-offsets inside a channel, listed in traversal order (first slab crossed first).
    std::vector<std::vector<Coord>> channel_gaps;  // one entry of three offsets per channel; empty = no slabs
    Coord channel_width = 24;
    Coord wall = 2;
    Coord spacing = 12;      // distance between consecutive slabs
    Coord thickness = Coord(1, 4);
    Coord gap_halfwidth = Coord(1, 2);
    Coord pocket = 20;       // vertical room below the first and above the last slab of a channel
    Coord turn = 60;         // height of the turn region joining two channels
};

DomainInstance gen_zigzag(int k, const ZigzagParams& p);
// Convenience: k copies of one gadget, feasible (collinear) or not.
ZigzagParams zigzag_default(int k, bool feasible);

enum class GenKind { Rectilinear, COriented, General };

DomainInstance gen_random(GenKind kind, int n_target, int h_target, const std::optional<OrientationSet>& C,
                          uint64_t seed);

// Random point strictly inside free space and off every line of the given orientations
// through a vertex (general position for the seed chords).
Point sample_free_point(const PolygonalDomain& d, const std::vector<Direction>& dirs, uint64_t seed);

}  // namespace lp
