#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "linkpath/domain.hpp"
#include "linkpath/geom.hpp"

namespace lp {

// Non-crossing spanning tree of the points with few crossings per line, built by
// multiplicative reweighting of a test set of lines. Returns index pairs.
std::vector<std::pair<int, int>> low_stab_spanning_tree(const std::vector<Point>& pts, uint64_t seed = 1);

struct BridgeSet {
    std::vector<Segment> bridges;
    std::vector<std::pair<int, int>> rings;  // rings joined by each bridge (0 = outer)
    size_t h = 0;
};

BridgeSet compute_bridges(const PolygonalDomain& d);

// Bridges crossed by the infinite line through a and b. A collinear overlap counts once,
// touching an endpoint counts zero.
int stabbing_count(const BridgeSet& B, const Point& a, const Point& b);

// Free space minus the bridges is connected (checked by walking the cut boundary).
bool bridges_valid(const PolygonalDomain& d, const BridgeSet& B);

// Ear clipping of a weakly simple counterclockwise walk; returns walk index triples.
std::vector<std::array<int, 3>> triangulate_walk(const std::vector<Point>& walk);

struct CutTriangle {
    std::array<int, 3> v;       // walk indices, counterclockwise
    std::array<int, 3> nb;      // triangle across side (v[i], v[i+1]) inside the cut polygon, -1 on the boundary
    std::array<int, 3> bridge;  // bridge index if that side is a bridge copy, else -1
    std::array<int, 3> partner; // triangle on the far side of that bridge
};

struct CutPolygon {
    std::vector<Point> walk;      // boundary walk, counterclockwise, bridges traversed twice
    std::vector<int> walk_bridge;  // per walk edge (i, i+1): bridge index or -1
    std::vector<CutTriangle> tris;

    int locate(const Point& q) const;  // a triangle containing q (closed), -1 if none
    std::vector<Point> triangle(int t) const { return {walk[tris[t].v[0]], walk[tris[t].v[1]], walk[tris[t].v[2]]}; }
};

CutPolygon cut_polygon(const PolygonalDomain& d, const BridgeSet& B);

// The dual (interior adjacency only) is a tree.
bool dual_is_tree(const CutPolygon& cp);

}  // namespace lp
