#pragma once

#include <optional>
#include <vector>

#include "linkpath/corilink.hpp"

namespace lp {

// True iff no orientation of C has a line meeting both bases of the cell.
bool detect_problematic(const Trapezoidation& T, int cell, const OrientationSet& C);

// Side geometry of a problematic cell, normalised so that light enters from below:
// frame point f maps to flip * f, S1 is the left side and S2 the right side.
struct ZigzagGeom {
    int flip = 1;
    Point a1, b1, a2, b2;  // two points on each side line
    Point e12, e21;        // descending link directions S1 -> S2 and S2 -> S1
    int c1 = -1, c2 = -1;  // indices into C of the extreme orientations used by e21 and e12
};

enum class ZigzagMethod { Simulation, ClosedForm };

// Minimum links of a zigzag from normalised point q (first link horizontal) that lands on S1 at
// height <= h1 or on S2 at height <= h2. nullopt if no zigzag ever gets there (within cap links).
std::optional<int> zigzag_links(const ZigzagGeom& g, const Point& q, const std::optional<Coord>& h1,
                                const std::optional<Coord>& h2,
                                ZigzagMethod method = ZigzagMethod::Simulation, int cap = 100000);

struct ZigzagCell {
    int map = -1, cell = -1;  // parent problematic cell
    ZigzagGeom geom;
    int base_label = 0;       // step at which the parent was first lit
    Point h1, h2;             // anchors on S1 and S2 (original coordinates)
    std::optional<Coord> h1n, h2n;  // their normalised heights (nullopt: side never lit)
    Coord cut_lo, cut_hi;     // normalised heights covered by the cell
    std::vector<Point> region;  // original coordinates
    // Both bases have positive length: the zigzag bands were written into the map as lit pieces
    // and the region is answered by the map itself.
    bool banded = false;
    std::vector<Coord> band_tops;  // normalised top of the band lit at step base_label + 3 + i

    // Label of a point of the region (original coordinates); nullopt if not reached.
    std::optional<int> label(const CMap& m, const Point& q) const;
    bool contains(const CMap& m, const Point& q) const;
};

struct ArbitraryLinkMap {
    CoriLinkMap L;
    std::vector<ZigzagCell> zigzags;
    std::vector<std::pair<int, int>> problematic;  // (map, cell)
    int straddle_assert_violations = 0;  // non-problematic partially lit cells needing more than 4 steps
};

ArbitraryLinkMap build_arbitrary_linkmap(const PolygonalDomain& d, const OrientationSet& C, const Point& s,
                                         const EngineOptions& opt = {});
int query_arbitrary(const ArbitraryLinkMap& A, const Point& q);

// 2-approximate map: horizontal trapezoidation only, every second link horizontal.
struct ApproxMap2 {
    OrientationSet C;
    Point s;
    PolygonalDomain domain;
    CMap H;  // horizontal decomposition with label bands
    int steps = 0;
    struct Pred {
        int piece = -1;   // source band (-1 for s itself)
        int dir = -1;     // index into C of the link orientation
    };
    std::vector<Pred> pred;  // per piece id
};

ApproxMap2 build_2approx_map(const PolygonalDomain& d, const OrientationSet& C, const Point& s);
// Band label of q, or one more than the best band that sees q along a non-horizontal orientation.
int query_2approx(const ApproxMap2& A, const Point& q);
std::vector<Point> extract_2approx_path(const PolygonalDomain& d, const ApproxMap2& A, const Point& q);

}  // namespace lp
