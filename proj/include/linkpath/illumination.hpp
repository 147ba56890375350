#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "linkpath/bridging.hpp"
#include "linkpath/domain.hpp"

namespace lp {

struct Color {
    int id = 0;      // 0 = s, b+1 = bridge b
    int weight = 1;  // number of colors merged into this one
};

struct LightRecord {
    int color = 0;
    int stage = 0;
    int entry_side = -1;  // side of the triangle the light came through, -1 at a light source
    int src_tri = -1;     // triangle holding the emitting window (or the far side of a bridge)
    int src_rec = -1;     // record index inside src_tri
    Point x;              // sightline start on the window (s for the first stage)
    Point y;              // sightline end inside this triangle
};

struct TriangleLight {
    int stage = -1;  // first stage lit, -1 while dark
    std::vector<LightRecord> records;
    bool blocked = false;  // holds m records and stops every other color
};

struct StageEvent {
    int stage = 0;
    int lit = 0;        // records added
    int blockings = 0;
    int merges = 0;
};

struct IlluminationMap {
    int m = 1;
    bool merging = false;
    std::vector<TriangleLight> tris;
    std::vector<std::array<Point, 3>> tri_geom;
    std::vector<std::array<int, 2>> bridge_side_stage;  // stage a bridge side was first lit, -1 if never
    std::vector<Color> colors;                          // final weights per color root
    std::vector<StageEvent> log;
    int merges = 0;
    int final_stage = 0;
};

struct LinkProvenance {
    int stage = 0;
    int color = 0;
    bool added_turn = false;  // link realizes the extra turn inside a lit triangle
};

struct ApproxPath {
    bool ok = false;
    std::vector<Point> pts;
    int links = 0;
    std::vector<LinkProvenance> prov;
    std::string failure;
    std::vector<int> lit_triangles;  // diagnostic when t was never reached
};

struct IlluminationResult {
    ApproxPath path;
    IlluminationMap map;
};

// Staged illumination of the cut polygon with m-blocking.
IlluminationResult illuminate(const PolygonalDomain& d, const BridgeSet& B, const CutPolygon& cp, const Point& s,
                              const Point& t, int m);
// m = 1 with weighted color merging and heaviest-first propagation.
IlluminationResult illuminate_merging(const PolygonalDomain& d, const BridgeSet& B, const CutPolygon& cp,
                                      const Point& s, const Point& t);
// Runs until nothing new is lit, producing a map over the whole free space.
IlluminationMap illumination_map(const PolygonalDomain& d, const BridgeSet& B, const CutPolygon& cp, const Point& s,
                                 int m, bool merging = false);

// Stage of the first lit triangle containing q; nullopt if every such triangle stayed dark.
std::optional<int> approx_distance_query(const IlluminationMap& map, const Point& q);

// Triangles with stage label <= k, per stage k = 1..final (one frame per stage).
std::vector<std::vector<int>> stage_frames(const IlluminationMap& map);

}  // namespace lp
