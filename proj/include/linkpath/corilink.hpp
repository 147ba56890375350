#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "linkpath/domain.hpp"
#include "linkpath/trapmod.hpp"

namespace lp {

constexpr int kDark = 0;
constexpr int kZigzag = -1;  // frozen part of a problematic cell, answered by a zigzag formula

enum class LightMode { None, Seed, Flush, Straddle };

// A height band [lo, hi] of one D0 cell with a single label and a single predecessor.
// The seed chord through s is stored as a band of zero height.
struct Piece {
    int cell = -1;
    Coord lo, hi;
    int label = kDark;
    int src_map = -1, src_piece = -1;  // predecessor piece (src_piece = -1 at the seed)
    LightMode mode = LightMode::None;
    bool degenerate() const { return lo == hi; }
};

struct CMap {
    Direction c;
    Trapezoidation T;
    std::vector<Piece> pieces;                // stable ids
    std::vector<std::vector<int>> cell_pieces; // per D0 cell, ordered by height
    int seed_cell = -1;
    Coord seed_height;

    std::vector<Point> piece_polygon(int piece) const;        // original coordinates
    std::vector<Point> piece_frame_polygon(int piece) const;  // this map's frame
    // Label runs per D0 cell: (lo, hi, label) with equal neighbours merged.
    std::vector<std::tuple<Coord, Coord, int>> runs(int cell) const;
};

struct EngineStats {
    int steps = 0;
    long events = 0;
    long flush_lights = 0, straddle_lights = 0;
    int max_subcells = 0;            // largest number of label runs in one D0 cell
    int split_violations = 0;        // cells with more than 3 runs
    int window_violations = 0;       // queued pieces whose final labels leave [k-4, k+2]
    int max_steps_per_cell = 0;      // empirical maximum of BFS steps a cell was queued in
    int steps_per_cell_violations = 0;
    int pot_overlap_failures = 0;    // rectilinear mode: a pot that does not overlap its parallelogram
    int straddle_partial_nonflush = 0;  // straddle detections that lit only part of a piece without a shared side
    int remainder_violations = 0;    // partially lit cells not finished one step later
    int dark_left = 0;               // non-degenerate pieces never lit
};

struct EngineOptions {
    bool flush = true;
    bool rect_mode = false;
    int max_steps = 1 << 20;
    bool instrument = true;
};

struct CoriLinkMap;
// Called after the lights of step k are applied; returns true if it lit anything or needs
// the BFS to keep stepping.
using StepHook = std::function<bool(int, CoriLinkMap&)>;

struct CoriLinkMap {
    OrientationSet C;
    Point s;
    std::vector<CMap> maps;
    EngineStats stats;
};

// Label of the piece set containing q in one map (kDark if nothing lit there).
int query_map(const CMap& m, const Point& q);
int query_cori(const CoriLinkMap& m, const Point& q);
std::vector<Point> extract_cori_path(const CoriLinkMap& m, const Point& q);

// One orientation's D0 with the seed chord through s split out.
CMap init_cmap(const PolygonalDomain& d, const Direction& c, const Point& s);

// Shared set-up: D0 per orientation, seed chords split out of the cells containing s.
CoriLinkMap init_linkmap(const PolygonalDomain& d, const OrientationSet& C, const Point& s);

// Light a band of a cell: dark pieces overlapping [a, b] with positive length take the label.
// Returns true if anything changed.
bool apply_light(CMap& m, int cell, const Coord& a, const Coord& b, int label, int src_map, int src_piece,
                 LightMode mode);

// Exact c-height projection of the intersection of two convex polygons given in the c-frame.
std::optional<std::pair<Coord, Coord>> projected_overlap(const std::vector<Point>& a, const std::vector<Point>& b);

// BFS on an initialised map; skips the orientation check (used by the extensions).
void run_linkmap_engine(CoriLinkMap& L, const EngineOptions& opt, const StepHook& hook = {});

CoriLinkMap build_cori_linkmap(const PolygonalDomain& d, const OrientationSet& C, const Point& s,
                               const EngineOptions& opt = {});

// Per-map, per-cell label runs, used for cell-for-cell comparisons.
using LabelRuns = std::vector<std::vector<std::vector<std::tuple<Coord, Coord, int>>>>;
LabelRuns label_runs(const CoriLinkMap& m);

}  // namespace lp
