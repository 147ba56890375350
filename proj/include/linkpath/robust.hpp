#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linkpath/domain.hpp"

namespace lp {

struct RobustnessSpec {
    int i = 4;                // phi = 180 / i degrees
    OrientationSet C_phi;     // supplied integer directions
    bool max_gap_ok = false;  // every angular gap of C_phi is at most phi (floating check, 1e-9 relative)
};

// Fills max_gap_ok. Throws for i < 2.
RobustnessSpec make_spec(int i, const OrientationSet& C);

// Rational tan(phi): exact for i = 4, otherwise a slight over-estimate (never below the true
// value). nullopt for i = 2, where the clearance triangle is unbounded.
std::optional<Coord> tan_phi(const RobustnessSpec& spec);

// Clearance triangle of edge p -> q: apex p, base through q perpendicular to pq, half-width |pq| tan.
std::vector<Point> robustness_triangle(const Point& p, const Point& q, const Coord& tan);

// true iff every edge's clearance triangle lies in the closed free space.
// Throws std::invalid_argument if the path itself leaves the free space.
bool is_robust(const PolygonalDomain& d, const std::vector<Point>& path, const RobustnessSpec& spec);

struct SnapResult {
    bool ok = false;
    bool identity = false;  // input was already C_phi-oriented
    std::vector<Point> pts;
    int links = 0;
    std::string failure;
    // per output link: first and last index of the consecutive snap triangles covering it
    std::vector<std::pair<int, int>> support;
};

// Snap triangle of edge i: apex p_i and the two snapped segment ends on the base.
struct SnapTriangle {
    Point apex, plus, minus;
};

SnapResult snap(const PolygonalDomain& d, const std::vector<Point>& path, const RobustnessSpec& spec);

// Snap triangles of a path (empty if a side has no direction of C_phi within phi).
std::vector<SnapTriangle> snap_triangles(const std::vector<Point>& path, const RobustnessSpec& spec);

// Closed segment ab is covered by the union of the given (possibly degenerate) triangles.
bool segment_in_triangles(const Point& a, const Point& b, const std::vector<std::vector<Point>>& tris);

bool is_c_path(const std::vector<Point>& path, const OrientationSet& C);

// Random k-link robust path by a rejection-sampled walk (edges avoid C_phi directions);
// nullopt when the walk gets stuck.
std::optional<std::vector<Point>> random_robust_path(const PolygonalDomain& d, const RobustnessSpec& spec, int k,
                                                     uint64_t seed);

}  // namespace lp
