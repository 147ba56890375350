#pragma once

#include <functional>
#include <optional>

#include "linkpath/corilink.hpp"
#include "linkpath/domain.hpp"

namespace lp {

struct DichotomyStats {
    long pairs = 0;     // lighting pairs with a positive-height overlap (step >= 3)
    long flush = 0, straddle = 0, both = 0, neither = 0;
};

// Explicit intersection-graph BFS on the same D0 pieces: every dark piece is tested against
// every piece lit in the previous step. `allowed(c, c_src)` restricts consecutive orientations.
CoriLinkMap brute_graph_map(const PolygonalDomain& d, const OrientationSet& C, const Point& s,
                            const std::function<bool(int, int)>& allowed = {}, DichotomyStats* dich = nullptr,
                            size_t max_vertices = 400, int max_steps = 1 << 20);
LabelRuns brute_graph_labels(const PolygonalDomain& d, const OrientationSet& C, const Point& s);

// Small link-distance decisions for unrestricted orientations (closed free space).
bool linkdist_le1(const PolygonalDomain& d, const Point& s, const Point& t);
bool linkdist_le2(const PolygonalDomain& d, const Point& s, const Point& t);
bool linkdist_le3(const PolygonalDomain& d, const Point& s, const Point& t);

// Visibility polygon of p as a star-shaped ring around p (counterclockwise).
std::vector<Point> visibility_polygon(const PolygonalDomain& d, const Point& p);

// Exact unrestricted minimum link count, or nullopt if it exceeds cap.
std::optional<int> brute_minlink(const PolygonalDomain& d, const Point& s, const Point& t, int cap = 8,
                                 size_t max_vertices = 120);

}  // namespace lp
