#pragma once

#include "linkpath/corilink.hpp"

namespace lp {

// Horizontal and vertical maps of a rectilinear domain; maps[0] is horizontal, maps[1] vertical.
using RectLinkMap = CoriLinkMap;

// Requires a valid rectilinear domain without two edges on one line.
RectLinkMap build_rect_linkmap(const PolygonalDomain& d, const Point& s, bool instrument = true);
int query_rect(const RectLinkMap& m, const Point& q);
std::vector<Point> extract_rect_path(const RectLinkMap& m, const Point& q);

}  // namespace lp
