#include "linkpath/rectlink.hpp"

#include <stdexcept>

namespace lp {

RectLinkMap build_rect_linkmap(const PolygonalDomain& d, const Point& s, bool instrument) {
    const OrientationSet C = OrientationSet::rectilinear();
    auto v = validate(d);
    if (has_errors(v)) throw std::invalid_argument("invalid domain: " + v.front().what);
    if (!is_c_oriented(d, C)) throw std::invalid_argument("domain is not rectilinear");
    if (has_same_line_edges(v)) throw std::invalid_argument("degenerate domain: two edges on one line");
    EngineOptions opt;
    opt.flush = false;  // sides of one orientation never lie on edges the other orientation uses as sides
    opt.rect_mode = true;
    opt.instrument = instrument;
    return build_cori_linkmap(d, C, s, opt);
}

int query_rect(const RectLinkMap& m, const Point& q) {
    int v = query_cori(m, q);
    if (v == kDark) throw std::domain_error("outside free space");
    return v;
}

std::vector<Point> extract_rect_path(const RectLinkMap& m, const Point& q) { return extract_cori_path(m, q); }

}  // namespace lp
