#include <doctest.h>

#include <random>

#include "../common/fixtures.hpp"
#include "linkpath/coriext.hpp"
#include "linkpath/oracle.hpp"

using namespace lp;
using namespace fx;

namespace {

Point spike_source() { return Point(frac(23, 10), frac(17, 10)); }

// Points spread along the spike axis, fanned across its width.
std::vector<Point> spike_samples(const PolygonalDomain& d) {
    const Point &a = d.outer[2], &tip = d.outer[3], &b = d.outer[4];
    Point m = midpoint(a, b);
    std::vector<Point> out;
    for (int i = 1; i <= 60; ++i)
        for (int o = -2; o <= 2; ++o) {
            Point q = m + (tip - m) * frac(i, 61) + (b - a) * frac(o * (61 - i), 61 * 6);
            if (in_open_free(d, q)) out.push_back(q);
        }
    return out;
}

}  // namespace

TEST_CASE("problematic cells need sides outside every orientation") {
    auto rect = OrientationSet::rectilinear();
    auto T = build_trapezoidation(square_with_hole(), Direction(1, 0));
    for (size_t x = 0; x < T.cells.size(); ++x) CHECK_FALSE(detect_problematic(T, static_cast<int>(x), rect));
    auto d = spike_room(4, 6, {40, 9});
    int found = 0;
    for (auto& c : rect.dirs) {
        auto Tc = build_trapezoidation(d, c);
        for (size_t x = 0; x < Tc.cells.size(); ++x) found += detect_problematic(Tc, static_cast<int>(x), rect);
    }
    CHECK(found == 2);
    // a diagonal orientation straddles the wide spike toward (40, 40)
    PolygonalDomain wide;
    wide.outer = {{0, 0}, {10, 0}, {10, 8}, {40, 40}, {8, 10}, {0, 10}};
    OrientationSet diag({{1, 0}, {1, 1}, {-1, 1}});
    for (auto& c : diag.dirs) {
        auto Tc = build_trapezoidation(wide, c);
        for (size_t x = 0; x < Tc.cells.size(); ++x) CHECK_FALSE(detect_problematic(Tc, static_cast<int>(x), diag));
    }
}

TEST_CASE("oriented domains are left untouched by the extension") {
    for (uint64_t seed = 1; seed <= 12; ++seed) {
        auto inst = cori_case(seed);
        auto A = build_arbitrary_linkmap(inst.domain, *inst.orientations, inst.s);
        auto B = build_cori_linkmap(inst.domain, *inst.orientations, inst.s);
        CHECK(A.problematic.empty());
        CHECK(A.zigzags.empty());
        CHECK(label_runs(A.L) == label_runs(B));
    }
}

TEST_CASE("zigzag answers on spike rooms match the brute-force map") {
    int zz = 0;
    for (auto& d : spike_rooms())
        for (size_t ci = 0; ci < 3; ++ci) {
            const auto& C = orientation_sets()[ci];
            auto A = build_arbitrary_linkmap(d, C, spike_source());
            auto B = brute_graph_map(d, C, spike_source(), {}, nullptr, 400, 30);
            CHECK(A.straddle_assert_violations == 0);
            zz += static_cast<int>(A.zigzags.size());
            for (auto& q : spike_samples(d)) {
                int b = query_cori(B, q);
                if (b == kDark) continue;
                CAPTURE(to_string(q));
                CHECK(query_arbitrary(A, q) == b);
            }
        }
    CHECK(zz > 0);
}

TEST_CASE("sloped corridors are banded exactly") {
    for (auto [len, dy] : std::vector<std::pair<long, long>>{{30, 5}, {30, 12}, {40, 9}})
        for (size_t ci = 0; ci < 3; ++ci) {
            auto d = corridor_rooms(len, dy);
            const auto& C = orientation_sets()[ci];
            auto A = build_arbitrary_linkmap(d, C, spike_source());
            auto B = brute_graph_map(d, C, spike_source(), {}, nullptr, 400, 40);
            std::mt19937_64 rng(len * 100 + dy);
            std::uniform_int_distribution<long> ux(0, (len + 20) * 97), uy(0, (14 + dy) * 97);
            int checked = 0;
            for (int i = 0; i < 500 && checked < 200; ++i) {
                Point q(frac(ux(rng), 97), frac(uy(rng), 97));
                if (!in_open_free(d, q)) continue;
                int b = query_cori(B, q);
                if (b == kDark) continue;
                ++checked;
                CAPTURE(to_string(q));
                CHECK(query_arbitrary(A, q) == b);
            }
            for (auto& z : A.zigzags) CHECK(z.banded);
        }
}

TEST_CASE("zigzag formula agrees with the bounce simulation") {
    std::mt19937_64 rng(7);
    int compared = 0;
    for (auto& d : spike_rooms())
        for (size_t ci = 0; ci < 3; ++ci) {
            auto A = build_arbitrary_linkmap(d, orientation_sets()[ci], spike_source());
            for (auto& z : A.zigzags) {
                const CMap& m = A.L.maps[z.map];
                auto poly = m.T.frame_polygon(z.cell);
                Coord ulo = poly[0].x, uhi = poly[0].x;
                for (auto& p : poly) {
                    ulo = std::min(ulo, p.x);
                    uhi = std::max(uhi, p.x);
                }
                std::uniform_int_distribution<int> r(1, 9999);
                for (int i = 0; i < 100; ++i) {
                    Coord w = z.cut_lo + (z.cut_hi - z.cut_lo) * frac(r(rng), 10000);
                    Point f(ulo + (uhi - ulo) * frac(r(rng), 10000), z.geom.flip > 0 ? w : Coord(-w));
                    Point n = z.geom.flip > 0 ? f : Point(-f.x, -f.y);
                    auto sim = zigzag_links(z.geom, n, z.h1n, z.h2n, ZigzagMethod::Simulation);
                    auto cf = zigzag_links(z.geom, n, z.h1n, z.h2n, ZigzagMethod::ClosedForm);
                    CHECK(sim == cf);
                    ++compared;
                }
            }
        }
    CHECK(compared >= 1000);
}

TEST_CASE("labels step by at most one across the frozen cut") {
    for (auto& d : spike_rooms()) {
        auto A = build_arbitrary_linkmap(d, OrientationSet::rectilinear(), spike_source());
        for (auto& z : A.zigzags) {
            if (z.banded) continue;
            const CMap& m = A.L.maps[z.map];
            for (int i = 1; i < 10; ++i) {
                Coord eps = frac(1, 1000);
                Coord wa = z.cut_lo - eps, wb = z.cut_lo + eps;
                auto at = [&](const Coord& wn) {
                    Coord w = z.geom.flip > 0 ? wn : Coord(-wn);
                    Coord u = m.T.uL(z.cell, w) + (m.T.uR(z.cell, w) - m.T.uL(z.cell, w)) * frac(i, 10);
                    return m.T.frame.from(Point(u, w));
                };
                int below = query_arbitrary(A, at(wa)), above = query_arbitrary(A, at(wb));
                CHECK(below > 0);
                CHECK(above >= below);
                CHECK(above - below <= 1);
            }
        }
    }
}

TEST_CASE("a direct horizontal hit needs one link") {
    ZigzagGeom g;
    g.a1 = Point(0, 0);
    g.b1 = Point(-1, 10);
    g.a2 = Point(4, 0);
    g.b2 = Point(5, 10);
    g.e12 = Point(1, -1);
    g.e21 = Point(-1, -1);
    CHECK(zigzag_links(g, Point(2, 3), Coord(5), Coord(1)) == 1);
    // S1 at height 7.5 is above both anchors; one descending link reaches S2 below 5
    CHECK(zigzag_links(g, Point(2, frac(15, 2)), Coord(5), Coord(5)) == 2);
    CHECK(zigzag_links(g, Point(2, frac(15, 2)), std::nullopt, std::nullopt) == std::nullopt);
}

TEST_CASE("two-approximate map bounds and paths") {
    int samples = 0;
    for (uint64_t seed = 1; seed <= 30; ++seed) {
        auto inst = cori_case(seed);
        const auto& C = *inst.orientations;
        auto A = build_2approx_map(inst.domain, C, inst.s);
        auto E = build_cori_linkmap(inst.domain, C, inst.s);
        int h = 0;
        for (size_t i = 0; i < C.dirs.size(); ++i)
            if (C.dirs[i].dy == 0) h = static_cast<int>(i);
        auto R = brute_graph_map(inst.domain, C, inst.s, [&](int c, int cs) { return c == h || cs == h; });
        for (size_t x = 0; x < A.H.T.cells.size(); ++x) CHECK(A.H.runs(static_cast<int>(x)) == R.maps[h].runs(static_cast<int>(x)));
        for (int i = 0; i < 10; ++i) {
            Point q = sample_free_point(inst.domain, C.dirs, seed * 100 + i);
            int l = query_2approx(A, q), k = query_cori(E, q);
            CHECK(k <= l);
            CHECK(l <= 2 * k);
            auto P = extract_2approx_path(inst.domain, A, q);
            CHECK(c_path_ok(inst.domain, P, C));
            CHECK(links(P) <= l);
            CHECK(P.front() == inst.s);
            CHECK(P.back() == q);
            ++samples;
        }
    }
    CHECK(samples == 300);
}

TEST_CASE("two-approximate map on the holed square") {
    auto d = square_with_hole();
    Point s(5, 1);
    auto rect = OrientationSet::rectilinear();
    // s sits on the vertical line through no vertex, and on no vertex height
    s = Point(5, frac(3, 2));
    auto A = build_2approx_map(d, rect, s);
    CHECK(query_2approx(A, Point(5, 9)) == 3);
    CHECK(query_2approx(A, Point(1, frac(3, 2))) == 1);
    // reached by a final vertical link from the band through s
    CHECK(query_2approx(A, Point(2, 5)) == 2);
    auto P = extract_2approx_path(d, A, Point(2, 5));
    CHECK(links(P) == 2);
    CHECK(c_path_ok(d, P, rect));
    CHECK(query_2approx(A, Point(5, frac(1, 2))) == 1);
    auto E = build_cori_linkmap(d, rect, s);
    for (size_t x = 0; x < A.H.T.cells.size(); ++x) CHECK(A.H.runs(static_cast<int>(x)) == E.maps[0].runs(static_cast<int>(x)));
}
