#include <doctest.h>

#include <random>

#include "../common/fixtures.hpp"
#include "linkpath/oracle.hpp"

using namespace lp;
using namespace fx;

TEST_CASE("small link decisions on the holed square") {
    auto d = square_with_hole();
    Point s(5, 3), t(5, 7);
    CHECK_FALSE(linkdist_le1(d, s, t));
    CHECK(linkdist_le2(d, s, t));
    CHECK(linkdist_le3(d, s, t));
    CHECK(brute_minlink(d, s, t) == 2);
    // running along a hole edge counts as free
    CHECK(linkdist_le1(d, Point(2, 4), Point(8, 4)));
    CHECK(brute_minlink(d, Point(2, 4), Point(8, 4)) == 1);
    CHECK(brute_minlink(d, Point(1, 1), Point(9, 9)) == 2);
    CHECK(brute_minlink(square(), Point(1, 2), Point(8, 7)) == 1);
}

TEST_CASE("visibility from boundary points") {
    auto d = square_with_hole();
    auto v = visibility_polygon(d, Point(5, 0));
    CHECK(point_in_ring(Point(1, 9), v) >= 0);
    CHECK(point_in_ring(Point(5, 8), v) < 0);
    auto c = visibility_polygon(square(), Point(0, 0));
    CHECK(area2(c) == Coord(200));
    CHECK(linkdist_le2(d, Point(4, 5), Point(5, 7)));
    CHECK_FALSE(linkdist_le1(d, Point(4, 5), Point(5, 7)));
    CHECK_FALSE(linkdist_le2(d, Point(4, 5), Point(6, 5)));
    CHECK(linkdist_le3(d, Point(4, 5), Point(6, 5)));
}

TEST_CASE("visibility polygon of a convex room is the room") {
    auto d = square();
    auto v = visibility_polygon(d, Point(3, 4));
    CHECK(area2(v) == Coord(200));
    auto h = visibility_polygon(square_with_hole(), Point(5, 1));
    CHECK(point_in_ring(Point(5, 2), h) >= 0);
    CHECK(point_in_ring(Point(5, 9), h) < 0);
    CHECK(sgn(area2(h)) > 0);
}

TEST_CASE("monotone chain le1 le2 le3 and brute agreement") {
    int checked = 0;
    for (uint64_t seed = 0; seed < 25; ++seed) {
        auto inst = gen_random(GenKind::General, 10 + seed % 10, seed % 3, std::nullopt, seed);
        auto& d = inst.domain;
        std::vector<Direction> none;
        Point s = sample_free_point(d, none, seed * 7 + 1);
        Point t = sample_free_point(d, none, seed * 7 + 2);
        bool a = linkdist_le1(d, s, t), b = linkdist_le2(d, s, t), c = linkdist_le3(d, s, t);
        CHECK((!a || b));
        CHECK((!b || c));
        auto m = brute_minlink(d, s, t, 8, 200);
        REQUIRE(m.has_value());
        CHECK((*m <= 1) == a);
        CHECK((*m <= 2) == b);
        CHECK((*m <= 3) == c);
        ++checked;
    }
    CHECK(checked == 25);
}

TEST_CASE("geombase le3 iff a collinear gap triple exists") {
    std::mt19937_64 rng(11);
    int yes = 0, no = 0;
    for (int it = 0; it < 12; ++it) {
        std::vector<GapSpec> gaps;
        for (int line = 1; line <= 3; ++line) {
            int cnt = 1 + static_cast<int>(rng() % 2);
            std::vector<int> xs;
            while (static_cast<int>(xs.size()) < cnt) {
                int x = static_cast<int>(rng() % 9);
                if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
            }
            for (int x : xs) gaps.push_back({line, Coord(x)});
        }
        auto mid = std::find_if(gaps.begin(), gaps.end(), [](const GapSpec& g) { return g.line == 2; });
        if (it % 2 == 0 && abs(mid->x - gaps[0].x) <= 1) {
            // plant a collinear triple unless it would duplicate a gap
            Coord x3 = 2 * mid->x - gaps[0].x;
            bool dup = false;
            for (auto& g : gaps) dup |= g.line == 3 && g.x == x3;
            if (!dup) gaps.push_back({3, x3});
        }
        GeomBaseParams p;
        auto g = gen_geombase(gaps, p);
        bool expect = geombase_triple_stabbable(gaps, p);
        CHECK(linkdist_le3(g.domain, g.s, *g.t) == expect);
        CHECK_FALSE(linkdist_le2(g.domain, g.s, *g.t));
        (expect ? yes : no)++;
    }
    CHECK(yes > 0);
    CHECK(no > 0);
}

TEST_CASE("zigzag corridors need one or two links per channel") {
    for (int k = 1; k <= 2; ++k)
        for (bool feasible : {true, false}) {
            auto z = gen_zigzag(k, zigzag_default(k, feasible));
            auto m = brute_minlink(z.domain, z.s, *z.t, 10, 200);
            REQUIRE(m.has_value());
            CHECK(*m == (feasible ? 2 + k : 2 + 2 * k));
        }
    auto z = gen_zigzag(1, zigzag_default(1, true));
    CHECK(brute_minlink(z.domain, z.s, *z.t, 2, 200) == std::nullopt);
    CHECK_THROWS(brute_minlink(z.domain, z.s, *z.t, 8, 10));
}
