#include <doctest.h>

#include "../common/fixtures.hpp"
#include "linkpath/corilink.hpp"
#include "linkpath/oracle.hpp"
#include "linkpath/rectlink.hpp"

using namespace lp;

namespace {

void check_clean(const EngineStats& s) {
    CHECK(s.window_violations == 0);
    CHECK(s.split_violations == 0);
    CHECK(s.dark_left == 0);
    CHECK(s.steps_per_cell_violations == 0);
    CHECK(s.remainder_violations == 0);
    CHECK(s.straddle_partial_nonflush == 0);
    CHECK(s.pot_overlap_failures == 0);
}

}  // namespace

TEST_CASE("rect map on the empty square") {
    auto m = build_rect_linkmap(fx::square(), Point(1, 1));
    CHECK(query_rect(m, Point(1, 5)) == 1);
    CHECK(query_rect(m, Point(7, 1)) == 1);
    CHECK(query_rect(m, Point(5, 5)) == 2);
    for (auto& mp : m.maps) {
        bool has_one = false;
        for (int id : mp.cell_pieces[mp.seed_cell]) has_one |= mp.pieces[id].label == 1;
        CHECK(has_one);
    }
}

TEST_CASE("rect map around a square hole") {
    auto d = fx::square_with_hole();
    auto m = build_rect_linkmap(d, Point(5, 1));
    CHECK(query_rect(m, Point(5, 9)) == 3);
    CHECK(query_rect(m, Point(5, 1)) == 1);
    CHECK(query_rect(m, Point(8, 1)) == 1);
    auto path = extract_rect_path(m, Point(5, 9));
    CHECK(fx::links(path) == 3);
    CHECK(fx::c_path_ok(d, path, OrientationSet::rectilinear()));
    CHECK(path.front() == Point(5, 1));
    CHECK(path.back() == Point(5, 9));

    auto m2 = build_rect_linkmap(d, Point(1, 1));
    CHECK(query_rect(m2, Point(9, 9)) == 2);
    check_clean(m.stats);
    check_clean(m2.stats);
}

TEST_CASE("rect path edge cases") {
    auto d = fx::square_with_hole();
    auto m = build_rect_linkmap(d, Point(5, 1));
    auto p = extract_rect_path(m, Point(8, 1));
    CHECK(p.size() == 2);
    auto z = extract_rect_path(m, Point(5, 1));
    CHECK(z.size() == 2);
    CHECK(z[0] == z[1]);
    CHECK_THROWS_AS(query_rect(m, Point(5, 5)), std::domain_error);
    CHECK_THROWS_AS(query_rect(m, Point(11, 5)), std::domain_error);
}

TEST_CASE("rect map rejects bad input") {
    PolygonalDomain d = fx::square();
    CHECK_THROWS(build_rect_linkmap(d, Point(12, 1)));
    // two holes whose bottom edges share a line
    PolygonalDomain e = fx::square(20);
    e.holes = {{{2, 4}, {2, 6}, {4, 6}, {4, 4}}, {{10, 4}, {10, 8}, {12, 8}, {12, 4}}};
    CHECK_THROWS(build_rect_linkmap(e, Point(1, 1)));
    PolygonalDomain t;
    t.outer = {{0, 0}, {10, 0}, {5, 10}};
    CHECK_THROWS(build_rect_linkmap(t, Point(5, 3)));
    // source on a line through a vertex
    CHECK_THROWS(build_rect_linkmap(fx::square_with_hole(), Point(4, 1)));
}

TEST_CASE("rect map matches the intersection-graph oracle") {
    for (uint64_t seed = 1; seed <= 40; ++seed) {
        auto inst = fx::rect_case(seed);
        auto m = build_rect_linkmap(inst.domain, inst.s);
        CHECK(label_runs(m) == brute_graph_labels(inst.domain, OrientationSet::rectilinear(), inst.s));
        check_clean(m.stats);
        CHECK(m.stats.max_steps_per_cell <= 7);
    }
}

TEST_CASE("rect paths are valid and as long as the label") {
    for (uint64_t seed = 1; seed <= 15; ++seed) {
        auto inst = fx::rect_case(seed);
        auto m = build_rect_linkmap(inst.domain, inst.s);
        for (uint64_t j = 0; j < 8; ++j) {
            Point q = sample_free_point(inst.domain, {}, seed * 100 + j);
            int k = query_rect(m, q);
            auto path = extract_rect_path(m, q);
            CHECK(fx::links(path) == k);
            CHECK(fx::c_path_ok(inst.domain, path, OrientationSet::rectilinear()));
            CHECK(path.back() == q);
        }
    }
}

TEST_CASE("cori map on a triangle with three orientations") {
    PolygonalDomain t;
    t.outer = {{0, 0}, {10, 0}, {5, 10}};
    OrientationSet C({{1, 0}, {1, 2}, {-1, 2}});
    Point s(5, 3);
    auto m = build_cori_linkmap(t, C, s);
    for (auto& mp : m.maps) {
        CHECK(mp.T.cells.size() == 1);
        int ones = 0;
        for (int id : mp.cell_pieces[mp.seed_cell]) ones += mp.pieces[id].label == 1;
        CHECK(ones == 1);
    }
    CHECK(query_cori(m, Point(2, 3)) == 1);
    CHECK(query_cori(m, Point(6, 5)) == 1);  // on the (1,2) line through s
    CHECK(query_cori(m, Point(5, 8)) == 2);
    CHECK(label_runs(m) == brute_graph_labels(t, C, s));
}

TEST_CASE("cori map with two orientations equals the rect map") {
    for (uint64_t seed = 3; seed <= 20; ++seed) {
        auto inst = fx::rect_case(seed);
        auto r = build_rect_linkmap(inst.domain, inst.s);
        auto c = build_cori_linkmap(inst.domain, OrientationSet::rectilinear(), inst.s);
        CHECK(label_runs(r) == label_runs(c));
    }
    auto d = fx::square_with_hole();
    auto c = build_cori_linkmap(d, OrientationSet::rectilinear(), Point(5, 1));
    CHECK(query_cori(c, Point(5, 9)) == 3);
}

TEST_CASE("cori map matches the intersection-graph oracle") {
    for (uint64_t seed = 1; seed <= 40; ++seed) {
        auto inst = fx::cori_case(seed);
        const auto& C = *inst.orientations;
        auto m = build_cori_linkmap(inst.domain, C, inst.s);
        DichotomyStats ds;
        auto b = brute_graph_map(inst.domain, C, inst.s, {}, &ds);
        CHECK(label_runs(m) == label_runs(b));
        check_clean(m.stats);
        CHECK(m.stats.max_subcells <= 3);
        CHECK(ds.both == 0);
        CHECK(ds.neither == 0);
        for (uint64_t j = 0; j < 5; ++j) {
            Point q = sample_free_point(inst.domain, {}, seed * 31 + j);
            int k = query_cori(m, q);
            CHECK(k == query_cori(b, q));
            auto path = extract_cori_path(m, q);
            CHECK(fx::links(path) == k);
            CHECK(fx::c_path_ok(inst.domain, path, C));
        }
    }
}

TEST_CASE("cori map rejects a domain with foreign edge directions") {
    PolygonalDomain t;
    t.outer = {{0, 0}, {10, 0}, {5, 10}};
    CHECK_THROWS(build_cori_linkmap(t, OrientationSet::rectilinear(), Point(5, 3)));
}
