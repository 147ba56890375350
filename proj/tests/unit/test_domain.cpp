#include <doctest.h>

#include "linkpath/domain.hpp"

using namespace lp;

namespace {

PolygonalDomain square_with_hole() {
    PolygonalDomain d;
    d.outer = {{0, 0}, {10, 0}, {10, 10}, {0, 10}};
    d.holes = {{{4, 4}, {4, 6}, {6, 6}, {6, 4}}};
    return d;
}

bool has(const std::vector<Violation>& v, const std::string& what) {
    for (auto& x : v)
        if (x.what == what) return true;
    return false;
}

}  // namespace

TEST_CASE("validate examples") {
    CHECK_FALSE(has_errors(validate(square_with_hole())));

    PolygonalDomain out = square_with_hole();
    out.holes[0] = {{14, 4}, {14, 6}, {16, 6}, {16, 4}};
    CHECK(has(validate(out), "hole not inside outer"));

    PolygonalDomain bow;
    bow.outer = {{0, 0}, {10, 10}, {10, 0}, {0, 10}};
    CHECK(has(validate(bow), "ring not simple"));

    PolygonalDomain touching = square_with_hole();
    touching.holes.push_back({{6, 4}, {6, 6}, {8, 6}, {8, 4}});
    CHECK(has(validate(touching), "holes intersect"));

    PolygonalDomain nested = square_with_hole();
    nested.holes[0] = {{2, 2}, {2, 8}, {8, 8}, {8, 2}};
    nested.holes.push_back({{4, 4}, {4, 6}, {6, 6}, {6, 4}});
    CHECK(has(validate(nested), "holes intersect"));

    // the square-with-hole has edges on distinct lines; a second aligned hole does not
    PolygonalDomain aligned = square_with_hole();
    aligned.holes.push_back({{7, 4}, {7, 6}, {8, 6}, {8, 4}});
    auto v = validate(aligned);
    CHECK_FALSE(has_errors(v));
    CHECK(has_same_line_edges(v));
}

TEST_CASE("is_c_oriented examples") {
    auto d = square_with_hole();
    CHECK(is_c_oriented(d, OrientationSet::rectilinear()));
    CHECK_FALSE(is_c_oriented(d, OrientationSet({Direction(1, 0), Direction(1, 1)})));
    PolygonalDomain tri;
    tri.outer = {{0, 0}, {4, 0}, {2, 4}};
    CHECK(is_c_oriented(tri, OrientationSet({Direction(1, 0), Direction(1, 2), Direction(-1, 2)})));
}

TEST_CASE("orientation set sorted by angle") {
    OrientationSet C({Direction(-1, 2), Direction(0, 1), Direction(1, 0), Direction(1, 1)});
    REQUIRE(C.C() == 4);
    CHECK(C.dirs[0] == Direction(1, 0));
    CHECK(C.dirs[1] == Direction(1, 1));
    CHECK(C.dirs[2] == Direction(0, 1));
    CHECK(C.dirs[3] == Direction(-1, 2));
    CHECK_THROWS(OrientationSet({Direction(1, 0), Direction(-2, 0)}));
}

TEST_CASE("free space predicates") {
    auto d = square_with_hole();
    CHECK(classify_point(d, {5, 2}) == 1);
    CHECK(classify_point(d, {5, 5}) == -1);
    CHECK(classify_point(d, {4, 5}) == 0);
    CHECK(segment_in_free(d, {1, 1}, {9, 1}));
    CHECK_FALSE(segment_in_free(d, {5, 3}, {5, 7}));
    CHECK(segment_in_free(d, {4, 2}, {4, 8}));     // along the hole side
    CHECK(segment_in_free(d, {3, 3}, {7, 7}) == false);
    CHECK(segment_in_free(d, {2, 4}, {6, 8}));     // touches corner (4,6)
    CHECK(free_area2(d) == 2 * 96);
}

TEST_CASE("json round trip is exact") {
    DomainInstance inst;
    inst.domain = square_with_hole();
    inst.domain.outer[1] = Point(Coord(21, 2), Coord(-1, 3));
    inst.domain.outer[2] = Point(Coord(mpz_class("123456789012345678901234567890")), Coord(10));
    inst.s = Point(Coord(1, 7), Coord(2));
    inst.t = Point(3, 3);
    inst.orientations = OrientationSet::rectilinear();
    auto back = instance_from_json(instance_to_json(inst));
    CHECK(back.domain == inst.domain);
    CHECK(back.s == inst.s);
    CHECK(*back.t == *inst.t);
    CHECK(back.orientations->dirs == inst.orientations->dirs);

    auto shorthand = instance_from_json(R"({"outer":[[0,0],[4,1,0,1],[4,4],[0,"4"]],"holes":[],"s":[1,2,1,1]})");
    CHECK(shorthand.domain.outer[1] == Point(4, 0));
    CHECK(shorthand.s == Point(Coord(1, 2), Coord(1)));
    CHECK_THROWS(instance_from_json(R"({"outer":[[0,0,1]]})"));
}

TEST_CASE("generated instances validate") {
    for (uint64_t seed = 1; seed <= 40; ++seed) {
        auto r = gen_random(GenKind::Rectilinear, 40, static_cast<int>(seed % 5), std::nullopt, seed);
        auto v = validate(r.domain);
        CHECK_FALSE(has_errors(v));
        CHECK_FALSE(has_same_line_edges(v));
        CHECK(is_c_oriented(r.domain, OrientationSet::rectilinear()));
        CHECK(in_open_free(r.domain, r.s));
        CHECK(r.domain.h() == seed % 5);
    }
    OrientationSet C3({Direction(1, 0), Direction(1, 2), Direction(-1, 2)});
    OrientationSet C4({Direction(1, 0), Direction(1, 1), Direction(0, 1), Direction(-1, 1)});
    for (uint64_t seed = 1; seed <= 30; ++seed) {
        auto& C = seed % 2 ? C3 : C4;
        auto r = gen_random(GenKind::COriented, 30, static_cast<int>(seed % 4), C, seed);
        CHECK_FALSE(has_errors(validate(r.domain)));
        CHECK(is_c_oriented(r.domain, C));
        CHECK(in_open_free(r.domain, r.s));
        for (auto& p : r.domain.outer) CHECK(p.x.get_den() == 1);
    }
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        auto r = gen_random(GenKind::General, 50, 5, std::nullopt, seed);
        CHECK_FALSE(has_errors(validate(r.domain)));
        CHECK(r.domain.h() == 5);
    }
    auto a = gen_random(GenKind::General, 50, 5, std::nullopt, 2);
    auto b = gen_random(GenKind::General, 50, 5, std::nullopt, 2);
    CHECK(a.domain == b.domain);
    CHECK(a.s == b.s);
}

TEST_CASE("geombase and zigzag generators") {
    auto g = gen_geombase({{1, Coord(0)}, {2, Coord(1)}, {3, Coord(2)}});
    CHECK_FALSE(has_errors(validate(g.domain)));
    CHECK(in_open_free(g.domain, g.s));
    CHECK(in_open_free(g.domain, *g.t));
    auto g2 = gen_geombase({{1, Coord(0)}, {1, Coord(3)}, {2, Coord(1)}, {2, Coord(5)}, {3, Coord(2)}});
    CHECK_FALSE(has_errors(validate(g2.domain)));
    CHECK(g2.domain.h() == 2);
    CHECK_THROWS(gen_geombase({}));
    CHECK_THROWS(gen_geombase({{1, Coord(0)}, {1, Coord(0)}, {2, Coord(1)}, {3, Coord(2)}}));

    for (int k = 1; k <= 3; ++k)
        for (bool f : {true, false}) {
            auto z = gen_zigzag(k, zigzag_default(k, f));
            CHECK_FALSE(has_errors(validate(z.domain)));
            CHECK(in_open_free(z.domain, z.s));
            CHECK(in_open_free(z.domain, *z.t));
        }
    ZigzagParams empty;
    empty.channel_gaps = {{}};
    auto z0 = gen_zigzag(1, empty);
    CHECK_FALSE(has_errors(validate(z0.domain)));
}
