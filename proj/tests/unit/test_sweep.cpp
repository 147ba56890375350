#include <doctest.h>

#include "../common/fixtures.hpp"
#include "linkpath/sweep.hpp"

using namespace lp;

TEST_CASE("status insert examples") {
    SweepStatus s;
    s.insert({0, 2, 0});
    s.insert({1, 3, 1});
    CHECK(s.intervals() == std::vector<StatusInterval>{{0, 1, 0}, {1, 3, 1}});
    SweepStatus e;
    e.insert({4, 6, 0});
    CHECK(e.intervals() == std::vector<StatusInterval>{{4, 6, 0}});
    SweepStatus d;
    d.insert({0, 1, 0});
    d.insert({2, 3, 1});
    CHECK(d.intervals() == std::vector<StatusInterval>{{0, 1, 0}, {2, 3, 1}});
}

TEST_CASE("status clip examples") {
    SweepStatus s;
    s.insert({0, 4, 0});
    auto cut = s.clip(1, 2);
    CHECK(s.intervals() == std::vector<StatusInterval>{{0, 1, 0}, {2, 4, 0}});
    CHECK(cut == std::vector<StatusInterval>{{1, 2, 0}});
    SweepStatus u;
    u.insert({0, 1, 0});
    CHECK(u.clip(2, 3).empty());
    CHECK(u.size() == 1);
    SweepStatus w;
    w.insert({0, 1, 0});
    w.insert({1, 2, 1});
    CHECK(w.clip(0, 2).size() == 2);
    CHECK(w.empty());
}

TEST_CASE("status overlap examples") {
    SweepStatus s;
    s.insert({0, 2, 0});
    s.insert({3, 5, 1});
    auto r = s.overlap(1, 4);
    REQUIRE(r.size() == 2);
    CHECK(r[0].source == 0);
    CHECK(r[1].source == 1);
    SweepStatus t;
    t.insert({0, 2, 0});
    CHECK(t.overlap(2, 3).empty());
    CHECK(SweepStatus().overlap(-5, 5).empty());
}

TEST_CASE("status sheared frame") {
    SweepStatus z(0);
    z.insert({0, 1, 0});
    z.shift_frame(7);
    CHECK(z.intervals() == std::vector<StatusInterval>{{0, 1, 0}});

    SweepStatus s(1);
    s.insert({0, 1, 0});
    s.shift_frame(2);
    CHECK(s.intervals() == std::vector<StatusInterval>{{2, 3, 0}});
    CHECK(s.overlap(2, 3).size() == 1);
    CHECK(s.overlap(0, 1).empty());
    s.shift_frame(0);
    CHECK(s.intervals() == std::vector<StatusInterval>{{0, 1, 0}});

    SweepStatus flat(0, false);
    CHECK_THROWS(flat.shift_frame(1));
}

TEST_CASE("property: insert then overlap returns the interval") {
    SweepStatus s(Coord(1, 2));
    for (int i = 0; i < 50; ++i) {
        s.shift_frame(Coord(i));
        Coord a(i % 7), b = a + 3;
        s.insert({a, b, i});
        auto r = s.overlap(a, b);
        REQUIRE(r.size() == 1);
        CHECK(r[0] == StatusInterval{a, b, i});
    }
}

TEST_CASE("property: sheared status equals naive shifting") {
    for (uint64_t seed = 0; seed < 2000; ++seed) CHECK(fx::status_sequence_agrees(seed));
}

TEST_CASE("event queue order") {
    EventQueue<int> q;
    q.push(2, 1, 5, 0);
    q.push(1, 2, 3, 1);
    q.push(1, 0, 9, 2);
    q.push(1, 0, 4, 3);
    std::vector<int> got;
    while (!q.empty()) got.push_back(q.pop());
    CHECK(got == std::vector<int>{3, 2, 1, 0});
}
