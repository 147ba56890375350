#include <doctest.h>

#include <cmath>
#include <set>

#include "../common/fixtures.hpp"
#include "linkpath/illumination.hpp"
#include "linkpath/oracle.hpp"

using namespace lp;
using namespace fx;

namespace {

struct Setup {
    PolygonalDomain d;
    BridgeSet B;
    CutPolygon cp;
    explicit Setup(PolygonalDomain dom) : d(std::move(dom)), B(compute_bridges(d)), cp(cut_polygon(d, B)) {}
};

bool path_valid(const PolygonalDomain& d, const ApproxPath& P, const Point& s, const Point& t) {
    if (!P.ok || P.pts.size() < 2 || P.pts.front() != s || P.pts.back() != t) return false;
    if (P.links != static_cast<int>(P.pts.size()) - 1 || P.prov.size() != P.pts.size() - 1) return false;
    for (size_t i = 0; i + 1 < P.pts.size(); ++i)
        if (!segment_in_free(d, P.pts[i], P.pts[i + 1])) return false;
    return true;
}

void check_map_invariants(const Setup& S, const IlluminationMap& M) {
    const size_t h = S.B.bridges.size();
    int weight = 0;
    for (auto& c : M.colors) weight += c.weight;
    CHECK(weight == static_cast<int>(h) + 1);
    CHECK(M.merges <= static_cast<int>(h));
    for (size_t t = 0; t < M.tris.size(); ++t) {
        const auto& T = M.tris[t];
        CHECK(static_cast<int>(T.records.size()) <= M.m);
        std::set<int> colors;
        for (auto& r : T.records) {
            if (!M.merging) CHECK(colors.insert(r.color).second);
            if (r.src_tri < 0) {
                CHECK(r.stage == 1);
                continue;
            }
            const auto& src = M.tris[r.src_tri].records[r.src_rec];
            CHECK(r.stage == src.stage + 1);
            CHECK(T.stage <= r.stage);
        }
        if (!T.records.empty()) CHECK(T.stage == T.records.front().stage);
    }
    for (auto& bs : M.bridge_side_stage)
        for (int st : bs) CHECK(st <= M.final_stage);
}

// Each color lights a connected set of triangles (dual edges plus the color's own bridge).
void check_color_connected(const Setup& S, const IlluminationMap& M) {
    const size_t T = M.tris.size();
    for (size_t c = 0; c <= S.B.bridges.size(); ++c) {
        std::vector<char> in(T, 0);
        int first = -1, count = 0;
        for (size_t t = 0; t < T; ++t)
            for (auto& r : M.tris[t].records)
                if (r.color == static_cast<int>(c)) {
                    in[t] = 1;
                    if (first < 0) first = static_cast<int>(t);
                    ++count;
                }
        if (first < 0) continue;
        std::vector<char> seen(T, 0);
        std::vector<int> st = {first};
        seen[first] = 1;
        int reached = 0;
        while (!st.empty()) {
            int t = st.back();
            st.pop_back();
            ++reached;
            for (int s = 0; s < 3; ++s) {
                int nb = S.cp.tris[t].nb[s];
                if (nb < 0 && S.cp.tris[t].bridge[s] == static_cast<int>(c) - 1) nb = S.cp.tris[t].partner[s];
                if (nb >= 0 && in[nb] && !seen[nb]) {
                    seen[nb] = 1;
                    st.push_back(nb);
                }
            }
        }
        CHECK(reached == count);
    }
}

}  // namespace

TEST_CASE("convex room is lit in one stage") {
    Setup S(square());
    Point s(1, 2), t(9, 7);
    auto R = illuminate(S.d, S.B, S.cp, s, t, 1);
    CHECK(R.map.final_stage == 1);
    CHECK(path_valid(S.d, R.path, s, t));
    CHECK(R.path.links == 1);
    CHECK(approx_distance_query(R.map, Point(5, 5)) == 1);
    CHECK(approx_distance_query(R.map, t) == R.map.final_stage);
    CHECK_THROWS(illuminate(S.d, S.B, S.cp, s, t, 0));
}

TEST_CASE("simple polygons stay within twice the optimum") {
    int checked = 0;
    for (int teeth = 1; teeth <= 5; ++teeth)
        for (uint64_t seed = 1; seed <= 4; ++seed) {
            auto inst = comb_corridor(teeth, seed);
            Setup S(inst.domain);
            const Point &s = inst.s, &t = *inst.t;
            auto opt = brute_minlink(S.d, s, t, 8, 200);
            REQUIRE(opt.has_value());
            for (int m : {1, 3}) {
                auto R = illuminate(S.d, S.B, S.cp, s, t, m);
                CAPTURE(teeth);
                CAPTURE(seed);
                CHECK(path_valid(S.d, R.path, s, t));
                CHECK(R.map.final_stage <= *opt);
                CHECK(R.path.links >= *opt);
                CHECK(R.path.links <= 2 * *opt);
                check_map_invariants(S, R.map);
            }
            auto A = illuminate(S.d, S.B, S.cp, s, t, 1);
            auto M = illuminate_merging(S.d, S.B, S.cp, s, t);
            CHECK(A.path.pts == M.path.pts);
            CHECK(M.map.merges == 0);
            ++checked;
        }
    CHECK(checked == 20);
}

TEST_CASE("holed square with one blocking color") {
    Setup S(square_with_hole());
    Point s(5, 3), t(5, 7);
    auto opt = brute_minlink(S.d, s, t);
    REQUIRE(opt == 2);
    auto R = illuminate(S.d, S.B, S.cp, s, t, 1);
    CHECK(path_valid(S.d, R.path, s, t));
    CHECK(R.path.links >= 2);
    CHECK(R.path.links <= 2 * 2 * 1 + 1);
    auto M = illuminate_merging(S.d, S.B, S.cp, s, t);
    CHECK(path_valid(S.d, M.path, s, t));
    CHECK(M.map.merges <= 1);
    check_map_invariants(S, R.map);
    check_map_invariants(S, M.map);
}

TEST_CASE("posts between teeth: validity and lighting invariants") {
    int checked = 0;
    for (int teeth = 2; teeth <= 4; ++teeth)
        for (int posts = 1; posts <= 3; ++posts)
            for (uint64_t seed = 1; seed <= 2; ++seed) {
                auto inst = comb_with_posts(teeth, posts, seed);
                REQUIRE_FALSE(has_errors(validate(inst.domain)));
                Setup S(inst.domain);
                const Point &s = inst.s, &t = *inst.t;
                auto opt = brute_minlink(S.d, s, t, 8, 200);
                REQUIRE(opt.has_value());
                const int h = static_cast<int>(S.d.h());
                for (int m : {1, 2, h + 1}) {
                    auto R = illuminate(S.d, S.B, S.cp, s, t, m);
                    CHECK(path_valid(S.d, R.path, s, t));
                    CHECK(R.path.links >= *opt);
                    check_map_invariants(S, R.map);
                    check_color_connected(S, R.map);
                }
                auto M = illuminate_merging(S.d, S.B, S.cp, s, t);
                CHECK(path_valid(S.d, M.path, s, t));
                check_map_invariants(S, M.map);
                ++checked;
            }
    CHECK(checked == 18);
}

TEST_CASE("map stages bracket the true distance") {
    for (uint64_t seed = 1; seed <= 3; ++seed) {
        auto inst = comb_with_posts(3, 2, seed);
        Setup S(inst.domain);
        auto M = illumination_map(S.d, S.B, S.cp, inst.s, 2);
        check_map_invariants(S, M);
        auto frames = stage_frames(M);
        CHECK(static_cast<int>(frames.size()) == M.final_stage);
        CHECK(frames.back().size() == M.tris.size());
        std::vector<Direction> none;
        for (int i = 0; i < 12; ++i) {
            Point q = sample_free_point(S.d, none, seed * 50 + i);
            auto st = approx_distance_query(M, q);
            REQUIRE(st.has_value());
            auto opt = brute_minlink(S.d, inst.s, q, 8, 200);
            REQUIRE(opt.has_value());
            CHECK(*opt <= 2 * *st);
            if (linkdist_le1(S.d, inst.s, q) && S.d.h() == 0) CHECK(*st == 1);
        }
    }
}

TEST_CASE("merging keeps one record per triangle") {
    for (uint64_t seed = 1; seed <= 6; ++seed) {
        auto inst = gen_random(GenKind::General, 24, 3, std::nullopt, seed + 40);
        Setup S(inst.domain);
        std::vector<Direction> none;
        Point t = sample_free_point(S.d, none, seed + 900);
        auto M = illuminate_merging(S.d, S.B, S.cp, inst.s, t);
        CHECK(path_valid(S.d, M.path, inst.s, t));
        for (auto& T : M.map.tris) CHECK(T.records.size() <= 1);
        check_map_invariants(S, M.map);
    }
}
