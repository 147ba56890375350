#pragma once

#include <optional>
#include <random>

#include "linkpath/domain.hpp"
#include "linkpath/geom.hpp"
#include "linkpath/sweep.hpp"

namespace fx {

inline lp::PolygonalDomain square(long s = 10) {
    lp::PolygonalDomain d;
    d.outer = {{0, 0}, {s, 0}, {s, s}, {0, s}};
    return d;
}

inline lp::PolygonalDomain square_with_hole() {
    lp::PolygonalDomain d = square();
    d.holes = {{{4, 4}, {4, 6}, {6, 6}, {6, 4}}};
    return d;
}

// One random operation sequence applied to both status implementations.
// Returns false on the first disagreement.
inline bool status_sequence_agrees(uint64_t seed, int ops = 40) {
    std::mt19937_64 rng(seed);
    auto ri = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    lp::Coord shear = lp::frac(ri(-3, 3), ri(1, 3));
    lp::SweepStatus fast(shear);
    lp::NaiveStatus slow(shear);
    lp::Coord h = 0;
    for (int i = 0; i < ops; ++i) {
        int op = ri(0, 3);
        lp::Coord a = lp::frac(ri(-20, 20), ri(1, 4)), len = lp::frac(ri(1, 12), ri(1, 3));
        lp::Coord b = a + len;
        switch (op) {
            case 0:
                fast.insert({a, b, i});
                slow.insert({a, b, i});
                break;
            case 1:
                if (fast.clip(a, b) != slow.clip(a, b)) return false;
                break;
            case 2:
                if (fast.overlap(a, b) != slow.overlap(a, b)) return false;
                break;
            default:
                h += lp::frac(ri(0, 6), ri(1, 2));
                fast.shift_frame(h);
                slow.shift_frame(h);
                break;
        }
        if (fast.intervals() != slow.intervals()) return false;
    }
    return true;
}

// Polyline whose links lie in the closed free space and run along orientations of C,
// with no two consecutive links parallel.
inline bool c_path_ok(const lp::PolygonalDomain& d, const std::vector<lp::Point>& path, const lp::OrientationSet& C) {
    if (path.empty()) return false;
    std::optional<lp::Direction> prev;
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        const lp::Point &a = path[i], &b = path[i + 1];
        if (a == b) return false;
        lp::Direction dir = lp::edge_direction(a, b);
        if (!C.contains(dir)) return false;
        if (prev && *prev == dir) return false;
        if (!lp::segment_in_free(d, a, b)) return false;
        prev = dir;
    }
    return true;
}

inline int links(const std::vector<lp::Point>& path) { return path.size() < 2 ? 1 : static_cast<int>(path.size()) - 1; }

inline const std::vector<lp::OrientationSet>& orientation_sets() {
    static const std::vector<lp::OrientationSet> sets = {
        lp::OrientationSet({{1, 0}, {0, 1}}),
        lp::OrientationSet({{1, 0}, {1, 1}, {-1, 1}}),
        lp::OrientationSet({{1, 0}, {0, 1}, {1, 1}, {-1, 1}}),
        lp::OrientationSet({{1, 0}, {1, 2}, {-1, 2}}),
    };
    return sets;
}

inline lp::DomainInstance rect_case(uint64_t seed) {
    return lp::gen_random(lp::GenKind::Rectilinear, 12 + static_cast<int>(seed % 48), static_cast<int>(seed % 5),
                          std::nullopt, seed);
}

inline lp::DomainInstance cori_case(uint64_t seed) {
    const auto& C = orientation_sets()[seed % 4];
    return lp::gen_random(lp::GenKind::COriented, 10 + static_cast<int>(seed % 40), static_cast<int>(seed % 4), C, seed);
}


// 10x10 room with a thin spike leaving the right wall between heights y0 and y1 toward tip.
inline lp::PolygonalDomain spike_room(long y0, long y1, lp::Point tip) {
    lp::PolygonalDomain d;
    d.outer = {{0, 0}, {10, 0}, {10, y0}, tip, {10, y1}, {10, 10}, {0, 10}};
    return d;
}

inline const std::vector<lp::PolygonalDomain>& spike_rooms() {
    static const std::vector<lp::PolygonalDomain> v = {
        spike_room(4, 6, {40, 9}),  spike_room(3, 6, {30, 14}), spike_room(2, 5, {40, 30}),
        spike_room(4, 7, {40, 20}), spike_room(4, 5, {50, 7}),  spike_room(5, 7, {35, 3}),
        spike_room(1, 3, {45, 15}), spike_room(6, 9, {40, 25}),
    };
    return v;
}

// Two rooms joined by a sloped corridor of vertical width 2 (length len, rise dy).
inline lp::PolygonalDomain corridor_rooms(long len, long dy) {
    lp::PolygonalDomain d;
    long X = 10 + len;
    d.outer = {{0, 0}, {10, 0}, {10, 4}, {X, 4 + dy}, {X, 0}, {X + 10, 0}, {X + 10, 14 + dy}, {X, 14 + dy},
               {X, 6 + dy}, {10, 6}, {10, 10}, {0, 10}};
    return d;
}

// Room with `slabs` thin horizontal holes, each leaving a narrow gap at an alternating wall.
// s sits below the first slab and t above the last one.
inline lp::DomainInstance slab_maze(int slabs, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> jit(0, 3);
    lp::DomainInstance inst;
    const long W = 36, step = 4;
    long H = step * (slabs + 1);
    inst.domain.outer = {{0, 0}, {W, 0}, {W, H}, {0, H}};
    for (int i = 0; i < slabs; ++i) {
        lp::Coord y = step * (i + 1) + lp::frac(jit(rng) - 1, 2);
        long gap = 1 + jit(rng) % 2;
        lp::Coord x0 = (i % 2 == 0) ? lp::Coord(gap) : lp::Coord(1);
        lp::Coord x1 = (i % 2 == 0) ? lp::Coord(W - 1) : lp::Coord(W - gap);
        lp::Coord y1 = y + lp::frac(1, 2);
        inst.domain.holes.push_back({{x0, y}, {x0, y1}, {x1, y1}, {x1, y}});
    }
    inst.s = lp::Point(lp::frac(W, 2) + lp::frac(jit(rng), 3), 2);
    inst.t = lp::Point(lp::frac(W, 2) - lp::frac(jit(rng), 3), H - 2);
    return inst;
}

// Simple polygon: a corridor with thin teeth hanging alternately from the floor and the ceiling.
inline lp::DomainInstance comb_corridor(int teeth, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> jit(0, 4);
    const long H = 12, pitch = 5;
    long W = pitch * (teeth + 1);
    std::vector<lp::Point> bottom, top;
    for (int i = 0; i < teeth; ++i) {
        lp::Coord x = pitch * (i + 1) + lp::frac(jit(rng) - 2, 4);
        lp::Coord reach = 8 + lp::frac(jit(rng), 2);
        if (i % 2 == 0)
            for (lp::Point p : {lp::Point(x, 0), lp::Point(x + lp::frac(1, 4), reach), lp::Point(x + lp::frac(1, 2), 0)})
                bottom.push_back(p);
        else
            for (lp::Point p : {lp::Point(x, H), lp::Point(x + lp::frac(1, 4), H - reach), lp::Point(x + lp::frac(1, 2), H)})
                top.push_back(p);
    }
    lp::DomainInstance inst;
    auto& o = inst.domain.outer;
    o.push_back(lp::Point(0, 0));
    o.insert(o.end(), bottom.begin(), bottom.end());
    o.push_back(lp::Point(W, 0));
    o.push_back(lp::Point(W, H));
    o.insert(o.end(), top.rbegin(), top.rend());
    o.push_back(lp::Point(0, H));
    inst.s = lp::Point(1, lp::frac(1 + jit(rng), 1));
    inst.t = lp::Point(W - 1, H - 1 - lp::frac(jit(rng), 2));
    return inst;
}

// Comb corridor with a small square post inside some of the bays between teeth.
inline lp::DomainInstance comb_with_posts(int teeth, int posts, uint64_t seed) {
    lp::DomainInstance inst = comb_corridor(teeth, seed);
    std::mt19937_64 rng(seed * 31 + 7);
    std::uniform_int_distribution<int> jit(0, 6);
    for (int i = 0; i < posts && i <= teeth; ++i) {
        int bay = (i * 2 + static_cast<int>(seed)) % (teeth + 1);
        lp::Coord x = 5 * bay + 2 + lp::frac(jit(rng), 12);
        lp::Coord y = 3 + lp::frac(jit(rng) * 5, 6);
        bool dup = false;
        for (auto& hole : inst.domain.holes) dup |= hole[0].x - x < 2 && x - hole[0].x < 2;
        if (dup) continue;
        inst.domain.holes.push_back({{x, y}, {x, y + 1}, {x + 1, y + 1}, {x + 1, y}});
    }
    return inst;
}

}  // namespace fx
