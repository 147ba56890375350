// Acceptance harness: one PASS/FAIL line per criterion.
//   acceptance            run all criteria
//   acceptance --only N   run criterion N
//   acceptance --pilot    print the illumination calibration ratios on the pilot seeds

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "../common/fixtures.hpp"
#include "linkpath/bridging.hpp"
#include "linkpath/coriext.hpp"
#include "linkpath/corilink.hpp"
#include "linkpath/illumination.hpp"
#include "linkpath/oracle.hpp"
#include "linkpath/rectlink.hpp"
#include "linkpath/robust.hpp"

using namespace lp;
using clk = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double secs(clk::time_point a) { return std::chrono::duration<double>(clk::now() - a).count(); }

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

bool stats_clean(const EngineStats& s) {
    return s.window_violations == 0 && s.split_violations == 0 && s.dark_left == 0 &&
           s.steps_per_cell_violations == 0 && s.remainder_violations == 0;
}

// 1: rectilinear labels against the intersection-graph oracle
Outcome c1_rect_exact() {
    Outcome o;
    int domains = 0, mismatches = 0, dirty = 0;
    double t_map = 0, t_oracle = 0;
    for (uint64_t seed = 1; seed <= 200; ++seed) {
        auto inst = gen_random(GenKind::Rectilinear, 12 + static_cast<int>(seed % 49), static_cast<int>(seed % 5),
                               std::nullopt, seed * 7 + 1000);
        auto t0 = clk::now();
        auto m = build_rect_linkmap(inst.domain, inst.s);
        t_map += secs(t0);
        t0 = clk::now();
        auto b = brute_graph_labels(inst.domain, OrientationSet::rectilinear(), inst.s);
        t_oracle += secs(t0);
        mismatches += label_runs(m) != b;
        dirty += !stats_clean(m.stats);
        ++domains;
    }
    o.pass = domains >= 200 && mismatches == 0 && dirty == 0 && t_map < 10.0;
    o.detail = fmt("%d domains, %d label mismatches, %d instrumented violations, map time %.2fs (oracle %.2fs)",
                   domains, mismatches, dirty, t_map, t_oracle);
    return o;
}

DomainInstance cori_corpus(uint64_t seed) {
    const auto& C = fx::orientation_sets()[seed % 4];
    return gen_random(GenKind::COriented, 10 + static_cast<int>(seed % 41), static_cast<int>(seed % 4), C,
                      seed * 13 + 5000);
}

// 2: C-oriented labels, subcell splits and the label window
Outcome c2_cori_exact() {
    Outcome o;
    int domains = 0, mismatches = 0, split = 0, window = 0, dark = 0, worst_sub = 0;
    for (uint64_t seed = 1; seed <= 100; ++seed) {
        auto inst = cori_corpus(seed);
        const auto& C = *inst.orientations;
        auto m = build_cori_linkmap(inst.domain, C, inst.s);
        mismatches += label_runs(m) != brute_graph_labels(inst.domain, C, inst.s);
        split += m.stats.split_violations + (m.stats.max_subcells > 3);
        window += m.stats.window_violations;
        dark += m.stats.dark_left;
        worst_sub = std::max(worst_sub, m.stats.max_subcells);
        ++domains;
    }
    o.pass = domains >= 100 && mismatches == 0 && split == 0 && window == 0 && dark == 0;
    o.detail = fmt("%d domains (C in 2..4), %d label mismatches, max subcells %d, %d window violations", domains,
                   mismatches, worst_sub, window);
    return o;
}

// 3: 2-approximate map against the exact map
Outcome c3_approx2() {
    Outcome o;
    int samples = 0, bad = 0, rect_alt = 0, rect_unequal = 0, bad_paths = 0;
    for (uint64_t seed = 1; seed <= 100; ++seed) {
        auto inst = cori_corpus(seed);
        const auto& C = *inst.orientations;
        auto A = build_2approx_map(inst.domain, C, inst.s);
        auto E = build_cori_linkmap(inst.domain, C, inst.s);
        bool rect = C.C() == 2;
        for (uint64_t j = 0; j < 12; ++j) {
            Point q = sample_free_point(inst.domain, C.dirs, seed * 1000 + j);
            int l = query_2approx(A, q), k = query_cori(E, q);
            ++samples;
            bad += !(k <= l && l <= 2 * k);
            auto P = extract_2approx_path(inst.domain, A, q);
            bad_paths += !(fx::c_path_ok(inst.domain, P, C) && fx::links(P) <= l);
            if (!rect) continue;
            // the exact path alternates when no two consecutive links share an orientation
            auto X = extract_cori_path(E, q);
            if (!fx::c_path_ok(inst.domain, X, C) || fx::links(X) != k) {
                ++bad_paths;
                continue;
            }
            ++rect_alt;
            rect_unequal += l != k;
        }
    }
    o.pass = samples >= 1000 && bad == 0 && bad_paths == 0 && rect_alt > 0 && rect_unequal == 0;
    o.detail = fmt("%d samples, %d outside [exact, 2 exact], %d bad paths; C=2: %d alternating samples, %d unequal",
                   samples, bad, bad_paths, rect_alt, rect_unequal);
    return o;
}

// 4: the extension on oriented and on wedge domains
Outcome c4_arbitrary() {
    Outcome o;
    int same = 0, differ = 0;
    for (uint64_t seed = 1; seed <= 40; ++seed) {
        auto inst = cori_corpus(seed);
        auto A = build_arbitrary_linkmap(inst.domain, *inst.orientations, inst.s);
        auto B = build_cori_linkmap(inst.domain, *inst.orientations, inst.s);
        bool eq = A.problematic.empty() && label_runs(A.L) == label_runs(B);
        (eq ? same : differ)++;
    }
    const Point s(frac(23, 10), frac(17, 10));
    int wedges = 0, zz = 0, queries = 0, wrong = 0, formula = 0, formula_wrong = 0;
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> r(1, 9999);
    for (auto& d : fx::spike_rooms())
        for (size_t ci = 0; ci < 3; ++ci) {
            const auto& C = fx::orientation_sets()[ci];
            auto A = build_arbitrary_linkmap(d, C, s);
            if (A.zigzags.empty()) continue;
            ++wedges;
            zz += static_cast<int>(A.zigzags.size());
            auto B = brute_graph_map(d, C, s, {}, nullptr, 400, 30);
            for (auto& z : A.zigzags) {
                const CMap& m = A.L.maps[z.map];
                auto poly = m.T.frame_polygon(z.cell);
                Coord ulo = poly[0].x, uhi = poly[0].x;
                for (auto& p : poly) {
                    ulo = std::min(ulo, p.x);
                    uhi = std::max(uhi, p.x);
                }
                for (int i = 0; i < 40; ++i) {
                    Coord w = z.cut_lo + (z.cut_hi - z.cut_lo) * frac(r(rng), 10000);
                    Coord wf = z.geom.flip > 0 ? w : Coord(-w);
                    Coord u = m.T.uL(z.cell, wf) + (m.T.uR(z.cell, wf) - m.T.uL(z.cell, wf)) * frac(r(rng), 10000);
                    Point q = m.T.frame.from(Point(u, wf));
                    if (!z.contains(m, q) || !in_open_free(d, q)) continue;
                    int b = query_cori(B, q);
                    if (b == kDark) continue;
                    ++queries;
                    wrong += query_arbitrary(A, q) != b;
                    Point f(ulo + (uhi - ulo) * frac(r(rng), 10000), wf);
                    Point n = z.geom.flip > 0 ? f : Point(-f.x, -f.y);
                    ++formula;
                    formula_wrong += zigzag_links(z.geom, n, z.h1n, z.h2n, ZigzagMethod::Simulation) !=
                                     zigzag_links(z.geom, n, z.h1n, z.h2n, ZigzagMethod::ClosedForm);
                }
            }
        }
    o.pass = differ == 0 && wedges >= 20 && queries > 0 && wrong == 0 && formula_wrong == 0;
    o.detail = fmt("%d/%d oriented identical; %d wedge instances, %d zigzag cells, %d queries vs bounce BFS "
                   "(%d wrong), %d formula/simulation pairs (%d differ)",
                   same, same + differ, wedges, zz, queries, wrong, formula, formula_wrong);
    return o;
}

Point box_point(std::mt19937_64& rng, const PolygonalDomain& d) {
    Coord x0 = d.outer[0].x, x1 = x0, y0 = d.outer[0].y, y1 = y0;
    for (auto& p : d.outer) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    std::uniform_int_distribution<long> u(0, 1 << 20);
    return Point(x0 + (x1 - x0) * Coord(u(rng), 1 << 20), y0 + (y1 - y0) * Coord(u(rng), 1 << 20));
}

// 5: bridging counts, connectivity, stabbing
Outcome c5_bridging() {
    Outcome o;
    auto t0 = clk::now();
    int instances = 0, wrong_count = 0, invalid = 0, over = 0;
    std::string per;
    for (int h : {16, 64, 256}) {
        double worst_ratio = 0;
        int worst = 0;
        for (uint64_t seed = 1; seed <= 5; ++seed) {
            auto inst = gen_random(GenKind::General, 8 * h + 8, h, std::nullopt, seed + 77);
            auto B = compute_bridges(inst.domain);
            ++instances;
            wrong_count += B.bridges.size() != inst.domain.h();
            invalid += !bridges_valid(inst.domain, B);
            std::mt19937_64 rng(seed * 7919 + h);
            int mx = 0;
            for (int i = 0; i < 1000; ++i) {
                Point a = box_point(rng, inst.domain), b = box_point(rng, inst.domain);
                if (a == b) continue;
                mx = std::max(mx, stabbing_count(B, a, b));
            }
            over += mx > 4 * std::sqrt(static_cast<double>(h));
            worst = std::max(worst, mx);
            worst_ratio = std::max(worst_ratio, mx / std::sqrt(static_cast<double>(h)));
        }
        per += fmt(" h=%d max %d (%.2f sqrt h);", h, worst, worst_ratio);
    }
    double t = secs(t0);
    o.pass = wrong_count == 0 && invalid == 0 && over == 0 && t < 60.0;
    o.detail = fmt("%d instances, %d wrong counts, %d disconnected, %d over 4 sqrt h;", instances, wrong_count,
                   invalid, over) +
               per + fmt(" %.1fs", t);
    return o;
}

// 6: illumination guarantees
// Constants from the pilot on seeds 1001 and up (see --pilot): largest ratios 1.13 and 0.64,
// rounded up with headroom and frozen here.
constexpr double kC1 = 1.5, kC2 = 1.0;

struct Tiny {
    DomainInstance inst;
    int opt;
};

std::vector<Tiny> tiny_corpus(uint64_t first_seed, int target) {
    std::vector<Tiny> out;
    for (uint64_t seed = first_seed; static_cast<int>(out.size()) < target && seed < first_seed + 400; ++seed) {
        int teeth = 1 + static_cast<int>(seed % 5);
        // roughly a third of the corpus stays hole-free
        bool posts = (seed % 3) != 0;
        auto inst = posts ? fx::comb_with_posts(teeth, 1 + static_cast<int>(seed % 3), seed) : fx::comb_corridor(teeth, seed);
        if (has_errors(validate(inst.domain))) continue;
        if (!in_open_free(inst.domain, inst.s) || !in_open_free(inst.domain, *inst.t)) continue;
        auto opt = brute_minlink(inst.domain, inst.s, *inst.t, 6, 200);
        if (!opt) continue;
        out.push_back({inst, *opt});
    }
    return out;
}

struct IllumCheck {
    int n = 0, simple = 0, holed = 0, invalid = 0, below_opt = 0, over_simple = 0, over_c1 = 0, over_c2 = 0;
    double r1 = 0, r2 = 0, rs = 0;
};

bool path_valid(const PolygonalDomain& d, const ApproxPath& p, const Point& s, const Point& t) {
    if (!p.ok || p.pts.size() < 2 || p.pts.front() != s || p.pts.back() != t) return false;
    if (p.links != static_cast<int>(p.pts.size()) - 1) return false;
    for (size_t i = 0; i + 1 < p.pts.size(); ++i)
        if (!segment_in_free(d, p.pts[i], p.pts[i + 1])) return false;
    return true;
}

IllumCheck run_illum(const std::vector<Tiny>& corpus) {
    IllumCheck c;
    for (auto& [inst, opt] : corpus) {
        const auto& d = inst.domain;
        const Point &s = inst.s, &t = *inst.t;
        auto B = compute_bridges(d);
        auto cp = cut_polygon(d, B);
        int h = static_cast<int>(d.h());
        int m = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(h)))));
        auto R = illuminate(d, B, cp, s, t, m);
        auto M = illuminate_merging(d, B, cp, s, t);
        ++c.n;
        c.invalid += !path_valid(d, R.path, s, t) + !path_valid(d, M.path, s, t);
        if (!R.path.ok || !M.path.ok) continue;
        int a = R.path.links, am = M.path.links;
        c.below_opt += (a < opt) + (am < opt);
        if (h == 0) {
            ++c.simple;
            c.over_simple += (a > 2 * opt) + (am > 2 * opt);
            c.rs = std::max(c.rs, std::max(a, am) / static_cast<double>(opt));
            continue;
        }
        ++c.holed;
        double rh = std::sqrt(static_cast<double>(h));
        double r1 = (a - static_cast<double>(h) / m) / (opt * rh);
        double r2 = am / (opt * rh * std::log2(h + 2.0));
        c.r1 = std::max(c.r1, r1);
        c.r2 = std::max(c.r2, r2);
        c.over_c1 += a > kC1 * opt * rh + static_cast<double>(h) / m;
        c.over_c2 += am > kC2 * opt * rh * std::log2(h + 2.0);
    }
    return c;
}

Outcome c6_illumination() {
    Outcome o;
    auto corpus = tiny_corpus(1, 60);
    auto c = run_illum(corpus);
    o.pass = c.n >= 50 && c.invalid == 0 && c.below_opt == 0 && c.over_simple == 0 && c.over_c1 == 0 &&
             c.over_c2 == 0 && c.simple > 0 && c.holed > 0;
    o.detail = fmt("%d instances (%d hole-free, %d with holes), %d invalid paths, %d below opt, %d over 2 opt "
                   "(worst %.2f), ratio1 max %.2f vs c1=%.1f, ratio2 max %.2f vs c2=%.1f",
                   c.n, c.simple, c.holed, c.invalid, c.below_opt, c.over_simple, c.rs, c.r1, kC1, c.r2, kC2);
    return o;
}

void pilot() {
    auto corpus = tiny_corpus(1001, 30);
    auto c = run_illum(corpus);
    std::printf("pilot: %d instances (%d with holes); max (apx - h/m)/(opt sqrt h) = %.3f; "
                "max apx/(opt sqrt h log2(h+2)) = %.3f; hole-free max apx/opt = %.3f\n",
                c.n, c.holed, c.r1, c.r2, c.rs);
}

// 7: hardness gadgets
Outcome c7_hardness() {
    Outcome o;
    std::mt19937_64 rng(2024);
    int gadgets = 0, disagree = 0, yes = 0;
    while (gadgets < 100) {
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
        if (gadgets % 2 == 0) {
            // plant a collinear triple through the first gaps of lines 1 and 2 when it fits
            Coord x1 = gaps[0].x, x2;
            for (auto& g : gaps)
                if (g.line == 2) {
                    x2 = g.x;
                    break;
                }
            Coord x3 = 2 * x2 - x1;
            bool dup = false;
            for (auto& g : gaps) dup |= g.line == 3 && abs(g.x - x3) <= 1;
            if (!dup && abs(x3) <= 12) gaps.push_back({3, x3});
        }
        GeomBaseParams p;
        auto g = gen_geombase(gaps, p);
        bool expect = geombase_triple_stabbable(gaps, p);
        yes += expect;
        disagree += linkdist_le3(g.domain, g.s, *g.t) != expect;
        ++gadgets;
    }
    std::string zz;
    int zbad = 0;
    for (int k = 1; k <= 3; ++k)
        for (bool feasible : {true, false}) {
            auto z = gen_zigzag(k, zigzag_default(k, feasible));
            int want = feasible ? 2 + k : 2 + 2 * k;
            auto m = brute_minlink(z.domain, z.s, *z.t, want + 1, 400);
            bool ok = m && *m == want;
            zbad += !ok;
            zz += fmt(" k=%d %s %s/%d;", k, feasible ? "feasible" : "infeasible", m ? std::to_string(*m).c_str() : "?", want);
        }
    o.pass = disagree == 0 && yes > 0 && yes < gadgets && zbad == 0;
    o.detail = fmt("%d gadgets (%d stabbable), %d disagreements; zigzag", gadgets, yes, disagree) + zz;
    return o;
}

// 8: robust paths and snapping
Outcome c8_robust() {
    Outcome o;
    static const OrientationSet c4({{1, 0}, {1, 1}, {0, 1}, {-1, 1}});
    static const OrientationSet c3({{1, 0}, {2, 3}, {-1, 4}, {-3, 2}});
    int paths = 0, fail = 0, over = 0, unoriented = 0, uncovered = 0, composed = 0, attempts = 0;
    for (int i : {3, 4}) {
        auto spec = make_spec(i, i == 3 ? c3 : c4);
        int got = 0;
        for (uint64_t seed = 1; got < 60 && seed <= 400; ++seed) {
            auto inst = gen_random(GenKind::General, 20, static_cast<int>(seed % 3), std::nullopt, seed + 3000);
            const int k = 1 + static_cast<int>(seed % 6);
            ++attempts;
            auto P = random_robust_path(inst.domain, spec, k, seed + 17);
            if (!P) continue;
            ++got;
            ++paths;
            auto R = snap(inst.domain, *P, spec);
            if (!R.ok) {
                ++fail;
                continue;
            }
            over += R.links > k + 1;
            unoriented += !is_c_path(R.pts, spec.C_phi);
            std::vector<std::vector<Point>> tris;
            for (size_t j = 0; j + 1 < P->size(); ++j)
                tris.push_back(robustness_triangle((*P)[j], (*P)[j + 1], *tan_phi(spec)));
            for (size_t j = 0; j + 1 < R.pts.size(); ++j)
                uncovered += !segment_in_triangles(R.pts[j], R.pts[j + 1], tris);
            auto A = build_arbitrary_linkmap(inst.domain, spec.C_phi, P->front());
            composed += query_arbitrary(A, P->back()) > k + 1;
        }
    }
    // i = 2 admits no robust path: its clearance region is a half-plane
    bool i2 = !tan_phi(make_spec(2, OrientationSet::rectilinear())).has_value();
    o.pass = paths >= 100 && fail == 0 && over == 0 && unoriented == 0 && uncovered == 0 && composed == 0 && i2;
    o.detail = fmt("%d paths (i in {3,4}, k<=6, %d attempts), %d snap failures, %d over k+1, %d not C-oriented, "
                   "%d links outside the triangles, %d map distances over k+1; i=2 has no bounded clearance",
                   paths, attempts, fail, over, unoriented, uncovered, composed);
    return o;
}

// 9: scaling of the rectilinear map
Outcome c9_scaling() {
    Outcome o;
    std::vector<double> xs, ys;
    std::string rows;
    for (int e = 8; e <= 13; ++e) {
        int n = 1 << e;
        std::vector<double> t;
        int nn = 0;
        for (uint64_t seed = 1; seed <= 3; ++seed) {
            auto inst = gen_random(GenKind::Rectilinear, n, std::max(1, n / 64), std::nullopt, seed);
            nn = static_cast<int>(inst.domain.n());
            auto t0 = clk::now();
            auto L = build_rect_linkmap(inst.domain, inst.s, false);
            t.push_back(secs(t0));
            (void)L;
        }
        std::sort(t.begin(), t.end());
        xs.push_back(std::log(static_cast<double>(nn)));
        ys.push_back(std::log(t[1]));
        rows += fmt(" n=%d %.3fs;", nn, t[1]);
    }
    double mx = 0, my = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    double slope = sxy / sxx;
    // threshold: the fitted exponent must not exceed 1.3
    o.pass = slope <= 1.3;
    o.detail = fmt("log-log slope %.3f (threshold 1.3);", slope) + rows;
    return o;
}

// 10: sweep status against the naive shifting implementation
Outcome c10_sweep() {
    Outcome o;
    int bad = 0;
    const int N = 100000;
    for (int i = 0; i < N; ++i) bad += !fx::status_sequence_agrees(static_cast<uint64_t>(i) + 1);
    o.pass = bad == 0;
    o.detail = fmt("%d sequences, %d disagreements", N, bad);
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--pilot")) {
            pilot();
            return 0;
        }
        if (!std::strcmp(argv[i], "--only") && i + 1 < argc) only = std::atoi(argv[++i]);
    }
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"rectilinear exactness", c1_rect_exact},
        {"C-oriented exactness", c2_cori_exact},
        {"2-approximation", c3_approx2},
        {"arbitrary-domain extension", c4_arbitrary},
        {"bridging", c5_bridging},
        {"illumination guarantees", c6_illumination},
        {"hardness constructions", c7_hardness},
        {"robust snapping", c8_robust},
        {"scaling", c9_scaling},
        {"sweep status", c10_sweep},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        if (only && static_cast<int>(i) + 1 != only) continue;
        auto t0 = clk::now();
        Outcome r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        std::printf("%s %2zu %s: %s [%.1fs]\n", r.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, r.detail.c_str(),
                    secs(t0));
        std::fflush(stdout);
        failed += !r.pass;
    }
    return failed ? 1 : 0;
}
