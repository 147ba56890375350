#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "linkpath/bridging.hpp"
#include "linkpath/coriext.hpp"
#include "linkpath/corilink.hpp"
#include "linkpath/domain.hpp"
#include "linkpath/illumination.hpp"
#include "linkpath/oracle.hpp"
#include "linkpath/rectlink.hpp"
#include "linkpath/robust.hpp"

using namespace lp;
using json = nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

Point parse_point(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw UsageError("point must be x,y: " + s);
    try {
        return Point(parse_coord(s.substr(0, comma)), parse_coord(s.substr(comma + 1)));
    } catch (const std::invalid_argument&) {
        throw UsageError("bad point: " + s);
    }
}

json coord_json(const Coord& c) { return to_string(c); }
json point_json(const Point& p) { return json::array({coord_json(p.x), coord_json(p.y)}); }
json poly_json(const std::vector<Point>& poly) {
    json a = json::array();
    for (auto& p : poly) a.push_back(point_json(p));
    return a;
}
std::vector<Point> poly_from(const json& j) {
    std::vector<Point> r;
    for (auto& p : j) r.emplace_back(parse_coord(p.at(0).get<std::string>()), parse_coord(p.at(1).get<std::string>()));
    return r;
}

DomainInstance load_domain(const std::string& path) {
    DomainInstance inst;
    try {
        inst = instance_from_json(read_file(path));
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
    auto v = validate(inst.domain);
    if (has_errors(v)) {
        for (auto& x : v)
            if (!x.warning) throw UsageError(path + ": " + x.what);
    }
    return inst;
}

OrientationSet load_orient(const std::string& path, const DomainInstance& inst) {
    if (path.empty()) {
        if (!inst.orientations) throw UsageError("no orientations: pass --orient or store them in the domain file");
        return *inst.orientations;
    }
    try {
        return orientations_from_json(read_file(path));
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
}

Point pick(const std::string& opt, const std::optional<Point>& fallback, const char* name) {
    if (!opt.empty()) return parse_point(opt);
    if (fallback) return *fallback;
    throw UsageError(std::string("missing --") + name);
}

void require_inside(const PolygonalDomain& d, const Point& p, const char* name) {
    if (!in_open_free(d, p)) throw UsageError(std::string(name) + " is not strictly inside the free space");
}

std::string path_text(const std::vector<Point>& pts) {
    std::string s;
    for (size_t i = 0; i < pts.size(); ++i) s += (i ? " " : "") + to_string(pts[i]);
    return s;
}

// Artifact: a JSON document that `render` turns into SVG.
json artifact_base(const std::string& kind, const DomainInstance& inst) {
    json a;
    a["kind"] = kind;
    a["outer"] = poly_json(inst.domain.outer);
    a["holes"] = json::array();
    for (auto& h : inst.domain.holes) a["holes"].push_back(poly_json(h));
    a["s"] = point_json(inst.s);
    if (inst.t) a["t"] = point_json(*inst.t);
    a["cells"] = json::array();
    return a;
}

void add_map_cells(json& a, const CoriLinkMap& L) {
    for (size_t mi = 0; mi < L.maps.size(); ++mi) {
        const CMap& m = L.maps[mi];
        for (auto& ids : m.cell_pieces)
            for (int id : ids) {
                const Piece& p = m.pieces[id];
                if (p.degenerate()) continue;
                auto poly = m.piece_polygon(id);
                if (poly.size() < 3) continue;
                a["cells"].push_back({{"layer", mi}, {"label", p.label}, {"poly", poly_json(poly)}});
            }
    }
}

// ---------------------------------------------------------------- subcommands

struct Common {
    std::string domain, s, t, orient, artifact;
};

int cmd_rect_map(const Common& c, const std::string& query, const std::string& path) {
    auto inst = load_domain(c.domain);
    Point s = pick(c.s, inst.s, "s");
    require_inside(inst.domain, s, "s");
    inst.s = s;
    auto L = build_rect_linkmap(inst.domain, s);
    if (!query.empty()) {
        Point q = parse_point(query);
        if (!in_closed_free(inst.domain, q)) throw UsageError("query point is outside the free space");
        std::cout << query_rect(L, q) << "\n";
    }
    if (!path.empty()) {
        Point q = parse_point(path);
        if (!in_closed_free(inst.domain, q)) throw UsageError("path target is outside the free space");
        std::cout << path_text(extract_rect_path(L, q)) << "\n";
    }
    if (query.empty() && path.empty())
        std::cout << "steps " << L.stats.steps << " events " << L.stats.events << " max_subcells "
                  << L.stats.max_subcells << "\n";
    if (!c.artifact.empty()) {
        json a = artifact_base("linkmap", inst);
        add_map_cells(a, L);
        write_text(c.artifact, a.dump() + "\n");
    }
    return 0;
}

int cmd_cori_map(const Common& c, bool approx2, bool arbitrary, const std::string& query) {
    auto inst = load_domain(c.domain);
    OrientationSet C = load_orient(c.orient, inst);
    Point s = pick(c.s, inst.s, "s");
    require_inside(inst.domain, s, "s");
    inst.s = s;
    std::optional<Point> q;
    if (!query.empty()) q = parse_point(query);
    else if (inst.t) q = inst.t;
    if (q && !in_closed_free(inst.domain, *q)) throw UsageError("query point is outside the free space");
    json a = artifact_base("linkmap", inst);
    if (approx2) {
        auto A = build_2approx_map(inst.domain, C, s);
        if (q) {
            int l = query_2approx(A, *q);
            std::cout << l << "\n";
            if (l > 0) std::cout << path_text(extract_2approx_path(inst.domain, A, *q)) << "\n";
        } else {
            std::cout << "steps " << A.steps << "\n";
        }
        CoriLinkMap L;
        L.maps.push_back(A.H);
        add_map_cells(a, L);
    } else if (arbitrary) {
        ArbitraryLinkMap A;
        try {
            A = build_arbitrary_linkmap(inst.domain, C, s);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        if (q) std::cout << query_arbitrary(A, *q) << "\n";
        else std::cout << "problematic " << A.problematic.size() << " zigzags " << A.zigzags.size() << "\n";
        add_map_cells(a, A.L);
    } else {
        if (!is_c_oriented(inst.domain, C)) throw UsageError("domain is not C-oriented (use --arbitrary)");
        auto L = build_cori_linkmap(inst.domain, C, s);
        if (q) {
            int l = query_cori(L, *q);
            std::cout << l << "\n";
            if (l > 0) std::cout << path_text(extract_cori_path(L, *q)) << "\n";
        } else {
            std::cout << "steps " << L.stats.steps << " events " << L.stats.events << " max_subcells "
                      << L.stats.max_subcells << "\n";
        }
        add_map_cells(a, L);
    }
    if (!c.artifact.empty()) write_text(c.artifact, a.dump() + "\n");
    return 0;
}

int cmd_approx(const Common& c, int m, bool merge) {
    auto inst = load_domain(c.domain);
    Point s = pick(c.s, inst.s, "s"), t = pick(c.t, inst.t, "t");
    require_inside(inst.domain, s, "s");
    require_inside(inst.domain, t, "t");
    inst.s = s;
    inst.t = t;
    if (m <= 0) m = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(inst.domain.h())))));
    auto B = compute_bridges(inst.domain);
    auto cp = cut_polygon(inst.domain, B);
    auto R = merge ? illuminate_merging(inst.domain, B, cp, s, t) : illuminate(inst.domain, B, cp, s, t, m);
    if (R.path.ok) {
        std::cout << R.path.links << "\n" << path_text(R.path.pts) << "\n";
    } else {
        std::cout << "unreached: " << R.path.failure << "\n";
    }
    std::cout << "stages " << R.map.final_stage << " merges " << R.map.merges << "\n";
    if (!c.artifact.empty()) {
        json a = artifact_base("illumination", inst);
        for (size_t i = 0; i < R.map.tris.size(); ++i) {
            std::vector<Point> tri(R.map.tri_geom[i].begin(), R.map.tri_geom[i].end());
            a["cells"].push_back({{"layer", 0}, {"label", R.map.tris[i].stage}, {"poly", poly_json(tri)}});
        }
        a["frames"] = stage_frames(R.map);
        if (R.path.ok) a["path"] = poly_json(R.path.pts);
        json bs = json::array();
        for (auto& b : B.bridges) bs.push_back(poly_json({b.a, b.b}));
        a["segments"] = bs;
        write_text(c.artifact, a.dump() + "\n");
    }
    return R.path.ok ? 0 : 2;
}

int cmd_bridge(const Common& c) {
    auto inst = load_domain(c.domain);
    auto B = compute_bridges(inst.domain);
    auto cp = cut_polygon(inst.domain, B);
    json a = artifact_base("bridge", inst);
    json bs = json::array();
    for (auto& b : B.bridges) bs.push_back(poly_json({b.a, b.b}));
    a["segments"] = bs;
    for (size_t i = 0; i < cp.tris.size(); ++i)
        a["cells"].push_back({{"layer", 0}, {"label", static_cast<int>(i)}, {"poly", poly_json(cp.triangle(static_cast<int>(i)))}});
    std::string out = a.dump() + "\n";
    if (!c.artifact.empty()) write_text(c.artifact, out);
    else std::cout << out;
    return 0;
}

std::vector<Point> load_path(const std::string& file) {
    try {
        auto p = points_from_json(read_file(file));
        if (p.size() < 2) throw UsageError(file + ": a path needs at least two points");
        return p;
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(file + ": " + e.what());
    }
}

int cmd_snap(const Common& c, const std::string& pathfile, int i) {
    auto inst = load_domain(c.domain);
    auto spec = make_spec(i, load_orient(c.orient, inst));
    auto path = load_path(pathfile);
    SnapResult r;
    try {
        r = snap(inst.domain, path, spec);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (!r.ok) {
        std::cout << "failed: " << r.failure << "\n";
        return 2;
    }
    std::cout << r.links << "\n";
    write_text(c.artifact, points_to_json(r.pts) + "\n");
    return 0;
}

int cmd_check_robust(const Common& c, const std::string& pathfile, int i) {
    auto inst = load_domain(c.domain);
    auto spec = make_spec(i, load_orient(c.orient, inst));
    try {
        std::cout << (is_robust(inst.domain, load_path(pathfile), spec) ? "true" : "false") << "\n";
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return 0;
}

std::vector<GapSpec> parse_gaps(const std::string& s) {
    // "line:x" items separated by commas, e.g. 1:0,2:1,3:2
    std::vector<GapSpec> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) throw UsageError("gap must be line:x, got " + item);
        try {
            out.push_back({std::stoi(item.substr(0, colon)), parse_coord(item.substr(colon + 1))});
        } catch (const std::exception&) {
            throw UsageError("bad gap " + item);
        }
    }
    return out;
}

struct GenOpts {
    std::string kind, gaps, halfwidth = "1/4", out, orient, kindname = "general";
    int k = 1, n = 40, h = 3;
    bool infeasible = false;
    uint64_t seed = 1;
};

int cmd_gen(const GenOpts& g) {
    DomainInstance inst;
    try {
        if (g.kind == "geombase") {
            std::vector<GapSpec> gaps = parse_gaps(g.gaps);
            if (g.gaps.empty()) {
                std::mt19937_64 rng(g.seed);
                std::uniform_int_distribution<int> u(-6, 6);
                for (int line = 1; line <= 3; ++line) gaps.push_back({line, Coord(u(rng))});
            }
            GeomBaseParams p;
            p.gap_halfwidth = parse_coord(g.halfwidth);
            inst = gen_geombase(gaps, p);
        } else if (g.kind == "zigzag") {
            if (g.k < 1) throw UsageError("--k must be positive");
            inst = gen_zigzag(g.k, zigzag_default(g.k, !g.infeasible));
        } else {
            GenKind kind = GenKind::General;
            std::optional<OrientationSet> C;
            if (g.kindname == "rect" || g.kindname == "rectilinear") kind = GenKind::Rectilinear;
            else if (g.kindname == "cori" || g.kindname == "c_oriented") {
                kind = GenKind::COriented;
                C = g.orient.empty() ? OrientationSet({Direction(1, 0), Direction(1, 1), Direction(0, 1)})
                                     : orientations_from_json(read_file(g.orient));
            } else if (g.kindname != "general") throw UsageError("unknown --kind " + g.kindname);
            inst = gen_random(kind, g.n, g.h, C, g.seed);
        }
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(std::string("gen: ") + e.what());
    }
    write_text(g.out, instance_to_json(inst) + "\n");
    return 0;
}

int cmd_validate(const std::string& file) {
    DomainInstance inst;
    try {
        inst = instance_from_json(read_file(file));
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(file + ": " + e.what());
    }
    auto v = validate(inst.domain);
    for (auto& x : v)
        std::cout << (x.warning ? "warning: " : "error: ") << x.what << " (ring " << x.ring << ", vertex " << x.vertex
                  << ")\n";
    bool bad = has_errors(v);
    if (!bad && !in_open_free(inst.domain, inst.s)) {
        std::cout << "error: s is not strictly inside the free space\n";
        bad = true;
    }
    if (!bad && inst.t && !in_open_free(inst.domain, *inst.t)) {
        std::cout << "error: t is not strictly inside the free space\n";
        bad = true;
    }
    if (!bad) std::cout << "ok n=" << inst.domain.n() << " h=" << inst.domain.h() << "\n";
    return bad ? 1 : 0;
}

int cmd_oracle(const Common& c, const std::string& which, int cap) {
    auto inst = load_domain(c.domain);
    Point s = pick(c.s, inst.s, "s");
    if (!in_closed_free(inst.domain, s)) throw UsageError("s is outside the free space");
    if (which == "labels") {
        auto runs = brute_graph_labels(inst.domain, load_orient(c.orient, inst), s);
        for (size_t m = 0; m < runs.size(); ++m)
            for (size_t cell = 0; cell < runs[m].size(); ++cell)
                for (auto& [lo, hi, l] : runs[m][cell])
                    std::cout << m << " " << cell << " " << to_string(lo) << " " << to_string(hi) << " " << l << "\n";
        return 0;
    }
    Point t = pick(c.t, inst.t, "t");
    if (!in_closed_free(inst.domain, t)) throw UsageError("t is outside the free space");
    if (which == "le1") std::cout << (linkdist_le1(inst.domain, s, t) ? "true" : "false") << "\n";
    else if (which == "le2") std::cout << (linkdist_le2(inst.domain, s, t) ? "true" : "false") << "\n";
    else if (which == "le3") std::cout << (linkdist_le3(inst.domain, s, t) ? "true" : "false") << "\n";
    else if (which == "minlink") {
        auto r = brute_minlink(inst.domain, s, t, cap);
        if (r) std::cout << *r << "\n";
        else std::cout << ">" << cap << "\n";
    } else throw UsageError("unknown oracle " + which);
    return 0;
}

// ---------------------------------------------------------------- render

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct Frame {
    double x0, y0, x1, y1;
    std::string pt(const Point& p) const { return num(to_double(p.x)) + "," + num(y1 + y0 - to_double(p.y)); }
};

std::string svg_poly(const Frame& f, const std::vector<Point>& poly, const std::string& attrs) {
    std::string s = "<polygon points=\"";
    for (size_t i = 0; i < poly.size(); ++i) s += (i ? " " : "") + f.pt(poly[i]);
    return s + "\" " + attrs + "/>\n";
}

std::string label_color(int label, int max_label) {
    if (label <= 0) return "#dddddd";
    double u = max_label > 1 ? static_cast<double>(label - 1) / (max_label - 1) : 0.0;
    int r = static_cast<int>(70 + 180 * u), g = static_cast<int>(200 - 120 * u), b = static_cast<int>(240 - 160 * u);
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

std::string render_svg(const json& a, int layer, const std::vector<int>* only) {
    auto outer = poly_from(a.at("outer"));
    double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
    for (auto& p : outer) {
        x0 = std::min(x0, to_double(p.x));
        x1 = std::max(x1, to_double(p.x));
        y0 = std::min(y0, to_double(p.y));
        y1 = std::max(y1, to_double(p.y));
    }
    Frame f{x0, y0, x1, y1};
    double w = x1 - x0, h = y1 - y0, pad = 0.02 * std::max(w, h), font = 0.025 * std::max(w, h);
    std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + num(x0 - pad) + " " + num(y0 - pad) + " " +
         num(w + 2 * pad) + " " + num(h + 2 * pad) + "\">\n";
    double sw = 0.002 * std::max(w, h);
    s += svg_poly(f, outer, "fill=\"white\" stroke=\"black\" stroke-width=\"" + num(2 * sw) + "\"");
    int max_label = 0;
    for (auto& c : a.at("cells")) max_label = std::max(max_label, c.at("label").get<int>());
    bool numbered = a.at("kind") == "bridge";
    std::vector<char> show;
    if (only) {
        show.assign(a.at("cells").size(), 0);
        for (int i : *only) show.at(i) = 1;
    }
    std::string labels;
    for (size_t i = 0; i < a.at("cells").size(); ++i) {
        auto& c = a["cells"][i];
        if (c.at("layer").get<int>() != layer) continue;
        auto poly = poly_from(c.at("poly"));
        int l = c.at("label").get<int>();
        bool lit = !only || show[i];
        std::string fill = numbered ? "#f4f0d8" : label_color(lit ? l : 0, max_label);
        s += svg_poly(f, poly, "fill=\"" + fill + "\" stroke=\"#555555\" stroke-width=\"" + num(sw) + "\"");
        if (numbered || (lit && l > 0)) {
            double cx = 0, cy = 0;
            for (auto& p : poly) {
                cx += to_double(p.x);
                cy += to_double(p.y);
            }
            cx /= poly.size();
            cy /= poly.size();
            labels += "<text x=\"" + num(cx) + "\" y=\"" + num(y1 + y0 - cy) + "\" font-size=\"" + num(font) +
                      "\" text-anchor=\"middle\" dominant-baseline=\"middle\">" + std::to_string(l) + "</text>\n";
        }
    }
    for (auto& hle : a.at("holes")) s += svg_poly(f, poly_from(hle), "fill=\"#444444\" stroke=\"black\" stroke-width=\"" + num(sw) + "\"");
    if (a.contains("segments"))
        for (auto& seg : a["segments"]) {
            auto ab = poly_from(seg);
            s += "<polyline points=\"" + f.pt(ab[0]) + " " + f.pt(ab[1]) + "\" stroke=\"#d03030\" stroke-width=\"" +
                 num(2 * sw) + "\" fill=\"none\"/>\n";
        }
    if (a.contains("path")) {
        auto pts = poly_from(a["path"]);
        s += "<polyline points=\"";
        for (size_t i = 0; i < pts.size(); ++i) s += (i ? " " : "") + f.pt(pts[i]);
        s += "\" stroke=\"#1030c0\" stroke-width=\"" + num(3 * sw) + "\" fill=\"none\"/>\n";
    }
    s += labels;
    auto dot = [&](const json& p, const char* col) {
        auto q = poly_from(json::array({p}))[0];
        std::string xy = f.pt(q);
        auto comma = xy.find(',');
        s += "<circle cx=\"" + xy.substr(0, comma) + "\" cy=\"" + xy.substr(comma + 1) + "\" r=\"" + num(4 * sw) +
             "\" fill=\"" + col + "\"/>\n";
    };
    dot(a.at("s"), "#008000");
    if (a.contains("t")) dot(a["t"], "#a000a0");
    return s + "</svg>\n";
}

int cmd_render(const std::string& file, const std::string& out, bool stages, int layer) {
    json a;
    try {
        a = json::parse(read_file(file));
        if (!a.is_object() || !a.contains("kind") || !a.contains("cells") || !a.contains("outer"))
            throw UsageError(file + ": not a render artifact");
    } catch (const json::exception& e) {
        throw UsageError(file + ": " + e.what());
    }
    if (out.empty()) throw UsageError("render needs -o");
    if (!stages) {
        write_text(out, render_svg(a, layer, nullptr));
        return 0;
    }
    if (!a.contains("frames")) throw UsageError(file + ": no stage frames (use an approx artifact)");
    auto frames = a["frames"].get<std::vector<std::vector<int>>>();
    std::filesystem::path p(out);
    std::string stem = (p.parent_path() / p.stem()).string(), ext = p.has_extension() ? p.extension().string() : ".svg";
    for (size_t k = 0; k < frames.size(); ++k)
        write_text(stem + "-stage" + std::to_string(k + 1) + ext, render_svg(a, 0, &frames[k]));
    std::cout << frames.size() << " frames\n";
    return 0;
}

// ---------------------------------------------------------------- measure

Point random_point_in_box(std::mt19937_64& rng, const PolygonalDomain& d) {
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

int cmd_measure(const std::string& what, const std::vector<int>& sizes, int seeds, uint64_t seed0, int lines) {
    std::cout << "seed,n,h,C,wall_ns,events,stages,links,opt_if_known\n";
    using clk = std::chrono::steady_clock;
    for (int size : sizes)
        for (int k = 0; k < seeds; ++k) {
            uint64_t seed = seed0 + static_cast<uint64_t>(k);
            if (what == "stabbing") {
                // size = h; events = max bridges crossed over the sampled lines
                auto inst = gen_random(GenKind::General, 8 * size + 8, size, std::nullopt, seed);
                auto t0 = clk::now();
                auto B = compute_bridges(inst.domain);
                auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(clk::now() - t0).count();
                std::mt19937_64 rng(seed * 7919 + 1);
                int worst = 0;
                for (int i = 0; i < lines; ++i) {
                    Point a = random_point_in_box(rng, inst.domain), b = random_point_in_box(rng, inst.domain);
                    if (a == b) continue;
                    worst = std::max(worst, stabbing_count(B, a, b));
                }
                std::cout << seed << "," << inst.domain.n() << "," << inst.domain.h() << ",," << ns << "," << worst
                          << ",,,\n";
            } else if (what == "scaling") {
                // size = target n of a rectilinear domain
                auto inst = gen_random(GenKind::Rectilinear, size, std::max(1, size / 64), std::nullopt, seed);
                auto t0 = clk::now();
                auto L = build_rect_linkmap(inst.domain, inst.s, false);
                auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(clk::now() - t0).count();
                std::string links;
                if (inst.t) links = std::to_string(query_rect(L, *inst.t));
                std::cout << seed << "," << inst.domain.n() << "," << inst.domain.h() << ",2," << ns << ","
                          << L.stats.events << "," << L.stats.steps << "," << links << ",\n";
            } else {
                throw UsageError("unknown measurement " + what);
            }
        }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimum-link paths in polygonal domains"};
    app.require_subcommand(1);
    Common c;
    auto add_domain = [&](CLI::App* sub) { sub->add_option("domain", c.domain, "domain file")->required(); };
    auto add_st = [&](CLI::App* sub, bool t) {
        sub->add_option("--s", c.s, "source x,y (default: from the domain file)");
        if (t) sub->add_option("--t", c.t, "target x,y (default: from the domain file)");
    };
    auto add_artifact = [&](CLI::App* sub) { sub->add_option("--artifact", c.artifact, "write a render artifact"); };

    std::string query, pathq;
    auto rect = app.add_subcommand("rect-map", "link map of a rectilinear domain");
    add_domain(rect);
    add_st(rect, false);
    rect->add_option("--query", query, "print the link distance to x,y");
    rect->add_option("--path", pathq, "print a minimum-link path to x,y");
    add_artifact(rect);

    bool approx2 = false, arbitrary = false;
    auto cori = app.add_subcommand("cori-map", "link map for a set of orientations");
    add_domain(cori);
    add_st(cori, false);
    cori->add_option("--orient", c.orient, "orientation file");
    cori->add_option("--query", query, "query point x,y (default: t from the domain file)");
    cori->add_flag("--approx2", approx2, "2-approximate map");
    cori->add_flag("--arbitrary", arbitrary, "allow edges outside the orientation set");
    add_artifact(cori);

    int m = 0;
    bool merge = false;
    auto approx = app.add_subcommand("approx", "approximate path for unrestricted orientations");
    add_domain(approx);
    add_st(approx, true);
    auto mopt = approx->add_option("--m", m, "blocking threshold (default ceil(sqrt(h)))");
    approx->add_flag("--merge", merge, "weighted color merging")->excludes(mopt);
    add_artifact(approx);

    auto bridge = app.add_subcommand("bridge", "bridges and the cut-polygon triangulation");
    add_domain(bridge);
    bridge->add_option("-o,--artifact", c.artifact, "output file (default stdout)");

    std::string pathfile;
    int iphi = 4;
    auto snapc = app.add_subcommand("snap", "snap a robust path to the orientation set");
    add_domain(snapc);
    snapc->add_option("path", pathfile, "path file")->required();
    snapc->add_option("--i", iphi, "phi = 180/i degrees")->required();
    snapc->add_option("--orient", c.orient, "orientation file");
    snapc->add_option("-o", c.artifact, "write the snapped path");

    auto robust = app.add_subcommand("check-robust", "test whether a path is robust");
    add_domain(robust);
    robust->add_option("path", pathfile, "path file")->required();
    robust->add_option("--i", iphi, "phi = 180/i degrees")->required();
    robust->add_option("--orient", c.orient, "orientation file");

    GenOpts g;
    auto gen = app.add_subcommand("gen", "generate an instance");
    gen->add_option("generator", g.kind, "geombase | zigzag | random")->required()->check(CLI::IsMember({"geombase", "zigzag", "random"}));
    gen->add_option("--gaps", g.gaps, "geombase gaps as line:x,... (default: random from --seed)");
    gen->add_option("--halfwidth", g.halfwidth, "geombase gap half-width");
    gen->add_option("--k", g.k, "zigzag channels");
    gen->add_flag("--infeasible", g.infeasible, "zigzag with a non-collinear gadget");
    gen->add_option("--kind", g.kindname, "random: rect | cori | general");
    gen->add_option("--n", g.n, "random: target vertex count");
    gen->add_option("--holes", g.h, "random: hole count");
    gen->add_option("--orient", g.orient, "random cori: orientation file");
    gen->add_option("--seed", g.seed, "random seed");
    gen->add_option("-o", g.out, "output file (default stdout)");

    std::string vfile;
    auto val = app.add_subcommand("validate", "check a domain file");
    val->add_option("domain", vfile, "domain file")->required();

    std::string which;
    int cap = 8;
    auto oracle = app.add_subcommand("oracle", "brute-force reference answers");
    oracle->add_option("which", which, "le1 | le2 | le3 | labels | minlink")->required()->check(CLI::IsMember({"le1", "le2", "le3", "labels", "minlink"}));
    add_domain(oracle);
    add_st(oracle, true);
    oracle->add_option("--orient", c.orient, "orientation file (labels)");
    oracle->add_option("--cap", cap, "minlink search cap");

    std::string rfile, rout;
    bool stages = false;
    int layer = 0;
    auto render = app.add_subcommand("render", "draw an artifact as SVG");
    render->add_option("artifact", rfile, "artifact file")->required();
    render->add_option("-o", rout, "output SVG")->required();
    render->add_flag("--stages", stages, "one SVG per illumination stage");
    render->add_option("--layer", layer, "which orientation map to draw");

    std::string mwhat;
    std::vector<int> sizes;
    int seeds = 5, lines = 1000;
    uint64_t mseed = 1;
    auto measure = app.add_subcommand("measure", "CSV measurements");
    measure->add_option("what", mwhat, "stabbing | scaling")->required()->check(CLI::IsMember({"stabbing", "scaling"}));
    measure->add_option("--sizes", sizes, "h values (stabbing) or n values (scaling)")->delimiter(',');
    measure->add_option("--seeds", seeds, "seeds per size");
    measure->add_option("--seed", mseed, "first seed");
    measure->add_option("--lines", lines, "random lines per instance (stabbing)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*rect) return cmd_rect_map(c, query, pathq);
        if (*cori) return cmd_cori_map(c, approx2, arbitrary, query);
        if (*approx) return cmd_approx(c, m, merge);
        if (*bridge) return cmd_bridge(c);
        if (*snapc) return cmd_snap(c, pathfile, iphi);
        if (*robust) return cmd_check_robust(c, pathfile, iphi);
        if (*gen) return cmd_gen(g);
        if (*val) return cmd_validate(vfile);
        if (*oracle) return cmd_oracle(c, which, cap);
        if (*render) return cmd_render(rfile, rout, stages, layer);
        if (*measure) {
            if (sizes.empty()) sizes = mwhat == "stabbing" ? std::vector<int>{16, 64, 256} : std::vector<int>{256, 512, 1024, 2048};
            return cmd_measure(mwhat, sizes, seeds, mseed, lines);
        }
    } catch (const UsageError& e) {
        std::cerr << "linkpath: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "linkpath: error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
