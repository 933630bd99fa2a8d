// Wide polygons WSAP^u_m, the plaquette join J with its inverse, the Kesten
// bridge-to-polygon comparison, hexagonal polygon traces, and round polygons
// RSAP^(k) on the hexagonal lattice.
#ifndef SAWLAB_WIDEPOLY_HPP
#define SAWLAB_WIDEPOLY_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "sawlab/enumerate.hpp"
#include "sawlab/hexwalk.hpp"
#include "sawlab/walk.hpp"

namespace sawlab {

// ---------------------------------------------------------------------------
// Wide polygons on Z^2.
// ---------------------------------------------------------------------------

inline bool is_wide(const PolygonTrace& p, int u) {
    PolyGeometry g = p.geometry();
    return g.lw >= u && g.h <= 16 * u;
}

// Over-bar class: width at least u/2 and height at most u.
inline bool is_overbar_wide(const PolygonTrace& p, double u) {
    PolyGeometry g = p.geometry();
    return static_cast<double>(g.w) >= u / 2.0 && static_cast<double>(g.h) <= u;
}

inline BigInt wsap_count_z2(int u, int m) {
    BigInt c = 0;
    for (const PolygonTrace& p : sap_traces_z2(m))
        if (is_wide(p, u)) ++c;
    return c;
}

// Turn an edge set into the closed walk around it, starting at `start` and
// oriented counterclockwise (interior on the left).
inline Walk cycle_walk_ccw(const std::vector<Edge>& edges, Pt start) {
    std::map<Pt, std::vector<Pt>> adj;
    for (const Edge& e : edges) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    auto it = adj.find(start);
    if (it == adj.end() || it->second.size() != 2)
        throw std::invalid_argument("cycle_walk_ccw: start not a degree-2 vertex");
    auto traverse = [&](Pt second) {
        std::vector<Pt> pts{start, second};
        while (pts.back() != start) {
            const auto& nb = adj[pts.back()];
            Pt prev = pts[pts.size() - 2];
            pts.push_back(nb[0] == prev ? nb[1] : nb[0]);
        }
        return Walk(std::move(pts));
    };
    Walk w = traverse(it->second[0]);
    // Shoelace: positive signed area means counterclockwise.
    int64_t twice_area = 0;
    const auto& pts = w.points();
    for (size_t i = 1; i < pts.size(); ++i)
        twice_area += pts[i - 1].x * pts[i].y - pts[i].x * pts[i - 1].y;
    return twice_area > 0 ? w : traverse(it->second[1]);
}

// The rooted representative of a wide polygon: translate so that the lowest
// row realizing the line-width sits at height 0 with its leftmost vertex at
// the origin, then walk counterclockwise from the origin.
inline Walk root_wide(const PolygonTrace& p) {
    std::map<int64_t, std::pair<int64_t, int64_t>> span;  // row -> (xmin, xmax)
    for (Pt v : p.vertices()) {
        auto it = span.find(v.y);
        if (it == span.end())
            span[v.y] = {v.x, v.x};
        else {
            it->second.first = std::min(it->second.first, v.x);
            it->second.second = std::max(it->second.second, v.x);
        }
    }
    int64_t lw = 0;
    for (auto& [y, s] : span) lw = std::max(lw, s.second - s.first);
    int64_t row = 0, xmin = 0;
    bool found = false;
    for (auto& [y, s] : span)  // map iterates rows in increasing order
        if (!found && s.second - s.first == lw) {
            row = y;
            xmin = s.first;
            found = true;
        }
    std::vector<Edge> edges;
    for (const Edge& e : p.edges())
        edges.push_back(Edge(e.a + Pt{-xmin, -row}, e.b + Pt{-xmin, -row}));
    return cycle_walk_ccw(edges, Pt{0, 0});
}

// West-south vertex: lowest among the leftmost vertices; east-north vertex:
// highest among the rightmost.
inline Pt ws_vertex(const std::vector<Pt>& vs) {
    Pt best = vs.front();
    for (Pt v : vs)
        if (v.x < best.x || (v.x == best.x && v.y < best.y)) best = v;
    return best;
}
inline Pt en_vertex(const std::vector<Pt>& vs) {
    Pt best = vs.front();
    for (Pt v : vs)
        if (v.x > best.x || (v.x == best.x && v.y > best.y)) best = v;
    return best;
}

// Translate a trace's edges so that WS sits at the origin.
inline std::vector<Edge> ws_rooted_edges(const PolygonTrace& p) {
    Pt ws = ws_vertex(p.vertices());
    std::vector<Edge> out;
    for (const Edge& e : p.edges()) out.push_back(Edge(e.a - ws, e.b - ws));
    return out;
}

struct JoinJResult {
    PolygonTrace joined;
    Pt plaquette_nw;       // north-west corner of the junction plaquette
    int64_t q_offset = 0;  // horizontal translate applied to the reflected q
};

// The plaquette join J(p, tau(q)): root both polygons at WS = 0, reflect q in
// the vertical axis, slide it so that the image of EN(q) lies one unit right
// of EN(p), and swap the junction plaquette's vertical sides for its
// horizontal ones.  Requires y(EN(p)) = y(EN(q)).
inline JoinJResult plaquette_join_J(const PolygonTrace& p, const PolygonTrace& q) {
    std::vector<Edge> pe = ws_rooted_edges(p);
    std::vector<Edge> qe = ws_rooted_edges(q);
    auto verts = [](const std::vector<Edge>& es) {
        std::set<Pt> s;
        for (const Edge& e : es) {
            s.insert(e.a);
            s.insert(e.b);
        }
        return std::vector<Pt>(s.begin(), s.end());
    };
    Pt en_p = en_vertex(verts(pe));
    Pt en_q = en_vertex(verts(qe));
    if (en_p.y != en_q.y)
        throw std::invalid_argument("plaquette_join_J: EN heights differ");
    // Reflect q in the vertical axis and slide its EN image one unit right of
    // EN(p).  After reflection about x = 0, EN(q) lands at (-x(EN(q)), y).
    int64_t shift = en_p.x + 1 + en_q.x;
    std::set<Edge> uni(pe.begin(), pe.end());
    for (const Edge& e : qe)
        uni.insert(Edge(Pt{-e.a.x + shift, e.a.y}, Pt{-e.b.x + shift, e.b.y}));
    // Junction plaquette with north-west corner EN(p).
    Pt nw = en_p;
    Edge west(nw, nw + Pt{0, -1});
    Edge east(nw + Pt{1, 0}, nw + Pt{1, -1});
    if (!uni.count(west) || !uni.count(east))
        throw std::logic_error("plaquette_join_J: junction sides missing");
    uni.erase(west);
    uni.erase(east);
    uni.insert(Edge(nw, nw + Pt{1, 0}));
    uni.insert(Edge(nw + Pt{0, -1}, nw + Pt{1, -1}));
    PolygonTrace joined =
        PolygonTrace::from_edges(std::vector<Edge>(uni.begin(), uni.end()));
    if (!joined.valid()) throw std::logic_error("plaquette_join_J: output invalid");
    return {joined, nw, shift};
}

// Invert the plaquette join: find the unique vertical line x = k + 1/2
// cutting exactly one stacked pair of horizontal edges whose plaquette swap
// splits the polygon into two equal-length polygons, the origin-bearing one
// of which is p.  Coordinates are recovered through root_wide, which is the
// frame the join produced.
inline std::optional<std::pair<PolygonTrace, PolygonTrace>> unjoin_J(
    const PolygonTrace& r, int* cut_count = nullptr) {
    Walk rooted = root_wide(r);
    std::vector<Edge> rooted_edges = rooted.edges();
    std::set<Edge> edges(rooted_edges.begin(), rooted_edges.end());
    std::optional<std::pair<PolygonTrace, PolygonTrace>> result;
    int valid_cuts = 0;
    // Horizontal edges grouped by left x-coordinate.
    std::map<int64_t, std::vector<int64_t>> horiz;  // x -> rows y
    for (const Edge& e : edges)
        if (e.horizontal()) horiz[std::min(e.a.x, e.b.x)].push_back(std::max(e.a.y, e.b.y));
    for (auto& [x, rows] : horiz) {
        if (rows.size() != 2) continue;
        std::sort(rows.begin(), rows.end());
        if (rows[1] != rows[0] + 1) continue;
        int64_t y = rows[1];
        // Swap the plaquette: horizontals at heights y, y-1 over [x, x+1]
        // become verticals at x and x+1.
        std::set<Edge> mod(edges);
        mod.erase(Edge(Pt{x, y}, Pt{x + 1, y}));
        mod.erase(Edge(Pt{x, y - 1}, Pt{x + 1, y - 1}));
        mod.insert(Edge(Pt{x, y}, Pt{x, y - 1}));
        mod.insert(Edge(Pt{x + 1, y}, Pt{x + 1, y - 1}));
        // Split into connected components.
        std::map<Pt, std::vector<Pt>> adj;
        for (const Edge& e : mod) {
            adj[e.a].push_back(e.b);
            adj[e.b].push_back(e.a);
        }
        bool deg_ok = true;
        for (auto& [v, nb] : adj)
            if (nb.size() != 2) deg_ok = false;
        if (!deg_ok) continue;
        std::map<Pt, int> comp;
        int ncomp = 0;
        for (auto& [v, nb] : adj) {
            if (comp.count(v)) continue;
            std::vector<Pt> stack{v};
            comp[v] = ncomp;
            while (!stack.empty()) {
                Pt cur = stack.back();
                stack.pop_back();
                for (Pt w : adj[cur])
                    if (!comp.count(w)) {
                        comp[w] = ncomp;
                        stack.push_back(w);
                    }
            }
            ++ncomp;
        }
        if (ncomp != 2) continue;
        std::vector<Edge> part[2];
        for (const Edge& e : mod) part[comp[e.a]].push_back(e);
        if (part[0].size() != part[1].size()) continue;
        PolygonTrace t0 = PolygonTrace::from_edges(part[0]);
        PolygonTrace t1 = PolygonTrace::from_edges(part[1]);
        if (!t0.valid() || !t1.valid()) continue;
        // p is the piece whose vertex set contains the origin.
        int porg = comp.count(Pt{0, 0}) ? comp[Pt{0, 0}] : -1;
        if (porg < 0) continue;
        ++valid_cuts;
        PolygonTrace pp = (porg == 0) ? t0 : t1;
        // The other piece is tau(q): reflect it back (traces are
        // translation classes, so the reflection alone recovers q).
        std::vector<Edge> qe;
        for (const Edge& e : (porg == 0) ? part[1] : part[0])
            qe.push_back(Edge(Pt{-e.a.x, e.a.y}, Pt{-e.b.x, e.b.y}));
        result = {pp, PolygonTrace::from_edges(qe)};
    }
    if (cut_count) *cut_count = valid_cuts;
    return valid_cuts == 1 ? result : std::nullopt;
}

// ---------------------------------------------------------------------------
// Kesten's bridge-to-polygon comparison.
// ---------------------------------------------------------------------------

struct KestenReport {
    int n;
    BigInt sap;          // |SAP_{2n+2}|
    BigInt sab_sq;       // |SAB_n|^2
    BigInt denominator;  // 4 (2n+1) n (n+1)^3
    bool holds;          // sap * denominator >= sab_sq
};

inline KestenReport kesten_check(int n) {
    KestenReport rep{};
    rep.n = n;
    rep.sap = BigInt(sap_traces_z2(2 * n + 2).size());
    CountLedger sab = count_ledger(Model::SAB, LatticeKind::Z2, n);
    rep.sab_sq = sab.counts[n] * sab.counts[n];
    rep.denominator =
        BigInt(4) * (2 * n + 1) * n * (n + 1) * (n + 1) * (n + 1);
    rep.holds = rep.sap * rep.denominator >= rep.sab_sq;
    return rep;
}

// ---------------------------------------------------------------------------
// Hexagonal polygon traces.
// ---------------------------------------------------------------------------

// A canonical translation class of a hex polygon: the lexicographically
// least sorted edge list over all lattice translations.
inline std::vector<HexMid> hex_canonical_edges(const std::vector<HexMid>& edges) {
    // Valid lattice translations (ta, tb) have tb in 3Z and ta = tb/3 (mod 2).
    static const std::array<HexVertex, 4> anchors{
        HexVertex{0, 2}, HexVertex{0, 4}, HexVertex{1, 1}, HexVertex{1, 5}};
    std::vector<HexMid> best;
    for (const HexMid& e : edges)
        for (HexVertex v : {e.u, e.v})
            for (HexVertex a : anchors) {
                int64_t tb = a.b - v.b;
                int64_t ta = a.a - v.a;
                if (imod(tb, 3) != 0 || imod(ta - tb / 3, 2) != 0) continue;
                std::vector<HexMid> cand;
                cand.reserve(edges.size());
                for (const HexMid& f : edges) cand.push_back(f.translated(HexVertex{ta, tb}));
                std::sort(cand.begin(), cand.end());
                if (best.empty() || cand < best) best = std::move(cand);
            }
    return best;
}

// All hex SAP traces (translation classes) of length exactly n.
inline std::set<std::vector<HexMid>> hex_sap_traces(int n) {
    std::set<std::vector<HexMid>> out;
    if (n < 6) return out;
    HexMid start = hex_origin_mid();
    for_each_hex_walk(
        start, n - 1, [](HexMid) { return true; }, [](HexVertex) { return true; },
        [&](const HexWalk& w) {
            if (static_cast<int>(w.length()) != n - 1) return;
            // Closing condition: last midpoint shares a vertex with the
            // start midpoint that is not already traversed.
            HexVertex shared;
            bool has = false;
            const HexMid& last = w.mids().back();
            for (HexVertex v : {start.u, start.v})
                if (v == last.u || v == last.v) {
                    shared = v;
                    has = true;
                }
            if (!has) return;
            for (size_t i = 1; i < w.mids().size(); ++i)
                if (w.traversed(i) == shared) return;
            out.insert(hex_canonical_edges(w.mids()));
        });
    return out;
}

// Geometry of a hex polygon in real units: x = a/2, y = b sqrt(3)/6.
struct HexPolyGeometry {
    double w = 0, h = 0, lw = 0;
};

inline HexPolyGeometry hex_poly_geometry(const std::vector<HexMid>& edges) {
    std::set<HexVertex> vs;
    for (const HexMid& e : edges) {
        vs.insert(e.u);
        vs.insert(e.v);
    }
    std::map<int64_t, std::pair<int64_t, int64_t>> rows;  // b -> (amin, amax)
    int64_t amin = INT64_MAX, amax = INT64_MIN, bmin = INT64_MAX, bmax = INT64_MIN;
    for (HexVertex v : vs) {
        amin = std::min(amin, v.a);
        amax = std::max(amax, v.a);
        bmin = std::min(bmin, v.b);
        bmax = std::max(bmax, v.b);
        auto it = rows.find(v.b);
        if (it == rows.end())
            rows[v.b] = {v.a, v.a};
        else {
            it->second.first = std::min(it->second.first, v.a);
            it->second.second = std::max(it->second.second, v.a);
        }
    }
    HexPolyGeometry g;
    g.w = static_cast<double>(amax - amin) / 2.0;
    g.h = static_cast<double>(bmax - bmin) * std::sqrt(3.0) / 6.0;
    for (auto& [b, s] : rows)
        g.lw = std::max(g.lw, static_cast<double>(s.second - s.first) / 2.0);
    return g;
}

inline BigInt wsap_count_hex(int u, int m) {
    BigInt c = 0;
    for (const auto& p : hex_sap_traces(m)) {
        HexPolyGeometry g = hex_poly_geometry(p);
        if (g.lw >= static_cast<double>(u) && g.h <= 16.0 * u) ++c;
    }
    return c;
}

// ---------------------------------------------------------------------------
// Round polygons RSAP^(k).
// ---------------------------------------------------------------------------

// Is the hex vertex strictly inside Lambda_k (the regular hexagon through
// the rotations of (k+1, 0))?  Exact integer tests in chart coordinates.
inline bool in_lambda(HexVertex v, int k) {
    int64_t lim = 6 * static_cast<int64_t>(k + 1);
    return std::llabs(v.b) < lim / 2 && std::llabs(v.b + 3 * v.a) < lim &&
           std::llabs(v.b - 3 * v.a) < lim;
}

struct RoundPolygonReport {
    int k;
    int length_cap;
    std::vector<std::vector<HexMid>> members;  // oriented edge cycles
    double weighted_sum = 0.0;                 // sum of x^{|gamma|} at x = x_c
    bool capped = true;
};

// Winding number of an oriented hex edge cycle about (x0, 0), x0 integer
// (real coordinates).  Only vertical edges cross the axis; a vertical edge
// at a = av crosses at real x = av / 2 and contributes +-1 when av/2 > x0,
// signed by the direction of traversal (upward = +1).
inline int hex_cycle_winding(const std::vector<HexMid>& mids_cyclic, int64_t x0) {
    int wn = 0;
    for (size_t i = 0; i + 1 < mids_cyclic.size(); ++i) {
        const HexMid& m = mids_cyclic[i];
        if (!m.is_vertical() || m.my() != 0) continue;
        if (m.u.a <= 2 * x0) continue;  // crossing at x = a/2 must exceed x0
        // Direction: the next midpoint's vertex row tells whether we moved up.
        const HexMid& nxt = mids_cyclic[i + 1];
        wn += (nxt.my() > 0) ? 1 : -1;
    }
    return wn;
}

// Round polygon membership for the oriented cycle of midpoints
// (mids_cyclic.front() == mids_cyclic.back() is NOT required; the list holds
// each of the polygon's edge midpoints once, in traversal order, and the
// cycle closes from back to front).
inline bool is_round_polygon(const std::vector<HexMid>& mids, int k) {
    // close the cycle for winding computations
    std::vector<HexMid> cyc(mids);
    cyc.push_back(mids.front());
    // (a) contained in Lambda_{8k}
    for (const HexMid& m : mids)
        for (HexVertex v : {m.u, m.v})
            if (!in_lambda(v, 8 * k)) return false;
    // (b) passes through (k + 1/2, 0): the vertical edge at a = 2k + 1
    bool has_door = false;
    for (const HexMid& m : mids)
        if (m.is_vertical() && m.my() == 0 && m.u.a == 2 * k + 1) has_door = true;
    if (!has_door) return false;
    // (c) meets the positive x-axis only at (k + 1/2, 0)
    for (const HexMid& m : mids)
        if (m.is_vertical() && m.my() == 0 && m.u.a > 0 && m.u.a != 2 * k + 1)
            return false;
    // (d) surrounds the segment from (0,0) to (k,0): nonzero winding about
    // every integer point of the segment (crossings sit at half-integers, so
    // integer samples determine the winding on the whole segment).
    for (int64_t x0 = 0; x0 <= k; ++x0)
        if (hex_cycle_winding(cyc, x0) == 0) return false;
    return true;
}

// Enumerate round polygons of length <= cap by growing cycles from the
// mandatory axis edge at a = 2k+1, confined to Lambda_{8k}.
inline RoundPolygonReport round_polygons(int k, int length_cap) {
    RoundPolygonReport rep{k, length_cap, {}, 0.0, true};
    const double xc = 1.0 / std::sqrt(2.0 + std::sqrt(2.0));
    HexMid door(HexVertex{2 * k + 1, -1}, HexVertex{2 * k + 1, 1});
    auto mid_ok = [&](HexMid m) {
        return in_lambda(m.u, 8 * k) && in_lambda(m.v, 8 * k);
    };
    for_each_hex_walk(
        door, length_cap - 1, mid_ok, [](HexVertex) { return true; },
        [&](const HexWalk& w) {
            if (w.length() < 5) return;
            const HexMid& last = w.mids().back();
            // closing: last edge shares an untraversed vertex with the door
            HexVertex shared;
            bool has = false;
            for (HexVertex v : {door.u, door.v})
                if (v == last.u || v == last.v) {
                    shared = v;
                    has = true;
                }
            if (!has) return;
            for (size_t i = 1; i < w.mids().size(); ++i)
                if (w.traversed(i) == shared) return;
            // Keep one orientation per polygon: demand the second midpoint
            // be smaller than the last (each cycle otherwise appears twice).
            if (!(w.mids()[1] < last)) return;
            if (!is_round_polygon(w.mids(), k)) return;
            rep.members.push_back(w.mids());
            rep.weighted_sum +=
                std::pow(xc, static_cast<double>(w.mids().size()));
        });
    return rep;
}

}  // namespace sawlab

#endif  // SAWLAB_WIDEPOLY_HPP
