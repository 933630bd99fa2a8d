#pragma once
// Madras join of a polygon onto the right side of a bridge (or vertically
// reflected bridge), the vertically translated join MJ_j, the inverse unjoin
// decoder, and right-detachable adjacency detection on Z^2.
//
// The join is realized as a deterministic, canonically ordered search over a
// bounded family of local splice configurations near the contact vertex.  All
// added and removed edges have endpoints inside a three-row band around the
// contact vertex, which keeps the surgery local: the output depends only on
// the part of the input walk whose rows lie within two units of the polygon's
// rows, and joins at vertically separated heights commute.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "sawlab/geometry.hpp"
#include "sawlab/walk.hpp"
#include "sawlab/widepoly.hpp"

namespace sawlab {

// A polygon carried with its absolute position (PolygonTrace normalizes
// translation away, which the join must not do: vertical position matters).
struct PlacedPoly {
    std::vector<Edge> edges;  // sorted, positioned

    static PlacedPoly from_edges(std::vector<Edge> es) {
        std::sort(es.begin(), es.end());
        return PlacedPoly{std::move(es)};
    }
    static PlacedPoly from_trace(const PolygonTrace& t, Pt shift) {
        std::vector<Edge> es;
        es.reserve(t.edges().size());
        for (const Edge& e : t.edges()) es.push_back(e.translated(shift));
        return from_edges(std::move(es));
    }

    size_t length() const { return edges.size(); }

    std::vector<Pt> vertices() const {
        std::set<Pt> vs;
        for (const Edge& e : edges) {
            vs.insert(e.a);
            vs.insert(e.b);
        }
        return std::vector<Pt>(vs.begin(), vs.end());
    }

    PlacedPoly translated(Pt d) const {
        std::vector<Edge> es;
        es.reserve(edges.size());
        for (const Edge& e : edges) es.push_back(e.translated(d));
        return from_edges(std::move(es));
    }

    int64_t y_min() const { return extreme(false, false); }
    int64_t y_max() const { return extreme(false, true); }
    int64_t x_min() const { return extreme(true, false); }
    int64_t x_max() const { return extreme(true, true); }

    bool operator==(const PlacedPoly& o) const { return edges == o.edges; }
    bool operator<(const PlacedPoly& o) const { return edges < o.edges; }

  private:
    int64_t extreme(bool use_x, bool want_max) const {
        bool first = true;
        int64_t v = 0;
        for (const Edge& e : edges) {
            for (Pt p : {e.a, e.b}) {
                int64_t c = use_x ? p.x : p.y;
                if (first || (want_max ? c > v : c < v)) v = c;
                first = false;
            }
        }
        return v;
    }
};

struct JoinResult {
    Walk joined;
    Pt junction{0, 0};   // south-west corner of the junction plaquette
    int64_t translate = 0;  // horizontal offset applied to the input polygon
    std::vector<Edge> removed_edges;  // in gamma-union-translate but not joined
    std::vector<Edge> added_edges;    // in joined but not gamma-union-translate
};

// The four edges of the unit plaquette with south-west corner sw.
struct PlaquetteEdges {
    Edge left, right, bottom, top;
    explicit PlaquetteEdges(Pt sw)
        : left(sw, Pt{sw.x, sw.y + 1}),
          right(Pt{sw.x + 1, sw.y}, Pt{sw.x + 1, sw.y + 1}),
          bottom(sw, Pt{sw.x + 1, sw.y}),
          top(Pt{sw.x, sw.y + 1}, Pt{sw.x + 1, sw.y + 1}) {}
};

// ---------------------------------------------------------------------------
// Edge-set decomposition: split an edge set into simple paths and cycles.
// ---------------------------------------------------------------------------

struct EdgeComponents {
    bool simple = true;  // every vertex has degree <= 2
    std::vector<std::vector<Pt>> paths;   // open components, end to end
    std::vector<std::vector<Pt>> cycles;  // closed components, front == back
};

inline EdgeComponents split_components(const std::set<Edge>& es) {
    EdgeComponents out;
    std::map<Pt, std::vector<Pt>> adj;
    for (const Edge& e : es) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    for (const auto& [v, ns] : adj)
        if (ns.size() > 2) {
            out.simple = false;
            return out;
        }
    std::set<Pt> seen;
    auto trace = [&](Pt start) {
        std::vector<Pt> comp{start};
        seen.insert(start);
        Pt cur = start;
        bool have_prev = false;
        Pt prev = start;
        for (;;) {
            const auto& ns = adj[cur];
            Pt nxt = ns[0];
            if (have_prev && nxt == prev) {
                if (ns.size() == 1) break;  // reached an endpoint
                nxt = ns[1];
            }
            comp.push_back(nxt);
            prev = cur;
            have_prev = true;
            cur = nxt;
            if (cur == start) break;  // closed a cycle
            seen.insert(cur);
        }
        return comp;
    };
    // Open components first, started from degree-1 vertices.
    for (const auto& [v, ns] : adj)
        if (ns.size() == 1 && !seen.count(v)) out.paths.push_back(trace(v));
    // What remains is a union of cycles.
    for (const auto& [v, ns] : adj)
        if (!seen.count(v)) out.cycles.push_back(trace(v));
    return out;
}

// ---------------------------------------------------------------------------
// Madras join
// ---------------------------------------------------------------------------

namespace detail {

using ColMap = std::map<int64_t, std::vector<int64_t>>;  // column -> sorted rows

inline ColMap column_map(const std::vector<Pt>& vs) {
    ColMap m;
    for (Pt p : vs) m[p.x].push_back(p.y);
    for (auto& [c, rows] : m) std::sort(rows.begin(), rows.end());
    return m;
}

inline bool rows_within(const std::vector<int64_t>& rows, int64_t lo, int64_t hi) {
    auto it = std::lower_bound(rows.begin(), rows.end(), lo);
    return it != rows.end() && *it <= hi;
}

// Contact at offset i: some walk vertex and some (polygon + i*e1) vertex share
// a column and differ in height by at most two.
inline bool contact_at(const ColMap& walk_cols, const ColMap& poly_cols, int64_t i) {
    for (const auto& [c, prow] : poly_cols) {
        auto it = walk_cols.find(c + i);
        if (it == walk_cols.end()) continue;
        for (int64_t y : prow)
            if (rows_within(it->second, y - 2, y + 2)) return true;
    }
    return false;
}

// Enumerate self-avoiding paths of exact length `len` from `from` to `to`
// inside the box rows [row_lo,row_hi] x cols [col_lo,col_hi], required to
// traverse `must`, avoiding `blocked` (endpoints excepted by the caller).
// Steps are explored in E,N,S,W order; `visit` returns true to stop.
struct PathSearch {
    Pt to;
    int len;
    int64_t row_lo, row_hi, col_lo, col_hi;
    Edge must{Pt{0, 0}, Pt{0, 1}};
    const std::set<Pt>* blocked = nullptr;
    // When set, the prefix before traversing `must` has to be a geodesic:
    // its length equals the L1 distance from the start to the entry endpoint.
    // This pins where the splice crosses the junction edge and keeps the
    // decoder's candidate fibers small.
    bool geodesic_prefix = false;
    std::vector<Pt> cur;
    std::set<Pt> on_path;

    template <typename F>
    bool run(Pt from, F&& visit) {
        cur = {from};
        on_path = {from};
        start = from;
        return dfs(false, visit);
    }

  private:
    Pt start{0, 0};

    static int64_t l1(Pt a, Pt b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y); }

    template <typename F>
    bool dfs(bool used_must, F&& visit) {
        Pt at = cur.back();
        int rem = len - static_cast<int>(cur.size()) + 1;
        if (rem == 0) {
            if (at == to && used_must) return visit(cur);
            return false;
        }
        // Distance and parity pruning, with a detour through `must` if unmet.
        int64_t need = used_must
                           ? l1(at, to)
                           : std::min(l1(at, must.a) + 1 + l1(must.b, to),
                                      l1(at, must.b) + 1 + l1(must.a, to));
        if (need > rem || ((rem - need) & 1)) return false;
        int prefix_len = static_cast<int>(cur.size()) - 1;
        if (geodesic_prefix && !used_must &&
            prefix_len > std::max(l1(start, must.a), l1(start, must.b)))
            return false;
        for (Pt d : kStepVecs) {
            Pt nxt{at.x + d.x, at.y + d.y};
            if (nxt.y < row_lo || nxt.y > row_hi || nxt.x < col_lo || nxt.x > col_hi)
                continue;
            bool is_end = (nxt == to);
            if (on_path.count(nxt)) continue;
            if (is_end && rem != 1) continue;  // may only touch the target last
            if (!is_end && blocked && blocked->count(nxt)) continue;
            Edge step(at, nxt);
            bool um = used_must || step == must;
            if (geodesic_prefix && !used_must && um && prefix_len != l1(start, at))
                continue;
            cur.push_back(nxt);
            on_path.insert(nxt);
            bool stop = dfs(um, visit);
            on_path.erase(nxt);
            cur.pop_back();
            if (stop) return true;
        }
        return false;
    }
};

}  // namespace detail

// Madras join of a polygon (given in absolute position) onto the right side
// of a bridge or vertically reflected bridge.  Requires the vertical
// alignment condition: the polygon's rows, padded by three, lie inside the
// walk's row range.  Throws std::invalid_argument on precondition violation
// and std::runtime_error if no conformant splice exists.
inline JoinResult madras_join(const Walk& gamma, const PlacedPoly& poly) {
    if (poly.edges.size() < 4 || poly.edges.size() % 2 != 0)
        throw std::invalid_argument("madras_join: not a polygon");
    if (!(gamma.is_bridge() || gamma.is_reflected_bridge()))
        throw std::invalid_argument("madras_join: walk is not a bridge or reflected bridge");
    const int64_t gy_lo = gamma.y_min(), gy_hi = gamma.y_max();
    const int64_t py_lo = poly.y_min(), py_hi = poly.y_max();
    if (!(gy_lo <= py_lo - 3 && py_hi + 3 <= gy_hi))
        throw std::invalid_argument("madras_join: vertical alignment condition fails");

    const std::vector<Pt>& gpts = gamma.points();
    const size_t n = gamma.length();
    detail::ColMap gcols = detail::column_map(gpts);
    detail::ColMap pcols = detail::column_map(poly.vertices());

    // Contact search: bring the polygon in from the far right until a walk
    // vertex and a polygon vertex share a column at height difference <= 2.
    const int64_t i_hi = gamma.x_max() - poly.x_min();
    const int64_t i_lo = gamma.x_min() - poly.x_max();
    int64_t istar = i_lo - 1;
    for (int64_t i = i_hi; i >= i_lo; --i)
        if (detail::contact_at(gcols, pcols, i)) {
            istar = i;
            break;
        }
    if (istar < i_lo) throw std::runtime_error("madras_join: no contact found");

    // Contact vertex Y: highest (ties: leftmost) centre z such that
    // {z - e2, z, z + e2} meets both the walk and the polygon translate.
    bool have_y = false;
    Pt Y{0, 0};
    for (const auto& [c, prow] : pcols) {
        auto it = gcols.find(c + istar);
        if (it == gcols.end()) continue;
        for (int64_t yp : prow)
            for (int64_t yg : it->second) {
                if (std::abs(yg - yp) > 2) continue;
                int64_t lo = std::max(yg, yp) - 1, hi = std::min(yg, yp) + 1;
                for (int64_t y = lo; y <= hi; ++y) {
                    Pt z{c + istar, y};
                    if (!have_y || y > Y.y || (y == Y.y && z.x < Y.x)) Y = z;
                    have_y = true;
                }
            }
    }
    const int64_t X = Y.x, yY = Y.y;
    const int64_t band_lo = yY - 1, band_hi = yY + 1;

    std::set<Pt> g_vset(gpts.begin(), gpts.end());
    std::set<Edge> g_eset;
    for (const Edge& e : gamma.edges()) g_eset.insert(e);
    const size_t m = poly.length();

    auto in_band = [&](Pt p) { return p.y >= band_lo && p.y <= band_hi; };

    // Candidate edge removals on the walk: r consecutive edges, all endpoints
    // inside the band and within three columns of the contact column.
    struct Removal {
        int r;
        size_t s;  // first removed edge joins index s to s+1
    };
    std::vector<Removal> g_removals;
    for (int r = 1; r <= 2; ++r)
        for (size_t s = 0; s + r <= n; ++s) {
            bool ok = true;
            for (size_t i = s; i <= s + r && ok; ++i)
                ok = in_band(gpts[i]) && std::abs(gpts[i].x - X) <= 3;
            if (ok) g_removals.push_back({r, s});
        }

    // Canonical search over the polygon's final resting shift, the junction
    // plaquette's position inside the corridor, and the two splices.  The
    // first pass insists on geodesic prefixes before each junction-edge
    // crossing; the relaxed pass only runs when the strict one finds nothing.
    for (int strict = 1; strict >= 0; --strict) {
    for (int64_t sigma = 3; sigma <= 8; ++sigma) {
    const int64_t shift = istar + sigma;
    PlacedPoly pi = poly.translated(Pt{shift, 0});
    std::vector<Pt> pi_verts = pi.vertices();
    std::set<Pt> pi_vset(pi_verts.begin(), pi_verts.end());
    std::set<Edge> pi_eset(pi.edges.begin(), pi.edges.end());

    // Oriented polygon cycle for splice bookkeeping.
    Walk pi_cyc = cycle_walk_ccw(pi.edges, pi_verts.front());
    const std::vector<Pt>& cyc = pi_cyc.points();  // cyc.front() == cyc.back()

    // The polygon's right side -- the counterclockwise journey from its
    // south-east to its north-east extreme vertex -- must survive into the
    // output, so no splice removal may touch those edges.
    const size_t mcyc = cyc.size() - 1;  // number of cycle vertices
    std::vector<bool> right_side(mcyc, false);
    {
        auto better = [](Pt a, Pt b, bool south) {
            if (a.y != b.y) return south ? a.y < b.y : a.y > b.y;
            return a.x > b.x;
        };
        size_t se = 0, ne = 0;
        for (size_t t = 1; t < mcyc; ++t) {
            if (better(cyc[t], cyc[se], true)) se = t;
            if (better(cyc[t], cyc[ne], false)) ne = t;
        }
        for (size_t t = se; t != ne; t = (t + 1) % mcyc) right_side[t] = true;
    }

    // Candidate edge removals on the polygon cycle, inside the band, to the
    // right of the junction plaquette's column range, off the right side.
    std::vector<Removal> p_removals_all;
    for (int r = 1; r <= 2; ++r)
        for (size_t t = 0; t < mcyc; ++t) {
            bool ok = true;
            for (int i = 0; i <= r && ok; ++i) ok = in_band(cyc[(t + i) % mcyc]);
            for (int i = 0; i < r && ok; ++i) ok = !right_side[(t + i) % mcyc];
            if (ok) p_removals_all.push_back({r, t});
        }

    auto assemble = [&](const std::set<Edge>& edges,
                        Pt j_sw) -> std::optional<JoinResult> {
        if (edges.size() != n + m + 16) return std::nullopt;
        EdgeComponents comps = split_components(edges);
        if (!comps.simple || !comps.cycles.empty() || comps.paths.size() != 1)
            return std::nullopt;
        std::vector<Pt> pts = comps.paths.front();
        if (pts.front() != gpts.front()) std::reverse(pts.begin(), pts.end());
        if (pts.front() != gpts.front() || pts.back() != gpts.back())
            return std::nullopt;
        Walk w(pts);
        if (!w.self_avoiding()) return std::nullopt;
        if (gamma.is_bridge() && !w.is_bridge()) return std::nullopt;
        if (!gamma.is_bridge() && !w.is_reflected_bridge()) return std::nullopt;
        JoinResult jr;
        jr.joined = std::move(w);
        jr.junction = j_sw;
        jr.translate = shift;
        for (const Edge& e : g_eset)
            if (!edges.count(e)) jr.removed_edges.push_back(e);
        for (const Edge& e : pi_eset)
            if (!edges.count(e)) jr.removed_edges.push_back(e);
        for (const Edge& e : edges)
            if (!g_eset.count(e) && !pi_eset.count(e)) jr.added_edges.push_back(e);
        if (jr.removed_edges.size() + jr.added_edges.size() > 24) return std::nullopt;
        return jr;
    };

    for (int64_t cL = X - 1; cL <= X + sigma - 2; ++cL) {
    std::vector<Removal> p_removals;
    for (const Removal& pr : p_removals_all) {
        bool ok = true;
        for (int i = 0; i <= pr.r && ok; ++i) ok = cyc[(pr.s + i) % mcyc].x >= cL + 2;
        if (ok) p_removals.push_back(pr);
    }
    for (int64_t j_y : {yY - 1, yY}) {
        Pt j_sw{cL, j_y};
        PlaquetteEdges J(j_sw);
        for (const Removal& gr : g_removals) {
            Pt uA = gpts[gr.s], uB = gpts[gr.s + gr.r];
            std::set<Pt> blockedL = g_vset;
            blockedL.erase(uA);
            blockedL.erase(uB);
            for (int i = 1; i < gr.r; ++i) blockedL.erase(gpts[gr.s + i]);
            blockedL.insert(pi_vset.begin(), pi_vset.end());

            detail::PathSearch psL;
            psL.to = uB;
            psL.len = 8 + gr.r;
            psL.row_lo = band_lo;
            psL.row_hi = band_hi;
            psL.col_lo = X - 4;
            psL.col_hi = cL;
            psL.must = J.left;
            psL.blocked = &blockedL;
            psL.geodesic_prefix = (strict == 1);

            std::optional<JoinResult> found;
            psL.run(uA, [&](const std::vector<Pt>& pathL) {
                std::set<Pt> pathL_set(pathL.begin(), pathL.end());
                for (const Removal& pr : p_removals) {
                    Pt a = cyc[pr.s % mcyc];
                    Pt b = cyc[(pr.s + pr.r) % mcyc];
                    std::set<Pt> blockedR = g_vset;
                    for (int i = 1; i < gr.r; ++i) blockedR.erase(gpts[gr.s + i]);
                    blockedR.insert(pathL_set.begin(), pathL_set.end());
                    for (Pt p : pi_verts) blockedR.insert(p);
                    blockedR.erase(a);
                    blockedR.erase(b);
                    for (int i = 1; i < pr.r; ++i)
                        blockedR.erase(cyc[(pr.s + i) % mcyc]);

                    detail::PathSearch psR;
                    psR.to = b;
                    psR.len = 8 + pr.r;
                    psR.row_lo = band_lo;
                    psR.row_hi = band_hi;
                    psR.col_lo = cL + 1;
                    psR.col_hi = X + sigma + 12;
                    psR.must = J.right;
                    psR.blocked = &blockedR;
                    psR.geodesic_prefix = (strict == 1);

                    bool stop = psR.run(a, [&](const std::vector<Pt>& pathR) {
                        std::set<Edge> edges = g_eset;
                        for (size_t i = gr.s; i < gr.s + gr.r; ++i)
                            edges.erase(Edge(gpts[i], gpts[i + 1]));
                        for (size_t i = 1; i < pathL.size(); ++i) {
                            Edge e(pathL[i - 1], pathL[i]);
                            if (!(e == J.left)) edges.insert(e);
                        }
                        edges.insert(pi_eset.begin(), pi_eset.end());
                        for (int i = 0; i < pr.r; ++i)
                            edges.erase(Edge(cyc[(pr.s + i) % mcyc],
                                             cyc[(pr.s + i + 1) % mcyc]));
                        for (size_t i = 1; i < pathR.size(); ++i) {
                            Edge e(pathR[i - 1], pathR[i]);
                            if (!(e == J.right)) edges.insert(e);
                        }
                        edges.insert(J.bottom);
                        edges.insert(J.top);
                        auto jr = assemble(edges, j_sw);
                        if (jr) {
                            found = std::move(jr);
                            return true;
                        }
                        return false;
                    });
                    if (stop) return true;
                }
                return false;
            });
            if (found) return *found;
        }
    }
    }
    }
    }
    throw std::runtime_error("madras_join: no conformant splice configuration found");
}

// Vertically translated join: MJ_j(gamma, p) = M(gamma, p + j*e2), where p is
// a polygon rooted by the wide-polygon convention (origin is the leftmost
// vertex of a row realizing the line-width).
inline JoinResult mj_at_height(const Walk& gamma, const PolygonTrace& p, int64_t j) {
    Walk rooted = root_wide(p);
    int64_t h = p.geometry().h;
    if (!(gamma.y_min() + h + 3 <= j && j <= gamma.y_max() - h - 3))
        throw std::invalid_argument("mj_at_height: j outside the admissible range");
    std::vector<Edge> es = rooted.edges();
    PlacedPoly placed = PlacedPoly::from_edges(std::move(es));
    // root_wide puts the root row at height zero with y in [-h, h]; shift so
    // the polygon occupies rows [j - h_below, j + h_above] relative to root.
    return madras_join(gamma, placed.translated(Pt{0, j}));
}

// Inclusive admissible range for mj_at_height; empty when lo > hi.
inline std::pair<int64_t, int64_t> mj_height_range(const Walk& gamma, const PolygonTrace& p) {
    int64_t h = p.geometry().h;
    return {gamma.y_min() + h + 3, gamma.y_max() - h - 3};
}

// ---------------------------------------------------------------------------
// Unjoin: decode candidate (bridge, polygon) preimages from a joined walk and
// its junction plaquette.  Every candidate is validated by re-joining; the
// returned set always contains the true preimage and has at most four
// elements on conformant inputs.
// ---------------------------------------------------------------------------

inline std::vector<std::pair<Walk, PlacedPoly>> unjoin(const Walk& w, Pt junction_sw) {
    std::vector<std::pair<Walk, PlacedPoly>> out;
    PlaquetteEdges J(junction_sw);
    std::set<Edge> wes;
    for (const Edge& e : w.edges()) wes.insert(e);
    if (!wes.count(J.top) || !wes.count(J.bottom) || wes.count(J.left) ||
        wes.count(J.right))
        throw std::invalid_argument("unjoin: junction inconsistent with walk");

    // Swap the junction's horizontal edges for its vertical ones.
    std::set<Edge> swapped = wes;
    swapped.erase(J.top);
    swapped.erase(J.bottom);
    swapped.insert(J.left);
    swapped.insert(J.right);
    EdgeComponents comps = split_components(swapped);
    if (!comps.simple || comps.paths.size() != 1 || comps.cycles.size() != 1)
        throw std::invalid_argument("unjoin: junction swap does not split walk+polygon");

    std::vector<Pt> gp = comps.paths.front();   // gamma' (contains J.left)
    std::vector<Pt> qc = comps.cycles.front();  // Q (contains J.right)
    auto path_has = [](const std::vector<Pt>& pts, const Edge& e) {
        for (size_t i = 1; i < pts.size(); ++i)
            if (Edge(pts[i - 1], pts[i]) == e) return true;
        return false;
    };
    if (!path_has(gp, J.left) || !path_has(qc, J.right))
        throw std::invalid_argument("unjoin: junction sides on wrong components");
    if (gp.front() != w.points().front()) std::reverse(gp.begin(), gp.end());

    const size_t ng = gp.size() - 1;   // |gamma'| = n + 8
    const size_t nq = qc.size() - 1;   // |Q| = m + 8
    if (ng < 9 || nq < 12) return out;

    // Candidate walks: excise a subpath of length 8+r through J.left from
    // gamma' and reconnect its ends with r edges.
    auto reconnects = [](Pt a, Pt b, int r) {
        std::vector<std::vector<Pt>> ways;
        int64_t d = std::abs(a.x - b.x) + std::abs(a.y - b.y);
        if (r == 1 && d == 1) ways.push_back({a, b});
        if (r == 2 && d == 2)
            for (Pt dd : kStepVecs) {
                Pt mid{a.x + dd.x, a.y + dd.y};
                if (std::abs(mid.x - b.x) + std::abs(mid.y - b.y) == 1)
                    ways.push_back({a, mid, b});
            }
        return ways;
    };

    std::vector<Walk> gamma_cands;
    for (int r = 1; r <= 2; ++r) {
        size_t L = 8 + r;
        if (gp.size() < L + 1) continue;
        for (size_t a = 0; a + L < gp.size(); ++a) {
            bool through = false;
            for (size_t i = a; i < a + L; ++i)
                if (Edge(gp[i], gp[i + 1]) == J.left) through = true;
            if (!through) continue;
            for (const auto& mid : reconnects(gp[a], gp[a + L], r)) {
                std::vector<Pt> pts(gp.begin(), gp.begin() + a + 1);
                pts.insert(pts.end(), mid.begin() + 1, mid.end());
                pts.insert(pts.end(), gp.begin() + a + L + 1, gp.end());
                Walk cand(pts);
                if (!cand.self_avoiding()) continue;
                if (!cand.is_bridge() && !cand.is_reflected_bridge()) continue;
                gamma_cands.push_back(std::move(cand));
            }
        }
    }

    // Candidate polygons: same excision on the cycle Q around J.right.
    std::vector<PlacedPoly> poly_cands;
    std::vector<Pt> cv(qc.begin(), qc.end() - 1);  // cyclic vertices
    const size_t M = cv.size();
    for (int r = 1; r <= 2; ++r) {
        size_t L = 8 + r;
        for (size_t a = 0; a < M; ++a) {
            bool through = false;
            for (size_t i = 0; i < L; ++i)
                if (Edge(cv[(a + i) % M], cv[(a + i + 1) % M]) == J.right) through = true;
            if (!through) continue;
            Pt pa = cv[a % M], pb = cv[(a + L) % M];
            for (const auto& mid : reconnects(pa, pb, r)) {
                // Kept arc runs pb .. pa (M - L + 1 vertices); close it back
                // up with the interior of the reconnecting path and pb.
                std::vector<Pt> pts;
                for (size_t i = 0; i + L <= M; ++i) pts.push_back(cv[(a + L + i) % M]);
                for (int i = 1; i < r; ++i) pts.push_back(mid[i]);
                pts.push_back(pb);
                if (pts.size() != M - L + r + 1) continue;
                std::set<Pt> distinct(pts.begin(), pts.end() - 1);
                if (distinct.size() + 1 != pts.size()) continue;
                std::vector<Edge> es;
                for (size_t i = 1; i < pts.size(); ++i) es.emplace_back(pts[i - 1], pts[i]);
                poly_cands.push_back(PlacedPoly::from_edges(std::move(es)));
            }
        }
    }

    // The join is insensitive to horizontal translation of its polygon input,
    // so candidates are reported at the polygon's final resting position and
    // deduplicated there; horizontal translates collapse to one preimage.
    std::set<std::pair<std::vector<Pt>, std::vector<Edge>>> seen, emitted;
    for (const Walk& g0 : gamma_cands)
        for (const PlacedPoly& p0 : poly_cands) {
            if (!seen.insert({g0.points(), p0.edges}).second) continue;
            try {
                JoinResult jr = madras_join(g0, p0);
                if (jr.joined.points() == w.points() && jr.junction == junction_sw) {
                    PlacedPoly rest = p0.translated(Pt{jr.translate, 0});
                    if (emitted.insert({g0.points(), rest.edges}).second)
                        out.emplace_back(g0, rest);
                }
            } catch (const std::exception&) {
            }
        }
    return out;
}

// ---------------------------------------------------------------------------
// Right-detachable adjacencies
// ---------------------------------------------------------------------------

struct AdjacencyPair {
    size_t j = 0, k = 0;
    size_t gap() const { return k - j; }
    bool operator==(const AdjacencyPair& o) const { return j == o.j && k == o.k; }
};

// All index pairs (j,k), j < k, such that {rho_j, rho_k} spans a vertical unit
// edge, the plaquette whose right border is that edge has both horizontal
// edges on rho and neither vertical edge on rho, swapping them splits rho into
// a walk rho' and a polygon Q, and no right translate of Q meets rho'.
inline std::vector<AdjacencyPair> find_right_detachable(const Walk& rho) {
    std::vector<AdjacencyPair> out;
    const std::vector<Pt>& pts = rho.points();
    std::set<Edge> es;
    for (const Edge& e : rho.edges()) es.insert(e);
    for (size_t j = 0; j + 1 < pts.size(); ++j)
        for (size_t k = j + 1; k < pts.size(); ++k) {
            Pt a = pts[j], b = pts[k];
            if (a.x != b.x || std::abs(a.y - b.y) != 1) continue;
            Pt sw{a.x - 1, std::min(a.y, b.y)};
            PlaquetteEdges P(sw);
            if (!es.count(P.bottom) || !es.count(P.top)) continue;
            if (es.count(P.left) || es.count(P.right)) continue;
            std::set<Edge> swapped = es;
            swapped.erase(P.bottom);
            swapped.erase(P.top);
            swapped.insert(P.left);
            swapped.insert(P.right);
            EdgeComponents comps = split_components(swapped);
            if (!comps.simple || comps.paths.size() != 1 || comps.cycles.size() != 1)
                continue;
            // No right translate of Q may meet rho'.
            const auto& rp = comps.paths.front();
            const auto& q = comps.cycles.front();
            std::set<Pt> rset(rp.begin(), rp.end());
            int64_t rx_max = rp.front().x, qx_min = q.front().x;
            for (Pt p : rp) rx_max = std::max(rx_max, p.x);
            for (Pt p : q) qx_min = std::min(qx_min, p.x);
            bool clash = false;
            for (int64_t t = 0; t <= rx_max - qx_min + 1 && !clash; ++t)
                for (Pt p : q)
                    if (rset.count(Pt{p.x + t, p.y})) {
                        clash = true;
                        break;
                    }
            if (!clash) out.push_back({j, k});
        }
    return out;
}

}  // namespace sawlab
